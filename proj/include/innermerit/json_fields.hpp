// Copyright 2026 The InnerMerit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "innermerit/error.hpp"
#include "innermerit/time.hpp"

// Typed field access for JSON records. Missing or mistyped fields raise
// InvalidArgument naming the field.
namespace innermerit::fields {

inline const nlohmann::json& require(const nlohmann::json& j, const char* key) {
  if (!j.is_object()) fail(ErrorCode::InvalidArgument, "record is not a JSON object");
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) {
    fail(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
  }
  return *it;
}

inline std::string str(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string()) fail(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

inline std::string str_or(const nlohmann::json& j, const char* key, std::string fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return str(j, key);
}

inline std::int64_t integer(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_number_integer()) {
    fail(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

inline std::int64_t integer_or(const nlohmann::json& j, const char* key, std::int64_t fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return integer(j, key);
}

inline bool boolean(const nlohmann::json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_boolean()) fail(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be a boolean");
  return v.get<bool>();
}

inline std::vector<std::string> strings_or_empty(const nlohmann::json& j, const char* key) {
  std::vector<std::string> out;
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return out;
  const auto& v = j.at(key);
  if (!v.is_array()) fail(ErrorCode::InvalidArgument, std::string("field '") + key + "' must be an array");
  for (const auto& item : v) {
    if (!item.is_string()) {
      fail(ErrorCode::InvalidArgument, std::string("field '") + key + "' must hold strings");
    }
    out.push_back(item.get<std::string>());
  }
  return out;
}

inline Timestamp timestamp(const nlohmann::json& j, const char* key) {
  return Timestamp::parse_or_throw(str(j, key));
}

inline Timestamp timestamp_or(const nlohmann::json& j, const char* key, Timestamp fallback) {
  if (!j.is_object() || !j.contains(key) || j.at(key).is_null()) return fallback;
  return timestamp(j, key);
}

}  // namespace innermerit::fields
