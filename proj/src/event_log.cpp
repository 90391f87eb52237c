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

#include "innermerit/event_log.hpp"

#include <algorithm>
#include <filesystem>
#include <iterator>

#include "innermerit/error.hpp"
#include "innermerit/json_fields.hpp"
#include "innermerit/registry.hpp"
#include "innermerit/util.hpp"

namespace innermerit {

namespace {

struct Line {
  std::size_t offset;
  std::string_view text;
};

std::vector<Line> split_lines(std::string_view bytes) {
  std::vector<Line> lines;
  std::size_t start = 0;
  while (start < bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view text = bytes.substr(start, end - start);
    if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
    lines.push_back({start, text});
    start = end + 1;
  }
  return lines;
}

bool is_blank(std::string_view text) {
  return std::all_of(text.begin(), text.end(), [](char c) { return c == ' ' || c == '\t'; });
}

// Locates the checksum trailer. Returns the index of the trailer line, or
// nullopt when the last non-blank line is not a trailer.
std::optional<std::size_t> find_trailer(const std::vector<Line>& lines) {
  for (std::size_t i = lines.size(); i-- > 0;) {
    if (is_blank(lines[i].text)) continue;
    if (lines[i].text.substr(0, kChecksumPrefix.size()) == kChecksumPrefix) return i;
    return std::nullopt;
  }
  return std::nullopt;
}

bool trailer_matches(std::string_view bytes, const Line& trailer) {
  std::string_view expected = trailer.text.substr(kChecksumPrefix.size());
  return trim(expected) == sha256_hex(bytes.substr(0, trailer.offset));
}

[[noreturn]] void corrupt(std::size_t offset, const std::string& why) {
  fail(ErrorCode::CorruptLog, "at byte offset " + std::to_string(offset) + ": " + why);
}

ContributionEvent strict_event_from_json(const nlohmann::json& j) {
  using namespace fields;
  ContributionEvent e;
  e.event_id = str(j, "event_id");
  e.contributor_id = str(j, "contributor_id");
  e.project_id = str(j, "project_id");
  auto kind = parse_contribution_kind(str(j, "kind"));
  if (!kind) fail(ErrorCode::UnknownKind, str(j, "kind"));
  e.kind = *kind;
  auto t = Timestamp::parse(str(j, "occurred_at"));
  if (!t) fail(ErrorCode::InvalidArgument, "bad occurred_at");
  e.occurred_at = *t;
  e.magnitude = integer(j, "magnitude");
  if (e.magnitude < 1 || e.magnitude > kMaxMagnitude) {
    fail(ErrorCode::InvalidArgument, "magnitude out of range");
  }
  e.source = str(j, "source");
  if (e.event_id.empty()) fail(ErrorCode::InvalidArgument, "empty event_id");
  return e;
}

}  // namespace

std::string_view to_string(RejectReason reason) {
  switch (reason) {
    case RejectReason::MalformedRecord: return "MalformedRecord";
    case RejectReason::UnknownContributor: return "UnknownContributor";
    case RejectReason::UnknownProject: return "UnknownProject";
    case RejectReason::BadTimestamp: return "BadTimestamp";
    case RejectReason::UnknownKind: return "UnknownKind";
    case RejectReason::NonPositiveMagnitude: return "NonPositiveMagnitude";
  }
  return "?";
}

std::string serialize_event_file(std::span<const ContributionEvent> events) {
  std::string body;
  for (const auto& e : events) {
    body += to_json(e).dump();
    body += '\n';
  }
  std::string digest = sha256_hex(body);
  body += kChecksumPrefix;
  body += digest;
  body += '\n';
  return body;
}

std::vector<ContributionEvent> parse_event_log(std::string_view bytes) {
  auto lines = split_lines(bytes);
  auto trailer = find_trailer(lines);
  if (!trailer) corrupt(bytes.size(), "missing checksum trailer");
  if (!trailer_matches(bytes, lines[*trailer])) {
    corrupt(lines[*trailer].offset, "checksum mismatch");
  }
  std::vector<ContributionEvent> events;
  std::set<std::string> ids;
  for (std::size_t i = 0; i < *trailer; ++i) {
    const Line& line = lines[i];
    if (is_blank(line.text)) corrupt(line.offset, "blank line");
    ContributionEvent e;
    try {
      e = strict_event_from_json(nlohmann::json::parse(line.text));
    } catch (const nlohmann::json::exception& ex) {
      corrupt(line.offset, std::string("unparseable record: ") + ex.what());
    } catch (const Error& ex) {
      corrupt(line.offset, ex.what());
    }
    if (!events.empty() && !log_order_less(events.back(), e)) {
      corrupt(line.offset, "event '" + e.event_id + "' is out of (occurred_at, event_id) order");
    }
    if (!ids.insert(e.event_id).second) corrupt(line.offset, "duplicate event '" + e.event_id + "'");
    events.push_back(std::move(e));
  }
  return events;
}

LedgerSnapshot replay(std::string_view log_bytes, const LedgerConfig& config) {
  LedgerSnapshot snapshot(config);
  snapshot.apply_all(parse_event_log(log_bytes));
  return snapshot;
}

EventLog EventLog::open(const std::string& path) {
  EventLog log;
  log.path_ = path;
  if (std::filesystem::exists(path)) {
    log.events_ = parse_event_log(read_file(path));
    for (const auto& e : log.events_) log.ids_.insert(e.event_id);
  }
  return log;
}

IngestReport EventLog::ingest(std::span<const BatchInput> batch, const Registry& registry,
                              const IngestOptions& options) {
  IngestReport report;
  std::vector<ContributionEvent> accepted;
  std::set<std::string> batch_ids;
  const Timestamp latest = options.now.plus_seconds(options.clock_skew_seconds);

  for (const auto& input : batch) {
    auto lines = split_lines(input.bytes);
    std::size_t end = lines.size();
    if (auto trailer = find_trailer(lines)) {
      if (!trailer_matches(input.bytes, lines[*trailer])) {
        fail(ErrorCode::CorruptBatch, "checksum mismatch in '" + input.name + "'");
      }
      end = *trailer;
    }
    for (std::size_t i = 0; i < end; ++i) {
      std::string_view text = lines[i].text;
      if (is_blank(text)) continue;
      auto reject = [&](RejectReason reason, std::string detail) {
        report.rejected.push_back({std::string(text), reason, std::move(detail)});
      };
      nlohmann::json j;
      try {
        j = nlohmann::json::parse(text);
      } catch (const nlohmann::json::exception&) {
        reject(RejectReason::MalformedRecord, "not a JSON object");
        continue;
      }
      ContributionEvent e;
      try {
        using namespace fields;
        e.event_id = str(j, "event_id");
        e.contributor_id = str(j, "contributor_id");
        e.project_id = str(j, "project_id");
        if (e.event_id.empty()) fail(ErrorCode::InvalidArgument, "empty event_id");
        std::string kind_text = str(j, "kind");
        auto kind = parse_contribution_kind(kind_text);
        if (!kind) {
          reject(RejectReason::UnknownKind, kind_text);
          continue;
        }
        e.kind = *kind;
        const auto& magnitude = j.contains("magnitude") ? j.at("magnitude") : nlohmann::json(1);
        if (!magnitude.is_number_integer() || magnitude.get<std::int64_t>() < 1 ||
            magnitude.get<std::int64_t>() > kMaxMagnitude) {
          reject(RejectReason::NonPositiveMagnitude, magnitude.dump());
          continue;
        }
        e.magnitude = magnitude.get<std::int64_t>();
        auto t = Timestamp::parse(str(j, "occurred_at"));
        if (!t) {
          reject(RejectReason::BadTimestamp, "not RFC 3339 UTC");
          continue;
        }
        if (*t > latest) {
          reject(RejectReason::BadTimestamp, "in the future beyond clock skew");
          continue;
        }
        e.occurred_at = *t;
        e.source = str_or(j, "source", input.name);
      } catch (const Error& ex) {
        reject(RejectReason::MalformedRecord, ex.what());
        continue;
      }
      if (!registry.has_contributor(e.contributor_id)) {
        reject(RejectReason::UnknownContributor, e.contributor_id);
        continue;
      }
      if (!registry.has_project(e.project_id)) {
        reject(RejectReason::UnknownProject, e.project_id);
        continue;
      }
      if (ids_.count(e.event_id) != 0 || !batch_ids.insert(e.event_id).second) {
        ++report.duplicates;
        continue;
      }
      accepted.push_back(std::move(e));
    }
  }

  if (accepted.empty()) return report;
  std::sort(accepted.begin(), accepted.end(), log_order_less);
  std::vector<ContributionEvent> merged;
  merged.reserve(events_.size() + accepted.size());
  std::merge(events_.begin(), events_.end(), accepted.begin(), accepted.end(),
             std::back_inserter(merged), log_order_less);
  if (path_) write_file_atomic(*path_, serialize_event_file(merged));

  report.accepted = static_cast<std::int64_t>(accepted.size());
  for (const auto& e : accepted) ids_.insert(e.event_id);
  events_ = std::move(merged);
  return report;
}

}  // namespace innermerit
