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

#include "innermerit/util.hpp"

#include <gtest/gtest.h>

#include "innermerit/error.hpp"
#include "support.hpp"

namespace innermerit {
namespace {

TEST(Sha256Test, KnownVectors) {
  EXPECT_EQ(sha256_hex(""), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(KeyValuesTest, ParsesCommentsAndWhitespace) {
  auto kv = parse_key_values("# heading\n\n weight.code = 12 \ntier.names=A, B\n");
  EXPECT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv.at("weight.code"), "12");
  EXPECT_EQ(kv.at("tier.names"), "A, B");
}

TEST(KeyValuesTest, RejectsDuplicatesAndBareLines) {
  EXPECT_THROW(parse_key_values("a = 1\na = 2\n"), Error);
  EXPECT_THROW(parse_key_values("just words\n"), Error);
}

TEST(ParseInt64Test, StrictDecimal) {
  EXPECT_EQ(parse_int64("42", "x"), 42);
  EXPECT_EQ(parse_int64("-7", "x"), -7);
  for (const char* bad : {"", "4x", "1e3", "99999999999999999999", " "}) {
    EXPECT_THROW(parse_int64(bad, "x"), Error) << bad;
  }
}

TEST(FileTest, AtomicWriteAndAppend) {
  testing::TempDir dir;
  std::string path = dir.file("f.txt");
  write_file_atomic(path, "one\n");
  append_line(path, "two");
  EXPECT_EQ(read_file(path), "one\ntwo\n");
  write_file_atomic(path, "three\n");
  EXPECT_EQ(read_file(path), "three\n");
  try {
    read_file(dir.file("missing"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IoFailure);
  }
}

TEST(TextTest, FoldTrimSplit) {
  EXPECT_EQ(fold_case("ShenZhen"), "shenzhen");
  EXPECT_EQ(trim("  a b \t\n"), "a b");
  EXPECT_EQ(split("a,,b", ','), (std::vector<std::string>{"a", "", "b"}));
}

}  // namespace
}  // namespace innermerit
