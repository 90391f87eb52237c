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

#include <gtest/gtest.h>

#include <random>

#include "innermerit/error.hpp"
#include "innermerit/util.hpp"
#include "support.hpp"

namespace innermerit {
namespace {

using testing::ts;

std::string line(const std::string& id, const std::string& contributor, const std::string& kind,
                 const std::string& at, std::int64_t magnitude = 1) {
  return nlohmann::json{{"event_id", id},         {"contributor_id", contributor},
                        {"project_id", "p00"},    {"kind", kind},
                        {"occurred_at", at},      {"magnitude", magnitude},
                        {"source", "git"}}
             .dump() +
         "\n";
}

class EventLogTest : public ::testing::Test {
 protected:
  Registry registry = testing::make_org({2, 4, 2});
  IngestOptions options{ts("2021-08-01T00:00:00Z"), 86400};

  IngestReport ingest(EventLog& log, std::string bytes, std::string name = "batch.jsonl") {
    std::vector<BatchInput> batch{{std::move(name), std::move(bytes)}};
    return log.ingest(batch, registry, options);
  }
};

TEST_F(EventLogTest, AcceptsThenDeduplicates) {
  EventLog log;
  std::string batch = line("e1", "c000", "Code", "2021-07-01T00:00:00Z") +
                      line("e2", "c001", "Review", "2021-07-02T00:00:00Z") +
                      line("e3", "c002", "Documentation", "2021-07-03T00:00:00Z");
  auto first = ingest(log, batch);
  EXPECT_EQ(first.accepted, 3);
  EXPECT_EQ(first.duplicates, 0);
  auto again = ingest(log, batch);
  EXPECT_EQ(again.accepted, 0);
  EXPECT_EQ(again.duplicates, 3);
  EXPECT_EQ(log.events().size(), 3u);
}

TEST_F(EventLogTest, RejectsWithReasons) {
  EventLog log;
  std::string batch = line("e1", "c000", "karaoke", "2021-07-01T00:00:00Z") +
                      line("e2", "ghost", "Code", "2021-07-01T00:00:00Z") +
                      line("e3", "c000", "Code", "2021-07-01T00:00:00Z", 0) +
                      line("e4", "c000", "Code", "2021-09-01T00:00:00Z") +
                      line("e5", "c000", "Code", "2021-07-01 00:00:00") + "{not json\n" +
                      line("e6", "c000", "Code", "2021-08-01T12:00:00Z") +
                      line("e6", "c001", "Code", "2021-07-05T00:00:00Z");
  auto r = ingest(log, batch);
  ASSERT_EQ(r.rejected.size(), 6u);
  EXPECT_EQ(r.rejected[0].reason, RejectReason::UnknownKind);
  EXPECT_EQ(r.rejected[1].reason, RejectReason::UnknownContributor);
  EXPECT_EQ(r.rejected[2].reason, RejectReason::NonPositiveMagnitude);
  EXPECT_EQ(r.rejected[3].reason, RejectReason::BadTimestamp);
  EXPECT_EQ(r.rejected[4].reason, RejectReason::BadTimestamp);
  EXPECT_EQ(r.rejected[5].reason, RejectReason::MalformedRecord);
  // Within clock skew is fine; the in-batch repeat counts as a duplicate.
  EXPECT_EQ(r.accepted, 1);
  EXPECT_EQ(r.duplicates, 1);
  EXPECT_EQ(r.records(), 8);
}

TEST_F(EventLogTest, WrongTrailerAbortsWholeBatch) {
  EventLog log;
  std::string body = line("e1", "c000", "Code", "2021-07-01T00:00:00Z");
  std::string bad = body + std::string(kChecksumPrefix) + sha256_hex("other") + "\n";
  try {
    ingest(log, bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptBatch);
  }
  EXPECT_TRUE(log.events().empty());
  std::string good = body + std::string(kChecksumPrefix) + sha256_hex(body) + "\n";
  EXPECT_EQ(ingest(log, good).accepted, 1);
}

TEST_F(EventLogTest, BackfillMergesIntoLogOrder) {
  testing::TempDir dir;
  EventLog log = EventLog::open(dir.file("events.log"));
  ingest(log, line("b", "c000", "Code", "2021-07-10T00:00:00Z"));
  ingest(log, line("a", "c001", "Code", "2021-07-01T00:00:00Z") +
                  line("c", "c001", "Code", "2021-07-10T00:00:00Z"));
  ASSERT_EQ(log.events().size(), 3u);
  EXPECT_EQ(log.events()[0].event_id, "a");
  EXPECT_EQ(log.events()[1].event_id, "b");
  EXPECT_EQ(log.events()[2].event_id, "c");
  EventLog reopened = EventLog::open(dir.file("events.log"));
  EXPECT_EQ(reopened.events(), log.events());
  EXPECT_EQ(read_file(dir.file("events.log")), log.serialize());
}

TEST_F(EventLogTest, SourceDefaultsToFileName) {
  EventLog log;
  std::string raw = R"({"event_id":"x","contributor_id":"c000","project_id":"p00","kind":"Code","occurred_at":"2021-07-01T00:00:00Z"})";
  ingest(log, raw + "\n", "gitlab-export.jsonl");
  ASSERT_EQ(log.events().size(), 1u);
  EXPECT_EQ(log.events()[0].source, "gitlab-export.jsonl");
  EXPECT_EQ(log.events()[0].magnitude, 1);
}

TEST(ReplayTest, EmptyLogHasNoContributors) {
  LedgerSnapshot snap = replay(serialize_event_file({}));
  EXPECT_TRUE(snap.contributors().empty());
  EXPECT_EQ(snap.total_points(), 0);
}

TEST(ReplayTest, TwiceIsByteIdentical) {
  std::mt19937_64 rng(5);
  auto events = testing::random_year_events(rng, {3, 30, 5}, 2021, 100);
  std::string log = serialize_event_file(events);
  EXPECT_EQ(replay(log).serialize(), replay(log).serialize());
  EXPECT_EQ(parse_event_log(log), events);
}

TEST(ReplayTest, OutOfOrderIsCorrupt) {
  auto a = testing::make_event("a", "c000", "p00", ContributionKind::Code, ts("2021-07-02T00:00:00Z"));
  auto b = testing::make_event("b", "c000", "p00", ContributionKind::Code, ts("2021-07-01T00:00:00Z"));
  std::vector<ContributionEvent> swapped{a, b};
  std::string log = serialize_event_file(swapped);
  try {
    replay(log);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::CorruptLog);
    // The offending record is the second line.
    std::string offset = std::to_string(log.find('\n') + 1);
    EXPECT_NE(std::string(e.what()).find("offset " + offset), std::string::npos) << e.what();
  }
}

TEST(ReplayTest, TamperingAndTruncationAreCorrupt) {
  std::vector<ContributionEvent> events{
      testing::make_event("a", "c000", "p00", ContributionKind::Code, ts("2021-07-01T00:00:00Z"), 2)};
  std::string log = serialize_event_file(events);
  std::string tampered = log;
  tampered.replace(tampered.find("\"magnitude\":2"), 13, "\"magnitude\":9");
  EXPECT_THROW(replay(tampered), Error);
  EXPECT_THROW(replay(log.substr(0, log.find('#'))), Error);
  EXPECT_THROW(replay(""), Error);
  testing::TempDir dir;
  write_file_atomic(dir.file("events.log"), tampered);
  EXPECT_THROW(EventLog::open(dir.file("events.log")), Error);
}

TEST(ReplayTest, DuplicateIdsInLogAreCorrupt) {
  auto a = testing::make_event("a", "c000", "p00", ContributionKind::Code, ts("2021-07-01T00:00:00Z"));
  auto b = a;
  b.occurred_at = ts("2021-07-02T00:00:00Z");
  std::vector<ContributionEvent> dup{a, b};
  EXPECT_THROW(replay(serialize_event_file(dup)), Error);
}

}  // namespace
}  // namespace innermerit
