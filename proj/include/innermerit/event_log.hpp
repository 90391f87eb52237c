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
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "innermerit/events.hpp"
#include "innermerit/ledger.hpp"
#include "innermerit/time.hpp"

namespace innermerit {

class Registry;

// Event file format: one JSON object per line carrying exactly the
// ContributionEvent fields, followed by a trailer line
//
//   #sha256 <hex digest of every preceding byte>
//
// The canonical log is strictly ordered by (occurred_at, event_id).
inline constexpr std::string_view kChecksumPrefix = "#sha256 ";

std::string serialize_event_file(std::span<const ContributionEvent> events);

// Strict parse of a canonical log. Throws CorruptLog naming the byte offset
// of the first bad line (bad checksum, bad record, ordering violation).
std::vector<ContributionEvent> parse_event_log(std::string_view bytes);

// Folds a canonical log into a ledger. A pure function of the log bytes and
// the configuration.
LedgerSnapshot replay(std::string_view log_bytes, const LedgerConfig& config = {});

enum class RejectReason {
  MalformedRecord,
  UnknownContributor,
  UnknownProject,
  BadTimestamp,
  UnknownKind,
  NonPositiveMagnitude,
};

std::string_view to_string(RejectReason reason);

struct RejectedRecord {
  std::string raw;
  RejectReason reason;
  std::string detail;
};

struct IngestReport {
  std::int64_t accepted = 0;
  std::int64_t duplicates = 0;
  std::vector<RejectedRecord> rejected;
  std::int64_t records() const {
    return accepted + duplicates + static_cast<std::int64_t>(rejected.size());
  }
};

// One input to a batch: a file's name (used as the default `source`) and its
// bytes.
struct BatchInput {
  std::string name;
  std::string bytes;
};

struct IngestOptions {
  Timestamp now = Timestamp::now();
  std::int64_t clock_skew_seconds = 24 * 3600;
};

// The canonical contribution event log. Events are only ever added; each
// batch is merged into log order and, for a file-backed log, persisted with
// an atomic rewrite before it becomes visible.
class EventLog {
 public:
  EventLog() = default;
  // Opens (or creates on first write) a file-backed log. An existing file must
  // parse as a canonical log.
  static EventLog open(const std::string& path);

  // Validates, deduplicates by event_id and appends a batch. A batch whose
  // checksum trailer is present but wrong throws CorruptBatch and appends
  // nothing; a persistence failure throws IoFailure and appends nothing.
  IngestReport ingest(std::span<const BatchInput> batch, const Registry& registry,
                      const IngestOptions& options);

  const std::vector<ContributionEvent>& events() const { return events_; }
  bool contains(const std::string& event_id) const { return ids_.count(event_id) != 0; }
  std::string serialize() const { return serialize_event_file(events_); }
  const std::optional<std::string>& path() const { return path_; }

 private:
  std::optional<std::string> path_;
  std::vector<ContributionEvent> events_;
  std::set<std::string> ids_;
};

}  // namespace innermerit
