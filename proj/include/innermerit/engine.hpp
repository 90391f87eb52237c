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
#include <functional>
#include <memory>
#include <mutex>
#include <nlohmann/json.hpp>
#include <optional>
#include <shared_mutex>
#include <span>
#include <string>
#include <vector>

#include "innermerit/awards.hpp"
#include "innermerit/catalog.hpp"
#include "innermerit/event_log.hpp"
#include "innermerit/ledger.hpp"
#include "innermerit/maturity.hpp"
#include "innermerit/registry.hpp"
#include "innermerit/roles.hpp"

namespace innermerit {

// Everything the read side is computed from.
struct EngineState {
  LedgerConfig config;
  Registry registry;
  EventLog events;
  RoleBook roles;
  MaturityBook maturity;
  AwardBook awards;
  std::int64_t journal_length = 0;

  // Ledger folded over the events that occurred strictly before `as_of`.
  LedgerSnapshot snapshot(Timestamp as_of = Timestamp::max()) const;
  SlateInputs slate_inputs() const;
};

// Who issued a command and through which channel ("cli" or "http").
struct Actor {
  std::string id = "cli";
  std::string role = "admin";
  std::string channel = "cli";
};

struct CommandResult {
  nlohmann::json body;
  std::int64_t audit_id = 0;
};

struct EngineOptions {
  // When set, state lives in this directory:
  //   config.kv     ledger weights, tier ladder, role quorum (optional)
  //   catalog.kv    award catalog overrides (optional)
  //   journal.jsonl registry, role, maturity and cycle commands
  //   events.log    canonical contribution event log
  //   audit.jsonl   one record per command
  std::optional<std::string> data_dir;
  std::optional<LedgerConfig> config;
  std::optional<AwardCatalog> catalog;
  std::function<Timestamp()> clock = [] { return Timestamp::now(); };
  std::int64_t clock_skew_seconds = 24 * 3600;
};

// The single writer. Commands are applied to the in-memory state, then
// journaled; reads run concurrently under a shared lock.
//
// Command records are JSON objects with an `op` and an optional `at`
// (defaults to the engine clock):
//   registry.record  {record: <bootstrap record>}
//   role.propose     {contributor_id, project_id, role, proposer_id}
//   role.vote        {proposal_id, voter_id, approve}
//   maturity.assess  {project_id, period, levels{..}, evidence{..}}
//   cycle.open       {kind, period}
//   cycle.slate      {kind, period}
//   cycle.decide     {kind, period, decisions[{recipient, rank, rationale}],
//                     committee_member_ids[..]}
//   cycle.finalize   {kind, period, pool}
class Engine {
 public:
  explicit Engine(EngineOptions options = {});
  Engine(const Engine&) = delete;
  Engine& operator=(const Engine&) = delete;

  // Executes one command and appends exactly one audit record, whether the
  // command succeeds or throws.
  CommandResult execute(const nlohmann::json& command, const Actor& actor);
  IngestReport ingest(std::span<const BatchInput> batch, const Actor& actor);

  // Records an audit entry for a call rejected before reaching a command
  // (authentication failures).
  std::int64_t audit(const Actor& actor, const std::string& command, const std::string& target,
                     const std::string& outcome);

  template <class F>
  auto read(F&& f) const {
    std::shared_lock lock(mutex_);
    return f(state_);
  }

  std::vector<nlohmann::json> audit_log() const;
  std::vector<std::string> journal() const;
  Timestamp now() const { return options_.clock(); }
  const EngineOptions& options() const { return options_; }

 private:
  nlohmann::json apply(nlohmann::json& record, bool replaying);
  std::int64_t append_audit(const Actor& actor, const std::string& command,
                            const std::string& target, const std::string& outcome);
  void load();
  std::optional<std::string> file(const char* name) const;

  EngineOptions options_;
  mutable std::shared_mutex mutex_;
  EngineState state_;
  std::vector<std::string> journal_;
  mutable std::mutex audit_mutex_;
  std::vector<nlohmann::json> audit_;
};

// Reads data-dir configuration files if present.
LedgerConfig load_ledger_config(const std::string& path);
AwardCatalog load_catalog(const std::string& path);

}  // namespace innermerit
