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

#include "innermerit/engine.hpp"

#include <filesystem>

#include "innermerit/error.hpp"
#include "innermerit/json_fields.hpp"
#include "innermerit/util.hpp"

namespace innermerit {

namespace {

std::array<int, 4> levels_from_json(const nlohmann::json& j) {
  std::array<int, 4> levels{};
  for (auto d : kAllDimensions) {
    std::string key(key_of(d));
    std::int64_t v = fields::integer(j, key.c_str());
    if (v < INT32_MIN || v > INT32_MAX) fail(ErrorCode::OutOfRangeLevel, key);
    levels[static_cast<std::size_t>(d)] = static_cast<int>(v);
  }
  return levels;
}

std::array<std::string, 4> evidence_from_json(const nlohmann::json& j) {
  std::array<std::string, 4> evidence;
  if (j.is_null()) return evidence;
  for (auto d : kAllDimensions) {
    std::string key(key_of(d));
    evidence[static_cast<std::size_t>(d)] = fields::str_or(j, key.c_str(), "");
  }
  return evidence;
}

std::string target_of(const nlohmann::json& c) {
  if (!c.is_object()) return "";
  auto s = [&](const char* k) -> std::string {
    return c.contains(k) && c.at(k).is_string() ? c.at(k).get<std::string>() : std::string();
  };
  if (c.contains("kind") && c.contains("period")) return s("kind") + "/" + s("period");
  if (c.contains("proposal_id")) return s("proposal_id");
  if (c.contains("project_id")) return s("project_id");
  if (c.contains("record") && c.at("record").is_object()) {
    const auto& r = c.at("record");
    return r.value("kind", "") + ":" + r.value("id", r.value("project_id", r.value("committee_id", "")));
  }
  return "";
}

}  // namespace

LedgerSnapshot EngineState::snapshot(Timestamp as_of) const {
  LedgerSnapshot snap(config);
  for (const auto& e : events.events()) {
    if (e.occurred_at >= as_of) break;
    snap.apply(e);
  }
  return snap;
}

SlateInputs EngineState::slate_inputs() const {
  return SlateInputs{registry, events.events(), config.weights, roles, maturity};
}

LedgerConfig load_ledger_config(const std::string& path) {
  return LedgerConfig::from_key_values(parse_key_values(read_file(path)));
}

AwardCatalog load_catalog(const std::string& path) {
  return AwardCatalog::from_key_values(parse_key_values(read_file(path)));
}

Engine::Engine(EngineOptions options) : options_(std::move(options)) { load(); }

std::optional<std::string> Engine::file(const char* name) const {
  if (!options_.data_dir) return std::nullopt;
  return (std::filesystem::path(*options_.data_dir) / name).string();
}

void Engine::load() {
  if (options_.data_dir) {
    std::error_code ec;
    std::filesystem::create_directories(*options_.data_dir, ec);
    if (ec) fail(ErrorCode::IoFailure, "cannot create data dir: " + ec.message());
  }
  LedgerConfig config;
  if (options_.config) {
    config = *options_.config;
  } else if (auto path = file("config.kv"); path && std::filesystem::exists(*path)) {
    config = load_ledger_config(*path);
  }
  config.validate();
  AwardCatalog catalog = AwardCatalog::defaults();
  if (options_.catalog) {
    catalog = *options_.catalog;
  } else if (auto path = file("catalog.kv"); path && std::filesystem::exists(*path)) {
    catalog = load_catalog(*path);
  }

  state_ = EngineState{config, Registry{}, EventLog{}, RoleBook(config.quorum), MaturityBook{},
                       AwardBook(catalog), 0};
  journal_.clear();
  if (auto path = file("events.log")) state_.events = EventLog::open(*path);
  if (auto path = file("journal.jsonl"); path && std::filesystem::exists(*path)) {
    std::string bytes = read_file(*path);
    std::size_t line_no = 0;
    for (const auto& line : split(bytes, '\n')) {
      ++line_no;
      if (line.empty()) continue;
      try {
        nlohmann::json record = nlohmann::json::parse(line);
        apply(record, true);
      } catch (const std::exception& ex) {
        fail(ErrorCode::CorruptLog, "journal line " + std::to_string(line_no) + ": " + ex.what());
      }
      journal_.push_back(line);
    }
    state_.journal_length = static_cast<std::int64_t>(journal_.size());
  }
  std::lock_guard lock(audit_mutex_);
  audit_.clear();
  if (auto path = file("audit.jsonl"); path && std::filesystem::exists(*path)) {
    for (const auto& line : split(read_file(*path), '\n')) {
      if (!line.empty()) audit_.push_back(nlohmann::json::parse(line));
    }
  }
}

nlohmann::json Engine::apply(nlohmann::json& record, bool replaying) {
  using namespace fields;
  EngineState& s = state_;
  const std::string op = str(record, "op");
  const Timestamp at = timestamp(record, "at");
  // Canonical record: only the fields each op reads, so the same command
  // journals identically whichever channel issued it.
  nlohmann::json canonical = {{"op", op}, {"at", at.to_string()}, {"seq", record.value("seq", 0)}};
  nlohmann::json result;

  if (op == "registry.record") {
    const auto& r = require(record, "record");
    apply_registry_record(s.registry, r);
    canonical["record"] = r;
    result = {{"registered", target_of(record)}};
  } else if (op == "role.propose") {
    std::string contributor = str(record, "contributor_id");
    std::string project = str(record, "project_id");
    Role role = parse_role(str(record, "role"));
    std::string proposer = str(record, "proposer_id");
    std::string id = s.roles.propose(s.registry, contributor, project, role, proposer, at);
    canonical.update({{"contributor_id", contributor}, {"project_id", project},
                      {"role", to_string(role)}, {"proposer_id", proposer}});
    result = {{"proposal_id", id}, {"proposal", to_json(s.roles.proposal(id))}};
  } else if (op == "role.vote") {
    std::string id = str(record, "proposal_id");
    std::string voter = str(record, "voter_id");
    bool approve = boolean(record, "approve");
    RoleChangeOutcome outcome = s.roles.vote(s.registry, id, voter, approve, at);
    canonical.update({{"proposal_id", id}, {"voter_id", voter}, {"approve", approve}});
    result = {{"outcome", to_string(outcome)}, {"proposal", to_json(s.roles.proposal(id))}};
  } else if (op == "maturity.assess") {
    std::string project = str(record, "project_id");
    Period period = Period::parse_or_throw(str(record, "period"));
    auto levels = levels_from_json(require(record, "levels"));
    auto evidence = evidence_from_json(record.value("evidence", nlohmann::json()));
    const auto& a = s.maturity.assess(s.registry, project, period, levels, evidence, at);
    result = to_json(a);
    canonical.update({{"project_id", project}, {"period", period.to_string()},
                      {"levels", result["levels"]}, {"evidence", result["evidence"]}});
  } else if (op.rfind("cycle.", 0) == 0) {
    AwardKind kind = parse_award_kind(str(record, "kind"));
    Period period = Period::parse_or_throw(str(record, "period"));
    CycleKey key{kind, period};
    canonical.update({{"kind", to_string(kind)}, {"period", period.to_string()}});
    if (op == "cycle.open") {
      result = to_json(s.awards.open_cycle(kind, period, at));
    } else if (op == "cycle.slate") {
      std::vector<SlateCandidate> slate;
      if (replaying) {
        for (const auto& c : require(record, "slate")) slate.push_back(slate_candidate_from_json(c));
      } else {
        slate = s.awards.compute_slate(key, s.slate_inputs());
      }
      const auto& cycle = s.awards.record_slate(key, std::move(slate), at);
      result = to_json(cycle);
      canonical["slate"] = result["slate"];
      if (cycle.slate.empty()) result["warning"] = to_string(ErrorCode::NoEligibleCandidates);
    } else if (op == "cycle.decide") {
      std::vector<DecisionInput> inputs;
      nlohmann::json decisions = nlohmann::json::array();
      for (const auto& d : require(record, "decisions")) {
        DecisionInput in{str(d, "recipient"), static_cast<int>(integer_or(d, "rank", 0)),
                         str_or(d, "rationale", "")};
        decisions.push_back({{"recipient", in.recipient}, {"rank", in.rank}, {"rationale", in.rationale}});
        inputs.push_back(std::move(in));
      }
      auto members = strings_or_empty(record, "committee_member_ids");
      result = to_json(s.awards.record_decisions(key, inputs, members, s.registry, at));
      canonical.update({{"decisions", decisions}, {"committee_member_ids", members}});
    } else if (op == "cycle.finalize") {
      std::int64_t pool = integer(record, "pool");
      const auto& cycle = s.awards.finalize_cycle(key, pool, at);
      if (kind == AwardKind::TimelyIncentive) s.maturity.freeze(period);
      result = to_json(cycle);
      canonical["pool"] = pool;
    } else {
      fail(ErrorCode::InvalidArgument, "unknown command '" + op + "'");
    }
  } else {
    fail(ErrorCode::InvalidArgument, "unknown command '" + op + "'");
  }
  record = std::move(canonical);
  return result;
}

CommandResult Engine::execute(const nlohmann::json& command, const Actor& actor) {
  const std::string op = command.is_object() ? command.value("op", "") : "";
  const std::string target = target_of(command);
  nlohmann::json result;
  try {
    std::unique_lock lock(mutex_);
    nlohmann::json record = command;
    if (!record.is_object()) fail(ErrorCode::InvalidArgument, "command is not a JSON object");
    if (!record.contains("at") || record.at("at").is_null()) record["at"] = now().to_string();
    record["seq"] = state_.journal_length + 1;
    result = apply(record, false);
    std::string line = record.dump();
    if (auto path = file("journal.jsonl")) {
      try {
        append_line(*path, line);
      } catch (const Error&) {
        load();  // drop the unjournaled change
        throw;
      }
    }
    journal_.push_back(std::move(line));
    ++state_.journal_length;
  } catch (const Error& ex) {
    append_audit(actor, op, target, std::string(to_string(ex.code())));
    throw;
  } catch (const nlohmann::json::exception& ex) {
    append_audit(actor, op, target, "InvalidArgument");
    throw Error(ErrorCode::InvalidArgument, ex.what());
  }
  CommandResult out{std::move(result), 0};
  out.audit_id = append_audit(actor, op, target, "ok");
  return out;
}

IngestReport Engine::ingest(std::span<const BatchInput> batch, const Actor& actor) {
  std::string names;
  for (const auto& b : batch) names += (names.empty() ? "" : ",") + b.name;
  IngestReport report;
  try {
    std::unique_lock lock(mutex_);
    report = state_.events.ingest(batch, state_.registry,
                                  IngestOptions{now(), options_.clock_skew_seconds});
  } catch (const Error& ex) {
    append_audit(actor, "ingest", names, std::string(to_string(ex.code())));
    throw;
  }
  append_audit(actor, "ingest", names,
               "ok accepted=" + std::to_string(report.accepted) +
                   " duplicates=" + std::to_string(report.duplicates) +
                   " rejected=" + std::to_string(report.rejected.size()));
  return report;
}

std::int64_t Engine::audit(const Actor& actor, const std::string& command,
                           const std::string& target, const std::string& outcome) {
  return append_audit(actor, command, target, outcome);
}

std::int64_t Engine::append_audit(const Actor& actor, const std::string& command,
                                  const std::string& target, const std::string& outcome) {
  std::lock_guard lock(audit_mutex_);
  auto id = static_cast<std::int64_t>(audit_.size()) + 1;
  nlohmann::json entry = {{"id", id},           {"at", now().to_string()},
                          {"actor", actor.id},  {"role", actor.role},
                          {"channel", actor.channel}, {"command", command},
                          {"target", target},   {"outcome", outcome}};
  if (auto path = file("audit.jsonl")) append_line(*path, entry.dump());
  audit_.push_back(std::move(entry));
  return id;
}

std::vector<nlohmann::json> Engine::audit_log() const {
  std::lock_guard lock(audit_mutex_);
  return audit_;
}

std::vector<std::string> Engine::journal() const {
  std::shared_lock lock(mutex_);
  return journal_;
}

}  // namespace innermerit
