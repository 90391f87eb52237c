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

#include "innermerit/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

#include "innermerit/engine.hpp"
#include "innermerit/error.hpp"
#include "innermerit/honor.hpp"
#include "innermerit/service.hpp"
#include "innermerit/util.hpp"

namespace innermerit {

namespace {

struct Globals {
  std::string data_dir;
  std::string at;
  std::string actor = "cli";
};

class Session {
 public:
  Session(const Globals& g, const CliEnvironment& env) : globals_(g) {
    if (g.data_dir.empty()) {
      fail(ErrorCode::InvalidArgument, "no data directory: pass --data-dir or set INNERMERIT_DATA_DIR");
    }
    EngineOptions options;
    options.data_dir = g.data_dir;
    options.clock = env.clock;
    engine_ = std::make_unique<Engine>(std::move(options));
  }

  Engine& engine() { return *engine_; }
  Actor actor() const { return Actor{globals_.actor, "admin", "cli"}; }

  nlohmann::json run(nlohmann::json command) {
    if (!globals_.at.empty()) command["at"] = Timestamp::parse_or_throw(globals_.at).to_string();
    return engine_->execute(command, actor()).body;
  }

 private:
  const Globals& globals_;
  std::unique_ptr<Engine> engine_;
};

std::vector<BatchInput> read_batch(const std::vector<std::string>& files) {
  std::vector<BatchInput> batch;
  for (const auto& f : files) batch.push_back({f, read_file(f)});
  return batch;
}

// `recipient`, `recipient@rank`.
DecisionInput parse_pick(const std::string& text) {
  DecisionInput d;
  auto at = text.rfind('@');
  if (at == std::string::npos) {
    d.recipient = text;
  } else {
    d.recipient = text.substr(0, at);
    d.rank = static_cast<int>(parse_int64(text.substr(at + 1), "rank"));
  }
  if (d.recipient.empty()) fail(ErrorCode::InvalidArgument, "empty recipient in --pick");
  return d;
}

void print(std::ostream& out, const nlohmann::json& payload) { out << export_text(payload); }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const CliEnvironment& env) {
  CLI::App app{"InnerSource merit ledger and award cycles", "innermerit"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--data-dir", g.data_dir, "State directory")->envname("INNERMERIT_DATA_DIR");
  app.add_option("--at", g.at, "Timestamp recorded on commands (RFC-3339 UTC)");
  app.add_option("--actor", g.actor, "Actor id written to the audit log");

  std::function<void()> action;
  auto session = [&] { return Session(g, env); };

  // org
  auto* org = app.add_subcommand("org", "Organization registry")->require_subcommand(1);
  std::string import_file;
  auto* org_import = org->add_subcommand("import", "Import a registry bootstrap file");
  org_import->add_option("file", import_file)->required();
  org_import->callback([&] {
    action = [&] {
      Session s = session();
      std::string bytes = read_file(import_file);
      std::size_t line_no = 0, imported = 0;
      for (const auto& line : split(bytes, '\n')) {
        ++line_no;
        std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        nlohmann::json record = nlohmann::json::parse(t, nullptr, false);
        if (record.is_discarded()) {
          fail(ErrorCode::InvalidArgument, import_file + ":" + std::to_string(line_no) + ": not JSON");
        }
        try {
          s.run({{"op", "registry.record"}, {"record", record}});
        } catch (const Error& e) {
          throw Error(e.code(), import_file + ":" + std::to_string(line_no) + ": " + e.message());
        }
        ++imported;
      }
      out << "imported " << imported << " records\n";
      auto violations = s.engine().read([](const EngineState& st) {
        return st.registry.integrity_violations();
      });
      for (const auto& v : violations) err << "warning: " << v << "\n";
    };
  });
  std::string show_kind, show_id;
  auto* org_show = org->add_subcommand("show", "Show one registry entity");
  org_show->add_option("kind", show_kind, "Contributor, Department, Project or Committee")->required();
  org_show->add_option("id", show_id)->required();
  org_show->callback([&] {
    action = [&] {
      Session s = session();
      EntityKind kind = parse_entity_kind(show_kind);
      print(out, s.engine().read([&](const EngineState& st) {
        return to_json(st.registry.lookup(kind, show_id));
      }));
    };
  });

  // ingest
  std::vector<std::string> ingest_files;
  auto* ingest = app.add_subcommand("ingest", "Ingest contribution event files as one batch");
  ingest->add_option("files", ingest_files)->required();
  ingest->callback([&] {
    action = [&] {
      Session s = session();
      auto batch = read_batch(ingest_files);
      IngestReport r = s.engine().ingest(batch, s.actor());
      out << "accepted " << r.accepted << "\nduplicates " << r.duplicates << "\nrejected "
          << r.rejected.size() << "\n";
      for (const auto& rej : r.rejected) {
        out << "  " << to_string(rej.reason) << ": " << rej.detail << "\n";
      }
    };
  });

  // replay
  std::string replay_log, replay_out, replay_config;
  auto* replay_cmd = app.add_subcommand("replay", "Fold an event log into a ledger snapshot");
  replay_cmd->add_option("--log", replay_log)->required();
  replay_cmd->add_option("--out", replay_out)->required();
  replay_cmd->add_option("--config", replay_config, "Ledger config file");
  replay_cmd->callback([&] {
    action = [&] {
      LedgerConfig config;
      if (!replay_config.empty()) {
        config = load_ledger_config(replay_config);
      } else if (!g.data_dir.empty() &&
                 std::filesystem::exists(std::filesystem::path(g.data_dir) / "config.kv")) {
        config = load_ledger_config((std::filesystem::path(g.data_dir) / "config.kv").string());
      }
      config.validate();
      LedgerSnapshot snap = replay(read_file(replay_log), config);
      write_file_atomic(replay_out, snap.serialize());
      out << "events " << snap.event_count() << "\ncontributors " << snap.contributors().size()
          << "\n";
    };
  });

  // score
  auto* score = app.add_subcommand("score", "Ledger scores")->require_subcommand(1);
  std::string score_out;
  auto* recompute = score->add_subcommand("recompute", "Rebuild the ledger from the event log");
  recompute->add_option("--out", score_out, "Write the snapshot here instead of stdout");
  recompute->callback([&] {
    action = [&] {
      Session s = session();
      std::string text = s.engine().read([](const EngineState& st) {
        return st.snapshot().serialize();
      });
      if (score_out.empty()) {
        out << text;
      } else {
        write_file_atomic(score_out, text);
      }
    };
  });

  // leaderboard
  auto* board = app.add_subcommand("leaderboard", "Ranked contributors")->require_subcommand(1);
  std::size_t top_n = 10;
  std::string board_as_of;
  auto* top = board->add_subcommand("top", "Top N contributors");
  top->add_option("n", top_n)->required();
  top->add_option("--as-of", board_as_of, "YYYY-MM-DD or RFC-3339 instant");
  top->callback([&] {
    action = [&] {
      Session s = session();
      Timestamp t = resolve_as_of(board_as_of.empty() ? std::nullopt : std::optional(board_as_of),
                                  s.engine().now());
      print(out, s.engine().read([&](const EngineState& st) { return leaderboard(st, t, top_n); }));
    };
  });

  // role
  auto* role = app.add_subcommand("role", "Role progression")->require_subcommand(1);
  std::string rp_contributor, rp_project, rp_role, rp_proposer;
  auto* propose = role->add_subcommand("propose", "Propose a one-step promotion");
  propose->add_option("--contributor", rp_contributor)->required();
  propose->add_option("--project", rp_project)->required();
  propose->add_option("--role", rp_role, "Committer, Maintainer or PMCMember")->required();
  propose->add_option("--proposer", rp_proposer)->required();
  propose->callback([&] {
    action = [&] {
      Session s = session();
      print(out, s.run({{"op", "role.propose"},
                        {"contributor_id", rp_contributor},
                        {"project_id", rp_project},
                        {"role", rp_role},
                        {"proposer_id", rp_proposer}}));
    };
  });
  std::string rv_proposal, rv_voter;
  bool rv_approve = false, rv_reject = false;
  auto* vote = role->add_subcommand("vote", "Vote on a pending proposal");
  vote->add_option("proposal", rv_proposal)->required();
  vote->add_option("--voter", rv_voter)->required();
  auto* approve_flag = vote->add_flag("--approve", rv_approve);
  auto* reject_flag = vote->add_flag("--reject", rv_reject);
  approve_flag->excludes(reject_flag);
  vote->callback([&] {
    action = [&] {
      if (rv_approve == rv_reject) fail(ErrorCode::InvalidArgument, "pass --approve or --reject");
      Session s = session();
      print(out, s.run({{"op", "role.vote"},
                        {"proposal_id", rv_proposal},
                        {"voter_id", rv_voter},
                        {"approve", rv_approve}}));
    };
  });

  // maturity
  auto* maturity = app.add_subcommand("maturity", "Project maturity")->require_subcommand(1);
  std::string ma_project, ma_period;
  std::array<int, 4> ma_levels{};
  std::array<std::string, 4> ma_evidence;
  auto* assess = maturity->add_subcommand("assess", "Record a monthly assessment");
  assess->add_option("--project", ma_project)->required();
  assess->add_option("--period", ma_period, "YYYY-MM")->required();
  for (auto d : kAllDimensions) {
    auto i = static_cast<std::size_t>(d);
    std::string key(key_of(d));
    assess->add_option("--" + key, ma_levels[i], "Level 0-3")->required();
    assess->add_option("--" + key + "-evidence", ma_evidence[i]);
  }
  assess->callback([&] {
    action = [&] {
      Session s = session();
      nlohmann::json levels = nlohmann::json::object(), evidence = nlohmann::json::object();
      for (auto d : kAllDimensions) {
        auto i = static_cast<std::size_t>(d);
        levels[std::string(key_of(d))] = ma_levels[i];
        evidence[std::string(key_of(d))] = ma_evidence[i];
      }
      print(out, s.run({{"op", "maturity.assess"},
                        {"project_id", ma_project},
                        {"period", ma_period},
                        {"levels", levels},
                        {"evidence", evidence}}));
    };
  });
  std::string mr_period;
  auto* rank = maturity->add_subcommand("rank", "Rank a month's assessments");
  rank->add_option("--period", mr_period, "YYYY-MM")->required();
  rank->callback([&] {
    action = [&] {
      Session s = session();
      Period p = Period::parse_or_throw(mr_period);
      print(out, s.engine().read([&](const EngineState& st) { return maturity_ranking(st, p); }));
    };
  });

  // cycle
  auto* cycle = app.add_subcommand("cycle", "Award cycles")->require_subcommand(1);
  std::string c_kind, c_period;
  std::vector<std::string> c_picks, c_rationales, c_committee;
  std::int64_t c_pool = 0;
  auto add_key = [&](CLI::App* sub) {
    sub->add_option("kind", c_kind, "Star, Knight, TimelyIncentive, GoldBadge or BlackLand")
        ->required();
    sub->add_option("period", c_period, "YYYY-MM or YYYY")->required();
  };
  auto cycle_command = [&](const char* op) {
    return nlohmann::json{{"op", op}, {"kind", c_kind}, {"period", c_period}};
  };
  for (const char* verb : {"open", "slate"}) {
    auto* sub = cycle->add_subcommand(verb, std::string(verb) == "open" ? "Open a cycle"
                                                                        : "Compute the slate");
    add_key(sub);
    std::string op = std::string("cycle.") + verb;
    sub->callback([&, op] {
      action = [&, op] {
        Session s = session();
        nlohmann::json body = s.run(cycle_command(op.c_str()));
        if (body.contains("warning")) err << "warning: " << body["warning"].get<std::string>() << "\n";
        print(out, body);
      };
    });
  }
  auto* decide = cycle->add_subcommand("decide", "Record the committee's decisions");
  add_key(decide);
  decide->add_option("--pick", c_picks, "recipient or recipient@rank");
  decide->add_option("--rationale", c_rationales, "recipient=text");
  decide->add_option("--committee", c_committee, "Deciding committee member ids")->required();
  decide->callback([&] {
    action = [&] {
      std::map<std::string, std::string> rationale;
      for (const auto& r : c_rationales) {
        auto eq = r.find('=');
        if (eq == std::string::npos) fail(ErrorCode::InvalidArgument, "--rationale needs recipient=text");
        rationale[r.substr(0, eq)] = r.substr(eq + 1);
      }
      nlohmann::json decisions = nlohmann::json::array();
      for (const auto& p : c_picks) {
        DecisionInput d = parse_pick(p);
        nlohmann::json j = {{"recipient", d.recipient}, {"rank", d.rank}};
        if (auto it = rationale.find(d.recipient); it != rationale.end()) j["rationale"] = it->second;
        decisions.push_back(j);
      }
      Session s = session();
      nlohmann::json command = cycle_command("cycle.decide");
      command["decisions"] = decisions;
      command["committee_member_ids"] = c_committee;
      print(out, s.run(command));
    };
  });
  auto* finalize = cycle->add_subcommand("finalize", "Price decisions and close the cycle");
  add_key(finalize);
  finalize->add_option("--pool", c_pool, "Annual incentive pool")->required();
  finalize->callback([&] {
    action = [&] {
      Session s = session();
      nlohmann::json command = cycle_command("cycle.finalize");
      command["pool"] = c_pool;
      print(out, s.run(command));
    };
  });
  auto* cshow = cycle->add_subcommand("show", "Show a cycle");
  add_key(cshow);
  cshow->callback([&] {
    action = [&] {
      Session s = session();
      CycleKey key{parse_award_kind(c_kind), Period::parse_or_throw(c_period)};
      print(out, s.engine().read([&](const EngineState& st) { return cycle_detail(st, key); }));
    };
  });

  // budget
  auto* budget = app.add_subcommand("budget", "Budget ledger")->require_subcommand(1);
  int b_year = 0;
  auto* report = budget->add_subcommand("report", "Fiscal year report");
  report->add_option("--year", b_year)->required();
  report->callback([&] {
    action = [&] {
      Session s = session();
      print(out, s.engine().read([&](const EngineState& st) { return budget_report(st, b_year); }));
    };
  });

  // wall / profile
  std::string w_as_of, w_out;
  auto* wall = app.add_subcommand("wall", "Export the Wall of Honor");
  wall->add_option("--as-of", w_as_of, "YYYY-MM-DD or RFC-3339 instant");
  wall->add_option("--out", w_out, "Write the export here instead of stdout");
  wall->callback([&] {
    action = [&] {
      Session s = session();
      Timestamp t = resolve_as_of(w_as_of.empty() ? std::nullopt : std::optional(w_as_of),
                                  s.engine().now());
      std::string text = export_text(
          s.engine().read([&](const EngineState& st) { return wall_of_honor(st, t); }));
      if (w_out.empty()) {
        out << text;
      } else {
        write_file_atomic(w_out, text);
      }
    };
  });
  std::string p_id, p_as_of;
  auto* profile = app.add_subcommand("profile", "Export a contributor profile");
  profile->add_option("id", p_id)->required();
  profile->add_option("--as-of", p_as_of, "YYYY-MM-DD or RFC-3339 instant");
  profile->callback([&] {
    action = [&] {
      Session s = session();
      Timestamp t = resolve_as_of(p_as_of.empty() ? std::nullopt : std::optional(p_as_of),
                                  s.engine().now());
      print(out, s.engine().read([&](const EngineState& st) {
        return contributor_profile(st, p_id, t);
      }));
    };
  });

  // audit
  auto* audit = app.add_subcommand("audit", "Print the audit log");
  audit->callback([&] {
    action = [&] {
      Session s = session();
      for (const auto& entry : s.engine().audit_log()) out << entry.dump() << "\n";
    };
  });

  // serve
  std::string addr = "127.0.0.1:8080", token_file;
  auto* serve_cmd = app.add_subcommand("serve", "Serve the HTTP JSON API");
  serve_cmd->add_option("--addr", addr, "host:port");
  serve_cmd->add_option("--token-file", token_file, "Lines of `token member|admin actor`")
      ->required();
  serve_cmd->callback([&] {
    action = [&] {
      Session s = session();
      TokenTable tokens = load_tokens(token_file);
      err << "listening on " << addr << "\n";
      serve(s.engine(), tokens, addr);
    };
  });

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.push_back("innermerit");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_storage) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }
  try {
    if (action) action();
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace innermerit
