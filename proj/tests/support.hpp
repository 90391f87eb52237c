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

#include <unistd.h>

#include <algorithm>
#include <cstdio>
#include <optional>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "innermerit/awards.hpp"
#include "innermerit/engine.hpp"
#include "innermerit/event_log.hpp"
#include "innermerit/events.hpp"
#include "innermerit/ledger.hpp"
#include "innermerit/maturity.hpp"
#include "innermerit/registry.hpp"
#include "innermerit/roles.hpp"
#include "innermerit/time.hpp"

namespace innermerit::testing {

inline Timestamp ts(std::string_view text) { return Timestamp::parse_or_throw(text); }

inline std::string pad(int i, int width) {
  std::string s = std::to_string(i);
  return std::string(s.size() < static_cast<std::size_t>(width) ? width - s.size() : 0, '0') + s;
}
inline std::string contributor_id(int i) { return "c" + pad(i, 3); }
inline std::string project_id(int i) { return "p" + pad(i, 2); }
inline std::string department_id(int i) { return "d" + std::to_string(i); }
inline std::string region_name(int i) { return "Region-" + std::to_string(i); }
inline std::string tcc_id(int i) { return "tcc-" + std::to_string(i); }

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("innermerit-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string str() const { return path_.string(); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

// One department (and product line, and TCC) per region, contributors dealt
// round-robin over departments, every project past Preparation with a
// three-member PMC. TC members are the first three contributors.
struct OrgShape {
  int regions = 3;
  int contributors = 20;
  int projects = 10;
};

inline Timestamp org_epoch() { return ts("2020-01-01T00:00:00Z"); }

// Registry bootstrap records for `shape`, in dependency order.
inline std::vector<nlohmann::json> org_records(const OrgShape& shape) {
  const std::string t0 = org_epoch().to_string();
  std::vector<nlohmann::json> out;
  for (int d = 0; d < shape.regions; ++d) {
    out.push_back({{"kind", "Department"},
                   {"id", department_id(d)},
                   {"name", "Dept " + std::to_string(d)},
                   {"region", region_name(d)},
                   {"product_line", "line-" + std::to_string(d)}});
  }
  for (int c = 0; c < shape.contributors; ++c) {
    out.push_back({{"kind", "Contributor"},
                   {"id", contributor_id(c)},
                   {"display_name", "Contributor " + std::to_string(c)},
                   {"department_id", department_id(c % shape.regions)},
                   {"joined_at", t0},
                   {"intro", "Works on things " + std::to_string(c)},
                   {"interests", {"topic-" + std::to_string(c % 4)}}});
  }
  std::vector<std::string> tc;
  for (int c = 0; c < std::min(3, shape.contributors); ++c) tc.push_back(contributor_id(c));
  out.push_back({{"kind", "Committee"}, {"id", "tc"}, {"committee_kind", "TC"},
                 {"member_ids", tc}, {"formed_at", t0}});
  for (int d = 0; d < shape.regions && d < shape.contributors; ++d) {
    out.push_back({{"kind", "Committee"},
                   {"id", tcc_id(d)},
                   {"committee_kind", "TCC"},
                   {"scope", "line-" + std::to_string(d)},
                   {"member_ids", {contributor_id(d)}},
                   {"formed_at", t0}});
  }
  for (int p = 0; p < shape.projects; ++p) {
    std::vector<std::string> pmc;
    for (int k = 0; k < 3; ++k) {
      std::string id = contributor_id((3 * p + k) % shape.contributors);
      if (std::find(pmc.begin(), pmc.end(), id) == pmc.end()) pmc.push_back(id);
    }
    out.push_back({{"kind", "Project"},
                   {"id", project_id(p)},
                   {"name", "Project " + std::to_string(p)},
                   {"owning_department_id", department_id(p % shape.regions)},
                   {"pmc_member_ids", pmc},
                   {"created_at", t0}});
    out.push_back({{"kind", "PhaseAdvance"},
                   {"project_id", project_id(p)},
                   {"phase", "Incubation"},
                   {"at", org_epoch().plus_seconds(60).to_string()}});
  }
  return out;
}

inline Registry make_org(const OrgShape& shape) {
  Registry r;
  for (const auto& record : org_records(shape)) apply_registry_record(r, record);
  return r;
}

inline ContributionEvent make_event(std::string id, std::string contributor, std::string project,
                                    ContributionKind kind, Timestamp at, std::int64_t magnitude = 1) {
  return ContributionEvent{std::move(id), std::move(contributor), std::move(project), kind, at,
                           magnitude, "test"};
}

// Random events over `year`, sorted in log order. Every contributor gets at
// least one event in every month.
inline std::vector<ContributionEvent> random_year_events(std::mt19937_64& rng, const OrgShape& shape,
                                                         int year, int extra_per_month) {
  std::vector<ContributionEvent> events;
  int seq = 0;
  for (int m = 1; m <= 12; ++m) {
    Period month = Period::of_month(year, m);
    std::int64_t span = month.end().epoch_seconds() - month.begin().epoch_seconds();
    auto at = [&] {
      return month.begin().plus_seconds(static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(span)));
    };
    auto kind = [&] { return kAllContributionKinds[rng() % kContributionKindCount]; };
    for (int c = 0; c < shape.contributors; ++c) {
      events.push_back(make_event("e" + std::to_string(seq++), contributor_id(c),
                                  project_id(static_cast<int>(rng() % shape.projects)), kind(),
                                  at(), 1 + static_cast<std::int64_t>(rng() % 5)));
    }
    for (int i = 0; i < extra_per_month; ++i) {
      events.push_back(make_event("e" + std::to_string(seq++),
                                  contributor_id(static_cast<int>(rng() % shape.contributors)),
                                  project_id(static_cast<int>(rng() % shape.projects)), kind(),
                                  at(), 1 + static_cast<std::int64_t>(rng() % 5)));
    }
  }
  std::sort(events.begin(), events.end(), log_order_less);
  return events;
}

// Assessments for every project in every month of `year`.
inline void assess_year(MaturityBook& book, const Registry& registry, std::mt19937_64& rng,
                        const OrgShape& shape, int year) {
  for (int m = 1; m <= 12; ++m) {
    Period month = Period::of_month(year, m);
    for (int p = 0; p < shape.projects; ++p) {
      std::array<int, 4> levels{};
      for (auto& l : levels) l = static_cast<int>(rng() % 4);
      book.assess(registry, project_id(p), month, levels, {}, month.end().plus_seconds(-3600));
    }
  }
}

// Picks the first `slots` slate entries of each rank group, in slate order.
inline std::vector<DecisionInput> take_slate(const AwardCycle& cycle, const AwardCatalogEntry& entry) {
  std::vector<DecisionInput> picks;
  std::size_t next = 0;
  for (const auto& g : entry.groups) {
    for (std::int64_t s = 0; s < g.slots && next < cycle.slate.size(); ++s) {
      picks.push_back({cycle.slate[next++].recipient, g.rank, ""});
    }
  }
  return picks;
}

// Everything award cycles read, assembled without an engine.
struct World {
  OrgShape shape;
  LedgerConfig config;
  Registry registry;
  std::vector<ContributionEvent> events;
  RoleBook roles;
  MaturityBook maturity;
  AwardBook awards;

  SlateInputs inputs() const { return SlateInputs{registry, events, config.weights, roles, maturity}; }
};

inline World make_world(std::uint64_t seed, const OrgShape& shape, int year, int extra_per_month,
                        AwardCatalog catalog = AwardCatalog::defaults()) {
  std::mt19937_64 rng(seed);
  World w{shape, LedgerConfig{}, make_org(shape), {}, RoleBook{}, MaturityBook{},
          AwardBook(std::move(catalog))};
  w.events = random_year_events(rng, shape, year, extra_per_month);
  assess_year(w.maturity, w.registry, rng, shape, year);
  return w;
}

inline const std::vector<std::string>& deciders() {
  static const std::vector<std::string> ids = {contributor_id(0)};
  return ids;
}

// open -> slate -> decide -> finalize. Default picks fill every slot from the
// top of the slate.
inline const AwardCycle& run_cycle(World& w, AwardKind kind, Period period, std::int64_t pool,
                                   std::optional<std::vector<DecisionInput>> picks = std::nullopt) {
  Timestamp at = period.end();
  CycleKey key{kind, period};
  w.awards.open_cycle(kind, period, at);
  const AwardCycle& slated =
      w.awards.record_slate(key, w.awards.compute_slate(key, w.inputs()), at.plus_seconds(1));
  auto chosen = picks ? *picks : take_slate(slated, w.awards.catalog().entry(kind));
  w.awards.record_decisions(key, chosen, deciders(), w.registry, at.plus_seconds(2));
  const AwardCycle& done = w.awards.finalize_cycle(key, pool, at.plus_seconds(3));
  if (kind == AwardKind::TimelyIncentive) w.maturity.freeze(period);
  return done;
}

inline void run_full_year(World& w, int year, std::int64_t pool) {
  for (int m = 1; m <= 12; ++m) {
    run_cycle(w, AwardKind::Star, Period::of_month(year, m), pool);
    run_cycle(w, AwardKind::TimelyIncentive, Period::of_month(year, m), pool);
  }
  run_cycle(w, AwardKind::Knight, Period::of_year(year), pool);
  run_cycle(w, AwardKind::GoldBadge, Period::of_year(year), pool);
  run_cycle(w, AwardKind::BlackLand, Period::of_year(year), pool);
}

// Engine with an in-memory or on-disk state and a clock pinned to `now`.
inline EngineOptions pinned_options(std::optional<std::string> data_dir, Timestamp now) {
  EngineOptions o;
  o.data_dir = std::move(data_dir);
  o.clock = [now] { return now; };
  return o;
}

inline void bootstrap(Engine& engine, const OrgShape& shape) {
  for (const auto& record : org_records(shape)) {
    engine.execute({{"op", "registry.record"}, {"record", record}, {"at", org_epoch().to_string()}},
                   Actor{});
  }
}

// Drives a full fiscal year through engine commands: ingest, assessments,
// then every cycle at full slots from the top of its slate.
inline void drive_year(Engine& engine, std::uint64_t seed, const OrgShape& shape, int year,
                       std::int64_t pool) {
  std::mt19937_64 rng(seed);
  auto events = random_year_events(rng, shape, year, 40);
  std::vector<BatchInput> batch{{"year.log", serialize_event_file(events)}};
  engine.ingest(batch, Actor{});
  for (int m = 1; m <= 12; ++m) {
    Period month = Period::of_month(year, m);
    for (int p = 0; p < shape.projects; ++p) {
      nlohmann::json levels = nlohmann::json::object();
      for (auto d : kAllDimensions) levels[std::string(key_of(d))] = static_cast<int>(rng() % 4);
      engine.execute({{"op", "maturity.assess"},
                      {"project_id", project_id(p)},
                      {"period", month.to_string()},
                      {"levels", levels},
                      {"at", month.end().plus_seconds(-3600).to_string()}},
                     Actor{});
    }
  }
  auto cycle = [&](AwardKind kind, Period period) {
    std::string k(to_string(kind));
    Timestamp at = period.end();
    nlohmann::json base = {{"kind", k}, {"period", period.to_string()}};
    auto cmd = [&](const char* op, Timestamp t) {
      nlohmann::json c = base;
      c["op"] = op;
      c["at"] = t.to_string();
      return c;
    };
    engine.execute(cmd("cycle.open", at), Actor{});
    nlohmann::json slated = engine.execute(cmd("cycle.slate", at.plus_seconds(1)), Actor{}).body;
    nlohmann::json decisions = nlohmann::json::array();
    std::size_t next = 0;
    const auto& entry = engine.read([&](const EngineState& s) { return s.awards.catalog().entry(kind); });
    for (const auto& g : entry.groups) {
      for (std::int64_t i = 0; i < g.slots && next < slated["slate"].size(); ++i) {
        decisions.push_back({{"recipient", slated["slate"][next++]["recipient"]}, {"rank", g.rank}});
      }
    }
    nlohmann::json decide = cmd("cycle.decide", at.plus_seconds(2));
    decide["decisions"] = decisions;
    decide["committee_member_ids"] = deciders();
    engine.execute(decide, Actor{});
    nlohmann::json fin = cmd("cycle.finalize", at.plus_seconds(3));
    fin["pool"] = pool;
    engine.execute(fin, Actor{});
  };
  for (int m = 1; m <= 12; ++m) {
    cycle(AwardKind::Star, Period::of_month(year, m));
    cycle(AwardKind::TimelyIncentive, Period::of_month(year, m));
  }
  cycle(AwardKind::Knight, Period::of_year(year));
  cycle(AwardKind::GoldBadge, Period::of_year(year));
  cycle(AwardKind::BlackLand, Period::of_year(year));
}

}  // namespace innermerit::testing
