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

// Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
// failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "../support.hpp"
#include "innermerit/error.hpp"
#include "innermerit/honor.hpp"
#include "innermerit/util.hpp"

namespace im = innermerit;
namespace t = innermerit::testing;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

template <class F>
bool throws_code(im::ErrorCode code, F&& f) {
  try {
    f();
  } catch (const im::Error& e) {
    return e.code() == code;
  }
  return false;
}

// Budget conservation over a full year at pool 1,000,000.
Outcome budget_conservation() {
  auto start = std::chrono::steady_clock::now();
  t::World w = t::make_world(7, {3, 20, 10}, 2021, 40);
  t::run_full_year(w, 2021, 1'000'000);
  im::YearReport report = w.awards.year_report(2021);
  double elapsed = seconds_since(start);

  // Re-sum every finalized decision independently of the report.
  std::map<im::AwardKind, std::int64_t> by_kind;
  std::int64_t total = 0;
  std::int64_t filled = 0;
  for (const auto& [key, c] : w.awards.cycles()) {
    for (const auto& d : c.decisions) {
      by_kind[key.kind] += d.monetary_amount;
      total += d.monetary_amount;
      ++filled;
    }
  }
  const std::map<im::AwardKind, std::int64_t> expected = {
      {im::AwardKind::Star, 300'000},      {im::AwardKind::Knight, 240'000},
      {im::AwardKind::TimelyIncentive, 150'000}, {im::AwardKind::GoldBadge, 220'000},
      {im::AwardKind::BlackLand, 90'000}};
  // 120 Star + 10 Knight + 60 Timely + 9 Gold Badge + 3 Black Land slots.
  bool ok = total == 1'000'000 && report.allocated_amount == 1'000'000 && report.remainder == 0 &&
            by_kind == expected && filled == 202 && elapsed < 1.0;
  for (const auto& k : report.kinds) ok = ok && k.allocated_amount == expected.at(k.kind);
  std::ostringstream d;
  d << "total=" << total << " remainder=" << report.remainder << " star=" << by_kind[im::AwardKind::Star]
    << " knight=" << by_kind[im::AwardKind::Knight]
    << " timely=" << by_kind[im::AwardKind::TimelyIncentive]
    << " gold_badge=" << by_kind[im::AwardKind::GoldBadge]
    << " black_land=" << by_kind[im::AwardKind::BlackLand] << " slots=" << filled
    << " time=" << elapsed << "s";
  return {ok, d.str()};
}

// Random catalog overrides; accepted iff the independently computed annual
// total is exactly 10000 bp.
Outcome catalog_validation() {
  struct Field {
    std::string prefix;
    std::int64_t slots;
    std::int64_t bp;
    std::int64_t periods;  // 12 for monthly kinds
  };
  const std::vector<Field> base = {
      {"star.", 10, 25, 12},           {"knight.", 10, 240, 1},
      {"timely_incentive.", 5, 25, 12}, {"gold_badge.rank1.", 1, 500, 1},
      {"gold_badge.rank2.", 3, 400, 1}, {"gold_badge.rank3.", 5, 100, 1},
      {"black_land.", 3, 300, 1}};
  std::mt19937_64 rng(20210701);
  int false_accepts = 0, false_rejects = 0, conserving = 0, rejected = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<Field> f = base;
    im::KeyValues kv;
    int mode = static_cast<int>(rng() % 3);
    if (mode == 0) {
      // Arbitrary changes to one to three fields.
      int changes = 1 + static_cast<int>(rng() % 3);
      for (int c = 0; c < changes; ++c) {
        auto& x = f[rng() % f.size()];
        if (rng() % 2) {
          x.slots = static_cast<std::int64_t>(rng() % 16);
        } else {
          x.bp = static_cast<std::int64_t>(rng() % 600);
        }
      }
    } else if (mode == 1) {
      // Move basis points between two annual groups; conserving when in range.
      auto& a = f[1];
      auto& b = f[6];
      std::int64_t delta = static_cast<std::int64_t>(rng() % 61) - 30;
      a.bp += delta * 3;
      b.bp -= delta * 10;
      if (rng() % 4 == 0) b.bp += 1;
    } else {
      // Off-by-one from a conserving catalog.
      auto& x = f[rng() % f.size()];
      x.bp += (rng() % 2) ? 1 : -1;
    }
    for (std::size_t i = 0; i < f.size(); ++i) {
      if (f[i].slots != base[i].slots || rng() % 3 == 0) kv[f[i].prefix + "slots"] = std::to_string(f[i].slots);
      if (f[i].bp != base[i].bp || rng() % 3 == 0) kv[f[i].prefix + "bp"] = std::to_string(f[i].bp);
    }
    bool in_range = true;
    std::int64_t oracle = 0;
    for (const auto& x : f) {
      in_range = in_range && x.slots >= 0 && x.bp >= 0;
      oracle += x.slots * x.bp * x.periods;
    }
    bool should_accept = in_range && oracle == 10'000;
    bool accepted = true;
    try {
      im::AwardCatalog::from_key_values(kv);
    } catch (const im::Error& e) {
      accepted = false;
      ++rejected;
    }
    if (accepted && !should_accept) ++false_accepts;
    if (!accepted && should_accept) ++false_rejects;
    if (should_accept) ++conserving;
  }
  std::ostringstream d;
  d << "trials=1000 false_accepts=" << false_accepts << " false_rejects=" << false_rejects
    << " conserving=" << conserving << " rejected=" << rejected;
  return {false_accepts == 0 && false_rejects == 0 && conserving > 0 && rejected > 0, d.str()};
}

// Knight recipients always hold a same-year Star; violating picks error.
Outcome knight_subset_of_star() {
  int seeds = 0, knights = 0, violations_tried = 0, violations_caught = 0, leaks = 0;
  for (std::uint64_t seed = 1; seed <= 100; ++seed) {
    std::mt19937_64 rng(seed);
    t::OrgShape shape{3, 12 + static_cast<int>(rng() % 10), 6};
    t::World w = t::make_world(seed * 7919, shape, 2022, 10);
    for (int m = 1; m <= 12; ++m) {
      if (rng() % 3 == 0) continue;  // some months have no Star cycle
      im::Period month = im::Period::of_month(2022, m);
      w.awards.open_cycle(im::AwardKind::Star, month, month.end());
      im::CycleKey key{im::AwardKind::Star, month};
      const auto& c = w.awards.record_slate(key, w.awards.compute_slate(key, w.inputs()), month.end());
      std::vector<im::DecisionInput> picks;
      std::size_t n = rng() % 11;
      for (std::size_t i = 0; i < n && i < c.slate.size(); ++i) picks.push_back({c.slate[i].recipient, 0, ""});
      w.awards.record_decisions(key, picks, t::deciders(), w.registry, month.end());
      w.awards.finalize_cycle(key, 1'000'000, month.end().plus_seconds(1));
    }
    // Independent view of Star holders from the finalized cycles.
    std::set<std::string> holders;
    for (const auto& [key, c] : w.awards.cycles()) {
      if (key.kind != im::AwardKind::Star || c.status != im::CycleStatus::Finalized) continue;
      for (const auto& d : c.decisions) holders.insert(d.recipient);
    }
    im::Period year = im::Period::of_year(2022);
    im::CycleKey key{im::AwardKind::Knight, year};
    w.awards.open_cycle(im::AwardKind::Knight, year, year.end());
    w.awards.record_slate(key, w.awards.compute_slate(key, w.inputs()), year.end());

    std::vector<std::string> outsiders;
    for (int c = 0; c < shape.contributors; ++c) {
      if (!holders.count(t::contributor_id(c))) outsiders.push_back(t::contributor_id(c));
    }
    if (!outsiders.empty()) {
      std::vector<im::DecisionInput> bad = {{outsiders[rng() % outsiders.size()], 0, "attempt"}};
      if (!holders.empty()) bad.insert(bad.begin(), {*holders.begin(), 0, "x"});
      ++violations_tried;
      if (throws_code(im::ErrorCode::KnightWithoutStar, [&] {
            w.awards.record_decisions(key, bad, t::deciders(), w.registry, year.end());
          })) {
        ++violations_caught;
      }
    }
    std::vector<im::DecisionInput> picks;
    for (const auto& h : holders) {
      if (picks.size() < 10 && rng() % 2) picks.push_back({h, 0, "chosen"});
    }
    w.awards.record_decisions(key, picks, t::deciders(), w.registry, year.end());
    const auto& done = w.awards.finalize_cycle(key, 1'000'000, year.end().plus_seconds(1));
    for (const auto& d : done.decisions) {
      ++knights;
      if (!holders.count(d.recipient)) ++leaks;
    }
    ++seeds;
  }
  std::ostringstream d;
  d << "seeds=" << seeds << " knights=" << knights << " leaks=" << leaks
    << " violations=" << violations_caught << "/" << violations_tried;
  return {seeds >= 100 && leaks == 0 && violations_tried > 0 && violations_caught == violations_tried,
          d.str()};
}

// Over-cap recipient lists always error, both when decided and at the
// finalization re-check; exactly-at-cap lists pass.
Outcome slot_caps() {
  t::OrgShape shape{4, 24, 12};
  int checks = 0, failures = 0;
  std::ostringstream d;
  const im::AwardCatalog catalog = im::AwardCatalog::defaults();
  for (auto kind : im::kAllAwardKinds) {
    const auto& entry = catalog.entry(kind);
    for (const auto& g : entry.groups) {
      t::World w = t::make_world(11, shape, 2023, 20);
      // Two Star months with disjoint recipients give 20 Star holders.
      if (kind == im::AwardKind::Knight) {
        for (int m = 1; m <= 2; ++m) {
          std::vector<im::DecisionInput> picks;
          for (int c = 0; c < 10; ++c) picks.push_back({t::contributor_id((m - 1) * 10 + c), 0, "x"});
          t::run_cycle(w, im::AwardKind::Star, im::Period::of_month(2023, m), 1'000'000, picks);
        }
      }
      im::Period period = entry.cadence == im::Cadence::Monthly ? im::Period::of_month(2023, 6)
                                                                : im::Period::of_year(2023);
      im::CycleKey key{kind, period};
      w.awards.open_cycle(kind, period, period.end());
      const auto& c = w.awards.record_slate(key, w.awards.compute_slate(key, w.inputs()), period.end());
      std::vector<std::string> pool_ids;
      for (const auto& s : c.slate) pool_ids.push_back(s.recipient);
      if (pool_ids.size() < static_cast<std::size_t>(g.slots + 1)) {
        d << " short-slate:" << im::to_string(kind);
        ++failures;
        continue;
      }
      // Fill other rank groups to their cap so only this group overflows.
      auto picks_with = [&](std::int64_t n) {
        std::vector<im::DecisionInput> picks;
        std::size_t next = 0;
        for (std::int64_t i = 0; i < n; ++i) picks.push_back({pool_ids[next++], g.rank, "x"});
        return picks;
      };
      for (std::int64_t over = g.slots + 1; over <= std::min<std::int64_t>(g.slots + 3, pool_ids.size()); ++over) {
        ++checks;
        if (!throws_code(im::ErrorCode::TooManyRecipients, [&] {
              w.awards.record_decisions(key, picks_with(over), t::deciders(), w.registry, period.end());
            })) {
          ++failures;
        }
        // The finalization guard sees the same over-cap list.
        std::vector<im::AwardDecision> decided;
        for (const auto& p : picks_with(over)) {
          im::AwardDecision x;
          x.kind = kind;
          x.period = period;
          x.recipient = p.recipient;
          x.rank = p.rank;
          decided.push_back(x);
        }
        ++checks;
        if (!throws_code(im::ErrorCode::TooManyRecipients, [&] { im::check_slot_caps(entry, decided); })) {
          ++failures;
        }
      }
      // Exactly at cap decides and finalizes.
      ++checks;
      try {
        w.awards.record_decisions(key, picks_with(g.slots), t::deciders(), w.registry, period.end());
        w.awards.finalize_cycle(key, 1'000'000, period.end().plus_seconds(1));
      } catch (const im::Error& e) {
        d << " at-cap:" << e.what();
        ++failures;
      }
    }
  }
  std::ostringstream out;
  out << "checks=" << checks << " failures=" << failures << d.str();
  return {failures == 0 && checks > 0, out.str()};
}

// Running totals never decrease; final totals match an independent fold and
// do not depend on event order.
Outcome ledger_monotonicity() {
  const std::map<im::ContributionKind, std::int64_t> weight = {
      {im::ContributionKind::Code, 10},      {im::ContributionKind::Review, 3},
      {im::ContributionKind::IssueReport, 2}, {im::ContributionKind::Documentation, 4},
      {im::ContributionKind::Discussion, 1}, {im::ContributionKind::Mentoring, 5},
      {im::ContributionKind::Evangelism, 2}};
  int decreases = 0, mismatches = 0, permutation_mismatches = 0;
  std::int64_t events_total = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<im::ContributionEvent> log;
    for (int i = 0; i < 10'000; ++i) {
      log.push_back(t::make_event("e" + std::to_string(i), t::contributor_id(static_cast<int>(rng() % 60)),
                                  t::project_id(static_cast<int>(rng() % 8)),
                                  im::kAllContributionKinds[rng() % im::kContributionKindCount],
                                  im::Timestamp(1'600'000'000 + static_cast<std::int64_t>(rng() % 50'000'000)),
                                  1 + static_cast<std::int64_t>(rng() % 100)));
    }
    std::sort(log.begin(), log.end(), im::log_order_less);
    events_total += static_cast<std::int64_t>(log.size());

    im::LedgerSnapshot running;
    std::map<std::string, std::int64_t> last;
    for (const auto& e : log) {
      running.apply(e);
      std::int64_t now = running.find(e.contributor_id)->total_points;
      if (now < last[e.contributor_id]) ++decreases;
      last[e.contributor_id] = now;
      for (const auto& [id, state] : running.contributors()) {
        if (state.total_points < last[id]) ++decreases;
      }
    }

    std::map<std::string, std::int64_t> oracle;
    for (const auto& e : log) oracle[e.contributor_id] += weight.at(e.kind) * e.magnitude;

    std::vector<im::ContributionEvent> shuffled = log;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    im::LedgerSnapshot permuted;
    for (const auto& e : shuffled) permuted.apply(e);

    for (const auto& [id, pts] : oracle) {
      if (running.find(id) == nullptr || running.find(id)->total_points != pts) ++mismatches;
      if (permuted.find(id) == nullptr || permuted.find(id)->total_points != pts) ++permutation_mismatches;
    }
    if (running.contributors().size() != oracle.size()) ++mismatches;
  }
  std::ostringstream d;
  d << "logs=5 events=" << events_total << " decreases=" << decreases << " fold_mismatches=" << mismatches
    << " permutation_mismatches=" << permutation_mismatches;
  return {decreases == 0 && mismatches == 0 && permutation_mismatches == 0, d.str()};
}

Outcome tier_geometry() {
  auto start = std::chrono::steady_clock::now();
  im::TierConfig tiers = im::TierConfig::defaults();
  const std::vector<std::int64_t> expected = {0, 100, 400, 1600, 6400};
  const std::vector<std::string> names = {"Bronze", "Silver", "Gold", "Platinum", "Diamond"};
  bool ok = tiers.names == names;
  for (std::size_t i = 0; i < expected.size(); ++i) ok = ok && tiers.threshold(i) == expected[i];
  int disagreements = 0;
  for (std::int64_t p = 0; p <= 10'000; ++p) {
    std::size_t scan = 0;
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (expected[i] <= p) scan = i;
    }
    if (tiers.tier_index_for(p) != scan || tiers.tier_for(p) != names[scan]) ++disagreements;
  }
  double elapsed = seconds_since(start);
  std::ostringstream d;
  d << "thresholds=" << tiers.threshold(0) << "/" << tiers.threshold(1) << "/" << tiers.threshold(2) << "/"
    << tiers.threshold(3) << "/" << tiers.threshold(4) << " disagreements=" << disagreements
    << " time=" << elapsed << "s";
  return {ok && disagreements == 0 && elapsed < 1.0, d.str()};
}

// Replay the same log twice and rebuild the wall from a reopened data dir.
Outcome replay_determinism() {
  t::TempDir dir;
  im::Timestamp now = t::ts("2022-03-01T00:00:00Z");
  t::OrgShape shape{3, 20, 10};
  std::string wall_a, snapshot_a;
  {
    im::Engine engine(t::pinned_options(dir.str(), now));
    t::bootstrap(engine, shape);
    t::drive_year(engine, 99, shape, 2021, 1'000'000);
    wall_a = im::export_text(engine.read([&](const im::EngineState& s) {
      return im::wall_of_honor(s, im::resolve_as_of(std::string("2022-01-31"), now));
    }));
    snapshot_a = engine.read([](const im::EngineState& s) { return s.snapshot().serialize(); });
  }
  std::string log = im::read_file(dir.file("events.log"));
  std::string replay_1 = im::replay(log).serialize();
  std::string replay_2 = im::replay(log).serialize();

  im::Engine reopened(t::pinned_options(dir.str(), now));
  std::string wall_b = im::export_text(reopened.read([&](const im::EngineState& s) {
    return im::wall_of_honor(s, im::resolve_as_of(std::string("2022-01-31"), now));
  }));
  bool ok = replay_1 == replay_2 && replay_1 == snapshot_a && wall_a == wall_b;
  auto parsed = nlohmann::json::parse(wall_a);
  bool populated = parsed["annual_awards"].contains("2021") && parsed["monthly_awards"].size() == 12;
  std::ostringstream d;
  d << "log_bytes=" << log.size() << " snapshot_sha=" << im::sha256_hex(replay_1).substr(0, 12)
    << " wall_sha=" << im::sha256_hex(wall_a).substr(0, 12) << " wall_rebuilt_sha="
    << im::sha256_hex(wall_b).substr(0, 12);
  return {ok && populated, d.str()};
}

// Engine ranking vs an O(n^2) count of who beats whom.
Outcome leaderboard_oracle() {
  std::mt19937_64 rng(424242);
  int mismatches = 0, ties = 0;
  std::int64_t entries = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::size_t n = 1 + rng() % 500;
    std::int64_t point_range = 1 + static_cast<std::int64_t>(rng() % 40);
    std::vector<im::Standing> pop;
    std::set<std::string> used;
    while (pop.size() < n) {
      std::string id = "u" + std::to_string(rng() % 5000);
      if (!used.insert(id).second) continue;
      im::Standing s;
      s.contributor_id = id;
      s.total_points = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(point_range));
      if (rng() % 5 != 0) s.first_event_at = im::Timestamp(1'600'000'000 + static_cast<std::int64_t>(rng() % 8));
      pop.push_back(s);
    }
    auto beats = [](const im::Standing& a, const im::Standing& b) {
      if (a.total_points != b.total_points) return a.total_points > b.total_points;
      bool ha = a.first_event_at.has_value(), hb = b.first_event_at.has_value();
      if (ha != hb) return ha;
      if (ha && *a.first_event_at != *b.first_event_at) return *a.first_event_at < *b.first_event_at;
      return a.contributor_id < b.contributor_id;
    };
    std::map<std::string, std::int64_t> expected_rank;
    for (const auto& a : pop) {
      std::int64_t better = 0;
      for (const auto& b : pop) {
        if (&a != &b && beats(b, a)) ++better;
        if (&a != &b && a.total_points == b.total_points && a.first_event_at == b.first_event_at) ++ties;
      }
      expected_rank[a.contributor_id] = better + 1;
    }
    auto board = im::rebuild_leaderboard(pop);
    if (board.size() != n) ++mismatches;
    std::int64_t N = static_cast<std::int64_t>(n);
    for (std::size_t i = 0; i < board.size(); ++i) {
      const auto& e = board[i];
      ++entries;
      std::int64_t r = expected_rank[e.contributor_id];
      if (e.rank != r || e.rank != static_cast<std::int64_t>(i) + 1 ||
          e.percentile_numerator * N != (N - r + 1) * e.percentile_denominator) {
        ++mismatches;
      }
    }
  }
  std::ostringstream d;
  d << "populations=1000 entries=" << entries << " tie_pairs=" << ties << " mismatches=" << mismatches;
  return {mismatches == 0 && ties > 0, d.str()};
}

// Every approve/reject/abstain pattern for PMC sizes 1..9.
Outcome role_promotion() {
  std::int64_t patterns = 0, mismatches = 0;
  im::Timestamp t0 = t::ts("2021-01-01T00:00:00Z");
  for (int n = 1; n <= 9; ++n) {
    im::Registry base;
    base.register_entity(im::Department{"d", "D", "R", "line"}, t0);
    std::vector<std::string> pmc;
    for (int i = 0; i < n; ++i) {
      pmc.push_back("m" + std::to_string(i));
      base.register_entity(im::Contributor{pmc.back(), "", "d", t0, "", {}}, t0);
    }
    base.register_entity(im::Contributor{"candidate", "", "d", t0, "", {}}, t0);
    im::Project p;
    p.id = "proj";
    p.owning_department_id = "d";
    p.pmc_member_ids = pmc;
    p.created_at = t0;
    base.register_entity(p, t0);

    int total = 1;
    for (int i = 0; i < n; ++i) total *= 3;
    for (int code = 0; code < total; ++code) {
      ++patterns;
      im::Registry reg = base;
      im::RoleBook book;
      std::string id = book.propose(reg, "candidate", "proj", im::Role::Committer, "m0", t0);
      int approvals = 0, rejections = 0;
      im::RoleChangeOutcome expected = im::RoleChangeOutcome::Pending;
      int c = code;
      for (int i = 0; i < n; ++i, c /= 3) {
        int choice = c % 3;  // 0 abstain, 1 approve, 2 reject
        if (choice == 0) continue;
        im::Timestamp at = t0.plus_seconds(i + 1);
        if (expected != im::RoleChangeOutcome::Pending) {
          if (!throws_code(im::ErrorCode::ProposalClosed,
                           [&] { book.vote(reg, id, pmc[i], choice == 1, at); })) {
            ++mismatches;
          }
          continue;
        }
        (choice == 1 ? approvals : rejections)++;
        // Strict majority of the whole PMC; rejected once it is out of reach.
        if (2 * approvals > n) {
          expected = im::RoleChangeOutcome::Approved;
        } else if (2 * (n - rejections) <= n) {
          expected = im::RoleChangeOutcome::Rejected;
        }
        im::RoleChangeOutcome got = book.vote(reg, id, pmc[i], choice == 1, at);
        if (got != expected) ++mismatches;
      }
      if (book.proposal(id).outcome != expected) ++mismatches;
      im::Role role = book.role_at(reg, "candidate", "proj", t0.plus_seconds(100));
      im::Role want = expected == im::RoleChangeOutcome::Approved ? im::Role::Committer : im::Role::Contributor;
      if (role != want) ++mismatches;
    }
  }
  std::ostringstream d;
  d << "pmc_sizes=1..9 patterns=" << patterns << " mismatches=" << mismatches;
  return {mismatches == 0 && patterns == 29523, d.str()};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"budget_conservation", budget_conservation},
      {"catalog_validation", catalog_validation},
      {"knight_subset_of_star", knight_subset_of_star},
      {"slot_caps", slot_caps},
      {"ledger_monotonicity", ledger_monotonicity},
      {"tier_geometry", tier_geometry},
      {"replay_determinism", replay_determinism},
      {"leaderboard_oracle", leaderboard_oracle},
      {"role_promotion", role_promotion},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "PASS " : "FAIL ") << name << " " << o.detail << std::endl;
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
  return failed == 0 ? 0 : 1;
}
