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

#include "innermerit/awards.hpp"

#include <algorithm>

#include "innermerit/error.hpp"
#include "innermerit/json_fields.hpp"
#include "innermerit/maturity.hpp"
#include "innermerit/registry.hpp"
#include "innermerit/roles.hpp"
#include "innermerit/util.hpp"

namespace innermerit {

namespace {

std::span<const ContributionEvent> events_in(std::span<const ContributionEvent> events,
                                             Period period) {
  auto by_time = [](const ContributionEvent& e, Timestamp t) { return e.occurred_at < t; };
  auto first = std::lower_bound(events.begin(), events.end(), period.begin(), by_time);
  auto last = std::lower_bound(first, events.end(), period.end(), by_time);
  return {first, last};
}

// First event per contributor strictly before `cutoff`.
std::map<std::string, Timestamp> first_events(std::span<const ContributionEvent> events,
                                              Timestamp cutoff) {
  std::map<std::string, Timestamp> first;
  for (const auto& e : events) {
    if (e.occurred_at >= cutoff) break;
    first.emplace(e.contributor_id, e.occurred_at);
  }
  return first;
}

std::int64_t first_event_key(const std::map<std::string, Timestamp>& first, const std::string& id) {
  auto it = first.find(id);
  // Earlier first event ranks higher, so negate; no event ranks last.
  return it == first.end() ? -Timestamp::max().epoch_seconds() : -it->second.epoch_seconds();
}

bool candidate_before(const SlateCandidate& a, const SlateCandidate& b) {
  for (std::size_t i = 0; i < a.metrics.size() && i < b.metrics.size(); ++i) {
    if (a.metrics[i].second != b.metrics[i].second) return a.metrics[i].second > b.metrics[i].second;
  }
  return a.recipient < b.recipient;
}

void sort_slate(std::vector<SlateCandidate>& slate) {
  std::sort(slate.begin(), slate.end(), candidate_before);
}

}  // namespace

std::string_view to_string(CycleStatus status) {
  switch (status) {
    case CycleStatus::Open: return "Open";
    case CycleStatus::Slated: return "Slated";
    case CycleStatus::Decided: return "Decided";
    case CycleStatus::Finalized: return "Finalized";
  }
  return "?";
}

std::string to_string(const CycleKey& key) {
  return std::string(to_string(key.kind)) + "/" + key.period.to_string();
}

std::vector<SlateCandidate> star_slate(Period month, const SlateInputs& in) {
  std::map<std::string, std::int64_t> points;
  std::map<std::string, std::set<std::string>> flags;
  for (const auto& e : events_in(in.events, month)) {
    points[e.contributor_id] += value_event(e, in.weights);
    switch (e.kind) {
      case ContributionKind::Code:
      case ContributionKind::Review:
      case ContributionKind::IssueReport:
      case ContributionKind::Mentoring:
        flags[e.contributor_id].insert("contribution");
        break;
      case ContributionKind::Evangelism:
        flags[e.contributor_id].insert("ambassador");
        break;
      default:
        break;
    }
  }
  auto first = first_events(in.events, month.end());
  const Timestamp last_instant = month.end().plus_seconds(-1);
  std::vector<SlateCandidate> slate;
  for (const auto& [id, p] : points) {
    if (p <= 0) continue;
    for (const auto& [project_id, role] : in.roles.roles_of(in.registry, id, last_instant)) {
      if (role >= Role::Maintainer) flags[id].insert("leadership");
    }
    slate.push_back({id,
                     {{"period_points", p}, {"first_event", first_event_key(first, id)}},
                     std::vector<std::string>(flags[id].begin(), flags[id].end())});
  }
  sort_slate(slate);
  return slate;
}

std::vector<SlateCandidate> knight_slate(int year, const SlateInputs& in,
                                         const std::set<std::string>& star_holders) {
  Period y = Period::of_year(year);
  std::map<std::string, std::int64_t> points;
  for (const auto& e : events_in(in.events, y)) {
    if (star_holders.count(e.contributor_id) != 0) points[e.contributor_id] += value_event(e, in.weights);
  }
  auto first = first_events(in.events, y.end());
  std::vector<SlateCandidate> slate;
  for (const auto& id : star_holders) {
    slate.push_back({id, {{"annual_points", points[id]}, {"first_event", first_event_key(first, id)}}, {}});
  }
  sort_slate(slate);
  return slate;
}

std::vector<SlateCandidate> timely_slate(Period month, const SlateInputs& in) {
  std::vector<SlateCandidate> slate;
  for (const auto& a : in.maturity.rank_projects(month)) {
    SlateCandidate c{a.project_id, {{"composite", a.composite()}, {"min_level", a.min_level()}}, {}};
    for (auto d : kAllDimensions) {
      if (a.levels[static_cast<std::size_t>(d)] == kMaxMaturityLevel) {
        c.flags.emplace_back(key_of(d));
      }
    }
    slate.push_back(std::move(c));
  }
  return slate;
}

std::vector<SlateCandidate> gold_badge_slate(int year, const SlateInputs& in) {
  Period y = Period::of_year(year);
  const Timestamp last_instant = y.end().plus_seconds(-1);
  std::map<std::string, std::set<std::string>> flags;
  std::map<std::string, std::set<std::string>> departments;
  for (const auto& e : events_in(in.events, y)) {
    if (e.kind == ContributionKind::Documentation) flags[e.project_id].insert("ancillary_resources");
    if (e.kind == ContributionKind::Review || e.kind == ContributionKind::IssueReport) {
      flags[e.project_id].insert("community_management");
    }
    departments[e.project_id].insert(in.registry.contributor(e.contributor_id).department_id);
  }
  std::vector<SlateCandidate> slate;
  for (const auto& [id, project] : in.registry.projects()) {
    auto phase = in.registry.phase_at(id, last_instant);
    if (!phase || *phase == ProjectPhase::Preparation) continue;
    auto& f = flags[id];
    if (departments[id].size() >= 2) f.insert("usefulness");
    auto latest = in.maturity.latest_in_year(id, year);
    slate.push_back({id,
                     {{"composite", latest ? latest->composite() : 0},
                      {"criteria", static_cast<std::int64_t>(f.size())}},
                     std::vector<std::string>(f.begin(), f.end())});
  }
  sort_slate(slate);
  return slate;
}

std::vector<SlateCandidate> black_land_slate(int year, const SlateInputs& in) {
  Period y = Period::of_year(year);
  struct Tally {
    std::int64_t new_projects = 0;
    std::int64_t new_contributors = 0;
    std::int64_t points = 0;
  };
  std::map<std::string, Tally> tally;
  for (const auto& [id, project] : in.registry.projects()) {
    if (y.contains(project.created_at)) ++tally[in.registry.region_of_project(id)].new_projects;
  }
  for (const auto& [id, first] : first_events(in.events, y.end())) {
    if (y.contains(first)) ++tally[in.registry.region_of_contributor(id)].new_contributors;
  }
  for (const auto& e : events_in(in.events, y)) {
    tally[in.registry.region_of_contributor(e.contributor_id)].points += value_event(e, in.weights);
  }
  std::vector<SlateCandidate> slate;
  for (const auto& [region, t] : tally) {
    if (t.new_projects == 0 && t.new_contributors == 0 && t.points == 0) continue;
    slate.push_back({region,
                     {{"new_projects", t.new_projects},
                      {"new_contributors", t.new_contributors},
                      {"period_points", t.points}},
                     {}});
  }
  sort_slate(slate);
  return slate;
}

void check_slot_caps(const AwardCatalogEntry& entry, std::span<const AwardDecision> decisions) {
  std::map<int, std::int64_t> per_rank;
  for (const auto& d : decisions) ++per_rank[d.rank];
  for (const auto& [rank, n] : per_rank) {
    const SlotGroup* g = entry.group(rank);
    if (g == nullptr) {
      fail(ErrorCode::InvalidArgument, std::string(to_string(entry.kind)) + " has no rank " +
                                           std::to_string(rank));
    }
    if (n > g->slots) {
      fail(ErrorCode::TooManyRecipients,
           std::to_string(n) + " recipients for " + std::string(to_string(entry.kind)) +
               (rank != 0 ? " rank " + std::to_string(rank) : std::string()) + ", only " +
               std::to_string(g->slots) + " slots");
    }
  }
}

std::int64_t BudgetLedger::spent() const {
  std::int64_t total = 0;
  for (const auto& e : entries) total += e.amount;
  return total;
}

AwardBook::AwardBook(AwardCatalog catalog) : catalog_(std::move(catalog)) { catalog_.validate(); }

const AwardCycle& AwardBook::cycle(const CycleKey& key) const {
  auto it = cycles_.find(key);
  if (it == cycles_.end()) fail(ErrorCode::NotFound, "cycle " + to_string(key));
  return it->second;
}

AwardCycle& AwardBook::mutable_cycle(const CycleKey& key) {
  auto it = cycles_.find(key);
  if (it == cycles_.end()) fail(ErrorCode::NotFound, "cycle " + to_string(key));
  return it->second;
}

const AwardCycle& AwardBook::open_cycle(AwardKind kind, Period period, Timestamp at) {
  const auto& entry = catalog_.entry(kind);
  bool monthly = entry.cadence == Cadence::Monthly;
  if (monthly != period.is_month()) {
    fail(ErrorCode::CadenceMismatch, std::string(to_string(kind)) + " is " +
                                         std::string(to_string(entry.cadence)) + ", got period " +
                                         period.to_string());
  }
  CycleKey key{kind, period};
  if (cycles_.count(key) != 0) fail(ErrorCode::DuplicateCycle, to_string(key));
  AwardCycle c;
  c.kind = kind;
  c.period = period;
  c.status = CycleStatus::Open;
  c.opened_at = at;
  return cycles_.emplace(key, std::move(c)).first->second;
}

std::vector<SlateCandidate> AwardBook::compute_slate(const CycleKey& key,
                                                     const SlateInputs& in) const {
  const AwardCycle& c = cycle(key);
  if (c.status != CycleStatus::Open) {
    fail(ErrorCode::IllegalCycleState, to_string(key) + " is " + std::string(to_string(c.status)));
  }
  switch (key.kind) {
    case AwardKind::Star: return star_slate(key.period, in);
    case AwardKind::Knight: return knight_slate(key.period.year(), in, star_holders(key.period.year()));
    case AwardKind::TimelyIncentive: return timely_slate(key.period, in);
    case AwardKind::GoldBadge: return gold_badge_slate(key.period.year(), in);
    case AwardKind::BlackLand: return black_land_slate(key.period.year(), in);
  }
  return {};
}

const AwardCycle& AwardBook::record_slate(const CycleKey& key, std::vector<SlateCandidate> slate,
                                          Timestamp at) {
  AwardCycle& c = mutable_cycle(key);
  if (c.status != CycleStatus::Open) {
    fail(ErrorCode::IllegalCycleState, to_string(key) + " is " + std::string(to_string(c.status)));
  }
  c.slate = std::move(slate);
  c.status = CycleStatus::Slated;
  c.slated_at = at;
  return c;
}

const AwardCycle& AwardBook::record_decisions(const CycleKey& key,
                                              std::span<const DecisionInput> inputs,
                                              std::span<const std::string> committee_member_ids,
                                              const Registry& registry, Timestamp at) {
  AwardCycle& c = mutable_cycle(key);
  if (c.status != CycleStatus::Slated) {
    fail(ErrorCode::IllegalCycleState, to_string(key) + " is " + std::string(to_string(c.status)) +
                                           ", decisions need a Slated cycle");
  }
  const auto& entry = catalog_.entry(key.kind);

  // Monthly awards are decided by a TCC, annual awards by the TC.
  CommitteeKind authority = entry.cadence == Cadence::Monthly ? CommitteeKind::TCC : CommitteeKind::TC;
  std::set<std::string> deciders(committee_member_ids.begin(), committee_member_ids.end());
  if (deciders.empty()) fail(ErrorCode::NotAuthorized, "no deciding committee members given");
  auto allowed = registry.committee_members(authority, at);
  for (const auto& id : deciders) {
    if (allowed.count(id) == 0) {
      fail(ErrorCode::NotAuthorized,
           "'" + id + "' is not a " + std::string(to_string(authority)) + " member");
    }
  }

  std::set<std::string> on_slate;
  for (const auto& s : c.slate) on_slate.insert(s.recipient);
  std::set<std::string> holders;
  if (key.kind == AwardKind::Knight) holders = star_holders(key.period.year());
  auto regions = registry.regions();

  std::vector<AwardDecision> decisions;
  std::set<std::string> seen;
  for (const auto& in : inputs) {
    AwardDecision d;
    d.kind = key.kind;
    d.period = key.period;
    d.recipient = in.recipient;
    d.rank = in.rank;
    d.rationale = in.rationale;
    switch (entry.scope) {
      case AwardScope::Individual:
        if (!registry.has_contributor(in.recipient)) {
          fail(ErrorCode::ScopeMismatch, "'" + in.recipient + "' is not a registered contributor");
        }
        break;
      case AwardScope::Project:
        if (!registry.has_project(in.recipient)) {
          fail(ErrorCode::ScopeMismatch, "'" + in.recipient + "' is not a registered project");
        }
        break;
      case AwardScope::Department:
        d.recipient = fold_case(trim(in.recipient));
        if (regions.count(d.recipient) == 0) {
          fail(ErrorCode::ScopeMismatch, "'" + in.recipient + "' is not a registered region");
        }
        break;
    }
    if (entry.ranked() ? entry.group(in.rank) == nullptr : in.rank != 0) {
      fail(ErrorCode::InvalidArgument, "rank " + std::to_string(in.rank) + " is not valid for " +
                                           std::string(to_string(key.kind)));
    }
    if (!seen.insert(d.recipient).second) {
      fail(ErrorCode::DuplicateRecipient, "'" + d.recipient + "' appears twice");
    }
    if (key.kind == AwardKind::Knight && holders.count(d.recipient) == 0) {
      fail(ErrorCode::KnightWithoutStar,
           "'" + d.recipient + "' holds no Star award in " + std::to_string(key.period.year()));
    }
    d.off_slate = on_slate.count(d.recipient) == 0;
    if (d.off_slate && trim(d.rationale).empty()) {
      fail(ErrorCode::MissingRationale, "'" + d.recipient + "' is off the slate");
    }
    d.decided_by.assign(deciders.begin(), deciders.end());
    d.bp = entry.group(in.rank)->bp_each;
    d.nonmonetary = entry.nonmonetary;
    if (key.kind == AwardKind::GoldBadge && in.rank == 1) {
      d.nonmonetary.insert(d.nonmonetary.begin(), "Crystal medal");
    }
    decisions.push_back(std::move(d));
  }
  check_slot_caps(entry, decisions);

  c.decisions = std::move(decisions);
  c.status = CycleStatus::Decided;
  c.decided_at = at;
  return c;
}

const AwardCycle& AwardBook::finalize_cycle(const CycleKey& key, std::int64_t pool, Timestamp at) {
  AwardCycle& c = mutable_cycle(key);
  if (c.status != CycleStatus::Decided) {
    fail(ErrorCode::IllegalCycleState, to_string(key) + " is " + std::string(to_string(c.status)) +
                                           ", finalization needs a Decided cycle");
  }
  if (pool <= 0) fail(ErrorCode::InvalidArgument, "pool must be positive");
  const auto& entry = catalog_.entry(key.kind);
  check_slot_caps(entry, c.decisions);
  if (key.kind == AwardKind::Knight) {
    auto holders = star_holders(key.period.year());
    for (const auto& d : c.decisions) {
      if (holders.count(d.recipient) == 0) {
        fail(ErrorCode::KnightWithoutStar, "'" + d.recipient + "' holds no same-year Star award");
      }
    }
  }
  const int year = key.period.year();
  auto existing = budgets_.find(year);
  if (existing != budgets_.end() && existing->second.pool != pool) {
    fail(ErrorCode::PoolMismatch, "fiscal year " + std::to_string(year) + " pool is " +
                                      std::to_string(existing->second.pool));
  }
  std::int64_t spent = existing == budgets_.end() ? 0 : existing->second.spent();
  std::vector<std::int64_t> amounts;
  for (const auto& d : c.decisions) {
    amounts.push_back(amount_for(pool, d.bp));
    spent += amounts.back();
  }
  if (spent > pool) {
    fail(ErrorCode::BudgetExhausted, "finalizing " + to_string(key) + " would spend " +
                                         std::to_string(spent) + " of " + std::to_string(pool));
  }

  BudgetLedger& ledger = budgets_[year];
  ledger.fiscal_year = year;
  ledger.pool = pool;
  for (std::size_t i = 0; i < c.decisions.size(); ++i) {
    c.decisions[i].monetary_amount = amounts[i];
    ledger.entries.push_back({key, c.decisions[i].recipient, c.decisions[i].rank, amounts[i]});
  }
  c.pool = pool;
  c.status = CycleStatus::Finalized;
  c.finalized_at = at;
  return c;
}

std::set<std::string> AwardBook::star_holders(int year, Timestamp as_of) const {
  std::set<std::string> out;
  for (int month = 1; month <= 12; ++month) {
    auto it = cycles_.find({AwardKind::Star, Period::of_month(year, month)});
    if (it == cycles_.end() || it->second.status != CycleStatus::Finalized) continue;
    if (it->second.finalized_at >= as_of) continue;
    for (const auto& d : it->second.decisions) out.insert(d.recipient);
  }
  return out;
}

YearReport AwardBook::year_report(int year) const {
  YearReport r;
  r.year = year;
  for (auto kind : kAllAwardKinds) r.kinds[static_cast<std::size_t>(kind)].kind = kind;
  if (auto it = budgets_.find(year); it != budgets_.end()) r.pool = it->second.pool;
  for (const auto& [key, c] : cycles_) {
    if (key.period.year() != year || c.status != CycleStatus::Finalized) continue;
    const auto& entry = catalog_.entry(key.kind);
    KindTotals& t = r.kinds[static_cast<std::size_t>(key.kind)];
    ++t.cycles_finalized;
    std::map<int, std::int64_t> filled;
    for (const auto& d : c.decisions) {
      ++t.recipients;
      ++filled[d.rank];
      t.allocated_bp += d.bp;
      t.allocated_amount += d.monetary_amount;
      r.decisions.push_back(d);
    }
    for (const auto& g : entry.groups) {
      t.slots += g.slots;
      std::int64_t lapsed = g.slots - filled[g.rank];
      t.lapsed_slots += lapsed;
      t.lapsed_bp += lapsed * g.bp_each;
    }
  }
  for (const auto& t : r.kinds) {
    r.allocated_bp += t.allocated_bp;
    r.lapsed_bp += t.lapsed_bp;
    r.allocated_amount += t.allocated_amount;
  }
  r.remainder = r.pool - r.allocated_amount;
  return r;
}

nlohmann::json to_json(const SlateCandidate& c) {
  nlohmann::json metrics = nlohmann::json::array();
  for (const auto& [name, value] : c.metrics) metrics.push_back({{"name", name}, {"value", value}});
  return {{"recipient", c.recipient}, {"metrics", metrics}, {"flags", c.flags}};
}

SlateCandidate slate_candidate_from_json(const nlohmann::json& j) {
  SlateCandidate c;
  c.recipient = fields::str(j, "recipient");
  for (const auto& m : fields::require(j, "metrics")) {
    c.metrics.emplace_back(fields::str(m, "name"), fields::integer(m, "value"));
  }
  c.flags = fields::strings_or_empty(j, "flags");
  return c;
}

nlohmann::json to_json(const AwardDecision& d) {
  nlohmann::json j = {
      {"kind", to_string(d.kind)},       {"period", d.period.to_string()},
      {"recipient", d.recipient},        {"decided_by", d.decided_by},
      {"rationale", d.rationale},        {"off_slate", d.off_slate},
      {"bp", d.bp},                      {"monetary_amount", d.monetary_amount},
      {"nonmonetary", d.nonmonetary},
  };
  if (d.rank != 0) j["rank"] = d.rank;
  return j;
}

nlohmann::json to_json(const AwardCycle& c) {
  nlohmann::json slate = nlohmann::json::array();
  for (const auto& s : c.slate) slate.push_back(to_json(s));
  nlohmann::json decisions = nlohmann::json::array();
  for (const auto& d : c.decisions) decisions.push_back(to_json(d));
  nlohmann::json j = {
      {"kind", to_string(c.kind)},
      {"period", c.period.to_string()},
      {"status", to_string(c.status)},
      {"slate", slate},
      {"decisions", decisions},
      {"opened_at", c.opened_at.to_string()},
  };
  if (c.status >= CycleStatus::Slated) j["slated_at"] = c.slated_at.to_string();
  if (c.status >= CycleStatus::Decided) j["decided_at"] = c.decided_at.to_string();
  if (c.status == CycleStatus::Finalized) {
    j["finalized_at"] = c.finalized_at.to_string();
    j["pool"] = c.pool;
  }
  return j;
}

nlohmann::json to_json(const YearReport& r) {
  nlohmann::json kinds = nlohmann::json::object();
  for (const auto& t : r.kinds) {
    kinds[std::string(key_of(t.kind))] = {
        {"cycles_finalized", t.cycles_finalized}, {"slots", t.slots},
        {"recipients", t.recipients},             {"lapsed_slots", t.lapsed_slots},
        {"allocated_bp", t.allocated_bp},         {"lapsed_bp", t.lapsed_bp},
        {"allocated_amount", t.allocated_amount},
    };
  }
  nlohmann::json decisions = nlohmann::json::array();
  for (const auto& d : r.decisions) decisions.push_back(to_json(d));
  return {{"year", r.year},
          {"pool", r.pool},
          {"kinds", kinds},
          {"allocated_bp", r.allocated_bp},
          {"lapsed_bp", r.lapsed_bp},
          {"allocated_amount", r.allocated_amount},
          {"remainder", r.remainder},
          {"decisions", decisions}};
}

nlohmann::json to_json(const AwardCatalog& catalog) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& e : catalog.entries()) {
    nlohmann::json groups = nlohmann::json::array();
    for (const auto& g : e.groups) {
      groups.push_back({{"rank", g.rank}, {"slots", g.slots}, {"bp_each", g.bp_each}});
    }
    out[std::string(key_of(e.kind))] = {{"kind", to_string(e.kind)},
                                        {"cadence", to_string(e.cadence)},
                                        {"scope", to_string(e.scope)},
                                        {"groups", groups},
                                        {"annualized_bp", e.annualized_bp()},
                                        {"nonmonetary", e.nonmonetary}};
  }
  return out;
}

}  // namespace innermerit
