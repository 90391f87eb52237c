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

#include <array>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "innermerit/catalog.hpp"
#include "innermerit/events.hpp"
#include "innermerit/ledger.hpp"
#include "innermerit/time.hpp"

namespace innermerit {

class Registry;
class RoleBook;
class MaturityBook;

enum class CycleStatus { Open = 0, Slated, Decided, Finalized };
std::string_view to_string(CycleStatus status);

struct CycleKey {
  AwardKind kind;
  Period period;
  friend auto operator<=>(const CycleKey&, const CycleKey&) = default;
};

std::string to_string(const CycleKey& key);

struct SlateCandidate {
  std::string recipient;
  // Named ordering metrics, most significant first.
  std::vector<std::pair<std::string, std::int64_t>> metrics;
  std::vector<std::string> flags;

  friend bool operator==(const SlateCandidate&, const SlateCandidate&) = default;
};

struct DecisionInput {
  std::string recipient;
  int rank = 0;  // Gold Badge only: 1, 2 or 3
  std::string rationale;
};

struct AwardDecision {
  AwardKind kind = AwardKind::Star;
  Period period = Period::of_year(1970);
  std::string recipient;
  int rank = 0;
  std::vector<std::string> decided_by;
  std::string rationale;
  bool off_slate = false;
  std::int64_t bp = 0;
  std::int64_t monetary_amount = 0;
  std::vector<std::string> nonmonetary;
};

struct AwardCycle {
  AwardKind kind = AwardKind::Star;
  Period period = Period::of_year(1970);
  CycleStatus status = CycleStatus::Open;
  std::vector<SlateCandidate> slate;
  std::vector<AwardDecision> decisions;
  Timestamp opened_at;
  Timestamp slated_at;
  Timestamp decided_at;
  Timestamp finalized_at;
  std::int64_t pool = 0;
};

struct BudgetEntry {
  CycleKey cycle;
  std::string recipient;
  int rank = 0;
  std::int64_t amount = 0;
};

struct BudgetLedger {
  int fiscal_year = 1970;
  std::int64_t pool = 0;
  std::vector<BudgetEntry> entries;

  std::int64_t spent() const;
  std::int64_t remainder() const { return pool - spent(); }
};

struct KindTotals {
  AwardKind kind = AwardKind::Star;
  std::int64_t cycles_finalized = 0;
  std::int64_t slots = 0;
  std::int64_t recipients = 0;
  std::int64_t lapsed_slots = 0;
  std::int64_t allocated_bp = 0;
  std::int64_t lapsed_bp = 0;
  std::int64_t allocated_amount = 0;
};

struct YearReport {
  int year = 1970;
  std::int64_t pool = 0;  // zero when nothing finalized yet
  std::array<KindTotals, 5> kinds{};
  std::int64_t allocated_bp = 0;
  std::int64_t lapsed_bp = 0;
  std::int64_t allocated_amount = 0;
  // pool - allocated_amount: lapsed slots plus flooring loss
  std::int64_t remainder = 0;
  std::vector<AwardDecision> decisions;
};

// Everything slates are computed from.
struct SlateInputs {
  const Registry& registry;
  std::span<const ContributionEvent> events;  // canonical log order
  const WeightConfig& weights;
  const RoleBook& roles;
  const MaturityBook& maturity;
};

// Kind-specific ordered candidate lists.
//   Star: contributors with points in the month, by period points desc,
//     first event asc, id asc; flags leadership / contribution / ambassador.
//   Knight: holders of a same-year Star, by annual points desc, first event
//     asc, id asc.
//   TimelyIncentive: the month's maturity ranking.
//   GoldBadge: projects past Preparation, by latest maturity composite in the
//     year desc, criteria flag count desc, id asc.
//   BlackLand: regions by new projects, new contributors, year points (all
//     desc), region asc.
std::vector<SlateCandidate> star_slate(Period month, const SlateInputs& in);
std::vector<SlateCandidate> knight_slate(int year, const SlateInputs& in,
                                         const std::set<std::string>& star_holders);
std::vector<SlateCandidate> timely_slate(Period month, const SlateInputs& in);
std::vector<SlateCandidate> gold_badge_slate(int year, const SlateInputs& in);
std::vector<SlateCandidate> black_land_slate(int year, const SlateInputs& in);

// Rejects any rank group holding more recipients than the catalog allows.
void check_slot_caps(const AwardCatalogEntry& entry, std::span<const AwardDecision> decisions);

// Award cycles, committee decisions and the per-year budget ledgers.
class AwardBook {
 public:
  explicit AwardBook(AwardCatalog catalog = AwardCatalog::defaults());

  const AwardCatalog& catalog() const { return catalog_; }

  // Throws DuplicateCycle, CadenceMismatch.
  const AwardCycle& open_cycle(AwardKind kind, Period period, Timestamp at);

  // Computes the slate for an Open cycle (does not change state).
  std::vector<SlateCandidate> compute_slate(const CycleKey& key, const SlateInputs& in) const;
  // Stores a slate and moves the cycle to Slated. Throws IllegalCycleState.
  const AwardCycle& record_slate(const CycleKey& key, std::vector<SlateCandidate> slate,
                                 Timestamp at);

  // Throws IllegalCycleState, NotAuthorized, ScopeMismatch, TooManyRecipients,
  // DuplicateRecipient, MissingRationale, KnightWithoutStar.
  const AwardCycle& record_decisions(const CycleKey& key, std::span<const DecisionInput> decisions,
                                     std::span<const std::string> committee_member_ids,
                                     const Registry& registry, Timestamp at);

  // Prices every decision at floor(pool * bp / 10000) against the fiscal
  // year's budget ledger and freezes the cycle. Throws IllegalCycleState,
  // PoolMismatch, BudgetExhausted, TooManyRecipients, KnightWithoutStar.
  const AwardCycle& finalize_cycle(const CycleKey& key, std::int64_t pool, Timestamp at);

  YearReport year_report(int year) const;

  const AwardCycle& cycle(const CycleKey& key) const;
  const std::map<CycleKey, AwardCycle>& cycles() const { return cycles_; }
  const std::map<int, BudgetLedger>& budgets() const { return budgets_; }

  // Recipients of finalized Star cycles dated in `year`, finalized before `as_of`.
  std::set<std::string> star_holders(int year, Timestamp as_of = Timestamp::max()) const;

 private:
  AwardCycle& mutable_cycle(const CycleKey& key);

  AwardCatalog catalog_;
  std::map<CycleKey, AwardCycle> cycles_;
  std::map<int, BudgetLedger> budgets_;
};

nlohmann::json to_json(const SlateCandidate& candidate);
SlateCandidate slate_candidate_from_json(const nlohmann::json& j);
nlohmann::json to_json(const AwardDecision& decision);
nlohmann::json to_json(const AwardCycle& cycle);
nlohmann::json to_json(const YearReport& report);
nlohmann::json to_json(const AwardCatalog& catalog);

}  // namespace innermerit
