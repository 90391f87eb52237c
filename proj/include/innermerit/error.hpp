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

#include <stdexcept>
#include <string>
#include <string_view>

namespace innermerit {

// Every failure the engine reports carries one of these codes. The HTTP layer
// maps them to status codes; the CLI prints the code name.
enum class ErrorCode {
  // registry
  DuplicateId,
  DanglingReference,
  IllegalPhaseTransition,
  NotFound,
  // ingestion / replay
  CorruptLog,
  CorruptBatch,
  IoFailure,
  UnknownKind,
  // ledger / roles
  IllegalLadderStep,
  NotAuthorized,
  DuplicateVote,
  ProposalPending,
  ProposalClosed,
  // maturity
  OutOfRangeLevel,
  ProjectNotEligible,
  FrozenPeriod,
  // awards
  CatalogNotConserving,
  DuplicateCycle,
  CadenceMismatch,
  IllegalCycleState,
  NoEligibleCandidates,
  TooManyRecipients,
  ScopeMismatch,
  DuplicateRecipient,
  MissingRationale,
  KnightWithoutStar,
  PoolMismatch,
  BudgetExhausted,
  // read side
  NoSnapshot,
  // generic
  InvalidArgument,
  InvalidConfig,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }
  // The text without the code prefix that what() carries.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorCode code_;
  std::string message_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace innermerit
