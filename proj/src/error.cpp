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

#include "innermerit/error.hpp"

namespace innermerit {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingReference: return "DanglingReference";
    case ErrorCode::IllegalPhaseTransition: return "IllegalPhaseTransition";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::CorruptLog: return "CorruptLog";
    case ErrorCode::CorruptBatch: return "CorruptBatch";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::UnknownKind: return "UnknownKind";
    case ErrorCode::IllegalLadderStep: return "IllegalLadderStep";
    case ErrorCode::NotAuthorized: return "NotAuthorized";
    case ErrorCode::DuplicateVote: return "DuplicateVote";
    case ErrorCode::ProposalPending: return "ProposalPending";
    case ErrorCode::ProposalClosed: return "ProposalClosed";
    case ErrorCode::OutOfRangeLevel: return "OutOfRangeLevel";
    case ErrorCode::ProjectNotEligible: return "ProjectNotEligible";
    case ErrorCode::FrozenPeriod: return "FrozenPeriod";
    case ErrorCode::CatalogNotConserving: return "CatalogNotConserving";
    case ErrorCode::DuplicateCycle: return "DuplicateCycle";
    case ErrorCode::CadenceMismatch: return "CadenceMismatch";
    case ErrorCode::IllegalCycleState: return "IllegalCycleState";
    case ErrorCode::NoEligibleCandidates: return "NoEligibleCandidates";
    case ErrorCode::TooManyRecipients: return "TooManyRecipients";
    case ErrorCode::ScopeMismatch: return "ScopeMismatch";
    case ErrorCode::DuplicateRecipient: return "DuplicateRecipient";
    case ErrorCode::MissingRationale: return "MissingRationale";
    case ErrorCode::KnightWithoutStar: return "KnightWithoutStar";
    case ErrorCode::PoolMismatch: return "PoolMismatch";
    case ErrorCode::BudgetExhausted: return "BudgetExhausted";
    case ErrorCode::NoSnapshot: return "NoSnapshot";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(message) {}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace innermerit
