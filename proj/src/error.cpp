/*
 * Copyright (c) 2026, The curled authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "curled/error.hpp"

namespace curled {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::SchemaMismatch: return "SchemaMismatch";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::ArityTooSmall: return "ArityTooSmall";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UndeclaredType: return "UndeclaredType";
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::SignatureMismatch: return "SignatureMismatch";
    case ErrorCode::UnknownGroup: return "UnknownGroup";
    case ErrorCode::ModelNotFound: return "ModelNotFound";
    case ErrorCode::TargetNotFound: return "TargetNotFound";
    case ErrorCode::NoVertices: return "NoVertices";
    case ErrorCode::Io: return "Io";
    case ErrorCode::NoComparableComponent: return "NoComparableComponent";
    case ErrorCode::TooFewObjects: return "TooFewObjects";
    case ErrorCode::InvalidK: return "InvalidK";
    case ErrorCode::DegenerateMatrix: return "DegenerateMatrix";
    case ErrorCode::MissingNeighbourValue: return "MissingNeighbourValue";
    case ErrorCode::InvalidPartition: return "InvalidPartition";
    case ErrorCode::RangeTooSmall: return "RangeTooSmall";
    case ErrorCode::Usage: return "Usage";
  }
  return "Unknown";
}

bool is_numeric(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NoComparableComponent:
    case ErrorCode::TooFewObjects:
    case ErrorCode::InvalidK:
    case ErrorCode::DegenerateMatrix:
    case ErrorCode::MissingNeighbourValue:
    case ErrorCode::InvalidPartition:
    case ErrorCode::RangeTooSmall:
      return true;
    default:
      return false;
  }
}

}  // namespace curled
