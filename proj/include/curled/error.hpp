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

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace curled {

enum class ErrorCode {
  // data / structural errors
  DuplicateId,
  SchemaMismatch,
  UnknownVertex,
  ArityTooSmall,
  ParseError,
  UndeclaredType,
  InvalidValue,
  TypeMismatch,
  SignatureMismatch,
  UnknownGroup,
  ModelNotFound,
  TargetNotFound,
  NoVertices,
  Io,
  // numeric / degenerate errors
  NoComparableComponent,
  TooFewObjects,
  InvalidK,
  DegenerateMatrix,
  MissingNeighbourValue,
  InvalidPartition,
  RangeTooSmall,
  // caller misuse
  Usage,
};

std::string_view to_string(ErrorCode code) noexcept;

/// True for codes that indicate a numeric or degenerate-input failure rather
/// than malformed data.
bool is_numeric(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void raise(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(to_string(code)) + ": " + message);
}

}  // namespace curled
