// Copyright 2026 The Authors.
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

#ifndef SMSP_ERROR_HPP_
#define SMSP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace smsp {

enum class Err {
  kEmptyGround,
  kGroundTooLarge,
  kUnknownElement,
  kClassesNotPartition,
  kNonLaminarFamily,
  kSparsityViolated,
  kNegativeWeight,
  kSetTooLargeForExactConvolution,
  kVariantMismatch,
  kInvalidAlpha,
  kInvalidProbability,
  kBetaOutOfRange,
  kIndexOutOfRange,
  kInvalidArgs,
  kParseError,
  kIoError,
};

// Exception carrying a stable error code; the CLI maps parse/usage
// codes to exit status 2 and everything else to a failure report.
class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& message) {
  throw Error(code, message);
}

inline void require(bool ok, Err code, const std::string& message) {
  if (!ok) fail(code, message);
}

}  // namespace smsp

#endif  // SMSP_ERROR_HPP_
