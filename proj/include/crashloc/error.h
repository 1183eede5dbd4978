// Copyright 2026 The crashloc Authors.
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

#ifndef CRASHLOC_ERROR_H_
#define CRASHLOC_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace crashloc {

enum class ErrorCode {
  kMalformedLog,
  kMissingException,
  kNoDeveloperFrame,
  kEmptyCorpus,
  kDimensionMismatch,
  kEmptyPool,
  kSchemaError,
  kDanglingRef,
  kUnknownClass,
  kCorpusTooSmall,
  kEmptySet,
  kLocateError,
  kIoError,
  kInvalidConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// Pipeline stage an error surfaced from. kNone for errors raised directly by
// a component outside of the end-to-end pipeline.
enum class Phase { kNone, kParse, kCategorize, kLocate };

std::string_view PhaseName(Phase phase);

// All library failures are reported through this exception type. `where`
// carries a JSON pointer for schema errors and a file path for I/O errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string where = {})
      : std::runtime_error(message), code_(code), where_(std::move(where)) {}

  ErrorCode code() const { return code_; }
  const std::string& where() const { return where_; }
  Phase phase() const { return phase_; }

  // Returns a copy tagged with the pipeline stage.
  Error WithPhase(Phase phase) const {
    Error tagged = *this;
    tagged.phase_ = phase;
    return tagged;
  }

 private:
  ErrorCode code_;
  std::string where_;
  Phase phase_ = Phase::kNone;
};

}  // namespace crashloc

#endif  // CRASHLOC_ERROR_H_
