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

#include "crashloc/error.h"

namespace crashloc {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedLog: return "MalformedLog";
    case ErrorCode::kMissingException: return "MissingException";
    case ErrorCode::kNoDeveloperFrame: return "NoDeveloperFrame";
    case ErrorCode::kEmptyCorpus: return "EmptyCorpus";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kEmptyPool: return "EmptyPool";
    case ErrorCode::kSchemaError: return "SchemaError";
    case ErrorCode::kDanglingRef: return "DanglingRef";
    case ErrorCode::kUnknownClass: return "UnknownClass";
    case ErrorCode::kCorpusTooSmall: return "CorpusTooSmall";
    case ErrorCode::kEmptySet: return "EmptySet";
    case ErrorCode::kLocateError: return "LocateError";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

std::string_view PhaseName(Phase phase) {
  switch (phase) {
    case Phase::kNone: return "none";
    case Phase::kParse: return "parse";
    case Phase::kCategorize: return "categorize";
    case Phase::kLocate: return "locate";
  }
  return "none";
}

}  // namespace crashloc
