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

#ifndef CRASHLOC_TRACE_PARSER_H_
#define CRASHLOC_TRACE_PARSER_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace crashloc {

struct StackFrame {
  std::string class_name;
  std::string method_name;
  std::optional<std::string> file;
  std::optional<std::int64_t> line;
  // Position in the trace, 0 being the topmost frame.
  std::size_t index = 0;

  // `class.method`, the form used for tokens and edit-distance symbols.
  std::string QualifiedName() const { return class_name + "." + method_name; }

  bool operator==(const StackFrame&) const = default;
};

// A crash log reduced to the parts localization needs.
//
// `frames` is the full outermost trace. After SplitFrames():
//   framework_subtrace  frames above the first developer frame
//   developer_frames    every developer-labeled frame, in trace order
//   crash_api           last framework frame before the first developer frame
//   crash_method        first developer frame
// Framework frames below the first developer frame stay only in `frames`.
struct CrashReport {
  std::string exception_type;
  std::string message;
  std::vector<StackFrame> frames;
  std::vector<StackFrame> framework_subtrace;
  std::vector<StackFrame> developer_frames;
  StackFrame signaler;
  std::optional<StackFrame> crash_api;
  std::optional<StackFrame> crash_method;
  bool split = false;

  bool operator==(const CrashReport&) const = default;
};

// Decides which classes belong to the platform. A class is framework code iff
// some configured prefix is a prefix of its name.
class FrameworkMatcher {
 public:
  // Throws Error(kInvalidConfig) on an empty prefix list.
  explicit FrameworkMatcher(std::vector<std::string> prefixes);

  static FrameworkMatcher Default();
  static const std::vector<std::string>& DefaultPrefixes();

  // Longest configured prefix matching `class_name`, if any.
  std::optional<std::string_view> LongestMatch(std::string_view class_name) const;
  bool IsFramework(std::string_view class_name) const {
    return LongestMatch(class_name).has_value();
  }

  const std::vector<std::string>& prefixes() const { return prefixes_; }

 private:
  std::vector<std::string> prefixes_;
};

// True for `a.b.C`-style names: at least two non-empty Java identifier parts.
bool IsDottedIdentifier(std::string_view name);

// Parses the first (outermost) trace of a logcat-style crash dump. The result
// is not split; see SplitFrames().
//
// Throws Error(kMissingException) when the first line carries no dotted type,
// Error(kMalformedLog) when no frame line parses.
CrashReport ParseCrashLog(std::string_view text);

// Labels frames with `matcher` and fills the split fields. Throws
// Error(kNoDeveloperFrame) when every frame is framework code.
CrashReport SplitFrames(const CrashReport& report, const FrameworkMatcher& matcher);

// Parse + split.
CrashReport ParseAndSplit(std::string_view text, const FrameworkMatcher& matcher);

// Renders the report back to log text that ParseCrashLog() reads as the same
// report.
std::string SerializeCrashLog(const CrashReport& report);

}  // namespace crashloc

#endif  // CRASHLOC_TRACE_PARSER_H_
