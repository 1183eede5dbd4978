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

#include "crashloc/trace_parser.h"

#include <algorithm>
#include <charconv>

#include "crashloc/error.h"

namespace crashloc {
namespace {

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view TrimRight(std::string_view s) {
  while (!s.empty() && IsSpace(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view TrimLeft(std::string_view s) {
  while (!s.empty() && IsSpace(s.front())) s.remove_prefix(1);
  return s;
}

bool IsIdentStart(unsigned char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c == '$' || c >= 0x80;
}

bool IsIdentPart(unsigned char c) { return IsIdentStart(c) || (c >= '0' && c <= '9'); }

bool IsJavaIdentifier(std::string_view part) {
  if (part.empty() || !IsIdentStart(static_cast<unsigned char>(part.front()))) return false;
  return std::all_of(part.begin(), part.end(),
                     [](char c) { return IsIdentPart(static_cast<unsigned char>(c)); });
}

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

bool StartsWith(std::string_view s, std::string_view prefix) {
  return s.substr(0, prefix.size()) == prefix;
}

// `Caused by:` and `Suppressed:` open a nested trace; only the outermost one
// is kept.
bool OpensNestedTrace(std::string_view line) {
  std::string_view t = TrimLeft(line);
  return StartsWith(t, "Caused by:") || StartsWith(t, "Suppressed:");
}

// frame := \s*at\s+<dotted-class>.<method>(<anything>)
std::optional<StackFrame> ParseFrameLine(std::string_view line) {
  std::string_view rest = TrimLeft(line);
  if (!StartsWith(rest, "at") || rest.size() < 3 || !IsSpace(rest[2])) return std::nullopt;
  rest = TrimRight(TrimLeft(rest.substr(2)));
  if (rest.empty() || rest.back() != ')') return std::nullopt;

  std::size_t open = rest.find('(');
  if (open == std::string_view::npos) return std::nullopt;
  std::string_view qualified = rest.substr(0, open);
  std::string_view location = rest.substr(open + 1, rest.size() - open - 2);

  std::size_t dot = qualified.rfind('.');
  if (dot == std::string_view::npos) return std::nullopt;
  std::string_view class_name = qualified.substr(0, dot);
  std::string_view method = qualified.substr(dot + 1);
  if (method.empty() || class_name.empty()) return std::nullopt;
  if (std::any_of(method.begin(), method.end(), [](char c) { return IsSpace(c); })) {
    return std::nullopt;
  }
  // Accept single-segment classes (default package) as well as dotted ones.
  std::size_t pos = 0;
  while (true) {
    std::size_t next = class_name.find('.', pos);
    if (!IsJavaIdentifier(class_name.substr(pos, next - pos))) return std::nullopt;
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }

  StackFrame frame;
  frame.class_name = std::string(class_name);
  frame.method_name = std::string(method);
  if (!location.empty()) {
    std::size_t colon = location.rfind(':');
    std::int64_t value = 0;
    if (colon != std::string_view::npos && colon + 1 < location.size()) {
      std::string_view digits = location.substr(colon + 1);
      auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
      if (ec == std::errc() && ptr == digits.data() + digits.size() && value >= 0 &&
          std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
        frame.file = std::string(location.substr(0, colon));
        frame.line = value;
        return frame;
      }
    }
    frame.file = std::string(location);
  }
  return frame;
}

}  // namespace

FrameworkMatcher::FrameworkMatcher(std::vector<std::string> prefixes)
    : prefixes_(std::move(prefixes)) {
  if (prefixes_.empty()) {
    throw Error(ErrorCode::kInvalidConfig, "framework prefix list must not be empty");
  }
}

const std::vector<std::string>& FrameworkMatcher::DefaultPrefixes() {
  static const std::vector<std::string> kPrefixes = {
      "android.", "androidx.", "java.",        "javax.",
      "kotlin.",  "kotlinx.",  "com.android.", "dalvik.",
  };
  return kPrefixes;
}

FrameworkMatcher FrameworkMatcher::Default() { return FrameworkMatcher(DefaultPrefixes()); }

std::optional<std::string_view> FrameworkMatcher::LongestMatch(
    std::string_view class_name) const {
  std::optional<std::string_view> best;
  for (const std::string& prefix : prefixes_) {
    if (StartsWith(class_name, prefix) && (!best || prefix.size() > best->size())) {
      best = prefix;
    }
  }
  return best;
}

bool IsDottedIdentifier(std::string_view name) {
  std::size_t parts = 0;
  std::size_t pos = 0;
  while (true) {
    std::size_t next = name.find('.', pos);
    if (!IsJavaIdentifier(name.substr(pos, next - pos))) return false;
    ++parts;
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  return parts >= 2;
}

CrashReport ParseCrashLog(std::string_view text) {
  std::vector<std::string_view> lines = SplitLines(text);
  std::size_t i = 0;
  while (i < lines.size() && TrimRight(lines[i]).empty()) ++i;
  if (i == lines.size()) throw Error(ErrorCode::kMalformedLog, "crash log is empty");

  CrashReport report;
  // header := <dotted-type>(: <message>)?
  std::string_view header = lines[i++];
  std::size_t colon = header.find(':');
  std::string_view type = TrimRight(header.substr(0, colon));
  if (!IsDottedIdentifier(type)) {
    throw Error(ErrorCode::kMissingException,
                "first line does not start with a dotted exception type: '" +
                    std::string(header) + "'");
  }
  report.exception_type = std::string(type);
  if (colon != std::string_view::npos) {
    std::string_view message = header.substr(colon + 1);
    if (!message.empty() && message.front() == ' ') message.remove_prefix(1);
    report.message = std::string(message);
  }

  // Lines between the header and the first frame continue the message.
  bool in_frames = false;
  for (; i < lines.size(); ++i) {
    std::string_view line = lines[i];
    if (OpensNestedTrace(line)) break;
    if (auto frame = ParseFrameLine(line)) {
      frame->index = report.frames.size();
      report.frames.push_back(std::move(*frame));
      in_frames = true;
      continue;
    }
    if (in_frames) continue;  // "... N more" and other noise
    if (report.message.empty()) {
      report.message = std::string(line);
    } else {
      report.message += '\n';
      report.message += line;
    }
  }
  while (!report.message.empty() &&
         (report.message.back() == '\n' || IsSpace(report.message.back()))) {
    report.message.pop_back();
  }

  if (report.frames.empty()) {
    throw Error(ErrorCode::kMalformedLog, "crash log contains no parsable 'at' frame");
  }
  report.signaler = report.frames.front();
  return report;
}

CrashReport SplitFrames(const CrashReport& report, const FrameworkMatcher& matcher) {
  CrashReport out = report;
  out.framework_subtrace.clear();
  out.developer_frames.clear();
  out.crash_api.reset();
  out.crash_method.reset();

  std::optional<std::size_t> first_developer;
  for (const StackFrame& frame : out.frames) {
    if (matcher.IsFramework(frame.class_name)) {
      if (!first_developer) out.framework_subtrace.push_back(frame);
    } else {
      if (!first_developer) first_developer = frame.index;
      out.developer_frames.push_back(frame);
    }
  }
  if (!first_developer) {
    throw Error(ErrorCode::kNoDeveloperFrame,
                "no developer frame in trace of " + report.exception_type);
  }
  out.crash_method = out.frames[*first_developer];
  if (*first_developer > 0) out.crash_api = out.frames[*first_developer - 1];
  if (!out.frames.empty()) out.signaler = out.frames.front();
  out.split = true;
  return out;
}

CrashReport ParseAndSplit(std::string_view text, const FrameworkMatcher& matcher) {
  return SplitFrames(ParseCrashLog(text), matcher);
}

std::string SerializeCrashLog(const CrashReport& report) {
  std::string out = report.exception_type;
  if (!report.message.empty()) {
    out += ": ";
    out += report.message;
  }
  out += '\n';
  for (const StackFrame& frame : report.frames) {
    out += "\tat ";
    out += frame.class_name;
    out += '.';
    out += frame.method_name;
    out += '(';
    if (frame.file) out += *frame.file;
    if (frame.line) {
      out += ':';
      out += std::to_string(*frame.line);
    }
    out += ")\n";
  }
  return out;
}

}  // namespace crashloc
