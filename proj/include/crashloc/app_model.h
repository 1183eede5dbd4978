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

#ifndef CRASHLOC_APP_MODEL_H_
#define CRASHLOC_APP_MODEL_H_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace crashloc {

// A method, written `class#method(sig)` in serialized models. The `(sig)`
// part is optional; absent means "any overload" when matching.
struct MethodRef {
  std::string class_name;
  std::string method_name;
  std::optional<std::vector<std::string>> signature;
  bool is_developer = true;

  std::string ToString() const;
  // Parses `class#method`, `class#method()`, `class#method(a.B,int)`.
  static std::optional<MethodRef> Parse(std::string_view text);

  // Same class and method; signatures must agree only when both are known.
  bool Matches(const MethodRef& other) const;

  bool operator==(const MethodRef&) const = default;
};

enum class ApiKind { kCallIn, kCallback };

std::string_view ApiKindName(ApiKind kind);
std::optional<ApiKind> ParseApiKind(std::string_view name);

// A framework API, tagged with how developer code meets it.
struct ApiRef {
  std::string class_name;
  std::string method_name;
  std::optional<std::vector<std::string>> signature;
  ApiKind kind = ApiKind::kCallIn;

  MethodRef AsMethod() const { return {class_name, method_name, signature, false}; }
  std::string ToString() const { return AsMethod().ToString(); }

  bool operator==(const ApiRef&) const = default;
};

// A framework callback that a developer class inherits without overriding.
struct NonOverriddenCallback {
  // class_name is the inheriting developer class; this is the location a fix
  // would go to.
  MethodRef method;
  // The framework class that declares the callback.
  std::string defining_class;

  bool operator==(const NonOverriddenCallback&) const = default;
};

struct ClassDef {
  std::string name;
  // Nearest superclass first.
  std::vector<std::string> superclasses;
  // Methods with a body in this class, in declaration order.
  std::vector<MethodRef> active_methods;
  std::vector<NonOverriddenCallback> non_overridden_callbacks;
};

struct Invocation {
  MethodRef caller;
  std::vector<MethodRef> callees;
};

// An instance of `class_name` is passed to `callee` at `position`.
struct ParamFlow {
  MethodRef callee;
  int position = 0;
  std::string class_name;
};

// Immutable static model of one app, as consumed by the Category-B locator.
//
// Schema (JSON):
//   classes:      [{name, superclasses, active_methods, non_overridden_callbacks}]
//   invocations:  [{caller, callees}]
//   param_flows:  [{callee, position, class_name}]
//   apis:         [{class_name, method_name, kind}]
// Method strings are `class#method(sig)`. Entries of active_methods may omit
// the `class#` part. Entries of non_overridden_callbacks name the defining
// framework class.
class AppModel {
 public:
  // Throws Error(kSchemaError) with a JSON pointer, or Error(kDanglingRef).
  static AppModel FromJson(const nlohmann::json& doc);
  static AppModel Load(const std::filesystem::path& path);

  const std::vector<ClassDef>& classes() const { return classes_; }
  const std::vector<Invocation>& invocations() const { return invocations_; }
  const std::vector<ParamFlow>& param_flows() const { return param_flows_; }
  const std::vector<ApiRef>& apis() const { return apis_; }

  const ClassDef* FindClass(std::string_view name) const;

  // Developer methods with a call edge to `api`, first-caller order.
  std::vector<MethodRef> InvokersOf(const ApiRef& api) const;

  // Throw Error(kUnknownClass) for undeclared classes.
  const std::vector<MethodRef>& ActiveMethods(std::string_view class_name) const;
  const std::vector<NonOverriddenCallback>& NonOverriddenCallbacks(
      std::string_view class_name) const;

  // True iff `am` reaches `s` within `depth` call edges, or both live in the
  // same class, or an instance of s's class flows into `am` as a parameter.
  bool Links(const MethodRef& s, const MethodRef& am, int depth) const;

  // Call-edge reachability only (first condition of Links).
  bool Reaches(const MethodRef& from, const MethodRef& to, int depth) const;

  // True iff `nc` is the callback `api` names: same name (and signature where
  // both are known), declared by api's class or by a class on the same
  // superclass chain of the inheriting class.
  bool InheritsFrom(const NonOverriddenCallback& nc, const ApiRef& api) const;

  std::size_t method_count() const;

 private:
  // Resolves a reference to the declared active method it denotes.
  const MethodRef* ResolveActive(const MethodRef& ref) const;

  std::vector<ClassDef> classes_;
  std::map<std::string, std::size_t, std::less<>> class_index_;
  std::vector<Invocation> invocations_;
  std::vector<ParamFlow> param_flows_;
  std::vector<ApiRef> apis_;
  // Developer call graph keyed by canonical MethodRef::ToString().
  std::map<std::string, std::vector<std::string>, std::less<>> developer_edges_;
};

}  // namespace crashloc

#endif  // CRASHLOC_APP_MODEL_H_
