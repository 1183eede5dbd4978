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

#include "crashloc/app_model.h"

#include <algorithm>
#include <deque>
#include <fstream>
#include <set>
#include <sstream>

#include "crashloc/error.h"

namespace crashloc {
namespace {

using nlohmann::json;

std::string_view Trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

[[noreturn]] void SchemaFail(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::kSchemaError, pointer + ": " + what, pointer);
}

const json& Field(const json& obj, std::string_view key, const std::string& pointer) {
  if (!obj.is_object()) SchemaFail(pointer, "expected object");
  auto it = obj.find(key);
  if (it == obj.end()) SchemaFail(pointer + "/" + std::string(key), "missing field");
  return *it;
}

const json& ArrayField(const json& obj, std::string_view key, const std::string& pointer) {
  const json& value = Field(obj, key, pointer);
  if (!value.is_array()) SchemaFail(pointer + "/" + std::string(key), "expected array");
  return value;
}

std::string StringAt(const json& value, const std::string& pointer) {
  if (!value.is_string()) SchemaFail(pointer, "expected string");
  std::string s = value.get<std::string>();
  if (s.empty()) SchemaFail(pointer, "must not be empty");
  return s;
}

MethodRef MethodAt(const json& value, const std::string& pointer) {
  std::string text = StringAt(value, pointer);
  auto ref = MethodRef::Parse(text);
  if (!ref) SchemaFail(pointer, "malformed method reference '" + text + "'");
  return *ref;
}

bool SignaturesAgree(const std::optional<std::vector<std::string>>& a,
                     const std::optional<std::vector<std::string>>& b) {
  return !a || !b || *a == *b;
}

}  // namespace

std::string MethodRef::ToString() const {
  std::string out = class_name + "#" + method_name;
  if (signature) {
    out += '(';
    for (std::size_t i = 0; i < signature->size(); ++i) {
      if (i > 0) out += ',';
      out += (*signature)[i];
    }
    out += ')';
  }
  return out;
}

std::optional<MethodRef> MethodRef::Parse(std::string_view text) {
  text = Trim(text);
  std::size_t hash = text.find('#');
  if (hash == std::string_view::npos || hash == 0) return std::nullopt;
  MethodRef ref;
  ref.class_name = std::string(text.substr(0, hash));
  std::string_view rest = text.substr(hash + 1);
  if (rest.empty()) return std::nullopt;
  std::size_t open = rest.find('(');
  if (open == std::string_view::npos) {
    ref.method_name = std::string(rest);
  } else {
    if (rest.back() != ')') return std::nullopt;
    ref.method_name = std::string(rest.substr(0, open));
    std::string_view params = Trim(rest.substr(open + 1, rest.size() - open - 2));
    std::vector<std::string> sig;
    while (!params.empty()) {
      std::size_t comma = params.find(',');
      std::string_view param = Trim(params.substr(0, comma));
      if (param.empty()) return std::nullopt;
      sig.emplace_back(param);
      if (comma == std::string_view::npos) break;
      params.remove_prefix(comma + 1);
      if (Trim(params).empty()) return std::nullopt;
    }
    ref.signature = std::move(sig);
  }
  if (ref.method_name.empty() || ref.method_name.find_first_of("#() ") != std::string::npos ||
      ref.class_name.find_first_of("() ") != std::string::npos) {
    return std::nullopt;
  }
  return ref;
}

bool MethodRef::Matches(const MethodRef& other) const {
  return class_name == other.class_name && method_name == other.method_name &&
         SignaturesAgree(signature, other.signature);
}

std::string_view ApiKindName(ApiKind kind) {
  return kind == ApiKind::kCallIn ? "call-in" : "callback";
}

std::optional<ApiKind> ParseApiKind(std::string_view name) {
  if (name == "call-in") return ApiKind::kCallIn;
  if (name == "callback") return ApiKind::kCallback;
  return std::nullopt;
}

AppModel AppModel::FromJson(const json& doc) {
  AppModel model;
  if (!doc.is_object()) SchemaFail("", "app model must be a JSON object");

  const json& classes = ArrayField(doc, "classes", "");
  for (std::size_t i = 0; i < classes.size(); ++i) {
    const std::string ptr = "/classes/" + std::to_string(i);
    const json& entry = classes[i];
    ClassDef def;
    def.name = StringAt(Field(entry, "name", ptr), ptr + "/name");
    if (model.class_index_.count(def.name)) SchemaFail(ptr + "/name", "duplicate class");

    const json& supers = ArrayField(entry, "superclasses", ptr);
    for (std::size_t j = 0; j < supers.size(); ++j) {
      def.superclasses.push_back(StringAt(supers[j], ptr + "/superclasses/" + std::to_string(j)));
    }

    const json& active = ArrayField(entry, "active_methods", ptr);
    for (std::size_t j = 0; j < active.size(); ++j) {
      const std::string mptr = ptr + "/active_methods/" + std::to_string(j);
      std::string text = StringAt(active[j], mptr);
      if (text.find('#') == std::string::npos) text = def.name + "#" + text;
      auto ref = MethodRef::Parse(text);
      if (!ref) SchemaFail(mptr, "malformed method reference '" + text + "'");
      if (ref->class_name != def.name) SchemaFail(mptr, "method declared outside its class");
      ref->is_developer = true;
      for (const MethodRef& existing : def.active_methods) {
        if (existing.method_name == ref->method_name && existing.signature == ref->signature) {
          SchemaFail(mptr, "duplicate method " + ref->ToString());
        }
      }
      def.active_methods.push_back(std::move(*ref));
    }

    const json& callbacks = ArrayField(entry, "non_overridden_callbacks", ptr);
    for (std::size_t j = 0; j < callbacks.size(); ++j) {
      const std::string mptr = ptr + "/non_overridden_callbacks/" + std::to_string(j);
      MethodRef declared = MethodAt(callbacks[j], mptr);
      NonOverriddenCallback nc;
      nc.defining_class = declared.class_name;
      nc.method = {def.name, declared.method_name, declared.signature, true};
      for (const MethodRef& am : def.active_methods) {
        if (am.method_name == nc.method.method_name &&
            SignaturesAgree(am.signature, nc.method.signature)) {
          SchemaFail(mptr, "callback " + am.method_name + " is also an active method");
        }
      }
      def.non_overridden_callbacks.push_back(std::move(nc));
    }

    model.class_index_.emplace(def.name, model.classes_.size());
    model.classes_.push_back(std::move(def));
  }

  if (doc.contains("apis")) {
    const json& apis = ArrayField(doc, "apis", "");
    for (std::size_t i = 0; i < apis.size(); ++i) {
      const std::string ptr = "/apis/" + std::to_string(i);
      ApiRef api;
      api.class_name = StringAt(Field(apis[i], "class_name", ptr), ptr + "/class_name");
      api.method_name = StringAt(Field(apis[i], "method_name", ptr), ptr + "/method_name");
      std::string kind = StringAt(Field(apis[i], "kind", ptr), ptr + "/kind");
      auto parsed = ParseApiKind(kind);
      if (!parsed) SchemaFail(ptr + "/kind", "expected 'call-in' or 'callback'");
      api.kind = *parsed;
      model.apis_.push_back(std::move(api));
    }
  }

  // Edge endpoints must resolve before the graph is built.
  auto resolve_any = [&model](const MethodRef& ref, const std::string& ptr) -> MethodRef {
    if (const MethodRef* active = model.ResolveActive(ref)) return *active;
    if (const ClassDef* def = model.FindClass(ref.class_name)) {
      for (const NonOverriddenCallback& nc : def->non_overridden_callbacks) {
        if (nc.method.Matches(ref)) return nc.method;
      }
    }
    for (const ApiRef& api : model.apis_) {
      if (api.AsMethod().Matches(ref)) {
        MethodRef out = ref;
        out.is_developer = false;
        return out;
      }
    }
    throw Error(ErrorCode::kDanglingRef, ptr + ": unresolved method " + ref.ToString(), ptr);
  };

  if (doc.contains("invocations")) {
    const json& invocations = ArrayField(doc, "invocations", "");
    for (std::size_t i = 0; i < invocations.size(); ++i) {
      const std::string ptr = "/invocations/" + std::to_string(i);
      MethodRef caller_ref = MethodAt(Field(invocations[i], "caller", ptr), ptr + "/caller");
      const MethodRef* caller = model.ResolveActive(caller_ref);
      if (!caller) {
        throw Error(ErrorCode::kDanglingRef,
                    ptr + "/caller: unresolved method " + caller_ref.ToString(), ptr + "/caller");
      }
      Invocation inv;
      inv.caller = *caller;
      const json& callees = ArrayField(invocations[i], "callees", ptr);
      for (std::size_t j = 0; j < callees.size(); ++j) {
        const std::string cptr = ptr + "/callees/" + std::to_string(j);
        inv.callees.push_back(resolve_any(MethodAt(callees[j], cptr), cptr));
      }
      auto& edges = model.developer_edges_[inv.caller.ToString()];
      for (const MethodRef& callee : inv.callees) {
        if (callee.is_developer) edges.push_back(callee.ToString());
      }
      model.invocations_.push_back(std::move(inv));
    }
  }

  if (doc.contains("param_flows")) {
    const json& flows = ArrayField(doc, "param_flows", "");
    for (std::size_t i = 0; i < flows.size(); ++i) {
      const std::string ptr = "/param_flows/" + std::to_string(i);
      MethodRef callee_ref = MethodAt(Field(flows[i], "callee", ptr), ptr + "/callee");
      const MethodRef* callee = model.ResolveActive(callee_ref);
      if (!callee) {
        throw Error(ErrorCode::kDanglingRef,
                    ptr + "/callee: unresolved method " + callee_ref.ToString(), ptr + "/callee");
      }
      const json& position = Field(flows[i], "position", ptr);
      if (!position.is_number_integer() || position.get<int>() < 0) {
        SchemaFail(ptr + "/position", "expected non-negative integer");
      }
      ParamFlow flow;
      flow.callee = *callee;
      flow.position = position.get<int>();
      flow.class_name = StringAt(Field(flows[i], "class_name", ptr), ptr + "/class_name");
      model.param_flows_.push_back(std::move(flow));
    }
  }
  return model;
}

AppModel AppModel::Load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open app model " + path.string(), path.string());
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kSchemaError, path.string() + ": " + e.what(), "");
  }
  return FromJson(doc);
}

const ClassDef* AppModel::FindClass(std::string_view name) const {
  auto it = class_index_.find(name);
  return it == class_index_.end() ? nullptr : &classes_[it->second];
}

const MethodRef* AppModel::ResolveActive(const MethodRef& ref) const {
  const ClassDef* def = FindClass(ref.class_name);
  if (!def) return nullptr;
  for (const MethodRef& am : def->active_methods) {
    if (am.Matches(ref)) return &am;
  }
  return nullptr;
}

std::vector<MethodRef> AppModel::InvokersOf(const ApiRef& api) const {
  const MethodRef target = api.AsMethod();
  std::vector<MethodRef> out;
  for (const Invocation& inv : invocations_) {
    if (!inv.caller.is_developer) continue;
    bool calls = std::any_of(inv.callees.begin(), inv.callees.end(),
                             [&](const MethodRef& callee) { return callee.Matches(target); });
    if (calls && std::find(out.begin(), out.end(), inv.caller) == out.end()) {
      out.push_back(inv.caller);
    }
  }
  return out;
}

const std::vector<MethodRef>& AppModel::ActiveMethods(std::string_view class_name) const {
  const ClassDef* def = FindClass(class_name);
  if (!def) throw Error(ErrorCode::kUnknownClass, "unknown class " + std::string(class_name));
  return def->active_methods;
}

const std::vector<NonOverriddenCallback>& AppModel::NonOverriddenCallbacks(
    std::string_view class_name) const {
  const ClassDef* def = FindClass(class_name);
  if (!def) throw Error(ErrorCode::kUnknownClass, "unknown class " + std::string(class_name));
  return def->non_overridden_callbacks;
}

bool AppModel::Reaches(const MethodRef& from, const MethodRef& to, int depth) const {
  const std::string target = to.ToString();
  std::set<std::string, std::less<>> seen = {from.ToString()};
  std::deque<std::pair<std::string, int>> queue = {{from.ToString(), 0}};
  while (!queue.empty()) {
    auto [node, dist] = queue.front();
    queue.pop_front();
    if (dist >= depth) continue;
    auto it = developer_edges_.find(node);
    if (it == developer_edges_.end()) continue;
    for (const std::string& next : it->second) {
      if (next == target) return true;
      if (seen.insert(next).second) queue.emplace_back(next, dist + 1);
    }
  }
  return false;
}

bool AppModel::Links(const MethodRef& s, const MethodRef& am, int depth) const {
  if (s.class_name == am.class_name) return true;
  if (Reaches(am, s, depth)) return true;
  return std::any_of(param_flows_.begin(), param_flows_.end(), [&](const ParamFlow& flow) {
    return flow.callee.Matches(am) && flow.class_name == s.class_name;
  });
}

bool AppModel::InheritsFrom(const NonOverriddenCallback& nc, const ApiRef& api) const {
  if (nc.method.method_name != api.method_name ||
      !SignaturesAgree(nc.method.signature, api.signature)) {
    return false;
  }
  if (nc.defining_class == api.class_name) return true;
  const ClassDef* owner = FindClass(nc.method.class_name);
  if (!owner) return false;
  const auto& chain = owner->superclasses;
  auto on_chain = [&chain](const std::string& name) {
    return std::find(chain.begin(), chain.end(), name) != chain.end();
  };
  return on_chain(nc.defining_class) && on_chain(api.class_name);
}

std::size_t AppModel::method_count() const {
  std::size_t n = 0;
  for (const ClassDef& def : classes_) n += def.active_methods.size();
  return n;
}

}  // namespace crashloc
