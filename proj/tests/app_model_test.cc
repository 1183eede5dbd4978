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

#include <gtest/gtest.h>

#include <random>

#include "oracles.h"
#include "test_util.h"

namespace crashloc {
namespace {

using ::crashloc::testing::CodeOf;
using ::crashloc::testing::DataPath;
using json = nlohmann::json;

MethodRef M(const std::string& text) { return *MethodRef::Parse(text); }

json MinimalModel() {
  return json::parse(R"js({
    "classes": [{"name": "a.B", "superclasses": [], "active_methods": ["m()"],
                 "non_overridden_callbacks": []}],
    "invocations": [], "param_flows": [], "apis": []
  })js");
}

std::string WhereOf(const json& doc) {
  try {
    AppModel::FromJson(doc);
  } catch (const Error& e) {
    return e.where();
  }
  return "<no error>";
}

TEST(MethodRefTest, ParseAndPrint) {
  const MethodRef m = M("com.x.A#run(int,java.lang.String)");
  EXPECT_EQ(m.class_name, "com.x.A");
  EXPECT_EQ(m.method_name, "run");
  EXPECT_EQ(m.signature, (std::vector<std::string>{"int", "java.lang.String"}));
  EXPECT_EQ(m.ToString(), "com.x.A#run(int,java.lang.String)");
  EXPECT_EQ(M("com.x.A#run").ToString(), "com.x.A#run");
  EXPECT_EQ(M("com.x.A#run()").signature, std::vector<std::string>{});
  EXPECT_FALSE(MethodRef::Parse("noHash").has_value());
  EXPECT_FALSE(MethodRef::Parse("a.B#").has_value());
  EXPECT_FALSE(MethodRef::Parse("a.B#m(int,)").has_value());
}

TEST(MethodRefTest, MatchesIgnoresUnknownSignature) {
  EXPECT_TRUE(M("a.B#m").Matches(M("a.B#m(int)")));
  EXPECT_TRUE(M("a.B#m(int)").Matches(M("a.B#m(int)")));
  EXPECT_FALSE(M("a.B#m(int)").Matches(M("a.B#m()")));
  EXPECT_FALSE(M("a.B#m").Matches(M("a.C#m")));
}

TEST(LoadAppModelTest, MinimalModelIsValid) {
  const AppModel model = AppModel::FromJson(MinimalModel());
  EXPECT_EQ(model.classes().size(), 1u);
  EXPECT_EQ(model.method_count(), 1u);
  EXPECT_EQ(model.ActiveMethods("a.B")[0].ToString(), "a.B#m()");
}

TEST(LoadAppModelTest, DanglingEdge) {
  json doc = MinimalModel();
  doc["invocations"] = json::parse(R"js([{"caller": "a.B#m()", "callees": ["a.B#nope()"]}])js");
  EXPECT_EQ(CodeOf([&] { AppModel::FromJson(doc); }), ErrorCode::kDanglingRef);
  doc["invocations"] = json::parse(R"js([{"caller": "a.Z#m()", "callees": []}])js");
  EXPECT_EQ(CodeOf([&] { AppModel::FromJson(doc); }), ErrorCode::kDanglingRef);
}

TEST(LoadAppModelTest, SchemaErrorsCarryJsonPointer) {
  json doc = MinimalModel();
  doc["classes"][0].erase("superclasses");
  EXPECT_EQ(CodeOf([&] { AppModel::FromJson(doc); }), ErrorCode::kSchemaError);
  EXPECT_EQ(WhereOf(doc), "/classes/0/superclasses");

  doc = MinimalModel();
  doc["classes"][0]["active_methods"][0] = 7;
  EXPECT_EQ(WhereOf(doc), "/classes/0/active_methods/0");

  doc = MinimalModel();
  doc["classes"][0]["non_overridden_callbacks"] = json::array({"x.Y#m()"});
  EXPECT_EQ(WhereOf(doc), "/classes/0/non_overridden_callbacks/0");

  doc = MinimalModel();
  doc["apis"] = json::parse(R"js([{"class_name": "x.Y", "method_name": "m", "kind": "sideways"}])js");
  EXPECT_EQ(WhereOf(doc), "/apis/0/kind");
}

TEST(LoadAppModelTest, MissingFileIsIoError) {
  EXPECT_EQ(CodeOf([] { AppModel::Load("/nonexistent/model.json"); }), ErrorCode::kIoError);
}

TEST(FengshuiModelTest, NonOverriddenCallbacks) {
  const AppModel model = AppModel::Load(DataPath("models/fengshui.json"));
  const ClassDef* p = model.FindClass("com.divination1518.g.p");
  ASSERT_NE(p, nullptr);
  EXPECT_EQ(p->superclasses.front(), "android.database.sqlite.SQLiteOpenHelper");
  const auto& ncs = model.NonOverriddenCallbacks("com.divination1518.g.p");
  ASSERT_EQ(ncs.size(), 2u);
  EXPECT_EQ(ncs[0].method.class_name, "com.divination1518.g.p");
  EXPECT_EQ(ncs[0].method.method_name, "onDowngrade");
  EXPECT_EQ(ncs[0].defining_class, "android.database.sqlite.SQLiteOpenHelper");
  EXPECT_TRUE(model.NonOverriddenCallbacks("com.divination1518.f.s").empty());
  EXPECT_EQ(CodeOf([&] { model.NonOverriddenCallbacks("no.Such"); }), ErrorCode::kUnknownClass);
}

TEST(GeographyModelTest, InvokersAndActiveMethods) {
  const AppModel model = AppModel::Load(DataPath("models/geography.json"));
  const ApiRef bind{"android.content.Context", "bindService", std::nullopt, ApiKind::kCallIn};
  const std::vector<MethodRef> invokers = model.InvokersOf(bind);
  ASSERT_EQ(invokers.size(), 1u);
  EXPECT_EQ(invokers[0].method_name, "onCreate");

  const auto& active = model.ActiveMethods("com.yamlearning.geographylearning.MainActivity");
  ASSERT_EQ(active.size(), 3u);
  EXPECT_EQ(active[0].method_name, "onCreate");
  EXPECT_EQ(active[1].method_name, "onDestroy");
  EXPECT_EQ(active[2].method_name, "startQuiz");
  EXPECT_EQ(CodeOf([&] { model.ActiveMethods("x.Y"); }), ErrorCode::kUnknownClass);

  const ApiRef unused{"android.content.Context", "registerReceiver", std::nullopt,
                      ApiKind::kCallIn};
  EXPECT_TRUE(model.InvokersOf(unused).empty());
}

TEST(InvokersOfTest, ModelOrder) {
  const AppModel model = AppModel::FromJson(json::parse(R"js({
    "classes": [{"name": "a.X", "superclasses": [], "active_methods": ["m2()", "m1()"],
                 "non_overridden_callbacks": []}],
    "invocations": [{"caller": "a.X#m1()", "callees": ["f.W#api"]},
                    {"caller": "a.X#m2()", "callees": ["f.W#api"]}],
    "param_flows": [],
    "apis": [{"class_name": "f.W", "method_name": "api", "kind": "call-in"}]
  })js"));
  const auto invokers =
      model.InvokersOf({"f.W", "api", std::nullopt, ApiKind::kCallIn});
  ASSERT_EQ(invokers.size(), 2u);
  EXPECT_EQ(invokers[0].method_name, "m1");
  EXPECT_EQ(invokers[1].method_name, "m2");
}

json ChainModel() {
  return json::parse(R"js({
    "classes": [
      {"name": "a.A", "superclasses": [], "active_methods": ["am()"], "non_overridden_callbacks": []},
      {"name": "a.X", "superclasses": [], "active_methods": ["x()"], "non_overridden_callbacks": []},
      {"name": "a.S", "superclasses": [], "active_methods": ["s()", "t()"],
       "non_overridden_callbacks": []},
      {"name": "a.P", "superclasses": [], "active_methods": ["take(a.S)"],
       "non_overridden_callbacks": []}
    ],
    "invocations": [{"caller": "a.A#am()", "callees": ["a.X#x()"]},
                    {"caller": "a.X#x()", "callees": ["a.S#s()"]}],
    "param_flows": [{"callee": "a.P#take(a.S)", "position": 0, "class_name": "a.S"}],
    "apis": []
  })js");
}

TEST(LinksTest, ThreeSubConditions) {
  const AppModel model = AppModel::FromJson(ChainModel());
  const MethodRef s = M("a.S#s()");
  EXPECT_TRUE(model.Links(s, M("a.A#am()"), 3));   // two-hop chain
  EXPECT_FALSE(model.Links(s, M("a.A#am()"), 1));  // beyond depth
  EXPECT_TRUE(model.Links(s, M("a.S#t()"), 1));    // same class
  EXPECT_TRUE(model.Links(s, s, 1));
  EXPECT_TRUE(model.Links(s, M("a.P#take(a.S)"), 1));  // parameter flow
  EXPECT_FALSE(model.Links(M("a.A#am()"), M("a.S#t()"), 5));
}

TEST(LinksTest, ReachabilityMatchesBfsOracleAndIsMonotone) {
  std::mt19937 rng(17);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 7);
    json doc;
    doc["classes"] = json::array();
    for (int i = 0; i < n; ++i) {
      doc["classes"].push_back({{"name", "g.C" + std::to_string(i)},
                                {"superclasses", json::array()},
                                {"active_methods", json::array({"m()"})},
                                {"non_overridden_callbacks", json::array()}});
    }
    doc["invocations"] = json::array();
    std::map<std::string, std::vector<std::string>> edges;
    for (int i = 0; i < n; ++i) {
      json callees = json::array();
      const std::string caller = "g.C" + std::to_string(i) + "#m()";
      for (int j = 0; j < n; ++j) {
        if (rng() % 4 == 0) {
          const std::string callee = "g.C" + std::to_string(j) + "#m()";
          callees.push_back(callee);
          edges[caller].push_back(callee);
        }
      }
      doc["invocations"].push_back({{"caller", caller}, {"callees", callees}});
    }
    const AppModel model = AppModel::FromJson(doc);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b) {
        const std::string from = "g.C" + std::to_string(a) + "#m()";
        const std::string to = "g.C" + std::to_string(b) + "#m()";
        bool previous = false;
        for (int depth = 1; depth <= 6; ++depth) {
          const bool got = model.Reaches(M(from), M(to), depth);
          EXPECT_EQ(got, oracle::Reaches(edges, from, to, depth)) << from << "->" << to;
          EXPECT_TRUE(!previous || got) << "monotone in depth";
          previous = got;
        }
      }
    }
  }
}

TEST(InheritsFromTest, ChainWalk) {
  const AppModel model = AppModel::FromJson(json::parse(R"js({
    "classes": [{"name": "app.Helper",
                 "superclasses": ["app.BaseHelper", "android.database.sqlite.SQLiteOpenHelper"],
                 "active_methods": ["onCreate()"],
                 "non_overridden_callbacks": [
                   "android.database.sqlite.SQLiteOpenHelper#onDowngrade(int,int)",
                   "app.BaseHelper#onOpen()"]}],
    "invocations": [], "param_flows": [], "apis": []
  })js"));
  const auto& ncs = model.NonOverriddenCallbacks("app.Helper");
  const ApiRef downgrade{"android.database.sqlite.SQLiteOpenHelper", "onDowngrade", std::nullopt,
                         ApiKind::kCallback};
  EXPECT_TRUE(model.InheritsFrom(ncs[0], downgrade));
  const ApiRef wrong_class{"android.app.Activity", "onDowngrade", std::nullopt,
                           ApiKind::kCallback};
  EXPECT_FALSE(model.InheritsFrom(ncs[0], wrong_class));
  const ApiRef wrong_sig{"android.database.sqlite.SQLiteOpenHelper", "onDowngrade",
                         std::vector<std::string>{"int"}, ApiKind::kCallback};
  EXPECT_FALSE(model.InheritsFrom(ncs[0], wrong_sig));
  // Declared by a subclass of the API's class, both on the owner's chain.
  const ApiRef open{"android.database.sqlite.SQLiteOpenHelper", "onOpen", std::nullopt,
                    ApiKind::kCallback};
  EXPECT_TRUE(model.InheritsFrom(ncs[1], open));
}

TEST(LoadAppModelTest, CallbackOverlappingActiveMethodRejected) {
  json doc = MinimalModel();
  doc["classes"][0]["superclasses"] = json::array({"f.Base"});
  doc["classes"][0]["non_overridden_callbacks"] = json::array({"f.Base#m()"});
  EXPECT_EQ(CodeOf([&] { AppModel::FromJson(doc); }), ErrorCode::kSchemaError);
}

}  // namespace
}  // namespace crashloc
