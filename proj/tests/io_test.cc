// Copyright 2026 The galloc Authors.
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

#include "galloc/io.h"

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "galloc/cost.h"
#include "galloc/errors.h"
#include "galloc/genrand.h"
#include "galloc/stability.h"
#include "test_util.h"

namespace galloc {
namespace {

using ::testing::HasSubstr;

TEST(InstanceJsonTest, RoundTrip) {
  for (CfFamily family : {CfFamily::kLinear, CfFamily::kMixed}) {
    GeneratorConfig config;
    config.seed = 11;
    config.family = family;
    const Instance instance = Generate(config);
    const Json json = InstanceToJson(instance);
    const Instance again = InstanceFromJson(ParseJson(json.dump(2)));
    EXPECT_EQ(InstanceToJson(again).dump(), json.dump());
    EXPECT_EQ(InstanceDigest(again), InstanceDigest(instance));
    EXPECT_EQ(InstanceDigest(instance).size(), 16u);
  }
  const Instance appendix = MakeAppendixInstance(4);
  EXPECT_EQ(InstanceToJson(InstanceFromJson(InstanceToJson(appendix))).dump(),
            InstanceToJson(appendix).dump());
  EXPECT_NE(InstanceDigest(appendix),
            InstanceDigest(MakeAppendixInstance(6)));
}

TEST(InstanceJsonTest, Errors) {
  EXPECT_THROW(ParseJson("{"), Error);
  EXPECT_THROW(InstanceFromJson(ParseJson("[]")), Error);
  Json json = InstanceToJson(ValidateInstance(testing::SwapRaw()));
  json.erase("edges");
  try {
    InstanceFromJson(json);
    FAIL();
  } catch (const Error& e) {
    EXPECT_THAT(e.what(), HasSubstr("edges"));
  }
  Json bad_type = InstanceToJson(ValidateInstance(testing::SwapRaw()));
  bad_type["firm_cfs"]["f1"]["type"] = "quadratic";
  EXPECT_THROW(InstanceFromJson(bad_type), Error);
  EXPECT_THROW(LoadInstance("/nonexistent/instance.json"), Error);
}

TEST(Fnv1aTest, KnownValues) {
  EXPECT_EQ(Fnv1a(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(Fnv1a("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(Fnv1a("foobar"), 0x85944171f73967e8ULL);
}

TEST(AssignmentJsonTest, BareMapAndSolution) {
  const Instance instance = ValidateInstance(testing::SwapRaw("", 2, 2));
  const Assignment x = testing::ByName(instance, {{"w1f1", 2}, {"w2f2", 1}});
  EXPECT_EQ(AssignmentFromJson(instance, AssignmentToJson(instance, x)), x);
  EXPECT_EQ(AssignmentFromJson(instance,
                               SolutionToJson(instance, x, IsStable(instance, x))),
            x);
  EXPECT_EQ(AssignmentFromJson(instance, ParseJson(R"({"w1f1": 2})")),
            testing::ByName(instance, {{"w1f1", 2}}));
  const Json solution = SolutionToJson(instance, x, false);
  EXPECT_FALSE(solution["stable"].get<bool>());
  EXPECT_THROW(AssignmentFromJson(instance, ParseJson(R"({"zz": 1})")), Error);
  EXPECT_THROW(AssignmentFromJson(instance, ParseJson(R"({"w1f1": 3})")),
               Error);
  EXPECT_THROW(AssignmentFromJson(instance, ParseJson("[1, 2]")), Error);
}

TEST(CostsJsonTest, ParseAndErrors) {
  const Instance instance = ValidateInstance(testing::SwapRaw());
  const CostVector costs = CostsFromJson(
      instance,
      ParseJson(R"({"w1f1": 1.5, "w1f2": -2, "w2f1": 0.25, "w2f2": 3})"));
  EXPECT_EQ(costs.common_scale(), 2);
  EXPECT_EQ(costs.costs[instance.EdgeByName("w2f1")], Decimal::Parse("0.25"));
  // Edges follow worker preference order: w1f1, w1f2, w2f2, w2f1.
  EXPECT_THAT(costs.Scaled(), ::testing::ElementsAre(150, -200, 300, 25));
  EXPECT_THROW(
      CostsFromJson(instance, ParseJson(R"({"w1f1": 1, "w1f2": 1})")), Error);
  EXPECT_THROW(CostsFromJson(instance,
                             ParseJson(R"({"w1f1": 1, "w1f2": 1, "w2f1": 1,
                                          "w2f2": 1, "zz": 1})")),
               Error);
  EXPECT_THROW(CostsFromJson(instance,
                             ParseJson(R"({"w1f1": "x", "w1f2": 1, "w2f1": 1,
                                          "w2f2": 1})")),
               Error);
}

TEST(DecimalTest, ParseAndFormat) {
  const Decimal d = Decimal::Parse("1.25");
  EXPECT_EQ(d.mantissa, 125);
  EXPECT_EQ(d.scale, 2);
  EXPECT_EQ(d.ToString(), "1.25");
  EXPECT_EQ(Decimal::Parse("-3e2"), Decimal::FromInt(-300));
  EXPECT_EQ(Decimal::Parse("1e-3").ToString(), "0.001");
  EXPECT_EQ(Decimal::Parse("2.50"), Decimal::Parse("2.5"));
  EXPECT_EQ(Decimal::Parse("-0.5").ToString(), "-0.5");
  EXPECT_EQ(Decimal::FromDouble(0.1), Decimal::Parse("0.1"));
  EXPECT_EQ(Decimal::Parse("7").ScaledTo(3), 7000);
  EXPECT_THROW(Decimal::Parse("1..2"), Error);
  EXPECT_THROW(Decimal::Parse(""), Error);
  EXPECT_THROW(Decimal::Parse("abc"), Error);
  EXPECT_THROW(Decimal::Parse("1.5").ScaledTo(0), Error);
  EXPECT_THROW(Decimal::Parse("9").ScaledTo(40), Error);
}

TEST(DecimalTest, TotalCostIsExact) {
  CostVector costs{{Decimal::Parse("0.1"), Decimal::Parse("0.2")}};
  EXPECT_EQ(TotalCost(costs, Assignment({3, 1})), Decimal::Parse("0.5"));
}

}  // namespace
}  // namespace galloc
