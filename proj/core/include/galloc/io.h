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

// JSON instance, assignment and cost files.

#ifndef GALLOC_IO_H_
#define GALLOC_IO_H_

#include <cstdint>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "galloc/cost.h"
#include "galloc/model.h"
#include "galloc/rotation.h"
#include "galloc/stability.h"

namespace galloc {

using Json = nlohmann::ordered_json;

// All parsers throw Error on malformed input.
Json ParseJson(std::string_view text);
Json ReadJsonFile(const std::string& path);

RawInstance RawInstanceFromJson(const Json& json);
Json RawInstanceToJson(const RawInstance& raw);
Instance InstanceFromJson(const Json& json);
Instance LoadInstance(const std::string& path);
Json InstanceToJson(const Instance& instance);

// Accepts a solution object {"assignment": {...}, ...} or a bare map from
// edge id to value. Missing edges are zero.
Assignment AssignmentFromJson(const Instance& instance, const Json& json);
Json AssignmentToJson(const Instance& instance, const Assignment& x);
Json SolutionToJson(const Instance& instance, const Assignment& x,
                    bool stable);

CostVector CostsFromJson(const Instance& instance, const Json& json);

Json StabilityReportToJson(const Instance& instance,
                           const StabilityReport& report);
Json RotationToJson(const Instance& instance, const Rotation& rotation);

// 64-bit FNV-1a.
std::uint64_t Fnv1a(std::string_view bytes);
std::string InstanceDigest(const Instance& instance);

}  // namespace galloc

#endif  // GALLOC_IO_H_
