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

#include <cstdio>
#include <fstream>
#include <sstream>

#include "galloc/errors.h"

namespace galloc {
namespace {

const Json& Field(const Json& object, const char* key, const char* where) {
  if (!object.is_object() || !object.contains(key)) {
    throw Error(std::string(where) + " is missing \"" + key + "\"");
  }
  return object.at(key);
}

std::string String(const Json& value, const char* where) {
  if (!value.is_string()) throw Error(std::string(where) + " must be a string");
  return value.get<std::string>();
}

Count Integer(const Json& value, const char* where) {
  if (!value.is_number_integer()) {
    throw Error(std::string(where) + " must be an integer");
  }
  return value.get<Count>();
}

std::vector<std::string> Strings(const Json& value, const char* where) {
  if (!value.is_array()) throw Error(std::string(where) + " must be an array");
  std::vector<std::string> result;
  for (const Json& item : value) result.push_back(String(item, where));
  return result;
}

CfSpec CfSpecFromJson(const Json& json) {
  const std::string type = String(Field(json, "type", "choice spec"), "type");
  CfSpec spec;
  spec.quota = Integer(Field(json, "quota", "choice spec"), "quota");
  if (type == "linear") {
    spec.type = CfSpec::Type::kLinear;
    spec.edges = Strings(Field(json, "order", "linear spec"), "order");
  } else if (type == "tableau") {
    spec.type = CfSpec::Type::kTableau;
    spec.edges = Strings(Field(json, "columns", "tableau spec"), "columns");
    const Json& filling = Field(json, "filling", "tableau spec");
    if (!filling.is_array()) throw Error("filling must be an array");
    for (const Json& column : filling) {
      if (!column.is_array()) throw Error("filling column must be an array");
      std::vector<int> labels;
      for (const Json& t : column) {
        labels.push_back(static_cast<int>(Integer(t, "filling label")));
      }
      spec.filling.push_back(std::move(labels));
    }
  } else if (type == "tableau-a3") {
    spec.type = CfSpec::Type::kTableauAlternating;
    spec.edges = Strings(Field(json, "columns", "tableau-a3 spec"), "columns");
  } else {
    throw Error("unknown choice-function type " + type);
  }
  return spec;
}

Json CfSpecToJson(const CfSpec& spec) {
  Json json = Json::object();
  switch (spec.type) {
    case CfSpec::Type::kLinear:
      json["type"] = "linear";
      json["order"] = spec.edges;
      break;
    case CfSpec::Type::kTableau:
      json["type"] = "tableau";
      json["columns"] = spec.edges;
      json["filling"] = spec.filling;
      break;
    case CfSpec::Type::kTableauAlternating:
      json["type"] = "tableau-a3";
      json["columns"] = spec.edges;
      break;
  }
  json["quota"] = spec.quota;
  return json;
}

}  // namespace

Json ParseJson(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed JSON: ") + e.what());
  }
}

Json ReadJsonFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseJson(buffer.str());
}

RawInstance RawInstanceFromJson(const Json& json) {
  if (!json.is_object()) throw Error("instance must be a JSON object");
  try {
    RawInstance raw;
    raw.workers = Strings(Field(json, "workers", "instance"), "workers");
    raw.firms = Strings(Field(json, "firms", "instance"), "firms");
    const Json& edges = Field(json, "edges", "instance");
    if (!edges.is_array()) throw Error("edges must be an array");
    for (const Json& e : edges) {
      raw.edges.push_back({String(Field(e, "id", "edge"), "edge id"),
                           String(Field(e, "worker", "edge"), "edge worker"),
                           String(Field(e, "firm", "edge"), "edge firm"),
                           Integer(Field(e, "capacity", "edge"),
                                   "edge capacity")});
    }
    const Json& quotas = Field(json, "worker_quotas", "instance");
    if (!quotas.is_object()) throw Error("worker_quotas must be an object");
    for (const auto& [w, q] : quotas.items()) {
      raw.worker_quotas[w] = Integer(q, "worker quota");
    }
    const Json& orders = Field(json, "worker_orders", "instance");
    if (!orders.is_object()) throw Error("worker_orders must be an object");
    for (const auto& [w, order] : orders.items()) {
      raw.worker_orders[w] = Strings(order, "worker order");
    }
    const Json& cfs = Field(json, "firm_cfs", "instance");
    if (!cfs.is_object()) throw Error("firm_cfs must be an object");
    for (const auto& [f, spec] : cfs.items()) {
      raw.firm_cfs[f] = CfSpecFromJson(spec);
    }
    return raw;
  } catch (const Json::exception& e) {
    throw Error(std::string("malformed instance: ") + e.what());
  }
}

Json RawInstanceToJson(const RawInstance& raw) {
  Json json = Json::object();
  json["workers"] = raw.workers;
  json["firms"] = raw.firms;
  Json edges = Json::array();
  for (const RawEdge& e : raw.edges) {
    edges.push_back({{"id", e.id},
                     {"worker", e.worker},
                     {"firm", e.firm},
                     {"capacity", e.capacity}});
  }
  json["edges"] = std::move(edges);
  Json quotas = Json::object();
  for (const std::string& w : raw.workers) {
    if (raw.worker_quotas.contains(w)) quotas[w] = raw.worker_quotas.at(w);
  }
  json["worker_quotas"] = std::move(quotas);
  Json orders = Json::object();
  for (const std::string& w : raw.workers) {
    if (raw.worker_orders.contains(w)) orders[w] = raw.worker_orders.at(w);
  }
  json["worker_orders"] = std::move(orders);
  Json cfs = Json::object();
  for (const std::string& f : raw.firms) {
    if (raw.firm_cfs.contains(f)) cfs[f] = CfSpecToJson(raw.firm_cfs.at(f));
  }
  json["firm_cfs"] = std::move(cfs);
  return json;
}

Instance InstanceFromJson(const Json& json) {
  return ValidateInstance(RawInstanceFromJson(json));
}

Instance LoadInstance(const std::string& path) {
  return InstanceFromJson(ReadJsonFile(path));
}

Json InstanceToJson(const Instance& instance) {
  return RawInstanceToJson(instance.raw());
}

Assignment AssignmentFromJson(const Instance& instance, const Json& json) {
  const Json* map = &json;
  if (json.is_object() && json.contains("assignment")) {
    map = &json.at("assignment");
  }
  if (!map->is_object()) throw Error("assignment must be a JSON object");
  std::vector<Count> values(instance.num_edges(), 0);
  for (const auto& [id, value] : map->items()) {
    const auto e = instance.FindEdge(id);
    if (!e) throw Error("unknown edge " + id);
    values[*e] = Integer(value, "assignment value");
  }
  Assignment x(std::move(values));
  CheckInBox(instance, x);
  return x;
}

Json AssignmentToJson(const Instance& instance, const Assignment& x) {
  Json json = Json::object();
  for (EdgeIndex e = 0; e < instance.num_edges(); ++e) {
    json[instance.edge(e).id] = x[e];
  }
  return json;
}

Json SolutionToJson(const Instance& instance, const Assignment& x,
                    bool stable) {
  return {{"assignment", AssignmentToJson(instance, x)}, {"stable", stable}};
}

CostVector CostsFromJson(const Instance& instance, const Json& json) {
  if (!json.is_object()) throw Error("costs must be a JSON object");
  CostVector costs;
  costs.costs.assign(instance.num_edges(), Decimal{});
  std::vector<bool> seen(instance.num_edges(), false);
  for (const auto& [id, value] : json.items()) {
    const auto e = instance.FindEdge(id);
    if (!e) throw Error("unknown edge " + id + " in costs");
    if (value.is_number_integer()) {
      costs.costs[*e] = Decimal::FromInt(value.get<std::int64_t>());
    } else if (value.is_number_float()) {
      costs.costs[*e] = Decimal::FromDouble(value.get<double>());
    } else if (value.is_string()) {
      costs.costs[*e] = Decimal::Parse(value.get<std::string>());
    } else {
      throw Error("cost of " + id + " must be a number");
    }
    seen[*e] = true;
  }
  for (EdgeIndex e = 0; e < instance.num_edges(); ++e) {
    if (!seen[e]) throw Error("missing cost for edge " + instance.edge(e).id);
  }
  return costs;
}

Json StabilityReportToJson(const Instance& instance,
                           const StabilityReport& report) {
  Json blocking = Json::array();
  for (EdgeIndex e : report.blocking_edges) {
    blocking.push_back(instance.edge(e).id);
  }
  Json unacceptable = Json::array();
  for (VertexRef v : report.unacceptable_vertices) {
    unacceptable.push_back(instance.vertex_id(v));
  }
  Json quota = Json::array();
  for (int w : report.quota_violations) {
    quota.push_back(instance.worker_id(w));
  }
  return {{"stable", report.stable},
          {"blocking_edges", std::move(blocking)},
          {"unacceptable_vertices", std::move(unacceptable)},
          {"quota_violations", std::move(quota)}};
}

Json RotationToJson(const Instance& instance, const Rotation& rotation) {
  Json key = Json::array();
  for (EdgeIndex e : rotation.key()) key.push_back(instance.edge(e).id);
  Json plus = Json::array();
  for (EdgeIndex e : rotation.plus_edges) plus.push_back(instance.edge(e).id);
  Json minus = Json::array();
  for (EdgeIndex e : rotation.minus_edges) {
    minus.push_back(instance.edge(e).id);
  }
  return {{"key", std::move(key)},
          {"plus", std::move(plus)},
          {"minus", std::move(minus)}};
}

std::uint64_t Fnv1a(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char ch : bytes) {
    hash ^= ch;
    hash *= 1099511628211ull;
  }
  return hash;
}

std::string InstanceDigest(const Instance& instance) {
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx",
                static_cast<unsigned long long>(
                    Fnv1a(InstanceToJson(instance).dump())));
  return buffer;
}

}  // namespace galloc
