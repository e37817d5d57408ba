#include "majq/circuit_json.hpp"

#include <json.hpp>

namespace majq {

namespace {

using ordered = nlohmann::ordered_json;
using nlohmann::json;

ordered gate_to_json(const threshold_gate& g) {
  ordered out;
  out["inputs"] = g.inputs().to_vector();
  out["weights"] = g.weights();
  out["threshold"] = g.threshold();
  return out;
}

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw parse_error(field + ": " + what);
}

const json& member(const json& obj, const std::string& path, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) {
    fail(path.empty() ? key : path + "." + key, "missing");
  }
  return *it;
}

std::int64_t as_int(const json& v, const std::string& field) {
  if (!v.is_number_integer()) {
    fail(field, "expected an integer");
  }
  return v.get<std::int64_t>();
}

std::size_t as_count(const json& v, const std::string& field) {
  const auto i = as_int(v, field);
  if (i < 0) {
    fail(field, "expected a non-negative integer");
  }
  return static_cast<std::size_t>(i);
}

threshold_gate gate_from_json(const json& g, const std::string& path) {
  if (!g.is_object()) {
    fail(path, "expected an object");
  }
  const auto& inputs = member(g, path, "inputs");
  const auto& weights = member(g, path, "weights");
  if (!inputs.is_array()) {
    fail(path + ".inputs", "expected an array");
  }
  if (!weights.is_array()) {
    fail(path + ".weights", "expected an array");
  }
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const auto field = path + ".inputs[" + std::to_string(i) + "]";
    idx.push_back(as_count(inputs[i], field));
    if (i > 0 && idx[i - 1] >= idx[i]) {
      fail(field, "inputs must be strictly increasing");
    }
  }
  std::vector<std::int64_t> w;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const auto field = path + ".weights[" + std::to_string(i) + "]";
    w.push_back(as_int(weights[i], field));
    if (w.back() < 1) {
      fail(field, "weights must be positive integers");
    }
  }
  if (w.size() != idx.size()) {
    fail(path + ".weights", "has " + std::to_string(w.size()) + " entries for " + std::to_string(idx.size()) +
                                " inputs");
  }
  const auto t = as_int(member(g, path, "threshold"), path + ".threshold");
  return threshold_gate(index_set(std::move(idx)), std::move(w), t);
}

} // namespace

std::string circuit_to_json(const depth_two_circuit& c) {
  std::string out = "{\n";
  out += "  \"n\": " + std::to_string(c.n) + ",\n";
  out += "  \"k\": " + std::to_string(c.declared_k) + ",\n";
  out += "  \"gates\": [";
  for (std::size_t g = 0; g < c.first_level.size(); ++g) {
    out += g == 0 ? "\n    " : ",\n    ";
    out += gate_to_json(c.first_level[g]).dump();
  }
  out += c.first_level.empty() ? "],\n" : "\n  ],\n";
  out += "  \"output\": " + gate_to_json(c.output).dump() + "\n}\n";
  return out;
}

depth_two_circuit circuit_from_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw parse_error(std::string("document: ") + e.what());
  }
  if (!doc.is_object()) {
    fail("document", "expected an object");
  }
  depth_two_circuit c;
  c.n = as_count(member(doc, "", "n"), "n");
  c.declared_k = as_count(member(doc, "", "k"), "k");
  const auto& gates = member(doc, "", "gates");
  if (!gates.is_array()) {
    fail("gates", "expected an array");
  }
  for (std::size_t g = 0; g < gates.size(); ++g) {
    c.first_level.push_back(gate_from_json(gates[g], "gates[" + std::to_string(g) + "]"));
  }
  c.output = gate_from_json(member(doc, "", "output"), "output");

  for (std::size_t g = 0; g < c.first_level.size(); ++g) {
    const auto& gate = c.first_level[g];
    const auto field = "gates[" + std::to_string(g) + "]";
    if (!gate.inputs().empty() && gate.inputs().back() >= c.n) {
      fail(field + ".inputs", "index " + std::to_string(gate.inputs().back()) + " is not below n");
    }
    if (gate.fan_in() > static_cast<std::int64_t>(c.declared_k)) {
      fail(field + ".weights", "fan-in " + std::to_string(gate.fan_in()) + " exceeds k");
    }
  }
  if (!c.output.inputs().empty() && c.output.inputs().back() >= c.first_level.size()) {
    fail("output.inputs", "gate " + std::to_string(c.output.inputs().back()) + " does not exist");
  }
  if (c.output.fan_in() > static_cast<std::int64_t>(c.declared_k)) {
    fail("output.weights", "fan-in " + std::to_string(c.output.fan_in()) + " exceeds k");
  }
  return c;
}

} // namespace majq
