// Copyright 2026 The madgrad-bench Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "madgrad/checkpoint.hpp"

#include <sstream>

#include "madgrad/error.hpp"
#include "madgrad/text.hpp"

namespace madgrad {

namespace {

template <class Map>
const auto& lookup(const Map& m, const std::string& name, const char* what) {
  const auto it = m.find(name);
  if (it == m.end()) throw ConfigError(std::string("state record: missing ") + what + " '" + name + "'");
  return it->second;
}

ParamVector vec(const StateRecord& rec, const std::string& name) { return ParamVector(rec.array(name)); }

}  // namespace

std::uint64_t StateRecord::counter(const std::string& name) const { return lookup(counters, name, "counter"); }
double StateRecord::scalar(const std::string& name) const { return lookup(scalars, name, "scalar"); }
const std::vector<double>& StateRecord::array(const std::string& name) const {
  return lookup(arrays, name, "array");
}

std::string write_record(const StateRecord& rec) {
  std::ostringstream os;
  os << "kind " << rec.kind << '\n';
  for (const auto& [name, v] : rec.counters) os << "counter " << name << ' ' << v << '\n';
  for (const auto& [name, v] : rec.scalars) os << "scalar " << name << ' ' << text::to_decimal(v) << '\n';
  for (const auto& [name, values] : rec.arrays) {
    os << "array " << name << ' ' << values.size();
    for (double v : values) os << ' ' << text::to_decimal(v);
    os << '\n';
  }
  return os.str();
}

StateRecord parse_record(std::string_view input) {
  StateRecord rec;
  std::istringstream is{std::string(input)};
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto body = text::trim(line);
    if (body.empty() || body.front() == '#') continue;
    std::istringstream ls{std::string(body)};
    std::string tag;
    std::string name;
    ls >> tag;
    const auto fail = [&](const std::string& msg) {
      throw ConfigError("state record line " + std::to_string(lineno) + ": " + msg);
    };
    if (tag == "kind") {
      ls >> rec.kind;
      continue;
    }
    if (!(ls >> name)) fail("missing name");
    if (tag == "counter") {
      std::uint64_t v = 0;
      if (!(ls >> v)) fail("bad counter");
      rec.counters[name] = v;
    } else if (tag == "scalar") {
      std::string tok;
      if (!(ls >> tok)) fail("missing scalar value");
      rec.scalars[name] = text::parse_decimal(tok);
    } else if (tag == "array") {
      std::size_t n = 0;
      if (!(ls >> n)) fail("missing array length");
      std::vector<double> values;
      values.reserve(n);
      std::string tok;
      while (ls >> tok) values.push_back(text::parse_decimal(tok));
      if (values.size() != n) fail("array '" + name + "' declares " + std::to_string(n) + " values");
      rec.arrays[name] = std::move(values);
    } else {
      fail("unknown tag '" + tag + "'");
    }
  }
  if (rec.kind.empty()) throw ConfigError("state record: missing kind line");
  return rec;
}

StateRecord to_record(const MadgradState& st) {
  StateRecord rec;
  rec.kind = "madgrad";
  rec.counters["k"] = st.k;
  rec.scalars["eps"] = st.eps;
  rec.scalars["weight_decay"] = st.weight_decay;
  rec.arrays["x0"] = st.x0.values();
  rec.arrays["s"] = st.s.values();
  rec.arrays["nu"] = st.nu.values();
  rec.arrays["z"] = st.z.values();
  rec.arrays["x"] = st.x.values();
  if (st.g_bound) rec.arrays["g_bound"] = st.g_bound->values();
  return rec;
}

MadgradState madgrad_from_record(const StateRecord& rec) {
  if (rec.kind != "madgrad") throw ConfigError("state record: expected kind madgrad, got " + rec.kind);
  MadgradState st;
  st.k = rec.counter("k");
  st.eps = rec.scalar("eps");
  st.weight_decay = rec.scalar("weight_decay");
  st.x0 = vec(rec, "x0");
  st.s = vec(rec, "s");
  st.nu = vec(rec, "nu");
  st.z = vec(rec, "z");
  st.x = vec(rec, "x");
  if (rec.arrays.count("g_bound")) st.g_bound = vec(rec, "g_bound");
  const std::size_t d = st.x0.size();
  for (const auto* v : {&st.s, &st.nu, &st.z, &st.x}) require_same_dim(d, v->size(), "madgrad state record");
  return st;
}

StateRecord to_record(const AdamState& st) {
  StateRecord rec;
  rec.kind = "adam";
  rec.counters["k"] = st.k;
  rec.counters["amsgrad"] = st.amsgrad ? 1 : 0;
  rec.scalars["beta1"] = st.beta1;
  rec.scalars["beta2"] = st.beta2;
  rec.scalars["eps"] = st.eps;
  rec.arrays["x"] = st.x.values();
  rec.arrays["m"] = st.m.values();
  rec.arrays["v"] = st.v.values();
  rec.arrays["v_max"] = st.v_max.values();
  return rec;
}

AdamState adam_from_record(const StateRecord& rec) {
  if (rec.kind != "adam") throw ConfigError("state record: expected kind adam, got " + rec.kind);
  AdamState st;
  st.k = rec.counter("k");
  st.amsgrad = rec.counter("amsgrad") != 0;
  st.beta1 = rec.scalar("beta1");
  st.beta2 = rec.scalar("beta2");
  st.eps = rec.scalar("eps");
  st.x = vec(rec, "x");
  st.m = vec(rec, "m");
  st.v = vec(rec, "v");
  st.v_max = vec(rec, "v_max");
  const std::size_t d = st.x.size();
  for (const auto* v : {&st.m, &st.v, &st.v_max}) require_same_dim(d, v->size(), "adam state record");
  return st;
}

}  // namespace madgrad
