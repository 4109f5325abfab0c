// Copyright 2026 The fragqite Authors
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

#include "config.hpp"

#include <cmath>
#include <sstream>

namespace fragqite::cli {

namespace {

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

int to_int(const std::string& s) {
  std::size_t pos = 0;
  int v = 0;
  try {
    v = std::stoi(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size()) throw ConfigError("not an integer: '" + s + "'");
  return v;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != s.size()) throw ConfigError("not a number: '" + s + "'");
  return v;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  for (const std::string& item : split(s)) {
    const auto dash = item.find('-', 1);
    if (dash == std::string::npos) {
      out.push_back(to_int(item));
      continue;
    }
    const int lo = to_int(item.substr(0, dash));
    const int hi = to_int(item.substr(dash + 1));
    if (hi < lo) throw ConfigError("empty range '" + item + "'");
    for (int v = lo; v <= hi; ++v) out.push_back(v);
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& s) {
  std::vector<double> out;
  for (const std::string& item : split(s)) out.push_back(to_double(item));
  return out;
}

std::vector<HamClass> parse_class_list(const std::string& s) {
  std::vector<HamClass> out;
  for (const std::string& item : split(s)) out.push_back(ham_class_from_string(item));
  return out;
}

void apply_json(const Json& j, ExperimentConfig& cfg) {
  require(j.is_object(), "config must be a JSON object");
  auto text = [](const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (const Json& e : v) s += (s.empty() ? "" : ",") + (e.is_string() ? e.get<std::string>() : e.dump());
      return s;
    }
    return v.dump();
  };
  try {
    for (const auto& [key, v] : j.items()) {
      if (key == "classes") cfg.classes = parse_class_list(text(v));
      else if (key == "n") cfg.n = parse_int_list(text(v));
      else if (key == "instances") cfg.instances = v.get<int>();
      else if (key == "eps") cfg.eps = parse_double_list(text(v));
      else if (key == "beta_min") cfg.beta_min = v.get<double>();
      else if (key == "beta_max") cfg.beta_max = v.get<double>();
      else if (key == "beta_points") cfg.beta_points = v.get<int>();
      else if (key == "beta_grid") cfg.beta_log = text(v) == "log" ? true
                                       : text(v) == "linear" ? false
                                       : throw ConfigError("beta_grid must be log or linear");
      else if (key == "primitive") cfg.primitive = primitive_from_string(v.get<std::string>());
      else if (key == "mode") cfg.mode = v.get<std::string>() == "pure"    ? Mode::pure
                                         : v.get<std::string>() == "gibbs" ? Mode::gibbs
                                         : throw ConfigError("mode must be gibbs or pure");
      else if (key == "rmax") cfg.r_max = v.get<int>();
      else if (key == "seed") cfg.seed = v.get<std::uint64_t>();
      else if (key == "out") cfg.out = v.get<std::string>();
      else if (key == "threads") cfg.threads = v.get<int>();
      else throw ConfigError("unknown config key '" + key + "'");
    }
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("bad config value: ") + e.what());
  }
}

void ExperimentConfig::validate() const {
  require(!classes.empty(), "config: classes must be nonempty");
  require(!n.empty(), "config: n must be nonempty");
  for (int v : n) require(v >= 2 && v <= 15, "config: n must lie in [2, 15]");
  require(instances >= 1, "config: instances must be >= 1");
  require(!eps.empty(), "config: eps must be nonempty");
  for (double e : eps) require(e > 0.0 && e < 1.0, "config: eps must lie in (0, 1)");
  require(beta_points >= 1, "config: beta_points must be >= 1");
  require(beta_min >= 0.0 && beta_max >= beta_min, "config: need 0 <= beta_min <= beta_max");
  require(!beta_log || beta_min > 0.0, "config: a log beta grid needs beta_min > 0");
  require(beta_points == 1 || beta_max > beta_min, "config: beta range is empty");
  require(r_max >= 1, "config: rmax must be >= 1");
  require(threads >= 1, "config: threads must be >= 1");
}

std::vector<double> ExperimentConfig::beta_grid() const {
  std::vector<double> g(beta_points);
  for (int i = 0; i < beta_points; ++i) {
    const double t = beta_points == 1 ? 0.0 : double(i) / (beta_points - 1);
    if (beta_log) {
      const double lo = std::log10(beta_min), hi = std::log10(beta_max);
      g[i] = std::pow(10.0, lo + (hi - lo) * t);
    } else {
      g[i] = beta_min + (beta_max - beta_min) * t;
    }
  }
  return g;
}

std::uint64_t ExperimentConfig::instance_seed(HamClass c, int nq, int i) const {
  const std::uint64_t k = (static_cast<std::uint64_t>(c) * 64 + nq) * 1000003ULL + i;
  return derive_seed(seed, k);
}

}  // namespace fragqite::cli
