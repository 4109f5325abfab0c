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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fragqite/hamiltonians.hpp"
#include "fragqite/io.hpp"
#include "fragqite/master.hpp"

namespace fragqite::cli {

struct ExperimentConfig {
  std::vector<HamClass> classes = {HamClass::weighted_maxcut};
  std::vector<int> n = {6};
  int instances = 50;
  std::vector<double> eps = {1e-3};
  double beta_min = 1.0;
  double beta_max = 1e4;
  int beta_points = 13;
  bool beta_log = true;
  Primitive primitive = Primitive::p1;
  Mode mode = Mode::gibbs;
  int r_max = 10;
  std::uint64_t seed = 1;
  std::string out = "results";
  int threads = 1;

  /// Throws ConfigError on the first invalid field.
  void validate() const;
  std::vector<double> beta_grid() const;
  /// Seed of instance i of (class, N).
  std::uint64_t instance_seed(HamClass c, int n, int i) const;
};

/// Overlays the keys present in `j` onto `cfg`.
void apply_json(const Json& j, ExperimentConfig& cfg);

std::vector<int> parse_int_list(const std::string& s);
std::vector<double> parse_double_list(const std::string& s);
std::vector<HamClass> parse_class_list(const std::string& s);

}  // namespace fragqite::cli
