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


#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "fragqite/io.hpp"

namespace fragqite {
namespace {

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("fragqite_io_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(FormatDouble, RoundTripsExactly) {
  Rng rng(3);
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(rng.uniform(-1.0, 1.0), static_cast<int>(rng.next() % 200) - 100);
    EXPECT_EQ(std::stod(format_double(v)), v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(2.0), "2");
  EXPECT_EQ(std::strtod(format_double(std::numeric_limits<double>::denorm_min()).c_str(), nullptr),
            std::numeric_limits<double>::denorm_min());
}

TEST(HamiltonianJson, RoundTrip) {
  for (HamClass c : {HamClass::maxcut, HamClass::rbm, HamClass::sk_heisenberg}) {
    const HamiltonianSpec h = normalize(gen_ensemble(c, 4, 12));
    const std::string path = temp_path("ham.json");
    write_json_file(path, to_json(h));
    const HamiltonianSpec back = hamiltonian_from_json(read_json_file(path));
    std::remove(path.c_str());
    EXPECT_EQ(back.n_qubits, h.n_qubits);
    EXPECT_EQ(back.cls, h.cls);
    EXPECT_EQ(back.seed, h.seed);
    EXPECT_EQ(back.energy_scale, h.energy_scale);
    EXPECT_EQ(back.energy_shift, h.energy_shift);
    ASSERT_EQ(back.terms.size(), h.terms.size());
    for (std::size_t t = 0; t < h.terms.size(); ++t) {
      EXPECT_EQ(back.terms[t].coefficient, h.terms[t].coefficient);
      EXPECT_EQ(back.terms[t].word, h.terms[t].word);
    }
    EXPECT_EQ((dense_matrix(back) - dense_matrix(h)).norm(), 0.0);
  }
}

TEST(HamiltonianJson, MalformedInputIsConfigError) {
  EXPECT_THROW(hamiltonian_from_json(Json::parse(R"({"terms": []})")), ConfigError);
  EXPECT_THROW(hamiltonian_from_json(Json::parse(R"({"n": 2, "terms": [{"coef": 1, "word": [[5, "Z"]]}]})")),
               ConfigError);
  EXPECT_THROW(hamiltonian_from_json(Json::parse(R"({"n": 2, "terms": [{"coef": 1, "word": [[0, "W"]]}]})")),
               ConfigError);
  EXPECT_THROW(read_json_file(temp_path("does_not_exist.json")), ConfigError);
}

TEST(PulseJson, Method1RoundTripReproducesUnitary) {
  const P1Design d = design_p1(3.0, 1e-6);
  const PulseSeq1 back = pulses1_from_json(Json::parse(to_json(d.pulses).dump()));
  EXPECT_EQ(back.q, d.pulses.q);
  ASSERT_EQ(back.phis.size(), d.pulses.phis.size());
  EXPECT_EQ((back.phis - d.pulses.phis).norm(), 0.0);
  for (double th : {0.1, 0.7, 1.3}) {
    EXPECT_EQ((eval_sequence1(back.phis, th) - eval_sequence1(d.pulses.phis, th)).norm(), 0.0);
  }
  EXPECT_THROW(pulses2_from_json(to_json(d.pulses)), ConfigError);
}

TEST(PulseJson, Method2RoundTripReproducesUnitary) {
  const P2Design d = design_p2(1.0, 1e-3, gamma_opt(1.0, Kind::prob));
  const PulseSeq2 back = pulses2_from_json(Json::parse(to_json(d.pulses).dump()));
  EXPECT_EQ(back.q, d.pulses.q);
  EXPECT_EQ((back.omegas - d.pulses.omegas).norm(), 0.0);
  EXPECT_EQ((back.xis - d.pulses.xis).norm(), 0.0);
  for (double x : {-0.9, 0.0, 0.4}) {
    EXPECT_EQ((eval_sequence2(back.omegas, back.xis, x) -
               eval_sequence2(d.pulses.omegas, d.pulses.xis, x))
                  .norm(),
              0.0);
  }
  EXPECT_THROW(pulses1_from_json(to_json(d.pulses)), ConfigError);
}

TEST(CsvWriterTest, HeaderRowsAndFieldCount) {
  const std::string path = temp_path("out.csv");
  {
    CsvWriter w(path, {"a", "b", "c"});
    w << 1 << 0.25 << "x";
    w.end_row();
    w << 2LL << 1e-300 << std::string("y");
    w.end_row();
    // Rows are flushed as they are written.
    EXPECT_EQ(slurp(path), "a,b,c\n1,0.25,x\n2,1e-300,y\n");
    w << 3;
    EXPECT_THROW(w.end_row(), ConfigError);
  }
  std::remove(path.c_str());
  EXPECT_THROW(CsvWriter("/nonexistent_dir/x.csv", {"a"}), ConfigError);
}

}  // namespace
}  // namespace fragqite
