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

#include "fragqite/io.hpp"

#include <charconv>
#include <iostream>

namespace fragqite {

namespace {

std::string axis_name(Axis a) { return a == Axis::X ? "X" : a == Axis::Y ? "Y" : "Z"; }

Axis axis_from(const std::string& s) {
  if (s == "X") return Axis::X;
  if (s == "Y") return Axis::Y;
  if (s == "Z") return Axis::Z;
  throw ConfigError("unknown Pauli axis '" + s + "'");
}

Json real_vector(const VectorXd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

Json complex_vector(const VectorXcd& v) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v[i].real(), v[i].imag()});
  return a;
}

VectorXd read_real_vector(const Json& j) {
  VectorXd v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
  return v;
}

}  // namespace

Json to_json(const HamiltonianSpec& h) {
  Json terms = Json::array();
  for (const PauliTerm& t : h.terms) {
    Json word = Json::array();
    for (const auto& [q, a] : t.word) word.push_back({q, axis_name(a)});
    terms.push_back({{"coef", t.coefficient}, {"word", word}});
  }
  return {{"n", h.n_qubits},
          {"class", to_string(h.cls)},
          {"seed", h.seed},
          {"energy_scale", h.energy_scale},
          {"energy_shift", h.energy_shift},
          {"terms", terms}};
}

HamiltonianSpec hamiltonian_from_json(const Json& j) {
  try {
    HamiltonianSpec h;
    h.n_qubits = j.at("n").get<int>();
    h.cls = ham_class_from_string(j.value("class", std::string("custom")));
    h.seed = j.value("seed", std::uint64_t{0});
    h.energy_scale = j.value("energy_scale", 1.0);
    h.energy_shift = j.value("energy_shift", 0.0);
    for (const Json& t : j.at("terms")) {
      PauliTerm term;
      term.coefficient = t.at("coef").get<double>();
      for (const Json& w : t.at("word")) {
        term.word.emplace_back(w.at(0).get<int>(), axis_from(w.at(1).get<std::string>()));
      }
      h.terms.push_back(std::move(term));
    }
    h.validate();
    return h;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed Hamiltonian JSON: ") + e.what());
  }
}

Json to_json(const ChebyshevSeries& s) {
  return {{"kind", "chebyshev"},
          {"coeffs", real_vector(s.coeffs)},
          {"beta", s.beta},
          {"lambda_min", s.lambda_min},
          {"certified_error", s.certified_error}};
}

Json to_json(const FourierSeries& s) {
  return {{"kind", "fourier"},
          {"coeffs", complex_vector(s.coeffs)},
          {"beta", s.beta},
          {"lambda_min", s.lambda_min},
          {"t", s.t},
          {"delta", s.delta},
          {"alpha", s.alpha},
          {"certified_error", s.certified_error}};
}

Json to_json(const PulseSeq1& p) {
  return {{"method", 1},
          {"q", p.q},
          {"phis", real_vector(p.phis)},
          {"target_ref", to_json(p.target)},
          {"residual", p.residual}};
}

Json to_json(const PulseSeq2& p) {
  Json xis = Json::array();
  for (Eigen::Index k = 0; k < p.xis.rows(); ++k) {
    xis.push_back({p.xis(k, 0), p.xis(k, 1), p.xis(k, 2), p.xis(k, 3)});
  }
  return {{"method", 2},
          {"q", p.q},
          {"omegas", real_vector(p.omegas)},
          {"xis", xis},
          {"target_ref", to_json(p.target)},
          {"residual", p.residual}};
}

PulseSeq1 pulses1_from_json(const Json& j) {
  try {
    require(j.at("method").get<int>() == 1, "pulse file is not a method-1 sequence");
    PulseSeq1 p;
    p.q = j.at("q").get<int>();
    p.phis = read_real_vector(j.at("phis"));
    p.residual = j.value("residual", 0.0);
    require(p.phis.size() == p.q + 1, "pulse file: expected q + 1 phases");
    return p;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed pulse file: ") + e.what());
  }
}

PulseSeq2 pulses2_from_json(const Json& j) {
  try {
    require(j.at("method").get<int>() == 2, "pulse file is not a method-2 sequence");
    PulseSeq2 p;
    p.q = j.at("q").get<int>();
    p.omegas = read_real_vector(j.at("omegas"));
    const Json& xis = j.at("xis");
    p.xis.resize(static_cast<Eigen::Index>(xis.size()), 4);
    for (std::size_t k = 0; k < xis.size(); ++k) {
      for (int c = 0; c < 4; ++c) p.xis(static_cast<Eigen::Index>(k), c) = xis[k].at(c).get<double>();
    }
    p.residual = j.value("residual", 0.0);
    require(p.omegas.size() == p.q + 1 && p.xis.rows() == p.q + 1,
            "pulse file: expected q + 1 gates");
    p.converged = true;
    return p;
  } catch (const Json::exception& e) {
    throw ConfigError(std::string("malformed pulse file: ") + e.what());
  }
}

Json to_json(const SimResult& r) {
  Json j = {{"post_selection_prob", r.post_selection_prob},
            {"trace_distance_to_ideal", r.trace_distance_to_ideal}};
  if (r.output_state.size()) j["output_state"] = complex_vector(r.output_state);
  return j;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    throw ConfigError("invalid JSON in " + path + ": " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << j.dump(2) << '\n';
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, std::vector<std::string> header)
    : out_(&std::cout), columns_(header.size()) {
  if (!path.empty()) {
    file_.open(path);
    if (!file_) throw ConfigError("cannot write " + path);
    out_ = &file_;
  }
  row_ = std::move(header);
  end_row();
}

CsvWriter& CsvWriter::operator<<(const std::string& field) {
  row_.push_back(field);
  return *this;
}

void CsvWriter::end_row() {
  require(row_.size() == columns_, "CSV row has the wrong number of fields");
  for (std::size_t i = 0; i < row_.size(); ++i) {
    if (i) *out_ << ',';
    *out_ << row_[i];
  }
  *out_ << '\n';
  out_->flush();
  row_.clear();
}

}  // namespace fragqite
