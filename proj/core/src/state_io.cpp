// Copyright 2026 The qscissors Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qscissors/state_io.hpp"

#include "json.hpp"
#include "qscissors/errors.hpp"

namespace qscissors {

using nlohmann::json;

namespace {

json register_json(const ModeRegister& reg) {
  return json{{"labels", reg.labels()}, {"cutoffs", reg.cutoffs()}};
}

ModeRegister register_from(const json& j) {
  return ModeRegister(j.at("labels").get<std::vector<std::string>>(),
                      j.at("cutoffs").get<std::vector<int>>());
}

json complex_array(const Complex* data, Eigen::Index n) {
  json out = json::array();
  for (Eigen::Index i = 0; i < n; ++i) out.push_back({data[i].real(), data[i].imag()});
  return out;
}

Complex complex_from(const json& pair) {
  if (!pair.is_array() || pair.size() != 2) throw Error("state json: expected [re, im] pair");
  return {pair[0].get<double>(), pair[1].get<double>()};
}

json parse_kind(std::string_view text, std::string_view kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(std::string("state json: ") + e.what());
  }
  if (j.value("kind", "") != kind) {
    throw Error("state json: expected kind '" + std::string(kind) + "'");
  }
  return j;
}

}  // namespace

std::string to_json(const FockVector& psi) {
  json j{{"kind", "fock_vector"},
         {"register", register_json(psi.reg())},
         {"basis_order", kBasisOrderNote},
         {"amplitudes", complex_array(psi.amplitudes().data(), psi.amplitudes().size())}};
  return j.dump();
}

std::string to_json(const DensityOperator& rho) {
  // Row-major flattening of the materialized matrix.
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> m = rho.matrix();
  json j{{"kind", "density_operator"},
         {"register", register_json(rho.reg())},
         {"basis_order", kBasisOrderNote},
         {"matrix", complex_array(m.data(), m.size())}};
  return j.dump();
}

FockVector fock_vector_from_json(std::string_view text) {
  json j = parse_kind(text, "fock_vector");
  ModeRegister reg = register_from(j.at("register"));
  const auto& arr = j.at("amplitudes");
  if (arr.size() != reg.dim()) throw Error("state json: amplitude count does not match register");
  CVector amps(static_cast<Eigen::Index>(reg.dim()));
  for (std::size_t i = 0; i < arr.size(); ++i) amps(static_cast<Eigen::Index>(i)) = complex_from(arr[i]);
  return FockVector(std::move(reg), std::move(amps));
}

DensityOperator density_operator_from_json(std::string_view text) {
  json j = parse_kind(text, "density_operator");
  ModeRegister reg = register_from(j.at("register"));
  const auto& arr = j.at("matrix");
  const auto n = static_cast<Eigen::Index>(reg.dim());
  if (arr.size() != reg.dim() * reg.dim()) throw Error("state json: matrix size does not match register");
  CMatrix m(n, n);
  for (Eigen::Index r = 0; r < n; ++r) {
    for (Eigen::Index c = 0; c < n; ++c) m(r, c) = complex_from(arr[static_cast<std::size_t>(r * n + c)]);
  }
  return DensityOperator::from_matrix(std::move(reg), m);
}

}  // namespace qscissors
