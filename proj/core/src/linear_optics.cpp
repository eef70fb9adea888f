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

#include "qscissors/linear_optics.hpp"

#include <array>
#include <cmath>

#include "qscissors/errors.hpp"

namespace qscissors {

namespace {

constexpr int kMaxFactorial = 170;

const std::array<double, kMaxFactorial + 1>& factorials() {
  static const auto table = [] {
    std::array<double, kMaxFactorial + 1> t{};
    t[0] = 1.0;
    for (int n = 1; n <= kMaxFactorial; ++n) t[n] = t[n - 1] * n;
    return t;
  }();
  return table;
}

struct Monomial {
  std::size_t index;  // over the first k-1 output modes, radix N+1
  Complex coef;
};

// Terms of (sum_i w_i x_i)^degree, multinomial coefficients included.
void expand_power(const CMatrix& transfer, Eigen::Index column, int degree,
                  const std::vector<std::size_t>& strides, std::vector<Monomial>& out) {
  const auto k = transfer.rows();
  const auto& fact = factorials();
  std::vector<int> e(static_cast<std::size_t>(k), 0);
  out.clear();
  // Depth-first over compositions of `degree` into k parts.
  auto recurse = [&](auto&& self, Eigen::Index mode, int remaining, Complex coef, std::size_t index) -> void {
    if (mode == k - 1) {
      const Complex w = transfer(mode, column);
      if (remaining > 0 && w == Complex(0.0)) return;
      Complex c = coef;
      for (int p = 0; p < remaining; ++p) c *= w;
      c /= fact[remaining];
      out.push_back({index, c * fact[degree]});
      return;
    }
    const Complex w = transfer(mode, column);
    Complex power = 1.0;
    for (int p = 0; p <= remaining; ++p) {
      if (p > 0) {
        if (w == Complex(0.0)) break;
        power *= w;
      }
      self(self, mode + 1, remaining - p, coef * power / fact[p],
           index + static_cast<std::size_t>(p) * strides[static_cast<std::size_t>(mode)]);
    }
  };
  recurse(recurse, 0, degree, Complex(1.0), 0);
}

}  // namespace

double sqrt_factorial(int n) {
  if (n < 0 || n > kMaxFactorial) throw CutoffError("sqrt_factorial: photon number out of range");
  return std::sqrt(factorials()[static_cast<std::size_t>(n)]);
}

std::vector<ScatterTerm> scatter(const CMatrix& transfer, std::span<const int> input) {
  const auto k = transfer.rows();
  if (static_cast<std::size_t>(transfer.cols()) != input.size()) {
    throw RegisterError("scatter: input occupation does not match transfer matrix columns");
  }
  if (k < 1) throw RegisterError("scatter: transfer matrix has no output modes");
  int total = 0;
  for (int n : input) {
    if (n < 0) throw RegisterError("scatter: negative occupation");
    total += n;
  }
  if (total > kMaxFactorial) throw CutoffError("scatter: too many photons", kMaxFactorial);

  // Output occupations of the first k-1 modes in radix total+1; the last mode
  // holds the remainder. Indices add under monomial multiplication.
  const std::size_t radix = static_cast<std::size_t>(total) + 1;
  std::vector<std::size_t> strides(static_cast<std::size_t>(k), 0);
  std::size_t size = 1;
  for (Eigen::Index m = k - 1; m-- > 0;) {
    strides[static_cast<std::size_t>(m)] = size;
    size *= radix;
    if (size > (std::size_t{1} << 27)) throw CutoffError("scatter: network too large for dense accumulation");
  }

  std::vector<Monomial> current{{0, Complex(1.0)}};
  std::vector<Monomial> power;
  std::vector<Complex> buffer(size, Complex(0.0));
  std::vector<char> touched(size, 0);
  std::vector<std::size_t> touched_list;
  for (std::size_t j = 0; j < input.size(); ++j) {
    if (input[j] == 0) continue;
    expand_power(transfer, static_cast<Eigen::Index>(j), input[j], strides, power);
    touched_list.clear();
    for (const auto& a : current) {
      for (const auto& b : power) {
        const std::size_t idx = a.index + b.index;
        buffer[idx] += a.coef * b.coef;
        if (!touched[idx]) {
          touched[idx] = 1;
          touched_list.push_back(idx);
        }
      }
    }
    current.clear();
    for (std::size_t idx : touched_list) {
      if (buffer[idx] != Complex(0.0)) current.push_back({idx, buffer[idx]});
      buffer[idx] = 0.0;
      touched[idx] = 0;
    }
  }

  double input_norm = 1.0;
  for (int n : input) input_norm *= sqrt_factorial(n);

  std::vector<ScatterTerm> terms;
  terms.reserve(current.size());
  for (const auto& term : current) {
    std::vector<int> occ(static_cast<std::size_t>(k), 0);
    std::size_t rest = term.index;
    int used = 0;
    for (Eigen::Index m = 0; m + 1 < k; ++m) {
      const auto s = strides[static_cast<std::size_t>(m)];
      occ[static_cast<std::size_t>(m)] = static_cast<int>(rest / s);
      rest %= s;
      used += occ[static_cast<std::size_t>(m)];
    }
    occ.back() = total - used;
    double out_norm = 1.0;
    for (int n : occ) out_norm *= sqrt_factorial(n);
    terms.push_back({std::move(occ), term.coef * (out_norm / input_norm)});
  }
  return terms;
}

}  // namespace qscissors
