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

// Reference models used by the tests. None of these call into the code
// paths they are used to check.

#ifndef QSCISSORS_TESTS_ORACLES_HPP
#define QSCISSORS_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

/// Exact fraction with 64-bit parts.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n, std::int64_t d = 1) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }
  friend Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
  friend Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }
  friend bool operator==(Rational a, Rational b) { return a.num == b.num && a.den == b.den; }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Vacuum expectation of a word in L (false) and L^dagger (true) with
/// [L, L^dagger] = d, by repeatedly rewriting the rightmost "L L^dagger"
/// as "L^dagger L + d" until the word is normal ordered.
inline Rational vacuum_expectation(std::vector<bool> word, Rational d) {
  // A normal-ordered word has all daggers to the left of all plain L.
  std::size_t pos = word.size();
  for (std::size_t i = word.size(); i-- > 1;) {
    if (!word[i - 1] && word[i]) {
      pos = i - 1;
      break;
    }
  }
  if (pos == word.size()) return word.empty() ? Rational(1) : Rational(0);
  std::vector<bool> swapped = word;
  swapped[pos] = true;
  swapped[pos + 1] = false;
  std::vector<bool> contracted;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (i != pos && i != pos + 1) contracted.push_back(word[i]);
  }
  return vacuum_expectation(swapped, d) + d * vacuum_expectation(contracted, d);
}

/// <0| L^n (L^dagger)^m |0>.
inline Rational brute_force_moment(int n, int m, Rational d) {
  std::vector<bool> word(static_cast<std::size_t>(n), false);
  word.insert(word.end(), static_cast<std::size_t>(m), true);
  return vacuum_expectation(word, d);
}

/// Scissors fidelity at Gamma = 0 worked out by hand: one click in D_d and
/// none in D_e leaves |v><v| + (1 - eta)|gamma_1|^2 |0><0| with
/// v = gamma_0|0> + gamma_1|1>, so F = 1 - k / ((1 + R)(1 + R + k)), k = 1 - eta.
inline double scissors_fidelity_lossless_bs(double eta, double ratio) {
  const double k = 1.0 - eta;
  return 1.0 - k / ((1.0 + ratio) * (1.0 + ratio + k));
}

inline double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

/// Random complex numbers for a physical splitter: |t|^2 + |r|^2 <= 1 and
/// Gamma >= |Omega|, drawn by rejection.
struct SpecSample {
  std::complex<double> t, r;
};

inline SpecSample random_physical_spec(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (;;) {
    const std::complex<double> t(u(rng), u(rng));
    const std::complex<double> r(u(rng), u(rng));
    const double gamma = 1.0 - std::norm(t) - std::norm(r);
    const double omega = 2.0 * std::real(t * std::conj(r));
    if (gamma >= 0.0 && gamma >= std::abs(omega) + 1e-9) return {t, r};
  }
}

inline std::complex<double> random_unit_complex(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  return std::polar(1.0, phase(rng));
}

}  // namespace oracles

#endif  // QSCISSORS_TESTS_ORACLES_HPP
