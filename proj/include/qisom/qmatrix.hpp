// Copyright 2026 The qisom Authors
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

#ifndef QISOM_QMATRIX_HPP
#define QISOM_QMATRIX_HPP

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "qisom/error.hpp"

namespace qisom {

/// The deformation parameters (q_ij). Validated at construction:
///   q_ji = conj(q_ij) for i != j, max |q_ij| < 1, and
///   in Isometric mode q_ii = 0; in General mode q_ii real.
class QMatrix {
 public:
  enum class Mode { Isometric, General };

  static constexpr const char* kHermitian = "hermitian symmetry q_ji = conj(q_ij)";
  static constexpr const char* kModulus = "modulus bound max|q_ij| < 1";
  static constexpr const char* kZeroDiagonal = "zero diagonal q_ii = 0";
  static constexpr const char* kRealDiagonal = "real diagonal q_ii in R";
  static constexpr const char* kShape = "shape n x n with n >= 1";

  QMatrix(std::size_t n, std::vector<std::complex<double>> row_major, Mode mode = Mode::Isometric,
          double symmetry_tol = 1e-12)
      : n_(n), q_(std::move(row_major)), mode_(mode) {
    validate(symmetry_tol);
  }

  /// The undeformed (Cuntz-Toeplitz) parameters.
  static QMatrix zero(std::size_t n) { return QMatrix(n, std::vector<std::complex<double>>(n * n)); }

  std::size_t n() const { return n_; }
  Mode mode() const { return mode_; }
  bool isom_mode() const { return mode_ == Mode::Isometric; }

  /// q_ij with 1-based indices.
  std::complex<double> operator()(int i, int j) const {
    return q_[static_cast<std::size_t>(i - 1) * n_ + static_cast<std::size_t>(j - 1)];
  }

  double max_modulus() const {
    double m = 0.0;
    for (const auto& z : q_) m = std::max(m, std::abs(z));
    return m;
  }

  const std::vector<std::complex<double>>& row_major() const { return q_; }

 private:
  void validate(double tol) const {
    if (n_ < 1 || q_.size() != n_ * n_)
      throw InvalidQMatrix(kShape, "got n = " + std::to_string(n_) + " with " + std::to_string(q_.size()) + " entries");
    for (std::size_t i = 1; i <= n_; ++i) {
      for (std::size_t j = 1; j <= n_; ++j) {
        const auto qij = (*this)(static_cast<int>(i), static_cast<int>(j));
        const std::string where = "(" + std::to_string(i) + "," + std::to_string(j) + ")";
        if (!std::isfinite(qij.real()) || !std::isfinite(qij.imag()))
          throw InvalidQMatrix(kModulus, "non-finite entry at " + where);
        if (std::abs(qij) >= 1.0)
          throw InvalidQMatrix(kModulus, "|q" + where + "| = " + std::to_string(std::abs(qij)));
        if (i == j) {
          if (mode_ == Mode::Isometric && std::abs(qij) > 0.0)
            throw InvalidQMatrix(kZeroDiagonal, "q" + where + " = " + std::to_string(std::abs(qij)) + " in isometric mode");
          if (std::abs(qij.imag()) > tol)
            throw InvalidQMatrix(kRealDiagonal, "Im q" + where + " = " + std::to_string(qij.imag()));
        } else {
          const auto qji = (*this)(static_cast<int>(j), static_cast<int>(i));
          if (std::abs(qji - std::conj(qij)) > tol)
            throw InvalidQMatrix(kHermitian, "fails at " + where);
        }
      }
    }
  }

  std::size_t n_;
  std::vector<std::complex<double>> q_;
  Mode mode_;
};

/// Random admissible parameters with zero diagonal whose largest modulus is
/// exactly max_modulus (n >= 2). Phases and relative moduli are uniform.
template <class Rng>
QMatrix random_qmatrix(std::size_t n, double max_modulus, Rng& rng) {
  std::uniform_real_distribution<double> radius(0.05, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<std::complex<double>> q(n * n);
  double largest = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      q[i * n + j] = std::polar(radius(rng), phase(rng));
      largest = std::max(largest, std::abs(q[i * n + j]));
    }
  const double scale = largest > 0.0 ? max_modulus / largest : 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      q[i * n + j] *= scale;
      q[j * n + i] = std::conj(q[i * n + j]);
    }
  return QMatrix(n, std::move(q));
}

/// Random general-mode parameters whose real diagonal entries are pairwise
/// distinct (spaced at least 0.1 apart).
template <class Rng>
QMatrix random_general_qmatrix(std::size_t n, double max_modulus, Rng& rng) {
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::vector<std::complex<double>> q(n * n);
  const double spacing = 1.6 * max_modulus / static_cast<double>(std::max<std::size_t>(n, 2));
  for (std::size_t i = 0; i < n; ++i) {
    q[i * n + i] = -0.8 * max_modulus + spacing * static_cast<double>(i) + 0.05 * spacing * unit(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      q[i * n + j] = std::polar(max_modulus * 0.5 * (1.0 + unit(rng)) * 0.99, phase(rng));
      q[j * n + i] = std::conj(q[i * n + j]);
    }
  }
  return QMatrix(n, std::move(q), QMatrix::Mode::General);
}

}  // namespace qisom

#endif  // QISOM_QMATRIX_HPP
