// Copyright 2026 The qrtour Authors
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

/// @file
/// Spectral analysis of the sign matrix A through its Gram matrix
/// S = A^T A = -A^2. A is real skew-symmetric, so its eigenvalues are
/// +/- i*sigma_j with sigma_j^2 the eigenvalues of S; |lambda_1(A)| is the
/// square root of the largest one.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qrtour/errors.hpp"
#include "qrtour/exactcount.hpp"
#include "qrtour/tournament.hpp"

namespace qrtour {

inline constexpr double kDefaultSpectralTol = 1e-10;
inline constexpr std::size_t kDefaultJacobiMaxSweeps = 30;
inline constexpr std::size_t kDefaultFullSpectrumGuard = 512;

/// Symmetric positive-semidefinite n x n matrix, row-major doubles.
class GramMatrix {
 public:
  explicit GramMatrix(std::size_t n) : n_(n), entries_(n * n, 0.0) {}

  std::size_t size() const noexcept { return n_; }
  double& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  /// y = S x.
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    y.assign(n_, 0.0);
    for (std::size_t r = 0; r < n_; ++r) {
      const double* row = &entries_[r * n_];
      double acc = 0.0;
      for (std::size_t c = 0; c < n_; ++c) acc += row[c] * x[c];
      y[r] = acc;
    }
  }

 private:
  std::size_t n_;
  std::vector<double> entries_;
};

/// -A^2, accumulated in exact integers and converted once. Entries have
/// magnitude at most n-1, so the conversion is exact.
inline GramMatrix gram(const Tournament& t) {
  const std::size_t n = t.size();
  const std::vector<std::int8_t> sign = dense_signs(t);
  GramMatrix g(n);
  // (A^T A)[u][w] = sum_v A[v][u] A[v][w] = sum_v A[u][v] A[w][v].
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t w = u; w < n; ++w) {
      std::int64_t acc = 0;
      for (std::size_t v = 0; v < n; ++v) acc += sign[u * n + v] * sign[w * n + v];
      g(u, w) = static_cast<double>(acc);
      g(w, u) = static_cast<double>(acc);
    }
  }
  return g;
}

struct SpectralSummary {
  /// |lambda_1(A)|, largest eigenvalue modulus.
  double lambda1_abs = 0.0;
  /// All n moduli, descending; only from full_spectrum.
  std::optional<std::vector<double>> singular_values;
  /// Power iterations or Jacobi sweeps used.
  std::size_t iterations = 0;
  /// Power iteration: ||Sx - theta x|| / theta. Jacobi: off-diagonal Frobenius norm.
  double residual = 0.0;
  bool converged = false;
};

/// Power iteration on the Gram matrix from v_i = 1 + (i mod 3), normalized.
///
/// Convergence is judged on the Rayleigh-quotient residual only; the dominant
/// Gram eigenvalue always has even multiplicity, so the iterate need not
/// settle on one vector. Runs out of iterations with `converged = false`
/// and the last estimate.
inline SpectralSummary lambda1(const Tournament& t, double tol = kDefaultSpectralTol,
                               std::optional<std::size_t> max_iter = std::nullopt) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  const std::size_t n = t.size();
  const std::size_t limit = max_iter.value_or(10 * n + 1000);
  const GramMatrix s = gram(t);

  std::vector<double> x(n), y(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = 1.0 + static_cast<double>(i % 3);
  auto norm = [](const std::vector<double>& v) {
    double acc = 0.0;
    for (double e : v) acc += e * e;
    return std::sqrt(acc);
  };
  const double x0 = norm(x);
  for (double& e : x) e /= x0;

  SpectralSummary out;
  for (std::size_t it = 1; it <= limit; ++it) {
    s.apply(x, y);
    double theta = 0.0;
    for (std::size_t i = 0; i < n; ++i) theta += x[i] * y[i];
    out.iterations = it;
    out.lambda1_abs = std::sqrt(std::max(theta, 0.0));
    if (theta <= 0.0) {
      // S x = 0: the start vector lies in the kernel, which only happens for S = 0.
      out.residual = 0.0;
      out.converged = norm(y) == 0.0;
      if (out.converged) return out;
      break;
    }
    double r2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = y[i] - theta * x[i];
      r2 += d * d;
    }
    out.residual = std::sqrt(r2) / theta;
    if (out.residual <= tol) {
      out.converged = true;
      return out;
    }
    const double ny = norm(y);
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  out.converged = false;
  return out;
}

struct JacobiResult {
  std::vector<double> eigenvalues;  // descending
  std::size_t sweeps = 0;
  double off_norm = 0.0;
  bool converged = false;
};

/// Cyclic Jacobi diagonalization of a symmetric matrix. Sweeps row by row
/// over the strict upper triangle until the off-diagonal Frobenius norm
/// drops to `tol`.
inline JacobiResult jacobi_eigenvalues(GramMatrix a, double tol = kDefaultSpectralTol,
                                       std::size_t max_sweeps = kDefaultJacobiMaxSweeps) {
  const std::size_t n = a.size();
  auto off_norm = [&] {
    double acc = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) acc += a(p, q) * a(p, q);
    }
    return std::sqrt(2.0 * acc);
  };

  JacobiResult result;
  result.off_norm = off_norm();
  while (result.off_norm > tol && result.sweeps < max_sweeps) {
    ++result.sweeps;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        a(p, p) -= t * apq;
        a(q, q) += t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double arp = a(r, p);
          const double arq = a(r, q);
          const double new_rp = c * arp - s * arq;
          const double new_rq = s * arp + c * arq;
          a(r, p) = new_rp;
          a(p, r) = new_rp;
          a(r, q) = new_rq;
          a(q, r) = new_rq;
        }
      }
    }
    result.off_norm = off_norm();
  }
  result.converged = result.off_norm <= tol;
  result.eigenvalues.resize(n);
  for (std::size_t i = 0; i < n; ++i) result.eigenvalues[i] = a(i, i);
  std::sort(result.eigenvalues.begin(), result.eigenvalues.end(), std::greater<>());
  return result;
}

/// All eigenvalue moduli of A via Jacobi on the Gram matrix. Refuses n > guard.
inline SpectralSummary full_spectrum(const Tournament& t, double tol = kDefaultSpectralTol,
                                     std::size_t guard = kDefaultFullSpectrumGuard,
                                     std::size_t max_sweeps = kDefaultJacobiMaxSweeps) {
  if (!(tol > 0.0)) throw InputError("tolerance must be positive");
  if (t.size() > guard) {
    throw ResourceError("full spectrum limited to n <= " + std::to_string(guard) +
                        " (n = " + std::to_string(t.size()) + ")");
  }
  const JacobiResult jr = jacobi_eigenvalues(gram(t), tol, max_sweeps);
  std::vector<double> sigma(jr.eigenvalues.size());
  std::transform(jr.eigenvalues.begin(), jr.eigenvalues.end(), sigma.begin(),
                 [](double ev) { return std::sqrt(std::max(ev, 0.0)); });
  SpectralSummary out;
  out.lambda1_abs = sigma.empty() ? 0.0 : sigma.front();
  out.singular_values = std::move(sigma);
  out.iterations = jr.sweeps;
  out.residual = jr.off_norm;
  out.converged = jr.converged;
  return out;
}

/// Relative gap between the exact tr(A^k) and (-1)^(k/2) * sum_j sigma_j^k,
/// for even k >= 2.
inline double moment_crosscheck(const Tournament& t, unsigned k,
                                std::size_t guard = kDefaultFullSpectrumGuard) {
  if (k < 2 || k % 2 != 0) throw InputError("moment cross-check needs even k >= 2");
  const BigInt exact = mat_pow_trace(sign_matrix(t), k);
  const SpectralSummary spectrum = full_spectrum(t, kDefaultSpectralTol, guard);
  long double moment = 0.0L;
  for (double sigma : *spectrum.singular_values) {
    moment += std::pow(static_cast<long double>(sigma), static_cast<int>(k));
  }
  if ((k / 2) % 2 == 1) moment = -moment;
  const long double exact_ld = exact.convert_to<long double>();
  const long double err = std::abs(exact_ld - moment) / std::max(1.0L, std::abs(exact_ld));
  return static_cast<double>(err);
}

struct Certificate {
  enum class Status { kCertified, kRefused, kIndeterminate };
  Status status = Status::kIndeterminate;
  /// |lambda_1| / n.
  double ratio = 0.0;
  SpectralSummary spectrum;
};

inline const char* to_string(Certificate::Status s) {
  switch (s) {
    case Certificate::Status::kCertified: return "certified";
    case Certificate::Status::kRefused: return "refused";
    case Certificate::Status::kIndeterminate: return "indeterminate";
  }
  return "unknown";
}

/// Certified iff |lambda_1|/n <= threshold. Non-convergence of the power
/// iteration yields kIndeterminate with the best ratio estimate.
inline Certificate quasirandom_certificate(const Tournament& t, double threshold,
                                           double tol = kDefaultSpectralTol) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw InputError("threshold must lie in (0, 1)");
  Certificate cert;
  cert.spectrum = lambda1(t, tol);
  cert.ratio = cert.spectrum.lambda1_abs / static_cast<double>(t.size());
  if (!cert.spectrum.converged) {
    cert.status = Certificate::Status::kIndeterminate;
  } else {
    cert.status = cert.ratio <= threshold ? Certificate::Status::kCertified
                                          : Certificate::Status::kRefused;
  }
  return cert;
}

}  // namespace qrtour
