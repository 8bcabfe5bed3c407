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
/// Tournament discrepancy: sum over v in X of |d+(v,Y) - d-(v,Y)|.
///
/// The sum is monotone in X, so maximization fixes X = V and searches over Y
/// only. For a fixed Y the maximizing sign vector x_v = sign(d+ - d-) turns
/// the sum into the bilinear form x^T A y, which is at most
/// |lambda_1(A)| * sqrt(|X| |Y|) <= n |lambda_1(A)|.

#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <cstdlib>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "qrtour/errors.hpp"
#include "qrtour/exactcount.hpp"
#include "qrtour/spectral.hpp"
#include "qrtour/tournament.hpp"

namespace qrtour {

inline constexpr std::size_t kDefaultExhaustiveGuard = 24;

enum class DiscMethod { kExhaustive, kLocalSearch, kSample, kGiven };

inline const char* to_string(DiscMethod m) {
  switch (m) {
    case DiscMethod::kExhaustive: return "exhaustive";
    case DiscMethod::kLocalSearch: return "local_search";
    case DiscMethod::kSample: return "sample";
    case DiscMethod::kGiven: return "given";
  }
  return "unknown";
}

/// Exact discrepancy of X against Y.
inline std::uint64_t disc_given(const Tournament& t, std::span<const Vertex> x,
                                std::span<const Vertex> y) {
  const auto in_x = membership(t, x);
  const auto in_y = membership(t, y);
  const std::size_t n = t.size();
  std::uint64_t total = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (!in_x[v]) continue;
    std::int64_t diff = 0;
    for (Vertex w = 0; w < n; ++w) {
      if (in_y[w] && w != v) diff += t.beats(v, w) ? 1 : -1;
    }
    total += static_cast<std::uint64_t>(std::llabs(diff));
  }
  return total;
}

struct Witness {
  /// x_v = sign(d+(v,Y) - d-(v,Y)); 0 on ties.
  std::vector<std::int8_t> signs;
  /// x^T A y, equal to disc_given(V, Y).
  std::uint64_t value = 0;
};

inline Witness witness_vectors(const Tournament& t, std::span<const Vertex> y) {
  const auto in_y = membership(t, y);
  const std::size_t n = t.size();
  const auto sign = dense_signs(t);
  Witness w;
  w.signs.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) {
    std::int64_t diff = 0;
    for (Vertex u = 0; u < n; ++u) diff += in_y[u] ? sign[v * n + u] : 0;
    w.signs[v] = static_cast<std::int8_t>((diff > 0) - (diff < 0));
  }
  // Evaluate x^T A y literally rather than summing |diff|.
  std::int64_t form = 0;
  for (Vertex v = 0; v < n; ++v) {
    if (w.signs[v] == 0) continue;
    for (Vertex u = 0; u < n; ++u) {
      if (in_y[u]) form += w.signs[v] * sign[v * n + u];
    }
  }
  w.value = static_cast<std::uint64_t>(form);
  return w;
}

struct SpectralBound {
  /// n * |lambda_1(A)|.
  double value = 0.0;
  bool converged = false;
};

inline SpectralBound spectral_upper_bound(const Tournament& t, double tol = kDefaultSpectralTol) {
  const SpectralSummary s = lambda1(t, tol);
  return {static_cast<double>(t.size()) * s.lambda1_abs, s.converged};
}

struct DiscrepancyReport {
  DiscMethod method = DiscMethod::kGiven;
  VertexSet best_y;
  /// disc_given(V, best_y).
  std::uint64_t value = 0;
  /// value / n^2.
  BigRational normalized;
  SpectralBound spectral_bound;
  std::vector<std::int8_t> witness_signs;
};

/// Report for a fixed Y (X = V).
inline DiscrepancyReport disc_report(const Tournament& t, std::span<const Vertex> y,
                                     DiscMethod method = DiscMethod::kGiven) {
  DiscrepancyReport r;
  r.method = method;
  const auto mask = membership(t, y);
  for (Vertex v = 0; v < t.size(); ++v) {
    if (mask[v]) r.best_y.push_back(v);
  }
  Witness w = witness_vectors(t, r.best_y);
  r.value = w.value;
  r.witness_signs = std::move(w.signs);
  const BigInt n = t.size();
  r.normalized = BigRational(BigInt(r.value), n * n);
  r.spectral_bound = spectral_upper_bound(t);
  return r;
}

namespace detail {

/// Incremental state for X = V and a variable Y: diff[v] = d+(v,Y) - d-(v,Y).
class DiffState {
 public:
  explicit DiffState(const Tournament& t)
      : n_(t.size()), column_(n_ * n_), in_y_(n_, 0), diff_(n_, 0) {
    const auto sign = dense_signs(t);
    // column_[u*n+v] = A[v][u]: the change in diff[v] when u joins Y.
    for (std::size_t u = 0; u < n_; ++u) {
      for (std::size_t v = 0; v < n_; ++v) column_[u * n_ + v] = sign[v * n_ + u];
    }
  }

  std::uint64_t value() const noexcept { return value_; }
  const std::vector<char>& in_y() const noexcept { return in_y_; }

  void flip(std::size_t u) {
    const std::int64_t dir = in_y_[u] ? -1 : 1;
    in_y_[u] ^= 1;
    const std::int8_t* col = &column_[u * n_];
    std::int64_t value = static_cast<std::int64_t>(value_);
    for (std::size_t v = 0; v < n_; ++v) {
      const std::int64_t before = diff_[v];
      const std::int64_t after = before + dir * col[v];
      diff_[v] = after;
      value += std::llabs(after) - std::llabs(before);
    }
    value_ = static_cast<std::uint64_t>(value);
  }

  /// Value Y would have after flipping u, without changing state.
  std::uint64_t value_after_flip(std::size_t u) const {
    const std::int64_t dir = in_y_[u] ? -1 : 1;
    const std::int8_t* col = &column_[u * n_];
    std::int64_t value = 0;
    for (std::size_t v = 0; v < n_; ++v) value += std::llabs(diff_[v] + dir * col[v]);
    return static_cast<std::uint64_t>(value);
  }

  VertexSet members() const {
    VertexSet y;
    for (std::size_t v = 0; v < n_; ++v) {
      if (in_y_[v]) y.push_back(static_cast<Vertex>(v));
    }
    return y;
  }

 private:
  std::size_t n_;
  std::vector<std::int8_t> column_;
  std::vector<char> in_y_;
  std::vector<std::int64_t> diff_;
  std::uint64_t value_ = 0;
};

}  // namespace detail

/// True maximum over all 2^n subsets Y, visited in Gray-code order. Ties keep
/// the lowest Gray index. Refuses n > guard.
inline DiscrepancyReport disc_exhaustive(const Tournament& t,
                                         std::size_t guard = kDefaultExhaustiveGuard) {
  const std::size_t n = t.size();
  if (n > guard || n >= 63) {
    throw ResourceError("exhaustive discrepancy limited to n <= " + std::to_string(guard) +
                        " (n = " + std::to_string(n) + "); use local search");
  }
  detail::DiffState state(t);
  std::uint64_t best_value = 0;
  VertexSet best_y;
  const std::uint64_t subsets = std::uint64_t{1} << n;
  for (std::uint64_t i = 1; i < subsets; ++i) {
    state.flip(static_cast<std::size_t>(std::countr_zero(i)));
    if (state.value() > best_value) {
      best_value = state.value();
      best_y = state.members();
    }
  }
  DiscrepancyReport r = disc_report(t, best_y, DiscMethod::kExhaustive);
  if (r.value != best_value) throw InvariantError("Gray-code sweep disagrees with direct evaluation");
  return r;
}

/// Random-restart hill climbing over Y by single-vertex flips.
///
/// Each restart draws Y from std::mt19937_64(seed), one top-bit coin per
/// vertex in order 0..n-1, then repeatedly scans vertices 0..n-1 taking every
/// strictly improving flip until a full scan makes no move. Returns a lower
/// bound on the true maximum; the earliest restart wins ties.
inline DiscrepancyReport disc_localsearch(const Tournament& t, std::size_t restarts,
                                          std::uint64_t seed) {
  if (restarts == 0) throw InputError("restarts must be at least 1");
  const std::size_t n = t.size();
  std::mt19937_64 rng(seed);
  std::uint64_t best_value = 0;
  VertexSet best_y;
  bool have_best = false;
  for (std::size_t r = 0; r < restarts; ++r) {
    detail::DiffState state(t);
    for (std::size_t v = 0; v < n; ++v) {
      if ((rng() >> 63) != 0) state.flip(v);
    }
    for (bool improved = true; improved;) {
      improved = false;
      for (std::size_t u = 0; u < n; ++u) {
        if (state.value_after_flip(u) > state.value()) {
          state.flip(u);
          improved = true;
        }
      }
    }
    if (!have_best || state.value() > best_value) {
      have_best = true;
      best_value = state.value();
      best_y = state.members();
    }
  }
  return disc_report(t, best_y, DiscMethod::kLocalSearch);
}

/// Best of `samples` uniformly random Y (same coin scheme as local search).
inline DiscrepancyReport disc_sample(const Tournament& t, std::size_t samples, std::uint64_t seed) {
  if (samples == 0) throw InputError("samples must be at least 1");
  const std::size_t n = t.size();
  std::mt19937_64 rng(seed);
  std::uint64_t best_value = 0;
  VertexSet best_y;
  bool have_best = false;
  for (std::size_t s = 0; s < samples; ++s) {
    detail::DiffState state(t);
    for (std::size_t v = 0; v < n; ++v) {
      if ((rng() >> 63) != 0) state.flip(v);
    }
    if (!have_best || state.value() > best_value) {
      have_best = true;
      best_value = state.value();
      best_y = state.members();
    }
  }
  return disc_report(t, best_y, DiscMethod::kSample);
}

}  // namespace qrtour
