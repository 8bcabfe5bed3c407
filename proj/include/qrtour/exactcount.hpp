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
/// Exact even/odd k-cycle counting.
///
/// A k-cycle is a closed vertex sequence (v1, ..., vk, v1) whose cyclically
/// adjacent entries differ; vertices may otherwise repeat. It is even when an
/// even number of its steps run against the edge direction. With A the
/// skew-symmetric sign matrix, A^k[u][u] is (#even - #odd) over cycles rooted
/// at u, so tr(A^k) = 2*EC_k - total_k. Everything here is exact integer
/// arithmetic on arbitrary-precision values.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "qrtour/errors.hpp"
#include "qrtour/tournament.hpp"

namespace qrtour {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Dense n x n matrix of arbitrary-precision integers, row-major.
class SignMatrix {
 public:
  explicit SignMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  static SignMatrix identity(std::size_t n) {
    SignMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const noexcept { return n_; }

  BigInt& operator()(std::size_t r, std::size_t c) { return entries_[r * n_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return entries_[r * n_ + c]; }

  BigInt trace() const {
    BigInt t = 0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  /// Largest |entry|.
  BigInt max_abs() const {
    BigInt best = 0;
    for (const BigInt& e : entries_) best = std::max(best, BigInt(abs(e)));
    return best;
  }

  friend bool operator==(const SignMatrix&, const SignMatrix&) = default;

 private:
  std::size_t n_;
  std::vector<BigInt> entries_;
};

inline SignMatrix sign_matrix(const Tournament& t) {
  const std::size_t n = t.size();
  SignMatrix m(n);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const int s = t.beats(u, v) ? 1 : -1;
      m(u, v) = s;
      m(v, u) = -s;
    }
  }
  return m;
}

namespace detail {

// Rows are split into contiguous blocks, one per worker. Each output entry is
// produced by exactly one worker with the sequential summation order, so the
// result is identical for any worker count.
// `workers` = 0 picks hardware concurrency for large inputs.
template <typename RowFn>
void for_each_row_block(std::size_t rows, std::size_t work_per_row, std::size_t workers,
                        RowFn&& fn) {
  constexpr std::size_t kMinParallelWork = std::size_t{1} << 18;
  if (workers == 0) {
    workers = std::max(1u, std::thread::hardware_concurrency());
    if (rows * work_per_row < kMinParallelWork) workers = 1;
  }
  workers = std::min(workers, rows);
  if (workers <= 1) {
    fn(std::size_t{0}, rows);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (rows + workers - 1) / workers;
  for (std::size_t begin = 0; begin < rows; begin += chunk) {
    pool.emplace_back([&fn, begin, end = std::min(rows, begin + chunk)] { fn(begin, end); });
  }
}

}  // namespace detail

/// Exact product. Rows are split across `workers` threads (0 = automatic);
/// the result does not depend on the split.
inline SignMatrix multiply(const SignMatrix& a, const SignMatrix& b, std::size_t workers = 0) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InputError("matrix dimensions differ");
  SignMatrix c(n);
  detail::for_each_row_block(n, n * n, workers, [&](std::size_t begin, std::size_t end) {
    BigInt term;
    for (std::size_t i = begin; i < end; ++i) {
      for (std::size_t l = 0; l < n; ++l) {
        const BigInt& a_il = a(i, l);
        if (a_il.is_zero()) continue;
        for (std::size_t j = 0; j < n; ++j) {
          boost::multiprecision::multiply(term, a_il, b(l, j));
          c(i, j) += term;
        }
      }
    }
  });
  return c;
}

/// tr(a * b) without forming the product.
inline BigInt trace_of_product(const SignMatrix& a, const SignMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw InputError("matrix dimensions differ");
  BigInt t = 0, term;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t l = 0; l < n; ++l) {
      boost::multiprecision::multiply(term, a(i, l), b(l, i));
      t += term;
    }
  }
  return t;
}

/// m^k by binary exponentiation, k >= 1.
inline SignMatrix power(const SignMatrix& m, unsigned k) {
  if (k == 0) throw InputError("exponent must be at least 1");
  SignMatrix base = m;
  std::optional<SignMatrix> result;
  for (;;) {
    if (k & 1u) result = result ? multiply(*result, base) : base;
    k >>= 1;
    if (k == 0) break;
    base = multiply(base, base);
  }
  return *std::move(result);
}

/// Memoized powers of one matrix. power(2^h) comes from repeated squaring
/// and every other power from a product of a power of two with a smaller
/// power, so a batch of traces shares its squarings.
class MatrixPowers {
 public:
  explicit MatrixPowers(SignMatrix base) { cache_.emplace(1u, std::move(base)); }

  std::size_t size() const { return cache_.at(1u).size(); }

  const SignMatrix& power(unsigned k) {
    if (k == 0) throw InputError("exponent must be at least 1");
    if (auto it = cache_.find(k); it != cache_.end()) return it->second;
    const unsigned high = std::bit_floor(k);
    SignMatrix p = high == k ? multiply(power(k / 2), power(k / 2))
                             : multiply(power(high), power(k - high));
    return cache_.emplace(k, std::move(p)).first->second;
  }

  /// tr(m^k); the last product is reduced straight to its trace.
  BigInt trace(unsigned k) {
    if (k == 0) throw InputError("k must be at least 1");
    if (k == 1) return power(1).trace();
    const unsigned low = std::bit_floor(k / 2);
    const unsigned rest = k - low;
    const SignMatrix& a = power(low);
    return trace_of_product(a, power(rest));
  }

 private:
  std::map<unsigned, SignMatrix> cache_;
};

/// tr(m^k), exact.
inline BigInt mat_pow_trace(const SignMatrix& m, unsigned k) {
  if (k == 0) throw InputError("k must be at least 1");
  return MatrixPowers(m).trace(k);
}

/// Number of k-cycles on n vertices: (n-1)^k + (-1)^k (n-1).
inline BigInt total_cycles(std::size_t n, unsigned k) {
  if (n == 0) throw InputError("n must be positive");
  if (k < 2) throw InputError("k must be at least 2");
  const BigInt base = BigInt(n - 1);
  BigInt total = boost::multiprecision::pow(base, k);
  if (k % 2 == 0) {
    total += base;
  } else {
    total -= base;
  }
  return total;
}

struct CycleCountReport {
  std::size_t n = 0;
  unsigned k = 0;
  BigInt total;
  BigInt even;
  BigInt odd;
  BigInt trace;
  /// even / total; 0 when there are no k-cycles at all.
  BigRational even_fraction;

  /// `even_fraction` to 12 significant digits.
  std::string even_fraction_decimal() const {
    using Decimal = boost::multiprecision::cpp_dec_float_50;
    const Decimal value = Decimal(boost::multiprecision::numerator(even_fraction)) /
                          Decimal(boost::multiprecision::denominator(even_fraction));
    return value.str(12);
  }
};

/// Derives the even/odd split on n vertices from a known tr(A^k).
inline CycleCountReport cycle_report(std::size_t n, unsigned k, BigInt trace) {
  if (k < 2) throw InputError("k must be at least 2");
  CycleCountReport r;
  r.n = n;
  r.k = k;
  r.total = total_cycles(n, k);
  r.trace = std::move(trace);
  if (k % 2 == 1 && !r.trace.is_zero()) {
    throw InvariantError("odd-k trace is nonzero: " + r.trace.str());
  }
  const BigInt twice_even = r.trace + r.total;
  if (boost::multiprecision::bit_test(twice_even, 0)) {
    throw InvariantError("trace + total is odd for k = " + std::to_string(k));
  }
  r.even = twice_even / 2;
  r.odd = r.total - r.even;
  if (r.even < 0 || r.odd < 0) throw InvariantError("negative cycle count");
  r.even_fraction = r.total.is_zero() ? BigRational(0) : BigRational(r.even, r.total);
  return r;
}

/// Even/odd k-cycle counts from tr(A^k).
inline CycleCountReport even_cycles_trace(const Tournament& t, unsigned k) {
  if (k < 2) throw InputError("k must be at least 2");
  return cycle_report(t.size(), k, mat_pow_trace(sign_matrix(t), k));
}

enum class Parity { kEven, kOdd };

/// Parity of the number of backward steps along the closed sequence.
inline Parity cycle_parity(const Tournament& t, std::span<const Vertex> seq) {
  const std::size_t k = seq.size();
  if (k < 2) throw InputError("cycle needs at least 2 vertices");
  unsigned backward = 0;
  for (std::size_t i = 0; i < k; ++i) {
    const Vertex from = seq[i];
    const Vertex to = seq[(i + 1) % k];
    t.check_vertex(from);
    if (from == to) {
      throw InputError("consecutive vertices must differ (position " + std::to_string(i) + ")");
    }
    if (!t.beats(from, to)) ++backward;
  }
  return backward % 2 == 0 ? Parity::kEven : Parity::kOdd;
}

struct ParityCounts {
  std::uint64_t even = 0;
  std::uint64_t odd = 0;

  friend bool operator==(const ParityCounts&, const ParityCounts&) = default;
};

inline constexpr std::uint64_t kDefaultBruteForceGuard = 100'000'000;

/// Enumerates every k-cycle and classifies it. Refuses when n^k > guard.
inline ParityCounts brute_force_count(const Tournament& t, unsigned k,
                                      std::uint64_t guard = kDefaultBruteForceGuard) {
  if (k < 2) throw InputError("k must be at least 2");
  const std::size_t n = t.size();
  std::uint64_t work = 1;
  for (unsigned i = 0; i < k; ++i) {
    if (work > guard / n) {
      throw ResourceError("brute-force enumeration needs n^k <= " + std::to_string(guard) +
                          " (n = " + std::to_string(n) + ", k = " + std::to_string(k) + ")");
    }
    work *= n;
  }
  if (work > guard) throw ResourceError("brute-force enumeration needs n^k <= " + std::to_string(guard));

  // backward[u*n+v] is 1 when the step u -> v runs against the edge.
  std::vector<std::uint8_t> backward(n * n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = 0; v < n; ++v) {
      if (u != v) backward[u * n + v] = t.beats(u, v) ? 0 : 1;
    }
  }

  ParityCounts counts;
  std::vector<Vertex> seq(k);
  // Depth-first over sequences; `parity` is the backward-step count so far, mod 2.
  auto extend = [&](auto&& self, unsigned depth, unsigned parity) -> void {
    const Vertex prev = seq[depth - 1];
    if (depth == k) {
      const Vertex first = seq[0];
      if (prev == first) return;
      if ((parity ^ backward[prev * n + first]) == 0) {
        ++counts.even;
      } else {
        ++counts.odd;
      }
      return;
    }
    for (Vertex v = 0; v < n; ++v) {
      if (v == prev) continue;
      seq[depth] = v;
      self(self, depth + 1, parity ^ backward[prev * n + v]);
    }
  };
  for (Vertex start = 0; start < n; ++start) {
    seq[0] = start;
    extend(extend, 1, 0);
  }
  return counts;
}

struct BoundCheck {
  bool satisfied = true;
  std::string details;
  CycleCountReport counts;
};

/// EC_k against (total)/2 and sign of tr(A^k), for even k >= 4:
/// k = 0 mod 4 needs EC_k >= total/2 and tr >= 0; k = 2 mod 4 the reverse.
inline BoundCheck ec_bound_check(const Tournament& t, unsigned k) {
  if (k < 4 || k % 2 != 0) throw InputError("bound check needs even k >= 4");
  BoundCheck check;
  check.counts = even_cycles_trace(t, k);
  const CycleCountReport& c = check.counts;
  const BigInt twice_even = 2 * c.even;
  const bool upper_side = k % 4 == 0;
  const bool ok = upper_side ? (twice_even >= c.total && c.trace >= 0)
                             : (twice_even <= c.total && c.trace <= 0);
  check.satisfied = ok;
  if (!ok) {
    check.details = "k = " + std::to_string(k) + ": EC = " + c.even.str() + ", total = " +
                    c.total.str() + ", trace = " + c.trace.str();
  }
  return check;
}

}  // namespace qrtour
