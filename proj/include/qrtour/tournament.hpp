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
/// Tournament data model: one orientation bit per unordered vertex pair,
/// deterministic family generators, degree queries and the `.trn` text format.

#pragma once

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrtour/errors.hpp"

namespace qrtour {

using Vertex = std::uint32_t;
using VertexSet = std::vector<Vertex>;

/// Orientation of the complete graph on vertices 0..n-1.
///
/// Pairs (u, v) with u < v are stored in lexicographic order; bit `true`
/// means u -> v. Values are immutable once constructed.
class Tournament {
 public:
  /// Builds from `n` and exactly n(n-1)/2 orientation bits.
  Tournament(std::size_t n, std::vector<bool> bits) : n_(n), bits_(std::move(bits)) {
    if (n_ == 0) throw InputError("tournament needs at least one vertex");
    if (bits_.size() != pair_count(n_)) {
      throw InputError("expected " + std::to_string(pair_count(n_)) +
                       " orientation bits, got " + std::to_string(bits_.size()));
    }
  }

  static constexpr std::size_t pair_count(std::size_t n) noexcept {
    return n * (n - 1) / 2;
  }

  std::size_t size() const noexcept { return n_; }
  const std::vector<bool>& bits() const noexcept { return bits_; }

  /// Position of the pair {u, v} (u < v) in the lexicographic bit order.
  std::size_t pair_index(Vertex u, Vertex v) const noexcept {
    const std::size_t a = u, b = v;
    return a * (2 * n_ - a - 1) / 2 + (b - a - 1);
  }

  /// True iff u -> v. Requires u != v, both in range.
  bool beats(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InputError("no edge between a vertex and itself");
    return u < v ? bits_[pair_index(u, v)] : !bits_[pair_index(v, u)];
  }

  void check_vertex(Vertex v) const {
    if (v >= n_) {
      throw InputError("vertex " + std::to_string(v) + " out of range for n = " +
                       std::to_string(n_));
    }
  }

  friend bool operator==(const Tournament&, const Tournament&) = default;

 private:
  std::size_t n_;
  std::vector<bool> bits_;
};

/// +1 if u -> v, -1 if v -> u, 0 if u == v.
inline int edge_sign(const Tournament& t, Vertex u, Vertex v) {
  t.check_vertex(u);
  t.check_vertex(v);
  if (u == v) return 0;
  return t.beats(u, v) ? 1 : -1;
}

/// Row-major n x n sign matrix as small integers (the exact matrix lives in
/// exactcount.hpp).
inline std::vector<std::int8_t> dense_signs(const Tournament& t) {
  const std::size_t n = t.size();
  std::vector<std::int8_t> sign(n * n, 0);
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      const std::int8_t s = t.beats(u, v) ? 1 : -1;
      sign[u * n + v] = s;
      sign[v * n + u] = static_cast<std::int8_t>(-s);
    }
  }
  return sign;
}

/// Membership mask for a vertex set; duplicates collapse.
inline std::vector<char> membership(const Tournament& t, std::span<const Vertex> set) {
  std::vector<char> mask(t.size(), 0);
  for (Vertex v : set) {
    t.check_vertex(v);
    mask[v] = 1;
  }
  return mask;
}

/// Number of edges from v into Y.
inline std::size_t d_plus(const Tournament& t, Vertex v, std::span<const Vertex> y) {
  t.check_vertex(v);
  const auto mask = membership(t, y);
  std::size_t count = 0;
  for (Vertex w = 0; w < t.size(); ++w) {
    if (mask[w] && w != v && t.beats(v, w)) ++count;
  }
  return count;
}

/// Number of edges from Y into v.
inline std::size_t d_minus(const Tournament& t, Vertex v, std::span<const Vertex> y) {
  t.check_vertex(v);
  const auto mask = membership(t, y);
  std::size_t count = 0;
  for (Vertex w = 0; w < t.size(); ++w) {
    if (mask[w] && w != v && t.beats(w, v)) ++count;
  }
  return count;
}

enum class Family { kRandom, kTransitive, kRotational, kPaley };

/// Family plus size. For kPaley, `n` is the prime p. `seed` is read only
/// by kRandom.
struct GeneratorSpec {
  Family family = Family::kRandom;
  std::size_t n = 1;
  std::uint64_t seed = 0;
};

inline bool is_prime(std::size_t p) noexcept {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

namespace detail {

template <typename Pred>
Tournament orient_pairs(std::size_t n, Pred&& beats) {
  std::vector<bool> bits;
  bits.reserve(Tournament::pair_count(n));
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t v = u + 1; v < n; ++v) bits.push_back(beats(u, v));
  }
  return Tournament(n, std::move(bits));
}

}  // namespace detail

/// Deterministic generator for the supported families.
///
/// kRandom draws one coin per pair, pairs in lexicographic order, from
/// std::mt19937_64 seeded with `seed`; the coin is the top bit of each
/// 64-bit output (1 means u -> v). mt19937_64 output is fixed by the C++
/// standard, so encodings are reproducible on every platform.
inline Tournament generate(const GeneratorSpec& spec) {
  const std::size_t n = spec.n;
  if (n == 0) throw InputError("n must be positive");
  switch (spec.family) {
    case Family::kRandom: {
      std::mt19937_64 rng(spec.seed);
      return detail::orient_pairs(n, [&](std::size_t, std::size_t) { return (rng() >> 63) != 0; });
    }
    case Family::kTransitive:
      return detail::orient_pairs(n, [](std::size_t, std::size_t) { return true; });
    case Family::kRotational:
      if (n < 3 || n % 2 == 0) throw InputError("rotational tournament needs odd n >= 3");
      return detail::orient_pairs(n, [n](std::size_t u, std::size_t v) {
        return (v - u) % n <= (n - 1) / 2;
      });
    case Family::kPaley: {
      if (!is_prime(n) || n % 4 != 3) throw InputError("p must be prime ≡ 3 (mod 4)");
      std::vector<char> residue(n, 0);
      for (std::size_t x = 1; x < n; ++x) residue[x * x % n] = 1;
      return detail::orient_pairs(n, [&](std::size_t u, std::size_t v) {
        return residue[(v + n - u) % n] != 0;
      });
    }
  }
  throw InputError("unknown tournament family");
}

/// Flips every orientation.
inline Tournament reverse(const Tournament& t) {
  std::vector<bool> bits = t.bits();
  bits.flip();
  return Tournament(t.size(), std::move(bits));
}

/// Vertex v of `t` becomes vertex perm[v] of the result.
inline Tournament relabel(const Tournament& t, std::span<const Vertex> perm) {
  const std::size_t n = t.size();
  if (perm.size() != n) throw InputError("permutation length must equal n");
  std::vector<char> seen(n, 0);
  for (Vertex p : perm) {
    if (p >= n || seen[p]) throw InputError("relabeling is not a permutation of 0..n-1");
    seen[p] = 1;
  }
  std::vector<Vertex> inverse(n);
  for (Vertex v = 0; v < n; ++v) inverse[perm[v]] = v;
  return detail::orient_pairs(n, [&](std::size_t u, std::size_t v) {
    return t.beats(inverse[u], inverse[v]);
  });
}

/// `.trn` text: "TRN1 <n>\n" followed by the pair bitstring and '\n'.
inline std::string encode(const Tournament& t) {
  std::string out = "TRN1 " + std::to_string(t.size()) + "\n";
  out.reserve(out.size() + t.bits().size() + 1);
  for (bool b : t.bits()) out.push_back(b ? '1' : '0');
  out.push_back('\n');
  return out;
}

inline Tournament decode(std::string_view text) {
  constexpr std::string_view kMagic = "TRN1 ";
  if (!text.starts_with(kMagic)) throw ParseError("missing 'TRN1 ' header", 0);
  std::size_t pos = kMagic.size();
  const std::size_t eol = text.find('\n', pos);
  if (eol == std::string_view::npos) throw ParseError("header line not terminated", text.size());
  std::size_t n = 0;
  const char* first = text.data() + pos;
  const char* last = text.data() + eol;
  auto [ptr, ec] = std::from_chars(first, last, n);
  if (ec != std::errc() || ptr == first) throw ParseError("vertex count is not a number", pos);
  if (ptr != last) throw ParseError("unexpected character in header", pos + (ptr - first));
  if (n == 0) throw ParseError("vertex count must be positive", pos);

  pos = eol + 1;
  const std::size_t bits_end = text.find('\n', pos);
  if (bits_end == std::string_view::npos) {
    throw ParseError("bit line not terminated by newline", text.size());
  }
  // n(n-1)/2 without overflow for absurd headers.
  if (n > (std::size_t{1} << 31)) throw ParseError("vertex count too large", kMagic.size());
  const std::size_t expected = Tournament::pair_count(n);
  std::vector<bool> bits;
  bits.reserve(std::min(expected, bits_end - pos));
  for (std::size_t i = pos; i < bits_end; ++i) {
    const char c = text[i];
    if (c != '0' && c != '1') throw ParseError(std::string("illegal character '") + c + "'", i);
    bits.push_back(c == '1');
  }
  if (bits.size() != expected) {
    throw ParseError("expected " + std::to_string(expected) + " bits, got " +
                         std::to_string(bits.size()),
                     bits_end);
  }
  if (bits_end + 1 != text.size()) throw ParseError("trailing data after bit line", bits_end + 1);
  return Tournament(n, std::move(bits));
}

}  // namespace qrtour
