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

#include "qrtour/discrepancy.hpp"

#include <cmath>
#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"

namespace qrtour {
namespace {

using testing::all_vertices;
using testing::c3;
using testing::tt;

VertexSet random_subset(std::mt19937_64& rng, std::size_t n) {
  return testing::subset_from_mask(rng(), n);
}

TEST(DiscGivenTest, Examples) {
  const VertexSet v = all_vertices(3);
  const VertexSet y0{0};
  const VertexSet empty;
  EXPECT_EQ(disc_given(c3(), v, y0), 2u);
  EXPECT_EQ(disc_given(c3(), v, v), 0u);
  EXPECT_EQ(disc_given(c3(), empty, v), 0u);
  EXPECT_EQ(disc_given(c3(), v, empty), 0u);
  const VertexSet bad{3};
  EXPECT_THROW(disc_given(c3(), v, bad), InputError);
}

TEST(DiscGivenTest, MatchesDefinitionAndIsMonotoneInX) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t n = 1 + rng() % 16;
    const Tournament t = generate({Family::kRandom, n, rng()});
    const VertexSet x = random_subset(rng, n);
    const VertexSet y = random_subset(rng, n);
    const std::uint64_t d = disc_given(t, x, y);
    EXPECT_EQ(static_cast<std::int64_t>(d), testing::naive_disc(t, x, y));
    EXPECT_LE(d, disc_given(t, all_vertices(n), y));
  }
}

TEST(WitnessTest, Examples) {
  const VertexSet y0{0};
  const Witness w = witness_vectors(c3(), y0);
  EXPECT_EQ(w.signs, (std::vector<std::int8_t>{0, -1, 1}));
  EXPECT_EQ(w.value, 2u);

  const Witness empty = witness_vectors(c3(), VertexSet{});
  EXPECT_EQ(empty.signs, (std::vector<std::int8_t>{0, 0, 0}));
  EXPECT_EQ(empty.value, 0u);
}

TEST(WitnessTest, TransitiveRanks) {
  for (std::size_t n : {4u, 7u, 10u}) {
    const Witness w = witness_vectors(tt(n), all_vertices(n));
    std::uint64_t expected = 0;
    for (std::size_t r = 0; r < n; ++r) {
      const long diff = static_cast<long>(n) - 1 - 2 * static_cast<long>(r);
      EXPECT_EQ(w.signs[r], (diff > 0) - (diff < 0));
      expected += static_cast<std::uint64_t>(std::labs(diff));
    }
    EXPECT_EQ(w.value, expected);
    if (n % 2 == 0) EXPECT_EQ(w.value, n * n / 2);
  }
}

TEST(WitnessTest, RealizesDiscrepancy) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t n = 1 + rng() % 20;
    const Tournament t = generate({Family::kRandom, n, rng()});
    const VertexSet y = random_subset(rng, n);
    const Witness w = witness_vectors(t, y);
    EXPECT_EQ(w.value, disc_given(t, all_vertices(n), y));
    const auto in_y = membership(t, y);
    for (Vertex v = 0; v < n; ++v) {
      const long diff = static_cast<long>(d_plus(t, v, y)) - static_cast<long>(d_minus(t, v, y));
      EXPECT_EQ(w.signs[v], (diff > 0) - (diff < 0));
    }
  }
}

TEST(ExhaustiveTest, Examples) {
  const DiscrepancyReport r = disc_exhaustive(c3());
  EXPECT_EQ(r.value, 2u);
  EXPECT_EQ(r.method, DiscMethod::kExhaustive);
  EXPECT_EQ(disc_given(c3(), all_vertices(3), r.best_y), 2u);
  EXPECT_EQ(r.normalized, BigRational(2, 9));
  EXPECT_NEAR(r.spectral_bound.value, 3.0 * std::sqrt(3.0), 1e-9);

  const DiscrepancyReport one = disc_exhaustive(Tournament(1, {}));
  EXPECT_EQ(one.value, 0u);
  EXPECT_EQ(one.spectral_bound.value, 0.0);

  EXPECT_EQ(disc_exhaustive(tt(4)).value, 8u);
  EXPECT_EQ(disc_exhaustive(tt(6)).value, 18u);
}

TEST(ExhaustiveTest, TieBreakIsLowestGrayIndex) {
  // C3: Gray order visits {0} first, which already attains the maximum 2.
  EXPECT_EQ(disc_exhaustive(c3()).best_y, (VertexSet{0}));
}

TEST(ExhaustiveTest, MatchesNaiveMaximum) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t n = 1 + rng() % 10;
    const Tournament t = generate({Family::kRandom, n, rng()});
    const DiscrepancyReport r = disc_exhaustive(t);
    EXPECT_EQ(static_cast<std::int64_t>(r.value), testing::naive_max_disc(t)) << "n=" << n;
    EXPECT_LE(r.value, n * (n - 1));
  }
}

TEST(ExhaustiveTest, Guard) {
  EXPECT_THROW(disc_exhaustive(generate({Family::kRandom, 25, 0})), ResourceError);
  EXPECT_THROW(disc_exhaustive(generate({Family::kRandom, 8, 0}), 7), ResourceError);
}

TEST(ExhaustiveTest, DominatesRandomPairsAndSpectralBound) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng() % 13;
    const Tournament t = generate({Family::kRandom, n, rng()});
    const DiscrepancyReport r = disc_exhaustive(t);
    for (int pair = 0; pair < 200; ++pair) {
      EXPECT_LE(disc_given(t, random_subset(rng, n), random_subset(rng, n)), r.value);
    }
    EXPECT_LE(static_cast<double>(r.value), r.spectral_bound.value + 1e-6);
  }
}

TEST(ExhaustiveTest, ReversalInvariant) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng() % 11;
    const Tournament t = generate({Family::kRandom, n, rng()});
    EXPECT_EQ(disc_exhaustive(t).value, disc_exhaustive(reverse(t)).value);
  }
}

TEST(ExhaustiveTest, TransitiveFamilyIsFarFromQuasiRandom) {
  for (std::size_t n = 6; n <= 14; n += 2) {
    const DiscrepancyReport r = disc_exhaustive(tt(n));
    EXPECT_GE(r.normalized, BigRational(2, 5)) << "n=" << n;
    EXPECT_GE(r.value, n * n / 2);
  }
}

TEST(LocalSearchTest, Examples) {
  for (std::uint64_t seed : {0u, 1u, 99u}) EXPECT_EQ(disc_localsearch(c3(), 3, seed).value, 2u);
  EXPECT_GE(disc_localsearch(tt(4), 8, 1).value, 8u);
  EXPECT_THROW(disc_localsearch(c3(), 0, 1), InputError);
}

TEST(LocalSearchTest, LowerBoundAndDeterminism) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 2 + rng() % 14;
    const Tournament t = generate({Family::kRandom, n, rng()});
    const std::uint64_t seed = rng();
    const DiscrepancyReport a = disc_localsearch(t, 4, seed);
    const DiscrepancyReport b = disc_localsearch(t, 4, seed);
    EXPECT_EQ(a.value, b.value);
    EXPECT_EQ(a.best_y, b.best_y);
    EXPECT_LE(a.value, disc_exhaustive(t).value);
    EXPECT_EQ(a.value, disc_given(t, all_vertices(n), a.best_y));
  }
}

TEST(LocalSearchTest, IsLocallyOptimal) {
  const Tournament t = generate({Family::kRandom, 60, 8});
  const DiscrepancyReport r = disc_localsearch(t, 2, 3);
  const auto in_y = membership(t, r.best_y);
  for (Vertex u = 0; u < 60; ++u) {
    VertexSet flipped;
    for (Vertex v = 0; v < 60; ++v) {
      if (static_cast<bool>(in_y[v]) != (v == u)) flipped.push_back(v);
    }
    EXPECT_LE(disc_given(t, all_vertices(60), flipped), r.value);
  }
}

TEST(SampleTest, LowerBound) {
  const Tournament t = generate({Family::kRandom, 12, 4});
  const DiscrepancyReport r = disc_sample(t, 50, 6);
  EXPECT_EQ(r.method, DiscMethod::kSample);
  EXPECT_LE(r.value, disc_exhaustive(t).value);
  EXPECT_EQ(r.value, disc_sample(t, 50, 6).value);
  EXPECT_THROW(disc_sample(t, 0, 6), InputError);
}

TEST(SpectralBoundTest, Examples) {
  EXPECT_NEAR(spectral_upper_bound(c3()).value, 3.0 * std::sqrt(3.0), 1e-9);
  EXPECT_EQ(spectral_upper_bound(Tournament(1, {})).value, 0.0);
  for (std::size_t p : {7u, 11u, 19u}) {
    const SpectralBound b = spectral_upper_bound(generate({Family::kPaley, p, 0}));
    EXPECT_TRUE(b.converged);
    EXPECT_NEAR(b.value, p * std::sqrt(static_cast<double>(p)), 1e-6);
  }
}

}  // namespace
}  // namespace qrtour
