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
/// `qrtour` command-line driver. Every command emits one JSON run report;
/// exact integers are written as decimal strings so no precision is lost.
///
/// Exit codes: 0 success, 2 usage or invalid input, 3 I/O failure,
/// 4 resource guard, 5 internal invariant violation (including a failed
/// verification check).

#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iterator>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "qrtour/qrtour.hpp"

namespace qrtour::cli {

using Json = nlohmann::ordered_json;

inline constexpr const char* kToolVersion = "1.0.0";

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kResource = 4,
  kInvariant = 5,
};

class IoError : public Error {
 public:
  using Error::Error;
};

/// Lower-case hex SHA-256, prefixed "sha256:".
inline std::string digest(std::string_view bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream hex;
  hex << "sha256:";
  for (unsigned int i = 0; i < len; ++i) {
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  }
  return hex.str();
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw IoError("read failed: " + path);
  return bytes;
}

inline void write_file(const std::string& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("write failed: " + path);
}

/// Wall-clock milliseconds for named phases.
class PhaseTimer {
 public:
  template <typename Fn>
  decltype(auto) time(const std::string& phase, Fn&& fn) {
    const auto start = std::chrono::steady_clock::now();
    if constexpr (std::is_void_v<std::invoke_result_t<Fn>>) {
      fn();
      record(phase, start);
    } else {
      auto result = fn();
      record(phase, start);
      return result;
    }
  }

  const Json& json() const { return phases_; }

 private:
  void record(const std::string& phase, std::chrono::steady_clock::time_point start) {
    const std::chrono::duration<double, std::milli> ms = std::chrono::steady_clock::now() - start;
    phases_[phase] = ms.count();
  }

  Json phases_ = Json::object();
};

inline std::string rational_string(const BigRational& r) {
  return boost::multiprecision::numerator(r).str() + "/" +
         boost::multiprecision::denominator(r).str();
}

inline Json to_json(const CycleCountReport& r) {
  return Json{{"n", r.n},
              {"k", r.k},
              {"total", r.total.str()},
              {"even", r.even.str()},
              {"odd", r.odd.str()},
              {"trace", r.trace.str()},
              {"even_fraction", rational_string(r.even_fraction)},
              {"even_fraction_decimal", r.even_fraction_decimal()}};
}

inline Json to_json(const SpectralSummary& s) {
  Json j{{"lambda1_abs", s.lambda1_abs},
         {"iterations", s.iterations},
         {"residual", s.residual},
         {"converged", s.converged}};
  if (s.singular_values) j["singular_values"] = *s.singular_values;
  return j;
}

inline Json to_json(const DiscrepancyReport& r) {
  std::vector<int> signs(r.witness_signs.begin(), r.witness_signs.end());
  return Json{{"method", to_string(r.method)},
              {"best_y", r.best_y},
              {"value", r.value},
              {"normalized", rational_string(r.normalized)},
              {"normalized_decimal", r.normalized.convert_to<double>()},
              {"spectral_bound", r.spectral_bound.value},
              {"spectral_converged", r.spectral_bound.converged},
              {"witness_signs", signs}};
}

struct Context {
  std::ostream& out;
  std::ostream& err;
};

inline Json make_report(const std::string& command, const std::string& input_digest,
                        Json parameters) {
  return Json{{"tool_version", kToolVersion},
              {"command", command},
              {"input_digest", input_digest},
              {"parameters", std::move(parameters)},
              {"results", Json::object()},
              {"timings", Json::object()}};
}

/// Report to `--out` when given, else to stdout. Floats are emitted in
/// shortest round-trip form.
inline void emit(const Context& ctx, const Json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty()) {
    ctx.out << text;
  } else {
    write_file(out_path, text);
  }
}

struct LoadedTournament {
  Tournament tournament;
  std::string digest;
};

inline LoadedTournament load(const std::string& path) {
  const std::string bytes = read_file(path);
  return {decode(bytes), digest(bytes)};
}

// ---------------------------------------------------------------------------
// gen

struct GenOptions {
  std::string type;
  std::size_t n = 0;
  std::size_t p = 0;
  std::uint64_t seed = 0;
  std::string out;
};

inline Family parse_family(const std::string& name) {
  if (name == "random") return Family::kRandom;
  if (name == "transitive") return Family::kTransitive;
  if (name == "rotational") return Family::kRotational;
  if (name == "paley") return Family::kPaley;
  throw InputError("unknown tournament type '" + name + "'");
}

inline int cmd_gen(const Context& ctx, const GenOptions& o) {
  GeneratorSpec spec;
  spec.family = parse_family(o.type);
  spec.n = spec.family == Family::kPaley ? o.p : o.n;
  spec.seed = o.seed;
  if (spec.family == Family::kPaley && o.p == 0) throw InputError("paley needs --p");
  if (spec.family != Family::kPaley && o.n == 0) throw InputError("--n must be positive");
  PhaseTimer timer;
  const Tournament t = timer.time("generate", [&] { return generate(spec); });
  const std::string bytes = encode(t);
  write_file(o.out, bytes);
  Json params{{"type", o.type}, {"n", t.size()}};
  if (spec.family == Family::kRandom) params["seed"] = o.seed;
  Json report = make_report("gen", "", params);
  report["results"] = Json{{"path", o.out}, {"output_digest", digest(bytes)}, {"n", t.size()}};
  report["timings"] = timer.json();
  emit(ctx, report, "");
  return kOk;
}

// ---------------------------------------------------------------------------
// count

struct CountOptions {
  std::string file;
  unsigned k = 0;
  std::string method = "trace";
  std::uint64_t guard = kDefaultBruteForceGuard;
  std::string out;
};

inline int cmd_count(const Context& ctx, const CountOptions& o) {
  if (o.k < 2) throw InputError("--k must be at least 2");
  const LoadedTournament loaded = load(o.file);
  const Tournament& t = loaded.tournament;
  const std::string& input_digest = loaded.digest;
  PhaseTimer timer;
  Json report = make_report("count", input_digest,
                            Json{{"k", o.k}, {"method", o.method}, {"guard", o.guard}});
  Json results{{"n", t.size()}, {"k", o.k}};
  const bool use_trace = o.method != "brute";
  const bool use_brute = o.method != "trace";
  std::optional<CycleCountReport> exact;
  std::optional<ParityCounts> brute;
  if (use_trace) {
    exact = timer.time("trace", [&] { return even_cycles_trace(t, o.k); });
    results.update(to_json(*exact));
  }
  if (use_brute) {
    brute = timer.time("brute", [&] { return brute_force_count(t, o.k, o.guard); });
    results["brute_even"] = brute->even;
    results["brute_odd"] = brute->odd;
    if (!use_trace) {
      const BigInt total = BigInt(brute->even) + brute->odd;
      results["total"] = total.str();
      results["even"] = std::to_string(brute->even);
      results["odd"] = std::to_string(brute->odd);
    }
  }
  if (use_trace && use_brute) {
    const bool agree = exact->even == brute->even && exact->odd == brute->odd;
    results["agreement"] = agree;
    if (!agree) {
      ctx.err << "trace/brute mismatch: trace even " << exact->even << ", brute even "
              << brute->even << "\n";
      return kInvariant;
    }
  }
  report["results"] = std::move(results);
  report["timings"] = timer.json();
  emit(ctx, report, o.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumOptions {
  std::string file;
  bool full = false;
  double tol = kDefaultSpectralTol;
  std::optional<double> threshold;
  std::size_t guard = kDefaultFullSpectrumGuard;
  std::string out;
};

inline int cmd_spectrum(const Context& ctx, const SpectrumOptions& o) {
  if (!(o.tol > 0.0)) throw InputError("--tol must be positive");
  const LoadedTournament loaded = load(o.file);
  const Tournament& t = loaded.tournament;
  const std::string& input_digest = loaded.digest;
  PhaseTimer timer;
  Json params{{"full", o.full}, {"tol", o.tol}};
  if (o.threshold) params["threshold"] = *o.threshold;
  Json report = make_report("spectrum", input_digest, params);
  const SpectralSummary power = timer.time("power_iteration", [&] { return lambda1(t, o.tol); });
  Json results = to_json(power);
  results["n"] = t.size();
  results["ratio"] = power.lambda1_abs / static_cast<double>(t.size());
  if (o.threshold) {
    const Certificate cert = quasirandom_certificate(t, *o.threshold, o.tol);
    results["certificate"] = Json{{"status", to_string(cert.status)}, {"ratio", cert.ratio}};
  }
  if (o.full) {
    const SpectralSummary full = timer.time("jacobi", [&] { return full_spectrum(t, o.tol, o.guard); });
    Json fj = to_json(full);
    fj["sweeps"] = full.iterations;
    results["full"] = std::move(fj);
  }
  report["results"] = std::move(results);
  report["timings"] = timer.json();
  emit(ctx, report, o.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// disc

struct DiscOptions {
  std::string file;
  std::string method = "exhaustive";
  std::size_t restarts = 16;
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  std::size_t guard = kDefaultExhaustiveGuard;
  std::string out;
};

inline int cmd_disc(const Context& ctx, const DiscOptions& o) {
  const LoadedTournament loaded = load(o.file);
  const Tournament& t = loaded.tournament;
  const std::string& input_digest = loaded.digest;
  PhaseTimer timer;
  Json params{{"method", o.method}};
  if (o.method == "local") {
    params["restarts"] = o.restarts;
    params["seed"] = o.seed;
  } else if (o.method == "sample") {
    params["samples"] = o.samples;
    params["seed"] = o.seed;
  } else {
    params["guard"] = o.guard;
  }
  Json report = make_report("disc", input_digest, params);
  const DiscrepancyReport r = timer.time("search", [&] {
    if (o.method == "local") return disc_localsearch(t, o.restarts, o.seed);
    if (o.method == "sample") return disc_sample(t, o.samples, o.seed);
    return disc_exhaustive(t, o.guard);
  });
  Json results = to_json(r);
  results["n"] = t.size();
  report["results"] = std::move(results);
  report["timings"] = timer.json();
  emit(ctx, report, o.out);
  return kOk;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyOptions {
  std::string suite = "all";
  std::size_t trials = 20;
  std::size_t nmax = 40;
  std::uint64_t seed = 0;
  std::string out;
};

/// Pass/fail tally for one named property over many instances.
class Check {
 public:
  Check(std::string suite, std::string name) : suite_(std::move(suite)), name_(std::move(name)) {}

  void record(bool ok, const std::function<std::string()>& detail) {
    ++instances_;
    if (!ok) {
      ++failures_;
      if (first_failure_.empty()) first_failure_ = detail();
    }
  }

  bool passed() const { return failures_ == 0 && instances_ > 0; }

  Json json() const {
    Json j{{"suite", suite_},
           {"name", name_},
           {"passed", passed()},
           {"instances", instances_},
           {"failures", failures_}};
    if (!first_failure_.empty()) j["first_failure"] = first_failure_;
    return j;
  }

 private:
  std::string suite_;
  std::string name_;
  std::size_t instances_ = 0;
  std::size_t failures_ = 0;
  std::string first_failure_;
};

namespace detail {

inline std::size_t draw_size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

inline std::string describe(const Tournament& t, std::uint64_t seed) {
  return "random n=" + std::to_string(t.size()) + " seed=" + std::to_string(seed);
}

inline std::vector<Check> verify_claims(const VerifyOptions& o) {
  Check square("claims", "trace_A2_equals_minus_n_n_minus_1");
  Check odd("claims", "odd_k_trace_zero_k3_5_7");
  Check sign("claims", "even_k_trace_sign_k4_6_8_12");
  std::mt19937_64 rng(o.seed);
  const std::size_t nmax = std::max<std::size_t>(o.nmax, 2);
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const std::size_t n = draw_size(rng, 2, nmax);
    const std::uint64_t seed = rng();
    const Tournament t = generate({Family::kRandom, n, seed});
    MatrixPowers powers(sign_matrix(t));
    const BigInt t2 = powers.trace(2);
    square.record(t2 == -BigInt(n * (n - 1)), [&] { return describe(t, seed) + " tr=" + t2.str(); });
    for (unsigned k : {3u, 5u, 7u}) {
      const BigInt tk = powers.trace(k);
      odd.record(tk.is_zero(), [&] { return describe(t, seed) + " k=" + std::to_string(k); });
    }
    for (unsigned k : {4u, 6u, 8u, 12u}) {
      const BigInt tk = powers.trace(k);
      const bool ok = k % 4 == 0 ? tk >= 0 : tk <= 0;
      sign.record(ok, [&] { return describe(t, seed) + " k=" + std::to_string(k) + " tr=" + tk.str(); });
    }
  }
  return {square, odd, sign};
}

inline std::vector<Check> verify_bounds(const VerifyOptions& o) {
  constexpr unsigned kOrders[] = {4, 6, 8, 12};
  Check random_check("bounds", "ec_bound_random");
  Check family_check("bounds", "ec_bound_structured_families");
  std::mt19937_64 rng(o.seed);
  const std::size_t nmax = std::max<std::size_t>(o.nmax, 3);
  auto check_all = [&](Check& c, const Tournament& t, const std::string& label) {
    MatrixPowers powers(sign_matrix(t));
    for (unsigned k : kOrders) {
      const CycleCountReport r = cycle_report(t.size(), k, powers.trace(k));
      const BigInt twice = 2 * r.even;
      const bool ok = k % 4 == 0 ? (twice >= r.total && r.trace >= 0)
                                 : (twice <= r.total && r.trace <= 0);
      c.record(ok, [&] { return label + " k=" + std::to_string(k) + " EC=" + r.even.str(); });
    }
  };
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const std::size_t n = draw_size(rng, 2, nmax);
    const std::uint64_t seed = rng();
    const Tournament t = generate({Family::kRandom, n, seed});
    check_all(random_check, t, describe(t, seed));
  }
  for (std::size_t n = 1; n <= nmax; n += std::max<std::size_t>(1, nmax / 8)) {
    check_all(family_check, generate({Family::kTransitive, n, 0}), "transitive n=" + std::to_string(n));
    if (n >= 3 && n % 2 == 1) {
      check_all(family_check, generate({Family::kRotational, n, 0}), "rotational n=" + std::to_string(n));
    }
  }
  for (std::size_t p = 3; p <= std::max<std::size_t>(nmax, 31); ++p) {
    if (is_prime(p) && p % 4 == 3) {
      check_all(family_check, generate({Family::kPaley, p, 0}), "paley p=" + std::to_string(p));
    }
  }
  return {random_check, family_check};
}

inline std::vector<Check> verify_crosscheck(const VerifyOptions& o) {
  Check oracle("crosscheck", "trace_equals_brute_force");
  Check formula("crosscheck", "brute_total_equals_cycle_formula");
  Check moments("crosscheck", "moment_relative_error_le_1e-8");
  Check radius("crosscheck", "power_iteration_matches_jacobi");
  std::mt19937_64 rng(o.seed);
  const std::size_t brute_nmax = std::min<std::size_t>(std::max<std::size_t>(o.nmax, 2), 8);
  for (std::size_t n = 2; n <= brute_nmax; ++n) {
    for (std::size_t trial = 0; trial < o.trials; ++trial) {
      const std::uint64_t seed = rng();
      const Tournament t = generate({Family::kRandom, n, seed});
      MatrixPowers powers(sign_matrix(t));
      for (unsigned k = 2; k <= 6; ++k) {
        const CycleCountReport r = cycle_report(n, k, powers.trace(k));
        const ParityCounts b = brute_force_count(t, k);
        oracle.record(r.even == b.even && r.odd == b.odd,
                      [&] { return describe(t, seed) + " k=" + std::to_string(k); });
        formula.record(BigInt(b.even) + b.odd == total_cycles(n, k),
                       [&] { return describe(t, seed) + " k=" + std::to_string(k); });
      }
    }
  }
  const std::size_t spectral_nmax = std::min<std::size_t>(std::max<std::size_t>(o.nmax, 2), 60);
  for (std::size_t trial = 0; trial < o.trials; ++trial) {
    const std::size_t n = draw_size(rng, 2, spectral_nmax);
    const std::uint64_t seed = rng();
    const Tournament t = generate({Family::kRandom, n, seed});
    for (unsigned k : {2u, 4u, 6u, 8u, 10u}) {
      const double err = moment_crosscheck(t, k);
      moments.record(err <= 1e-8, [&] {
        return describe(t, seed) + " k=" + std::to_string(k) + " err=" + std::to_string(err);
      });
    }
    const SpectralSummary power = lambda1(t);
    const SpectralSummary full = full_spectrum(t);
    if (power.converged && full.converged) {
      const double rel = std::abs(power.lambda1_abs - full.lambda1_abs) /
                         std::max(1.0, full.lambda1_abs);
      radius.record(rel <= 1e-8, [&] { return describe(t, seed) + " rel=" + std::to_string(rel); });
    }
  }
  return {oracle, formula, moments, radius};
}

}  // namespace detail

inline int cmd_verify(const Context& ctx, const VerifyOptions& o) {
  if (o.trials == 0) throw InputError("--trials must be at least 1");
  PhaseTimer timer;
  Json report = make_report("verify", "",
                            Json{{"suite", o.suite}, {"trials", o.trials}, {"nmax", o.nmax}, {"seed", o.seed}});
  std::vector<Check> checks;
  auto run = [&](const std::string& suite, auto&& fn) {
    if (o.suite != suite && o.suite != "all") return;
    auto part = timer.time(suite, [&] { return fn(o); });
    checks.insert(checks.end(), part.begin(), part.end());
  };
  run("claims", detail::verify_claims);
  run("bounds", detail::verify_bounds);
  run("crosscheck", detail::verify_crosscheck);
  Json list = Json::array();
  bool all_passed = true;
  for (const Check& c : checks) {
    list.push_back(c.json());
    all_passed = all_passed && c.passed();
  }
  report["results"] = Json{{"all_passed", all_passed}, {"checks", std::move(list)}};
  report["timings"] = timer.json();
  emit(ctx, report, o.out);
  return all_passed ? kOk : kInvariant;
}

// ---------------------------------------------------------------------------
// bench

struct BenchOptions {
  std::vector<std::size_t> sizes;
  unsigned k = 8;
  std::size_t repeat = 1;
  std::uint64_t seed = 1;
  std::string out;
};

inline int cmd_bench(const Context& ctx, const BenchOptions& o) {
  if (o.sizes.empty()) throw InputError("--sizes must list at least one size");
  if (o.repeat == 0) throw InputError("--repeat must be at least 1");
  if (o.k < 2) throw InputError("--k must be at least 2");
  for (std::size_t n : o.sizes) {
    if (n == 0) throw InputError("sizes must be positive");
  }
  Json report = make_report("bench", "",
                            Json{{"sizes", o.sizes}, {"k", o.k}, {"repeat", o.repeat}, {"seed", o.seed}});
  Json rows = Json::array();
  std::ostringstream csv;
  csv << "n,phase,min_ms,median_ms,max_ms\n";
  auto stats = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return std::array<double, 3>{v.front(), v[v.size() / 2], v.back()};
  };
  for (std::size_t n : o.sizes) {
    const Tournament t = generate({Family::kRandom, n, o.seed});
    std::vector<double> count_ms, spectral_ms;
    std::string even;
    for (std::size_t r = 0; r < o.repeat; ++r) {
      auto start = std::chrono::steady_clock::now();
      even = even_cycles_trace(t, o.k).even.str();
      count_ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
      start = std::chrono::steady_clock::now();
      lambda1(t);
      spectral_ms.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    }
    const auto c = stats(count_ms);
    const auto s = stats(spectral_ms);
    rows.push_back(Json{{"n", n},
                        {"even", even},
                        {"count_ms", {{"min", c[0]}, {"median", c[1]}, {"max", c[2]}}},
                        {"spectral_ms", {{"min", s[0]}, {"median", s[1]}, {"max", s[2]}}}});
    csv << n << ",count," << c[0] << ',' << c[1] << ',' << c[2] << "\n";
    csv << n << ",spectral," << s[0] << ',' << s[1] << ',' << s[2] << "\n";
  }
  report["results"] = Json{{"rows", std::move(rows)}, {"csv", csv.str()}};
  emit(ctx, report, o.out);
  return kOk;
}

// ---------------------------------------------------------------------------

/// Parses `args` (args[0] is the program name) and runs one subcommand.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const Context ctx{out, err};
  CLI::App app{"Quasi-random tournament toolkit: exact cycle counts, spectra, discrepancy"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  GenOptions gen;
  auto* gen_cmd = app.add_subcommand("gen", "Generate a tournament as a .trn file");
  gen_cmd->add_option("--type", gen.type, "random | transitive | rotational | paley")
      ->required()
      ->check(CLI::IsMember({"random", "transitive", "rotational", "paley"}));
  gen_cmd->add_option("--n", gen.n, "Vertex count");
  gen_cmd->add_option("--p", gen.p, "Prime p = 3 (mod 4) for paley");
  gen_cmd->add_option("--seed", gen.seed, "Seed for random");
  gen_cmd->add_option("--out", gen.out, "Output .trn path")->required();

  CountOptions count;
  auto* count_cmd = app.add_subcommand("count", "Count even/odd k-cycles exactly");
  count_cmd->add_option("file", count.file, ".trn input")->required();
  count_cmd->add_option("--k", count.k, "Cycle length (>= 2)")->required();
  count_cmd->add_option("--method", count.method, "trace | brute | both")
      ->check(CLI::IsMember({"trace", "brute", "both"}));
  count_cmd->add_option("--guard", count.guard, "Brute-force bound on n^k");
  count_cmd->add_option("--out", count.out, "Write report here instead of stdout");

  SpectrumOptions spectrum;
  auto* spectrum_cmd = app.add_subcommand("spectrum", "Spectral radius and singular values");
  spectrum_cmd->add_option("file", spectrum.file, ".trn input")->required();
  spectrum_cmd->add_flag("--full", spectrum.full, "Also compute all singular values (Jacobi)");
  spectrum_cmd->add_option("--tol", spectrum.tol, "Convergence tolerance");
  spectrum_cmd->add_option("--threshold", spectrum.threshold, "Certify when |lambda1|/n <= threshold");
  spectrum_cmd->add_option("--guard", spectrum.guard, "Largest n for --full");
  spectrum_cmd->add_option("--out", spectrum.out, "Write report here instead of stdout");

  DiscOptions disc;
  auto* disc_cmd = app.add_subcommand("disc", "Maximize discrepancy over Y with X = V");
  disc_cmd->add_option("file", disc.file, ".trn input")->required();
  disc_cmd->add_option("--method", disc.method, "exhaustive | local | sample")
      ->check(CLI::IsMember({"exhaustive", "local", "sample"}));
  disc_cmd->add_option("--restarts", disc.restarts, "Local-search restarts");
  disc_cmd->add_option("--samples", disc.samples, "Random subsets for sample");
  disc_cmd->add_option("--seed", disc.seed, "Seed for local/sample");
  disc_cmd->add_option("--guard", disc.guard, "Largest n for exhaustive");
  disc_cmd->add_option("--out", disc.out, "Write report here instead of stdout");

  VerifyOptions verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check the identities on sampled instances");
  verify_cmd->add_option("--suite", verify.suite, "claims | bounds | crosscheck | all")
      ->check(CLI::IsMember({"claims", "bounds", "crosscheck", "all"}));
  verify_cmd->add_option("--trials", verify.trials, "Random instances per check");
  verify_cmd->add_option("--nmax", verify.nmax, "Largest random n");
  verify_cmd->add_option("--seed", verify.seed, "Sampling seed");
  verify_cmd->add_option("--out", verify.out, "Write report here instead of stdout");

  BenchOptions bench;
  auto* bench_cmd = app.add_subcommand("bench", "Time exact counting and power iteration");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated n values")->delimiter(',');
  bench_cmd->add_option("--k", bench.k, "Cycle length");
  bench_cmd->add_option("--repeat", bench.repeat, "Repetitions per size");
  bench_cmd->add_option("--seed", bench.seed, "Tournament seed");
  bench_cmd->add_option("--out", bench.out, "Write report here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), std::prev(args.rend()));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kToolVersion << "\n";
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsage;
  }

  try {
    if (*gen_cmd) return cmd_gen(ctx, gen);
    if (*count_cmd) return cmd_count(ctx, count);
    if (*spectrum_cmd) return cmd_spectrum(ctx, spectrum);
    if (*disc_cmd) return cmd_disc(ctx, disc);
    if (*verify_cmd) return cmd_verify(ctx, verify);
    if (*bench_cmd) return cmd_bench(ctx, bench);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << "\n";
    return kResource;
  } catch (const InvariantError& e) {
    err << "internal error: " << e.what() << "\n";
    return kInvariant;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace qrtour::cli
