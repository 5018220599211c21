// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
// argv[1] is the path of the wedge CLI (used by the determinism criterion).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

#include <unistd.h>

#include "oracles.hpp"
#include "wedge/compound.hpp"
#include "wedge/gk.hpp"
#include "wedge/io.hpp"
#include "wedge/kernel.hpp"
#include "wedge/positivity.hpp"
#include "wedge/random.hpp"

using namespace wedge;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

// Either library route (random_tn) or a general uniform(-1, 1) matrix drawn
// from a different generator than the library's.
DenseMatrix trial_matrix(std::size_t n, std::uint32_t trial) {
  const std::uint64_t seed = derive_seed(n, trial);
  return trial % 2 == 0 ? random_tn(n, seed, 3 * n) : oracle::random_matrix(n, static_cast<std::uint32_t>(seed));
}

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Products lambda_i lambda_j from an independent eigen-solve of A.
ComplexSpectrum oracle_products(const DenseMatrix& m, bool ordered) {
  const auto v = oracle::eigen_values(m);
  std::vector<Complex> p;
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = ordered ? 0 : i + 1; j < v.size(); ++j) p.push_back(v[i] * v[j]);
  return ComplexSpectrum(std::move(p));
}

// Spectrum identity check: the library verifier plus an oracle cross-check
// of the operator spectrum against Eigen-computed products. Zero filtering
// is unnecessary for the oracle side because both multisets include the
// (numerically tiny) zero eigenvalues.
Outcome spectrum_identity(int theorem, std::size_t lo, std::size_t hi, double limit_s) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  double worst = 0.0;
  std::size_t count = 0, failures = 0;
  for (std::size_t n = lo; n <= hi; ++n)
    for (std::uint32_t t = 0; t < 100; ++t) {
      const DenseMatrix m = trial_matrix(n, t);
      const VerificationReport r = theorem == 1 ? verify_theorem1(m) : verify_theorem2(m);
      const DenseMatrix op = theorem == 1 ? tensor_square(m) : exterior_square(m);
      const MatchReport x = multiset_match(oracle::eigen_spectrum(op), oracle_products(m, theorem == 1), 1e-8);
      worst = std::max({worst, r.max_residual, x.max_residual});
      ++count;
      if (!r.matched || !x.matched) ++failures;
    }
  const double elapsed = seconds_since(t0);
  o.pass = failures == 0 && worst < 1e-8 && elapsed < limit_s;
  o.detail = std::to_string(count) + " matrices, n " + std::to_string(lo) + ".." + std::to_string(hi) + ", " +
             std::to_string(failures) + " mismatches, worst residual " + fmt(worst) + ", " + fmt(elapsed) + " s";
  return o;
}

Outcome criterion3() {
  Outcome o;
  std::size_t failures = 0;
  double worst = 0.0;
  for (std::uint64_t t = 0; t < 100; ++t) {
    const std::size_t n = 2 + t % 5;
    const DenseMatrix m = random_oscillatory(n, derive_seed(1000 + n, t));
    const GKReport r = analyze(m);
    bool ok = r.classification == Classification::second_eigenvalue_found && r.lambda2 && r.sign_changes_e1 &&
              r.sign_changes_e2;
    if (ok) {
      auto ev = oracle::eigen_values(m);
      std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
      const double rel_sorted = std::abs(*r.lambda2 - r.lambda2_sorted.real()) / *r.lambda2;
      const double rel_oracle = std::abs(*r.lambda2 - std::abs(ev[1])) / *r.lambda2;
      worst = std::max({worst, rel_sorted, rel_oracle});
      ok = rel_sorted <= 1e-8 && rel_oracle <= 1e-8 && *r.lambda2 > 0.0 && *r.lambda2 < r.lambda1 &&
           r.sign_changes_e1->strict_count == 0 && r.sign_changes_e2->strict_count == 1;
    }
    if (!ok) ++failures;
  }
  o.pass = failures == 0;
  o.detail = "100 oscillatory matrices, n 2..6, " + std::to_string(failures) + " failures, worst lambda2 discrepancy " + fmt(worst);
  return o;
}

Outcome criterion4() {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  const KernelGrid g = discretize(KernelSpec::builtin("green_string"), 200);
  const ComplexSpectrum s = eigenvalues(g.discretized);
  constexpr double pi2 = std::numbers::pi * std::numbers::pi;
  double worst = 0.0;
  bool signs = true;
  for (int k = 1; k <= 3; ++k) {
    const double exact = 1.0 / (k * k * pi2);
    worst = std::max(worst, std::abs(s[k - 1].real() - exact) / exact);
    const auto sc = sign_changes(real_eigenvector(g.discretized, s[k - 1].real()));
    signs = signs && sc.strict_count == std::size_t(k - 1);
  }
  // The 19900 x 19900 exterior grid is applied matrix-free.
  const ExteriorPerron p = exterior_perron_root(g.discretized);
  const double target = 1.0 / (4.0 * pi2 * pi2);
  const double wedge_rel = std::abs(p.lambda - target) / target;
  const double elapsed = seconds_since(t0);
  o.pass = worst < 1e-3 && signs && p.converged && wedge_rel < 2e-3 && elapsed < 10.0;
  o.detail = "worst eigenvalue error " + fmt(worst) + ", sign changes " + (signs ? "0/1/2" : "wrong") +
             ", exterior radius error " + fmt(wedge_rel) + ", " + fmt(elapsed) + " s";
  return o;
}

Outcome criterion5() {
  Outcome o;
  double worst = 0.0;
  std::size_t failures = 0;
  for (std::uint32_t t = 0; t < 200; ++t) {
    const std::size_t n = 2 + t % 5;
    const DenseMatrix a = oracle::random_matrix(n, 2 * t), b = oracle::random_matrix(n, 2 * t + 1);
    const DenseMatrix lhs = compound_matrix(a * b, 2);
    const DenseMatrix rhs = compound_matrix(a, 2) * compound_matrix(b, 2);
    const double scale = std::max({1.0, lhs.max_abs(), rhs.max_abs()});
    const double d = std::max(max_abs_diff(lhs, rhs), max_abs_diff(lhs, oracle::compound(a * b, 2))) / scale;
    worst = std::max(worst, d);
    if (d > 1e-10) ++failures;
  }
  o.pass = failures == 0;
  o.detail = "200 pairs, n 2..6, worst relative deviation " + fmt(worst);
  return o;
}

Outcome criterion6() {
  Outcome o;
  std::size_t failures = 0, count = 0;
  for (std::size_t n = 2; n <= 8; ++n)
    for (std::uint64_t seed = 0; seed < 30; ++seed, ++count)
      if (!is_totally_nonnegative(random_tn(n, seed, 3 * n), std::min<std::size_t>(n, 4)).verdict) ++failures;
  const DenseMatrix c = oracle::cycle3();
  const TNCertificate cert = is_totally_nonnegative(c, 2);
  bool witness_ok = !cert.verdict && cert.witness && cert.witness->value == -1.0 &&
                    oracle::minor_of(c, cert.witness->rows.indices(), cert.witness->cols.indices()) == -1.0;
  o.pass = failures == 0 && witness_ok;
  o.detail = std::to_string(count - failures) + "/" + std::to_string(count) + " random_tn certified; 3-cycle witness " +
             (witness_ok ? "value -1 confirmed" : "missing or wrong");
  return o;
}

Outcome criterion7() {
  Outcome o;
  struct Case {
    const char* label;
    DenseMatrix m;
    Classification expected;
    std::function<bool(const std::vector<Complex>&)> oracle;
  };
  const double d[] = {3, 2, 1};
  const std::vector<Case> cases{
      {"diag(3,2,1)", DenseMatrix::diagonal(d), Classification::second_eigenvalue_found,
       [](const auto& v) {
         auto mod = v;
         std::sort(mod.begin(), mod.end(), [](auto a, auto b) { return std::abs(a) > std::abs(b); });
         return std::abs(mod[0]) - std::abs(mod[1]) > 0.5;
       }},
      {"3-cycle", oracle::cycle3(), Classification::complex_pair_on_circle,
       [](const auto& v) {
         std::size_t nonreal = 0;
         for (auto z : v) {
           if (std::abs(std::abs(z) - 1.0) > 1e-12) return false;
           nonreal += std::abs(z.imag()) > 0.5;
         }
         return nonreal == 2;
       }},
      {"identity", DenseMatrix::identity(3), Classification::multiple_leading,
       [](const auto& v) { return std::all_of(v.begin(), v.end(), [](auto z) { return z == Complex(1.0); }); }},
      {"nilpotent", DenseMatrix{{0, 1, 1}, {0, 0, 1}, {0, 0, 0}}, Classification::degenerate_rho_zero,
       [](const auto& v) { return std::all_of(v.begin(), v.end(), [](auto z) { return std::abs(z) < 1e-12; }); }},
  };
  for (const auto& c : cases) {
    const GKReport r = analyze(c.m);
    const bool ok = r.classification == c.expected && c.oracle(oracle::eigen_values(c.m));
    o.pass = o.pass && ok;
    if (!o.detail.empty()) o.detail += ", ";
    o.detail += std::string(c.label) + " -> " + to_string(r.classification) + (ok ? "" : " (unexpected)");
  }
  return o;
}

std::string slurp(const fs::path& p) {
  try {
    return io::read_file(p);
  } catch (const std::exception&) {
    return {};
  }
}

Outcome criterion8(const std::string& cli) {
  Outcome o;
  if (cli.empty() || !fs::exists(cli)) {
    o.pass = false;
    o.detail = "CLI binary not found";
    return o;
  }
  const fs::path dir = fs::temp_directory_path() / ("wedge_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  const std::string mat = (dir / "m.csv").string();
  io::write_file(mat, io::to_csv(random_oscillatory(6, 42)));
  io::write_file(dir / "tab.csv", io::to_csv(discretize(KernelSpec::builtin("cauchy"), 30).values));
  const std::vector<std::string> commands{
      "analyze " + mat + " --format json",
      "compound " + mat + " --order 3",
      "tn-check " + mat + " --order 6 --format json",
      "tn-check " + mat + " --order 6 --sample --seed 5 --format json",
      "kernel --name green_string --grid 120 --seed 3 --format json",
      "kernel --name cosine --param 2 --grid 80 --seed 3 --format json",
      "kernel --file " + (dir / "tab.csv").string() + " --format json",
      "generate --n 8 --seed 17 --oscillatory",
      "verify --theorem 1 --n 4 --trials 30 --seed 2 --format json",
      "verify --theorem 2 --n 6 --trials 30 --seed 2 --format json",
  };
  std::size_t identical = 0;
  for (std::size_t i = 0; i < commands.size(); ++i) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const fs::path out = dir / ("out" + std::to_string(i) + "_" + std::to_string(run));
      const std::string cmd = "\"" + cli + "\" " + commands[i] + " > \"" + out.string() + "\" 2>/dev/null";
      const int status = std::system(cmd.c_str());
      outputs[run] = std::to_string(status) + "\n" + slurp(out);
    }
    if (outputs[0] == outputs[1] && outputs[0].size() > 3) ++identical;
  }
  fs::remove_all(dir);
  o.pass = identical == commands.size();
  o.detail = std::to_string(identical) + "/" + std::to_string(commands.size()) + " subcommand invocations byte-identical across two runs";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string cli = argc > 1 ? argv[1] : "";
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"exterior square spectrum = pairwise products i<j", [] { return spectrum_identity(2, 3, 8, 30.0); }},
      {"tensor square spectrum = all pairwise products", [] { return spectrum_identity(1, 2, 5, 30.0); }},
      {"second eigenvalue engine on oscillatory matrices", criterion3},
      {"string Green kernel regression", criterion4},
      {"Cauchy-Binet for second compounds", criterion5},
      {"total nonnegativity checker soundness", criterion6},
      {"classification coverage", criterion7},
      {"determinism of CLI reports", [&] { return criterion8(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %zu: %s -- %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
  }
  std::printf("%d/%zu criteria passed\n", int(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
