// Serial reference vs OpenMP kernels. Prints median wall time of each and
// whether the outputs agree bitwise (compound/tensor/exterior) or to 1e-12
// (exterior_apply, whose summation order differs).

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "wedge/compound.hpp"
#include "wedge/positivity.hpp"
#include "wedge/random.hpp"
#include "wedge/serial.hpp"

using namespace wedge;

namespace {

const SizeCap kNoCap{.force = true};

double median_ms(const std::function<void()>& f, int reps) {
  std::vector<double> t;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    t.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count());
  }
  std::nth_element(t.begin(), t.begin() + reps / 2, t.end());
  return t[reps / 2];
}

void row(const std::string& name, double serial, double parallel, bool agree) {
  std::printf("%-28s %12.3f %12.3f %8.2fx  %s\n", name.c_str(), serial, parallel, serial / parallel, agree ? "agree" : "DIFFER");
}

DenseMatrix uniform_matrix(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  DenseMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = rng.uniform(-1.0, 1.0);
  return m;
}

}  // namespace

int main(int argc, char** argv) {
  const int reps = argc > 1 ? std::max(1, std::atoi(argv[1])) : 5;
  std::printf("threads: %d, repetitions: %d\n", omp_get_max_threads(), reps);
  std::printf("%-28s %12s %12s %9s\n", "kernel", "serial ms", "openmp ms", "speedup");

  for (std::size_t n : {12u, 24u}) {
    const DenseMatrix m = uniform_matrix(n, n);
    DenseMatrix a, b;
    const double s = median_ms([&] { a = serial::compound_matrix(m, 3); }, reps);
    const double p = median_ms([&] { b = compound_matrix(m, 3, kNoCap); }, reps);
    row("compound j=3, n=" + std::to_string(n), s, p, a == b);
  }
  {
    const DenseMatrix m = uniform_matrix(10, 4);
    DenseMatrix a, b;
    const double s = median_ms([&] { a = serial::compound_matrix(m, 5); }, reps);
    const double p = median_ms([&] { b = compound_matrix(m, 5, kNoCap); }, reps);
    row("compound j=5, n=10", s, p, a == b);
  }
  for (std::size_t n : {30u, 60u}) {
    const DenseMatrix m = uniform_matrix(n, n + 1);
    DenseMatrix a, b;
    double s = median_ms([&] { a = serial::tensor_square(m); }, reps);
    double p = median_ms([&] { b = tensor_square(m, kNoCap); }, reps);
    row("tensor_square n=" + std::to_string(n), s, p, a == b);
    s = median_ms([&] { a = serial::exterior_square(m); }, reps);
    p = median_ms([&] { b = exterior_square(m, kNoCap); }, reps);
    row("exterior_square n=" + std::to_string(n), s, p, a == b);
  }
  {
    const std::size_t n = 120;
    const DenseMatrix m = uniform_matrix(n, 7);
    Rng rng(8);
    Vector w(n * (n - 1) / 2);
    for (double& x : w) x = rng.uniform();
    Vector a, b;
    const double s = median_ms([&] { a = serial::exterior_apply(m, w); }, reps);
    const double p = median_ms([&] { b = exterior_apply(m, w); }, reps);
    double diff = 0.0, scale = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      diff = std::max(diff, std::abs(a[i] - b[i]));
      scale = std::max(scale, std::abs(a[i]));
    }
    row("exterior_apply n=120", s, p, diff <= 1e-12 * scale);
  }
  {
    const DenseMatrix m = random_tn(14, 3, 42);
    serial::MinorScan a;
    TNCertificate b;
    const double s = median_ms([&] { a = serial::min_minor(m, 4); }, reps);
    const double p = median_ms([&] { b = check_minors_of_order(m, 4, TnOptions{}); }, reps);
    row("TN scan j=4, n=14", s, p, b.verdict == (a.min_value >= -1e-9 * std::pow(m.max_abs(), 4)));
  }
}
