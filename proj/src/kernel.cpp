#include "wedge/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wedge/error.hpp"
#include "wedge/random.hpp"

namespace wedge {

namespace {

void check_unit_interval(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ValidationError("kernel argument " + std::to_string(x) + " outside [0, 1]");
}

std::vector<double> midpoint_nodes(std::size_t n) {
  std::vector<double> t(n);
  for (std::size_t i = 0; i < n; ++i) t[i] = (double(i) + 0.5) / double(n);
  return t;
}

// Widths of the cells bounded by 0, the midpoints between nodes, and 1.
std::vector<double> cell_weights(const std::vector<double>& t) {
  const std::size_t n = t.size();
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = i == 0 ? 0.0 : 0.5 * (t[i - 1] + t[i]);
    const double hi = i + 1 == n ? 1.0 : 0.5 * (t[i] + t[i + 1]);
    w[i] = hi - lo;
  }
  return w;
}

}  // namespace

const std::vector<std::string>& KernelSpec::builtin_names() {
  static const std::vector<std::string> names{"green_string", "gaussian", "cauchy", "cosine", "constant"};
  return names;
}

KernelSpec KernelSpec::builtin(const std::string& name, std::optional<double> parameter) {
  KernelSpec k;
  k.name_ = name;
  if (name == "green_string") {
    k.fn_ = [](double t, double s) { return std::min(t, s) - t * s; };
  } else if (name == "gaussian") {
    const double sigma = parameter.value_or(1.0);
    if (!(sigma > 0.0)) throw ValidationError("gaussian kernel needs sigma > 0");
    k.parameter_ = sigma;
    k.fn_ = [sigma](double t, double s) { return std::exp(-(t - s) * (t - s) / (sigma * sigma)); };
  } else if (name == "cauchy") {
    k.fn_ = [](double t, double s) { return 1.0 / (t + s + 2.0 * kCauchyShift); };
  } else if (name == "cosine") {
    const double omega = parameter.value_or(1.0);
    k.parameter_ = omega;
    k.fn_ = [omega](double t, double s) { return std::cos(omega * std::numbers::pi * (t - s)); };
  } else if (name == "constant") {
    k.fn_ = [](double, double) { return 1.0; };
  } else {
    throw ValidationError("unknown builtin kernel '" + name + "'");
  }
  return k;
}

KernelSpec KernelSpec::tabulated(const DenseMatrix& values, std::optional<std::vector<double>> nodes) {
  KernelSpec k;
  k.name_ = "tabulated";
  const std::size_t n = values.size();
  if (nodes) {
    if (nodes->size() != n)
      throw ValidationError("tabulated kernel: " + std::to_string(nodes->size()) + " nodes for a " + std::to_string(n) +
                            "x" + std::to_string(n) + " table");
    for (std::size_t i = 0; i < n; ++i) {
      if (!std::isfinite((*nodes)[i]) || (*nodes)[i] < 0.0 || (*nodes)[i] > 1.0)
        throw ValidationError("tabulated kernel: node outside [0, 1]");
      if (i > 0 && (*nodes)[i] <= (*nodes)[i - 1]) throw ValidationError("tabulated kernel: nodes must be strictly increasing");
    }
    k.nodes_ = std::move(*nodes);
  } else {
    k.nodes_ = midpoint_nodes(n);
  }
  k.table_ = values;
  return k;
}

KernelSpec KernelSpec::custom(std::string name, Function f) {
  KernelSpec k;
  k.name_ = std::move(name);
  k.fn_ = std::move(f);
  return k;
}

double KernelSpec::operator()(double t, double s) const {
  if (table_) {
    auto find = [&](double x) {
      auto it = std::lower_bound(nodes_.begin(), nodes_.end(), x);
      if (it == nodes_.end() || *it != x)
        throw ValidationError("tabulated kernel: " + std::to_string(x) + " is not a node of the table");
      return std::size_t(it - nodes_.begin());
    };
    return (*table_)(find(t), find(s));
  }
  check_unit_interval(t);
  check_unit_interval(s);
  return fn_(t, s);
}

KernelGrid discretize(const KernelSpec& spec, std::size_t n, QuadratureRule rule) {
  if (n < 2) throw ValidationError("discretize: grid size must be at least 2");
  KernelGrid g;
  if (spec.is_tabulated()) {
    if (spec.nodes().size() != n)
      throw ValidationError("discretize: tabulated kernel has " + std::to_string(spec.nodes().size()) +
                            " nodes, grid size " + std::to_string(n) + " requested");
    g.nodes = spec.nodes();
    g.weights = cell_weights(g.nodes);
    g.values = *spec.table();
  } else {
    if (rule == QuadratureRule::midpoint) {
      g.nodes = midpoint_nodes(n);
      g.weights.assign(n, 1.0 / double(n));
    } else {
      g.nodes.resize(n);
      g.weights.resize(n);
      const double h = 1.0 / double(n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        g.nodes[i] = i + 1 == n ? 1.0 : double(i) * h;
        g.weights[i] = (i == 0 || i + 1 == n) ? 0.5 * h : h;
      }
    }
    g.values = DenseMatrix(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) g.values(i, j) = spec(g.nodes[i], g.nodes[j]);
  }
  std::vector<double> root(n);
  for (std::size_t i = 0; i < n; ++i) root[i] = std::sqrt(g.weights[i]);
  g.discretized = DenseMatrix(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g.discretized(i, j) = (root[i] * root[j]) * g.values(i, j);
  return g;
}

double second_associated(const KernelSpec& spec, double t1, double t2, double s1, double s2) {
  return spec(t1, s1) * spec(t2, s2) - spec(t1, s2) * spec(t2, s1);
}

TNCertificate kernel_tn_check(const KernelSpec& spec, std::size_t sample_nodes, std::size_t order, std::size_t trials,
                              std::uint64_t seed, double tol) {
  if (order < 1) throw ValidationError("kernel_tn_check: order must be at least 1");
  std::vector<double> t = spec.is_tabulated() ? spec.nodes() : midpoint_nodes(sample_nodes);
  const std::size_t n = t.size();
  if (n < order) throw ValidationError("kernel_tn_check: fewer sample nodes than the order");

  DenseMatrix k(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) k(i, j) = spec(t[i], t[j]);
  const double threshold = -tol * std::pow(k.max_abs(), double(order));

  std::vector<double> values(trials);
  std::vector<IndexSet> rows(trials), cols(trials);
  const auto count = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t trial = 0; trial < count; ++trial) {
    Rng rng(derive_seed(seed, std::uint64_t(trial)));
    auto draw = [&] {
      std::vector<std::size_t> pool(n);
      for (std::size_t i = 0; i < n; ++i) pool[i] = i;
      for (std::size_t i = 0; i < order; ++i) std::swap(pool[i], pool[i + rng.below(n - i)]);
      pool.resize(order);
      std::sort(pool.begin(), pool.end());
      return IndexSet(std::move(pool));
    };
    rows[trial] = draw();
    cols[trial] = draw();
    values[trial] = minor(k, rows[trial], cols[trial]);
  }

  TNCertificate cert;
  cert.order_checked = order;
  cert.mode = CheckMode::sampled;
  cert.tol = tol;
  cert.minors_evaluated = trials;
  std::size_t worst = trials;
  for (std::size_t i = 0; i < trials; ++i)
    if (values[i] < threshold && (worst == trials || values[i] < values[worst])) worst = i;
  if (worst < trials) {
    cert.verdict = false;
    cert.witness = MinorWitness{rows[worst], cols[worst], values[worst]};
  }
  return cert;
}

DenseMatrix exterior_grid(const KernelGrid& g, const SizeCap& cap) {
  if (g.discretized.size() < 2) throw ValidationError("exterior_grid: grid needs at least 2 nodes");
  return exterior_square(g.discretized, cap);
}

}  // namespace wedge
