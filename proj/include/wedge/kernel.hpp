#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wedge/compound.hpp"
#include "wedge/matrix.hpp"
#include "wedge/positivity.hpp"

namespace wedge {

enum class QuadratureRule { midpoint, trapezoid };

/// An integral kernel k(t, s) on the unit square: either a named closed form
/// or values tabulated on a fixed node set.
class KernelSpec {
 public:
  using Function = std::function<double(double, double)>;

  /// green_string: min(t,s) - ts. gaussian: exp(-(t-s)^2 / sigma^2), parameter
  /// sigma (default 1). cauchy: 1 / (t + s + 2 eps) with eps = 1e-3, i.e. 1/(t+s)
  /// on (eps, 1+eps). cosine: cos(omega pi (t - s)), parameter omega (default 1).
  /// constant: 1. Throws ValidationError for other names.
  static KernelSpec builtin(const std::string& name, std::optional<double> parameter = std::nullopt);

  /// Values on nodes; if nodes are omitted they are the N uniform midpoints
  /// (i + 1/2) / N.
  static KernelSpec tabulated(const DenseMatrix& values, std::optional<std::vector<double>> nodes = std::nullopt);

  /// Arbitrary closed-form kernel on [0, 1]^2.
  static KernelSpec custom(std::string name, Function f);

  static constexpr double kCauchyShift = 1e-3;
  static const std::vector<std::string>& builtin_names();

  const std::string& name() const noexcept { return name_; }
  bool is_tabulated() const noexcept { return table_.has_value(); }
  std::optional<double> parameter() const noexcept { return parameter_; }

  /// Evaluates k(t, s). Closed forms accept [0, 1]; tabulated kernels only
  /// their own nodes. Throws ValidationError outside the domain.
  double operator()(double t, double s) const;

  /// Tabulated nodes (empty for closed forms).
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::optional<DenseMatrix>& table() const noexcept { return table_; }

 private:
  std::string name_;
  std::optional<double> parameter_;
  Function fn_;
  std::optional<DenseMatrix> table_;
  std::vector<double> nodes_;
};

/// Nystrom discretization of the kernel operator on (0, 1).
struct KernelGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  /// k(t_i, t_j).
  DenseMatrix values;
  /// sqrt(w_i) k(t_i, t_j) sqrt(w_j); similar to the one-sided Nystrom matrix
  /// k(t_i, t_j) w_j through diag(sqrt(w)).
  DenseMatrix discretized;
};

/// Closed-form kernels are sampled at n nodes of the chosen rule. Tabulated
/// kernels use their own nodes (n must equal their size) with weights equal to
/// the node cells [midpoint to midpoint] on [0, 1]; the rule is ignored for them.
KernelGrid discretize(const KernelSpec& spec, std::size_t n, QuadratureRule rule = QuadratureRule::midpoint);

/// The second associated kernel det [[k(t1,s1), k(t1,s2)], [k(t2,s1), k(t2,s2)]].
double second_associated(const KernelSpec& spec, double t1, double t2, double s1, double s2);

/// Draws `trials` increasing node tuples (rows and columns independently) of
/// length `order` from a grid of `sample_nodes` midpoints and checks the sign of
/// each compound determinant. Trial i uses the stream derive_seed(seed, i), so
/// the outcome does not depend on scheduling. Always CheckMode::sampled; the
/// witness is the most negative determinant (lowest trial index on ties).
TNCertificate kernel_tn_check(const KernelSpec& spec, std::size_t sample_nodes, std::size_t order, std::size_t trials,
                              std::uint64_t seed, double tol = 1e-9);

/// Exterior square of the discretized operator, i.e. the Nystrom matrix of the
/// second associated kernel on the pairs t_i < t_j.
DenseMatrix exterior_grid(const KernelGrid& g, const SizeCap& cap = {});

}  // namespace wedge
