#include "wedge/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "wedge/error.hpp"

namespace wedge {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double canonical_arg(const Complex& z) noexcept {
  const double a = std::arg(z);
  return a <= -std::numbers::pi ? std::numbers::pi : a;
}

void validate_tol(double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw ValidationError("tolerance must be positive and finite");
}

// Row-major working copy with bounds-free indexing.
struct Work {
  std::size_t n;
  std::vector<double> a;
  double& operator()(std::size_t i, std::size_t j) { return a[i * n + j]; }
};

// Diagonal similarity by powers of two so that row and column norms are comparable.
void balance(Work& w) {
  constexpr double radix = 2.0;
  constexpr double sqrdx = radix * radix;
  const std::size_t n = w.n;
  bool done = false;
  while (!done) {
    done = true;
    for (std::size_t i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) {
          c += std::abs(w(j, i));
          r += std::abs(w(i, j));
        }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= sqrdx;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= sqrdx;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        g = 1.0 / f;
        for (std::size_t j = 0; j < n; ++j) w(i, j) *= g;
        for (std::size_t j = 0; j < n; ++j) w(j, i) *= f;
      }
    }
  }
}

// Householder reduction to upper Hessenberg form (similarity, orthogonal).
void hessenberg(Work& w) {
  const std::size_t n = w.n;
  if (n < 3) return;
  std::vector<double> v(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double alpha = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) alpha += w(i, k) * w(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (w(k + 1, k) > 0) alpha = -alpha;
    std::fill(v.begin(), v.end(), 0.0);
    v[k + 1] = w(k + 1, k) - alpha;
    for (std::size_t i = k + 2; i < n; ++i) v[i] = w(i, k);
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    const double beta = 2.0 / vnorm2;
    // A <- H A
    for (std::size_t j = k; j < n; ++j) {
      double s = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) s += v[i] * w(i, j);
      s *= beta;
      for (std::size_t i = k + 1; i < n; ++i) w(i, j) -= s * v[i];
    }
    // A <- A H
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) s += w(i, j) * v[j];
      s *= beta;
      for (std::size_t j = k + 1; j < n; ++j) w(i, j) -= s * v[j];
    }
    w(k + 1, k) = alpha;
    for (std::size_t i = k + 2; i < n; ++i) w(i, k) = 0.0;
  }
}

std::string diagnostics(const DenseMatrix& m) {
  double min_nz = std::numeric_limits<double>::infinity();
  for (double v : m.entries())
    if (v != 0.0) min_nz = std::min(min_nz, std::abs(v));
  std::ostringstream os;
  os << "n=" << m.size() << ", ||A||_F=" << m.norm() << ", max|a_ij|=" << m.max_abs()
     << ", min nonzero |a_ij|=" << (std::isfinite(min_nz) ? min_nz : 0.0);
  return os.str();
}

// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
std::vector<Complex> hessenberg_qr(Work& w, const DenseMatrix& original) {
  const int n = static_cast<int>(w.n);
  std::vector<Complex> wri(w.n);
  auto a = [&](int i, int j) -> double& { return w(static_cast<std::size_t>(i), static_cast<std::size_t>(j)); };

  double anorm = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = std::max(i - 1, 0); j < n; ++j) anorm += std::abs(a(i, j));

  const std::size_t sweep_cap = 100 * w.n;
  std::size_t sweeps = 0;
  int nn = n - 1;
  double t = 0.0;
  while (nn >= 0) {
    int its = 0;
    int l = 0;
    do {
      for (l = nn; l > 0; --l) {
        double s = std::abs(a(l - 1, l - 1)) + std::abs(a(l, l));
        if (s == 0.0) s = anorm;
        if (std::abs(a(l, l - 1)) <= kEps * s) {
          a(l, l - 1) = 0.0;
          break;
        }
      }
      double x = a(nn, nn);
      if (l == nn) {
        wri[nn--] = Complex(x + t, 0.0);
      } else {
        double y = a(nn - 1, nn - 1);
        double w2 = a(nn, nn - 1) * a(nn - 1, nn);
        if (l == nn - 1) {
          const double p = 0.5 * (y - x);
          const double q = p * p + w2;
          double z = std::sqrt(std::abs(q));
          x += t;
          if (q >= 0.0) {
            z = p + std::copysign(z, p);
            wri[nn - 1] = wri[nn] = Complex(x + z, 0.0);
            if (z != 0.0) wri[nn] = Complex(x - w2 / z, 0.0);
          } else {
            wri[nn - 1] = Complex(x + p, z);
            wri[nn] = Complex(x + p, -z);
          }
          nn -= 2;
        } else {
          if (its == 60 || ++sweeps > sweep_cap) {
            throw NumericalError("QR iteration did not converge (" + std::to_string(nn + 1) +
                                 " eigenvalues unresolved after " + std::to_string(sweeps) +
                                 " sweeps); " + diagnostics(original));
          }
          if (its > 0 && its % 10 == 0) {
            // Exceptional shift.
            t += x;
            for (int i = 0; i <= nn; ++i) a(i, i) -= x;
            const double s = std::abs(a(nn, nn - 1)) + std::abs(a(nn - 1, nn - 2));
            y = x = 0.75 * s;
            w2 = -0.4375 * s * s;
          }
          ++its;
          int m = nn - 2;
          double p = 0, q = 0, r = 0, z = 0;
          for (; m >= l; --m) {
            z = a(m, m);
            r = x - z;
            double s = y - z;
            p = (r * s - w2) / a(m + 1, m) + a(m, m + 1);
            q = a(m + 1, m + 1) - z - r - s;
            r = a(m + 2, m + 1);
            s = std::abs(p) + std::abs(q) + std::abs(r);
            p /= s;
            q /= s;
            r /= s;
            if (m == l) break;
            const double u = std::abs(a(m, m - 1)) * (std::abs(q) + std::abs(r));
            const double v = std::abs(p) * (std::abs(a(m - 1, m - 1)) + std::abs(z) + std::abs(a(m + 1, m + 1)));
            if (u <= kEps * v) break;
          }
          for (int i = m; i < nn - 1; ++i) {
            a(i + 2, i) = 0.0;
            if (i != m) a(i + 2, i - 1) = 0.0;
          }
          for (int k = m; k < nn; ++k) {
            if (k != m) {
              p = a(k, k - 1);
              q = a(k + 1, k - 1);
              r = 0.0;
              if (k + 1 != nn) r = a(k + 2, k - 1);
              x = std::abs(p) + std::abs(q) + std::abs(r);
              if (x != 0.0) {
                p /= x;
                q /= x;
                r /= x;
              }
            }
            const double s = std::copysign(std::sqrt(p * p + q * q + r * r), p);
            if (s == 0.0) continue;
            if (k == m) {
              if (l != m) a(k, k - 1) = -a(k, k - 1);
            } else {
              a(k, k - 1) = -s * x;
            }
            p += s;
            x = p / s;
            y = q / s;
            z = r / s;
            q /= p;
            r /= p;
            for (int j = k; j <= nn; ++j) {
              p = a(k, j) + q * a(k + 1, j);
              if (k + 1 != nn) {
                p += r * a(k + 2, j);
                a(k + 2, j) -= p * z;
              }
              a(k + 1, j) -= p * y;
              a(k, j) -= p * x;
            }
            const int mmin = nn < k + 3 ? nn : k + 3;
            for (int i = l; i <= mmin; ++i) {
              p = x * a(i, k) + y * a(i, k + 1);
              if (k + 1 != nn) {
                p += z * a(i, k + 2);
                a(i, k + 2) -= p * r;
              }
              a(i, k + 1) -= p * q;
              a(i, k) -= p;
            }
          }
        }
      }
    } while (l + 1 < nn);
  }
  return wri;
}

// Solves (A - mu I) x = b in place by LU with partial pivoting; tiny pivots are
// replaced by eps * scale so that inverse iteration never divides by zero.
template <class T>
class ShiftedLU {
 public:
  ShiftedLU(const DenseMatrix& m, T mu) : n_(m.size()), lu_(n_ * n_), piv_(n_) {
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) lu_[i * n_ + j] = T(m(i, j)) - (i == j ? mu : T(0));
    const double floor = kEps * std::max(m.norm(), 1e-300);
    for (std::size_t k = 0; k < n_; ++k) {
      std::size_t p = k;
      for (std::size_t i = k + 1; i < n_; ++i)
        if (std::abs(lu_[i * n_ + k]) > std::abs(lu_[p * n_ + k])) p = i;
      piv_[k] = p;
      if (p != k)
        for (std::size_t j = 0; j < n_; ++j) std::swap(lu_[k * n_ + j], lu_[p * n_ + j]);
      if (std::abs(lu_[k * n_ + k]) < floor) lu_[k * n_ + k] = T(floor);
      const T pivot = lu_[k * n_ + k];
      for (std::size_t i = k + 1; i < n_; ++i) {
        const T f = lu_[i * n_ + k] / pivot;
        lu_[i * n_ + k] = f;
        if (f == T(0)) continue;
        for (std::size_t j = k + 1; j < n_; ++j) lu_[i * n_ + j] -= f * lu_[k * n_ + j];
      }
    }
  }

  void solve(std::vector<T>& b) const {
    for (std::size_t k = 0; k < n_; ++k) {
      std::swap(b[k], b[piv_[k]]);
      for (std::size_t i = k + 1; i < n_; ++i) b[i] -= lu_[i * n_ + k] * b[k];
    }
    for (std::size_t k = n_; k-- > 0;) {
      T s = b[k];
      for (std::size_t j = k + 1; j < n_; ++j) s -= lu_[k * n_ + j] * b[j];
      b[k] = s / lu_[k * n_ + k];
    }
  }

 private:
  std::size_t n_;
  std::vector<T> lu_;
  std::vector<std::size_t> piv_;
};

template <class T>
double vec_norm(const std::vector<T>& v) {
  double s = 0.0;
  for (const T& x : v) s += std::norm(x);
  return std::sqrt(s);
}

// Deterministic start vector without symmetry, so it is not orthogonal to
// eigenvectors of symmetric or persymmetric matrices.
template <class T>
std::vector<T> start_vector(std::size_t n) {
  std::vector<T> v(n);
  for (std::size_t k = 0; k < n; ++k) v[k] = T(1.0 + std::fmod(0.6180339887498949 * double(k + 1), 1.0));
  return v;
}

template <class T>
std::vector<T> inverse_iteration(const DenseMatrix& m, T lambda) {
  const std::size_t n = m.size();
  const double scale = std::max(m.norm(), 1e-300);
  // Perturb the shift slightly so the factorization is not exactly singular.
  const T mu = lambda + T(64.0 * kEps * scale);
  const ShiftedLU<T> lu(m, mu);
  std::vector<T> v = start_vector<T>(n);
  double nv = vec_norm(v);
  for (auto& x : v) x /= nv;
  std::vector<T> av(n);
  for (int it = 0; it < 8; ++it) {
    lu.solve(v);
    nv = vec_norm(v);
    if (nv == 0.0 || !std::isfinite(nv)) break;
    for (auto& x : v) x /= nv;
    // residual check
    double r = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      T s = T(0);
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
      r += std::norm(s - lambda * v[i]);
    }
    if (std::sqrt(r) <= 1e3 * kEps * scale && it >= 1) break;
  }
  return v;
}

}  // namespace

bool spectrum_order(const Complex& a, const Complex& b) noexcept {
  const double ma = std::abs(a), mb = std::abs(b);
  if (ma != mb) return ma > mb;
  return canonical_arg(a) < canonical_arg(b);
}

ComplexSpectrum::ComplexSpectrum(std::vector<Complex> values) : values_(std::move(values)) {
  for (auto& z : values_) {
    if (z.imag() == 0.0) z = Complex(z.real(), 0.0);
    if (z.real() == 0.0) z = Complex(0.0, z.imag());
  }
  std::sort(values_.begin(), values_.end(), spectrum_order);
}

ComplexSpectrum eigenvalues(const DenseMatrix& m, double tol) {
  validate_tol(tol);
  if (m.empty()) throw ValidationError("eigenvalues: empty matrix");
  for (double v : m.entries())
    if (!std::isfinite(v)) throw ValidationError("eigenvalues: non-finite entry");
  Work w{m.size(), std::vector<double>(m.entries().begin(), m.entries().end())};
  if (w.n == 1) return ComplexSpectrum({Complex(w.a[0], 0.0)});
  balance(w);
  hessenberg(w);
  return ComplexSpectrum(hessenberg_qr(w, m));
}

double spectral_radius(const ComplexSpectrum& s) {
  if (s.empty()) throw ValidationError("spectral_radius: empty spectrum");
  return std::abs(s[0]);
}

std::vector<Complex> eigenvector(const DenseMatrix& m, Complex lambda) {
  auto v = inverse_iteration<Complex>(m, lambda);
  // Fix the phase: largest-modulus component real and positive.
  std::size_t k = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[k]) * (1.0 + 1e-12)) k = i;
  if (std::abs(v[k]) > 0.0) {
    const Complex phase = std::abs(v[k]) / v[k];
    for (auto& x : v) x *= phase;
  }
  return v;
}

Vector real_eigenvector(const DenseMatrix& m, double lambda) {
  auto v = inverse_iteration<double>(m, lambda);
  std::size_t k = 0;
  for (std::size_t i = 1; i < v.size(); ++i)
    if (std::abs(v[i]) > std::abs(v[k]) * (1.0 + 1e-12)) k = i;
  if (v[k] < 0.0)
    for (auto& x : v) x = -x;
  return v;
}

double eigen_residual(const DenseMatrix& m, Complex lambda, const std::vector<Complex>& v) {
  if (v.size() != m.size()) throw ValidationError("eigen_residual: dimension mismatch");
  const std::size_t n = m.size();
  double r = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    Complex s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += m(i, j) * v[j];
    r += std::norm(s - lambda * v[i]);
  }
  const double scale = m.norm() > 0.0 ? m.norm() : 1.0;
  return std::sqrt(r) / scale;
}

double eigen_residual(const DenseMatrix& m, double lambda, const Vector& v) {
  std::vector<Complex> c(v.begin(), v.end());
  return eigen_residual(m, Complex(lambda, 0.0), c);
}

namespace {

// Null-space basis of b via reduced row echelon form with column scanning.
// Returns one vector per free column, in column order.
std::vector<Vector> null_space(DenseMatrix b, double thresh) {
  const std::size_t n = b.size();
  std::vector<std::size_t> pivot_cols;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < n; ++col) {
    std::size_t p = row;
    for (std::size_t i = row + 1; i < n; ++i)
      if (std::abs(b(i, col)) > std::abs(b(p, col))) p = i;
    if (std::abs(b(p, col)) <= thresh) continue;
    for (std::size_t j = 0; j < n; ++j) std::swap(b(row, j), b(p, j));
    const double piv = b(row, col);
    for (std::size_t j = 0; j < n; ++j) b(row, j) /= piv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == row) continue;
      const double f = b(i, col);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) b(i, j) -= f * b(row, j);
    }
    pivot_cols.push_back(col);
    ++row;
  }
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivot_cols) is_pivot[c] = true;
  std::vector<Vector> basis;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    Vector v(n, 0.0);
    v[f] = 1.0;
    for (std::size_t r = 0; r < pivot_cols.size(); ++r) v[pivot_cols[r]] = -b(r, f);
    const double nv = norm2(v);
    for (double& x : v) x /= nv;
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace

PerronPair perron_pair(const DenseMatrix& m, double tol, std::size_t max_iter) {
  validate_tol(tol);
  if (m.empty()) throw ValidationError("perron_pair: empty matrix");
  const std::size_t n = m.size();
  const double amax = m.max_abs();
  if (m.min_entry() < -tol * amax)
    throw ValidationError("perron_pair: matrix has negative entries (min " + std::to_string(m.min_entry()) + ")");
  const double anorm = m.norm();
  if (anorm == 0.0) throw DegeneratePerronError("perron_pair: zero matrix has Perron root 0");

  PerronPair out;
  Vector x(n, 1.0 / std::sqrt(double(n)));
  bool converged = false;
  double lambda = 0.0;
  for (std::size_t it = 1; it <= max_iter; ++it) {
    Vector y = m * x;
    const double ny = norm2(y);
    out.iterations = it;
    if (ny <= tol * anorm * 1e-3) break;
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= ny;
      diff = std::max(diff, std::abs(y[i] - x[i]));
    }
    x = std::move(y);
    lambda = ny;
    if (diff <= tol) {
      converged = true;
      break;
    }
  }

  const ComplexSpectrum spec = eigenvalues(m, tol);
  const double rho = spectral_radius(spec);
  if (rho <= tol * anorm) throw DegeneratePerronError("perron_pair: spectral radius is zero (nilpotent matrix)");

  std::size_t multiplicity = 0;
  for (const auto& z : spec)
    if (std::abs(z - Complex(rho, 0.0)) <= 1e-6 * rho) ++multiplicity;

  if (converged && multiplicity <= 1 && std::abs(lambda - rho) <= 1e-6 * rho) {
    // Polish: rho from the QR solve, vector by inverse iteration at rho.
    Vector refined = real_eigenvector(m, rho);
    if (*std::min_element(refined.begin(), refined.end()) >= -tol) x = std::move(refined);
    for (double& v : x)
      if (v < 0.0) v = 0.0;
    out.lambda = rho;
    out.vector = std::move(x);
    return out;
  }

  out.used_fallback = true;
  out.lambda = rho;
  DenseMatrix b = m;
  for (std::size_t i = 0; i < n; ++i) b(i, i) -= rho;
  for (Vector v : null_space(b, 1e-8 * anorm)) {
    if (*std::max_element(v.begin(), v.end()) <= 0.0)
      for (double& e : v) e = -e;
    if (*std::min_element(v.begin(), v.end()) >= -tol) {
      for (double& e : v)
        if (e < 0.0) e = 0.0;
      out.vector = std::move(v);
      return out;
    }
  }
  // Semisimple rho with a mixed-sign echelon basis: averaged power iterates of
  // the shifted matrix still converge to a nonnegative eigenvector.
  DenseMatrix shifted = m;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) += rho;
  Vector v(n, 1.0 / std::sqrt(double(n)));
  for (std::size_t it = 0; it < max_iter; ++it) {
    Vector y = shifted * v;
    const double ny = norm2(y);
    double diff = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= ny;
      diff = std::max(diff, std::abs(y[i] - v[i]));
    }
    v = std::move(y);
    if (diff <= tol) break;
  }
  out.vector = std::move(v);
  return out;
}

MatchReport multiset_match(const ComplexSpectrum& a, const ComplexSpectrum& b, double tol) {
  validate_tol(tol);
  MatchReport rep;
  rep.tol = tol;
  double maxmod = 0.0;
  for (const auto& z : a) maxmod = std::max(maxmod, std::abs(z));
  for (const auto& z : b) maxmod = std::max(maxmod, std::abs(z));
  rep.scale = std::max(1.0, maxmod);

  std::vector<bool> used(b.size(), false);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::size_t best = b.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(a[i] - b[j]);
      if (d < best_d) {
        best_d = d;
        best = j;
      }
    }
    const double rel = best_d / rep.scale;
    if (best < b.size() && rel <= tol) {
      used[best] = true;
      rep.pairs.push_back({i, best, rel});
      rep.max_residual = std::max(rep.max_residual, rel);
    } else {
      rep.leftover_a.push_back(a[i]);
    }
  }
  for (std::size_t j = 0; j < b.size(); ++j)
    if (!used[j]) rep.leftover_b.push_back(b[j]);
  rep.matched = rep.leftover_a.empty() && rep.leftover_b.empty();
  return rep;
}

}  // namespace wedge
