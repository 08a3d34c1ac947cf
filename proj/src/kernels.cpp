#include "lie/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lie/errors.hpp"

namespace lie {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_shape(const KernelParams& p) {
  if (p.n < 1 || p.s.size() != static_cast<std::size_t>(p.n + 1) ||
      p.t.size() != static_cast<std::size_t>(p.n) ||
      p.delta.size() != static_cast<std::size_t>(p.n + 1) ||
      p.eps.size() != static_cast<std::size_t>(p.n))
    throw DimensionMismatch("kernel parameter vectors do not match n");
}

// Determinant of the block rows r0..r0+k-1, columns c0..c0+k-1.  Extended
// precision keeps near-threshold minors accurate enough for the 1e-9
// equivariance residual bound.
double block_det(const RMat& g, std::size_t r0, std::size_t c0, std::size_t k) {
  std::vector<long double> a(k * k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) a[i * k + j] = g.at(r0 + i, c0 + j);
  long double det = 1.0L;
  for (std::size_t col = 0; col < k; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < k; ++r)
      if (std::abs(a[r * k + col]) > std::abs(a[piv * k + col])) piv = r;
    if (a[piv * k + col] == 0.0L) return 0.0;
    if (piv != col) {
      for (std::size_t j = 0; j < k; ++j) std::swap(a[piv * k + j], a[col * k + j]);
      det = -det;
    }
    det *= a[col * k + col];
    for (std::size_t r = col + 1; r < k; ++r) {
      long double f = a[r * k + col] / a[col * k + col];
      for (std::size_t j = col; j < k; ++j) a[r * k + j] -= f * a[col * k + j];
    }
  }
  return static_cast<double>(det);
}

bool is_diagonal(const RMat& m) {
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (i != j && m.at(i, j) != 0.0) return false;
  return true;
}

bool is_unitriangular(const RMat& m) {
  for (std::size_t i = 0; i < m.rows; ++i) {
    if (m.at(i, i) != 1.0) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (m.at(i, j) != 0.0) return false;
  }
  return true;
}

// rho of the upper-triangular nilradical of gl(size,R): ((size-1)/2, ..., -(size-1)/2).
double rho_gl(std::size_t size, std::size_t i) {
  return (static_cast<double>(size) - 1.0) / 2.0 - static_cast<double>(i);
}

// sin(pi*x) with exact zeros at integers and exact +-1 at half-integers, so
// equally spaced quadrature nodes hit the cardinal directions exactly and the
// sign-character cancellations in the K-integrals are exact.
double sin_pi(double x) {
  double r = std::fmod(x, 2.0);
  if (r < 0.0) r += 2.0;
  if (r == 0.0 || r == 1.0) return 0.0;
  if (r == 0.5) return 1.0;
  if (r == 1.5) return -1.0;
  if (r < 0.5) return std::sin(kPi * r);
  if (r < 1.0) return std::sin(kPi * (1.0 - r));
  if (r < 1.5) return -std::sin(kPi * (r - 1.0));
  return -std::sin(kPi * (2.0 - r));
}

double cos_pi(double x) { return sin_pi(x + 0.5); }

// Node j of the N-point grid on the given O(2) component: R(2*pi*j/N), times
// diag(1,-1) on the reflection component.
RMat otwo_node(int component, long j, long quad_points) {
  double frac = 2.0 * static_cast<double>(j) / static_cast<double>(quad_points);
  double c = cos_pi(frac), s = sin_pi(frac);
  RMat k(2, 2);
  k.at(0, 0) = c;
  k.at(0, 1) = -s;
  k.at(1, 0) = s;
  k.at(1, 1) = c;
  if (component == 1) {
    k.at(0, 1) = -k.at(0, 1);
    k.at(1, 1) = -k.at(1, 1);
  }
  return k;
}

void require_convergent(const KernelParams& p) {
  for (const Cx& v : p.s)
    if (v.real() < 0.0) throw NotConvergent("Re(s) must be nonnegative for the K-integral");
  for (const Cx& v : p.t)
    if (v.real() < 0.0) throw NotConvergent("Re(t) must be nonnegative for the K-integral");
}

void require_quadrature(const KernelParams& p, const OTwoFunction& f, double h,
                        long quad_points) {
  require_shape(p);
  if (p.n != 1) throw DimensionMismatch("quadrature operators are implemented for n = 1");
  std::size_t want = static_cast<std::size_t>(2 * f.max_mode + 1);
  if (f.max_mode < 0 || f.rot.size() != want || f.refl.size() != want)
    throw DimensionMismatch("test function needs 2*max_mode+1 coefficients per component");
  if (h == 0.0) throw PreconditionViolated("h must be invertible");
  if (quad_points < 2) throw PreconditionViolated("quadrature needs at least two points");
  require_convergent(p);
}

}  // namespace

RMat rmat_mul(const RMat& a, const RMat& b) {
  RMat out(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      double v = a.at(i, k);
      if (v == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) out.at(i, j) += v * b.at(k, j);
    }
  return out;
}

RMat antidiagonal_flip(std::size_t n) {
  RMat w(n, n);
  for (std::size_t i = 0; i < n; ++i) w.at(i, n - 1 - i) = 1.0;
  return w;
}

Cx signed_power(double x, const SignedPower& p) {
  if (x == 0.0) {
    if (p.s == Cx(0.0, 0.0)) return p.eps % 2 ? Cx(0.0) : Cx(1.0);
    if (p.s.real() > 0.0) return Cx(0.0);
    throw UndefinedOnStratum("vanishing base with non-positive exponent");
  }
  Cx mag = std::exp(p.s * std::log(std::abs(x)));
  return (p.eps % 2 && x < 0.0) ? -mag : mag;
}

KernelParams kernel_params(long n, const std::vector<int>& xi, const std::vector<Cx>& lambda,
                           const std::vector<int>& eta, const std::vector<Cx>& nu) {
  if (n < 1) throw DimensionMismatch("kernel parameters need n >= 1");
  std::size_t big = static_cast<std::size_t>(n + 1), small = static_cast<std::size_t>(n);
  if (xi.size() != big || lambda.size() != big || eta.size() != small || nu.size() != small)
    throw DimensionMismatch("parameter lengths do not match n");
  KernelParams p;
  p.n = n;
  p.s.resize(big);
  p.t.resize(small);
  p.delta.resize(big);
  p.eps.resize(small);
  for (long i = 1; i <= n; ++i) {
    p.s[i - 1] = lambda[i - 1] - nu[n - i] - 0.5;
    p.t[i - 1] = nu[n - i] - lambda[i] - 0.5;
    p.delta[i - 1] = ((xi[i - 1] - eta[n - i]) % 2 + 2) % 2;
    p.eps[i - 1] = ((eta[n - i] - xi[i]) % 2 + 2) % 2;
  }
  p.s[n] = lambda[n] + static_cast<double>(n) / 2.0;
  p.delta[n] = ((xi[n] % 2) + 2) % 2;
  return p;
}

std::vector<Cx> lambda_of(const KernelParams& p) {
  require_shape(p);
  std::vector<Cx> lambda(p.n + 1);
  lambda[p.n] = p.s[p.n] - static_cast<double>(p.n) / 2.0;
  for (long i = p.n - 1; i >= 0; --i) lambda[i] = p.s[i] + p.t[i] + 1.0 + lambda[i + 1];
  return lambda;
}

std::vector<Cx> nu_of(const KernelParams& p) {
  std::vector<Cx> lambda = lambda_of(p);
  std::vector<Cx> nu(p.n);
  for (long i = 1; i <= p.n; ++i) nu[p.n - i] = lambda[i - 1] - p.s[i - 1] - 0.5;
  return nu;
}

std::vector<int> xi_of(const KernelParams& p) {
  require_shape(p);
  std::vector<int> xi(p.n + 1);
  xi[p.n] = p.delta[p.n];
  for (long i = p.n - 1; i >= 0; --i) xi[i] = (p.delta[i] + p.eps[i] + xi[i + 1]) % 2;
  return xi;
}

std::vector<int> eta_of(const KernelParams& p) {
  std::vector<int> xi = xi_of(p);
  std::vector<int> eta(p.n);
  for (long i = 1; i <= p.n; ++i) eta[p.n - i] = ((xi[i - 1] - p.delta[i - 1]) % 2 + 2) % 2;
  return eta;
}

double phi_k(const RMat& g, long k) {
  if (k < 1 || static_cast<std::size_t>(k) > g.rows || static_cast<std::size_t>(k) > g.cols)
    throw DimensionMismatch("minor index out of range");
  return block_det(g, 0, 0, static_cast<std::size_t>(k));
}

double psi_q(const RMat& g, long q) {
  if (q < 1 || static_cast<std::size_t>(q) + 1 > g.rows || static_cast<std::size_t>(q) > g.cols)
    throw DimensionMismatch("minor index out of range");
  return block_det(g, 1, 0, static_cast<std::size_t>(q));
}

Cx kernel_eval(const KernelParams& p, const RMat& g) {
  require_shape(p);
  std::size_t size = static_cast<std::size_t>(p.n + 1);
  if (g.rows != size || g.cols != size)
    throw DimensionMismatch("matrix does not match the kernel rank");
  RMat x = rmat_mul(antidiagonal_flip(size), g);
  Cx out(1.0);
  for (long k = 1; k <= p.n + 1; ++k)
    out *= signed_power(phi_k(x, k), SignedPower{p.s[k - 1], p.delta[k - 1]});
  for (long q = 1; q <= p.n; ++q)
    out *= signed_power(psi_q(x, q), SignedPower{p.t[q - 1], p.eps[q - 1]});
  return out;
}

IwasawaFactors iwasawa(const RMat& g) {
  if (g.rows != g.cols || g.rows == 0) throw DimensionMismatch("square matrix required");
  std::size_t n = g.rows;
  double scale = 0.0;
  for (double v : g.data) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) throw SingularMatrix("zero matrix has no Iwasawa factorization");

  // Modified Gram-Schmidt on columns with a second orthogonalization pass.
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  RMat r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = g.at(i, j);
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += q[k][i] * v[i];
        r.at(k, j) += proj;
        for (std::size_t i = 0; i < n; ++i) v[i] -= proj * q[k][i];
      }
    double norm = 0.0;
    for (double c : v) norm += c * c;
    norm = std::sqrt(norm);
    if (norm <= 1e-12 * scale) throw SingularMatrix("matrix is numerically singular");
    r.at(j, j) = norm;
    for (std::size_t i = 0; i < n; ++i) q[j][i] = v[i] / norm;
  }

  IwasawaFactors out;
  out.k = RMat(n, n);
  out.a = RMat(n, n);
  out.n_mat = RMat::identity(n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) out.k.at(i, j) = q[j][i];
    out.a.at(j, j) = r.at(j, j);
    for (std::size_t c = j + 1; c < n; ++c) out.n_mat.at(j, c) = r.at(j, c) / r.at(j, j);
  }
  return out;
}

double equivariance_residual(const KernelParams& p, const RMat& g, const RMat& m, const RMat& a,
                             const RMat& n_right, const RMat& m_left, const RMat& a_left,
                             const RMat& n_left) {
  require_shape(p);
  std::size_t size = static_cast<std::size_t>(p.n + 1);
  for (const RMat* mat : {&g, &m, &a, &n_right, &m_left, &a_left, &n_left})
    if (mat->rows != size || mat->cols != size)
      throw DimensionMismatch("group factors must match the kernel rank");
  if (!is_diagonal(m) || !is_diagonal(a) || !is_diagonal(m_left) || !is_diagonal(a_left))
    throw PreconditionViolated("m and a factors must be diagonal");
  if (!is_unitriangular(n_right) || !is_unitriangular(n_left))
    throw PreconditionViolated("n factors must be upper unitriangular");
  for (std::size_t i = 0; i < size; ++i) {
    if (std::abs(m.at(i, i)) != 1.0 || std::abs(m_left.at(i, i)) != 1.0)
      throw PreconditionViolated("m factors must have diagonal entries +-1");
    if (a.at(i, i) <= 0.0 || a_left.at(i, i) <= 0.0)
      throw PreconditionViolated("a factors must be positive");
  }
  if (m_left.at(size - 1, size - 1) != 1.0 || a_left.at(size - 1, size - 1) != 1.0)
    throw PreconditionViolated("left factors must lie in the embedded GL(n) block");
  for (std::size_t i = 0; i + 1 < size; ++i)
    if (n_left.at(i, size - 1) != 0.0)
      throw PreconditionViolated("left factors must lie in the embedded GL(n) block");

  Cx base = kernel_eval(p, g);
  if (base == Cx(0.0)) throw UndefinedOnStratum("g is not in the open cell");

  RMat left = rmat_mul(rmat_mul(m_left, a_left), n_left);
  RMat right = rmat_mul(rmat_mul(m, a), n_right);
  Cx lhs = kernel_eval(p, rmat_mul(left, rmat_mul(g, right)));

  std::vector<Cx> lambda = lambda_of(p), nu = nu_of(p);
  std::vector<int> xi = xi_of(p), eta = eta_of(p);
  Cx factor(1.0);
  for (std::size_t i = 0; i < size; ++i) {
    if (m.at(i, i) < 0.0 && xi[i] % 2) factor = -factor;
    factor *= std::exp((lambda[i] - rho_gl(size, i)) * std::log(a.at(i, i)));
  }
  for (std::size_t i = 0; i + 1 < size; ++i) {
    if (m_left.at(i, i) < 0.0 && eta[i] % 2) factor = -factor;
    factor *= std::exp((nu[i] + rho_gl(size - 1, i)) * std::log(a_left.at(i, i)));
  }
  return std::abs(lhs - factor * base) / std::abs(base);
}

Cx OTwoFunction::eval(int component, double theta) const {
  const std::vector<Cx>& modes = component == 0 ? rot : refl;
  Cx out(0.0);
  for (long j = -max_mode; j <= max_mode; ++j) {
    const Cx& c = modes[static_cast<std::size_t>(j + max_mode)];
    if (c != Cx(0.0))
      out += c * std::exp(Cx(0.0, static_cast<double>(j) * theta));
  }
  return out;
}

Cx apply_operator_n1(const KernelParams& p, const OTwoFunction& f, double h, long quad_points) {
  require_quadrature(p, f, h, quad_points);
  RMat hinv = RMat::identity(2);
  hinv.at(0, 0) = 1.0 / h;
  Cx sum(0.0);
  for (int comp = 0; comp < 2; ++comp)
    for (long j = 0; j < quad_points; ++j) {
      double theta = 2.0 * kPi * static_cast<double>(j) / static_cast<double>(quad_points);
      RMat k = otwo_node(comp, j, quad_points);
      sum += kernel_eval(p, rmat_mul(hinv, k)) * f.eval(comp, theta);
    }
  return sum / Cx(2.0 * static_cast<double>(quad_points));
}

Cx apply_pi_then_operator_n1(const KernelParams& p, const OTwoFunction& f, double h,
                             long quad_points) {
  require_quadrature(p, f, h, quad_points);
  std::vector<Cx> lambda = lambda_of(p);
  RMat hinv = RMat::identity(2);
  hinv.at(0, 0) = 1.0 / h;
  Cx sum(0.0);
  for (int comp = 0; comp < 2; ++comp)
    for (long j = 0; j < quad_points; ++j) {
      RMat k = otwo_node(comp, j, quad_points);
      IwasawaFactors iw = iwasawa(rmat_mul(hinv, k));
      Cx cocycle = std::exp(-(lambda[0] + 0.5) * std::log(iw.a.at(0, 0)) -
                            (lambda[1] - 0.5) * std::log(iw.a.at(1, 1)));
      double det = iw.k.at(0, 0) * iw.k.at(1, 1) - iw.k.at(0, 1) * iw.k.at(1, 0);
      int kcomp = det < 0.0 ? 1 : 0;
      double ktheta = std::atan2(iw.k.at(1, 0), iw.k.at(0, 0));
      sum += kernel_eval(p, k) * cocycle * f.eval(kcomp, ktheta);
    }
  return sum / Cx(2.0 * static_cast<double>(quad_points));
}

}  // namespace lie
