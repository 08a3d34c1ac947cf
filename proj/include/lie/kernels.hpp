#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace lie {

using Cx = std::complex<double>;

// Dense row-major real matrix for the floating-point kernel computations.
struct RMat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  RMat() = default;
  RMat(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  static RMat identity(std::size_t n) {
    RMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
  }
};

RMat rmat_mul(const RMat& a, const RMat& b);
// Antidiagonal permutation matrix, the representative of the longest
// restricted Weyl element of GL(n,R).
RMat antidiagonal_flip(std::size_t n);

// x^{s,eps} = sgn(x)^eps |x|^s.  The complex power uses the real logarithm of
// |x| only; the sign lives in the Z/2 character.  At x = 0: exponent exactly
// zero evaluates the bounded limit (1, or sgn(0)^eps = 0 when eps = 1);
// Re(s) > 0 gives the limit 0; otherwise UndefinedOnStratum.
struct SignedPower {
  Cx s;
  int eps = 0;
};
Cx signed_power(double x, const SignedPower& p);

// Exponents and sign characters of the GL(n+1,R) over GL(n,R) kernel:
//   s_i = lambda_i - nu_{n-i+1} - 1/2  (1 <= i <= n),   s_{n+1} = lambda_{n+1} + n/2,
//   t_j = nu_{n-j+1} - lambda_{j+1} - 1/2,
//   delta_i = xi_i - eta_{n-i+1},  delta_{n+1} = xi_{n+1},  eps_j = eta_{n-j+1} - xi_{j+1}.
// The map (xi, lambda, eta, nu) -> (delta, s, eps, t) is affine-invertible;
// the *_of accessors recover the inducing parameters.
struct KernelParams {
  long n = 0;
  std::vector<Cx> s;       // length n+1
  std::vector<Cx> t;       // length n
  std::vector<int> delta;  // length n+1, values mod 2
  std::vector<int> eps;    // length n, values mod 2
};

KernelParams kernel_params(long n, const std::vector<int>& xi, const std::vector<Cx>& lambda,
                           const std::vector<int>& eta, const std::vector<Cx>& nu);
std::vector<Cx> lambda_of(const KernelParams& p);
std::vector<Cx> nu_of(const KernelParams& p);
std::vector<int> xi_of(const KernelParams& p);
std::vector<int> eta_of(const KernelParams& p);

// Leading principal k x k minor of g.
double phi_k(const RMat& g, long k);
// Minor on rows 2..q+1, columns 1..q of g.
double psi_q(const RMat& g, long q);

// K(g) = prod_k Phi_k(w0~ g)^{s_k, delta_k} * prod_q Psi_q(w0~ g)^{t_q, eps_q}.
// Vanishing minors follow the signed_power convention above.
Cx kernel_eval(const KernelParams& p, const RMat& g);

// g = k * a * n_mat with k orthogonal, a positive diagonal, n_mat upper
// unitriangular.  SingularMatrix when g is not invertible.
struct IwasawaFactors {
  RMat k;
  RMat a;
  RMat n_mat;
};
IwasawaFactors iwasawa(const RMat& g);

// Relative defect of K(m' a' n' g m a n) = xi(m) a^{lambda - rho_G} eta(m')
// (a')^{nu + rho_H} K(g), where rho_G = (n/2, ..., -n/2) and rho_H is the
// GL(n) analogue.  m, a, n_right act on the right (elements of P_G); m_left,
// a_left, n_left act on the left and must lie in the embedded GL(n) block.
double equivariance_residual(const KernelParams& p, const RMat& g, const RMat& m, const RMat& a,
                             const RMat& n_right, const RMat& m_left, const RMat& a_left,
                             const RMat& n_left);

// Trigonometric polynomial on O(2).  Component 0 is the rotation R(theta),
// component 1 the reflection R(theta)*diag(1,-1); modes[j] multiplies
// e^{i(j - max_mode) theta}, so each vector has length 2*max_mode + 1.
struct OTwoFunction {
  long max_mode = 0;
  std::vector<Cx> rot;
  std::vector<Cx> refl;

  Cx eval(int component, double theta) const;
};

// A f(h) = int_{O(2)} K(h^{-1} k) f(k) dk at n = 1, with Haar mass 1 split
// evenly over the two components and periodic-trapezoid quadrature.
// NotConvergent unless Re(s_i), Re(t_j) >= 0.
Cx apply_operator_n1(const KernelParams& p, const OTwoFunction& f, double h, long quad_points);

// A(pi_{xi,lambda}(h) f)(1) with the compact-picture action
// (pi(h)f)(k) = e^{-(lambda+rho) H(h^{-1} k)} f(kappa(h^{-1} k)).
Cx apply_pi_then_operator_n1(const KernelParams& p, const OTwoFunction& f, double h,
                             long quad_points);

}  // namespace lie
