#pragma once

#include <Eigen/Dense>

namespace sdadp {

/// Conventional normal-inverse-Wishart parameters (mu0, kappa0, Psi0, nu0).
struct ConventionalNiw {
  Eigen::VectorXd mean;     // mu0
  double scale = 1.0;       // kappa0 > 0
  Eigen::MatrixXd scatter;  // Psi0, symmetric positive definite
  double dof = 1.0;         // nu0 > dim - 1

  int dim() const { return static_cast<int>(mean.size()); }
};

/// Natural-parameter representation of an NIW density.
///
/// Convention used throughout the library (documented once, applied
/// everywhere):
///   n1 = kappa * mu                 (d-vector)
///   n2 = Psi + kappa * mu * mu^T    (symmetric d x d)
///   n3 = kappa                      (> 0)
///   n4 = nu + d + 2                 (exponent of |Sigma|^{-n4/2})
///
/// All four blocks are additive under conjugate updates and under the
/// streaming merge rule eta = eta_i + eta_m - eta_o, which is the only
/// property the merge algebra relies on. A weighted observation (x, w)
/// contributes (w*x, w*x*x^T, w, w).
struct NiwNatural {
  Eigen::VectorXd n1;
  Eigen::MatrixXd n2;
  double n3 = 0.0;
  double n4 = 0.0;

  int dim() const { return static_cast<int>(n1.size()); }

  static NiwNatural zero(int dim);

  NiwNatural& operator+=(const NiwNatural& other);
  NiwNatural& operator-=(const NiwNatural& other);
  friend NiwNatural operator+(NiwNatural a, const NiwNatural& b) { return a += b; }
  friend NiwNatural operator-(NiwNatural a, const NiwNatural& b) { return a -= b; }
};

/// log of the multivariate gamma function Gamma_p(x), via the standard
/// product-of-univariate-gammas identity.
double log_multigamma(double x, int p);

/// True when eta recovers a valid NIW: n3 > 0, nu > d - 1, and the
/// recovered scatter n2 - n1 n1^T / n3 admits a Cholesky factorization.
bool is_valid(const NiwNatural& eta) noexcept;

/// Conversion between parameterizations. to_natural throws
/// std::invalid_argument on invalid conventional parameters; from_natural
/// throws std::domain_error when eta does not recover a valid NIW.
NiwNatural to_natural(const ConventionalNiw& p);
ConventionalNiw from_natural(const NiwNatural& eta);

/// Log-partition function A(eta) of the NIW density in natural coordinates.
/// Throws std::domain_error on invalid eta.
double log_partition(const NiwNatural& eta);

/// Gradient of A(eta), i.e. the expected sufficient statistics
/// E[-Sigma^{-1}/2], E[Sigma^{-1} mu], E[-mu^T Sigma^{-1} mu / 2],
/// E[-log|Sigma| / 2], packed in the same (n1, n2, n3, n4) layout.
NiwNatural grad_log_partition(const NiwNatural& eta);

/// Componentwise pairing <a, b> = a.n1 . b.n1 + sum(a.n2 * b.n2) + a.n3 b.n3 + a.n4 b.n4.
double inner(const NiwNatural& a, const NiwNatural& b);

/// Natural-parameter increment of one observation x with weight in [0, 1].
NiwNatural data_stats(const Eigen::VectorXd& x, double weight);

/// eta + incr, validated: throws std::domain_error if the result leaves the
/// valid NIW region.
NiwNatural posterior_update(const NiwNatural& eta, const NiwNatural& incr);

/// Log posterior-predictive density at x: the multivariate Student-t
/// implied by the NIW posterior eta.
double log_predictive(const NiwNatural& eta, const Eigen::VectorXd& x);

/// Log marginal likelihood of data (rows are points) under the NIW-Gaussian
/// model with prior eta: A(eta_post) - A(eta_prior) - N*d/2 * log(2*pi).
double log_marginal(const NiwNatural& prior, const Eigen::MatrixXd& data);

}  // namespace sdadp
