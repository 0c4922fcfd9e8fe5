#include "sdadp/expfam.hpp"

#include <boost/math/special_functions/digamma.hpp>

#include <cmath>
#include <stdexcept>

namespace sdadp {

namespace {

constexpr double kLogPi = 1.1447298858494001741;
constexpr double kLog2Pi = 1.8378770664093454836;
constexpr double kLog2 = 0.6931471805599453094;

struct Recovered {
  double kappa;
  double nu;
  Eigen::VectorXd mu;
  Eigen::MatrixXd psi;
  Eigen::LLT<Eigen::MatrixXd> llt;  // factorization of psi
};

// Recovers (mu, kappa, Psi, nu) from natural coordinates; ok=false if the
// parameters leave the valid region (kappa <= 0, nu <= d-1, or Psi not SPD).
bool recover(const NiwNatural& eta, Recovered& out) noexcept {
  const int d = eta.dim();
  out.kappa = eta.n3;
  out.nu = eta.n4 - d - 2.0;
  if (!(out.kappa > 0.0) || !(out.nu > d - 1.0)) return false;
  if (!eta.n1.allFinite() || !eta.n2.allFinite()) return false;
  out.mu = eta.n1 / out.kappa;
  out.psi = eta.n2 - eta.n1 * eta.n1.transpose() / out.kappa;
  out.llt.compute(out.psi);
  if (out.llt.info() != Eigen::Success) return false;
  // Eigen's LLT can succeed on marginally indefinite input; reject
  // nonpositive pivots explicitly so merge bugs surface early.
  for (int i = 0; i < d; ++i) {
    if (!(out.llt.matrixLLT()(i, i) > 0.0)) return false;
  }
  return true;
}

double log_det_from_llt(const Eigen::LLT<Eigen::MatrixXd>& llt) {
  double ld = 0.0;
  const auto& l = llt.matrixLLT();
  for (int i = 0; i < l.rows(); ++i) ld += std::log(l(i, i));
  return 2.0 * ld;
}

double multi_digamma(double x, int p) {
  double r = 0.0;
  for (int i = 0; i < p; ++i) r += boost::math::digamma(x - 0.5 * i);
  return r;
}

}  // namespace

NiwNatural NiwNatural::zero(int dim) {
  NiwNatural z;
  z.n1 = Eigen::VectorXd::Zero(dim);
  z.n2 = Eigen::MatrixXd::Zero(dim, dim);
  z.n3 = 0.0;
  z.n4 = 0.0;
  return z;
}

NiwNatural& NiwNatural::operator+=(const NiwNatural& other) {
  n1 += other.n1;
  n2 += other.n2;
  n3 += other.n3;
  n4 += other.n4;
  return *this;
}

NiwNatural& NiwNatural::operator-=(const NiwNatural& other) {
  n1 -= other.n1;
  n2 -= other.n2;
  n3 -= other.n3;
  n4 -= other.n4;
  return *this;
}

double log_multigamma(double x, int p) {
  double r = 0.25 * p * (p - 1) * kLogPi;
  for (int i = 0; i < p; ++i) r += std::lgamma(x - 0.5 * i);
  return r;
}

bool is_valid(const NiwNatural& eta) noexcept {
  Recovered rec;
  return eta.dim() > 0 && recover(eta, rec);
}

NiwNatural to_natural(const ConventionalNiw& p) {
  const int d = p.dim();
  if (d <= 0) throw std::invalid_argument("NIW: empty mean vector");
  if (!(p.scale > 0.0)) throw std::invalid_argument("NIW: kappa0 must be > 0");
  if (!(p.dof > d - 1.0)) throw std::invalid_argument("NIW: nu0 must be > dim - 1");
  if (p.scatter.rows() != d || p.scatter.cols() != d)
    throw std::invalid_argument("NIW: scatter dimension mismatch");
  if (!p.mean.allFinite() || !p.scatter.allFinite())
    throw std::invalid_argument("NIW: non-finite parameters");
  Eigen::LLT<Eigen::MatrixXd> llt(p.scatter);
  if (llt.info() != Eigen::Success)
    throw std::invalid_argument("NIW: scatter not positive definite");
  for (int i = 0; i < d; ++i)
    if (!(llt.matrixLLT()(i, i) > 0.0))
      throw std::invalid_argument("NIW: scatter not positive definite");

  NiwNatural eta;
  eta.n1 = p.scale * p.mean;
  eta.n2 = p.scatter + p.scale * p.mean * p.mean.transpose();
  eta.n3 = p.scale;
  eta.n4 = p.dof + d + 2.0;
  return eta;
}

ConventionalNiw from_natural(const NiwNatural& eta) {
  Recovered rec;
  if (eta.dim() <= 0 || !recover(eta, rec))
    throw std::domain_error("NIW: natural parameters outside the valid region");
  ConventionalNiw p;
  p.mean = rec.mu;
  p.scale = rec.kappa;
  p.scatter = rec.psi;
  p.dof = rec.nu;
  return p;
}

double log_partition(const NiwNatural& eta) {
  const int d = eta.dim();
  Recovered rec;
  if (d <= 0 || !recover(eta, rec))
    throw std::domain_error("NIW log_partition: invalid natural parameters");
  const double logdet = log_det_from_llt(rec.llt);
  return 0.5 * d * kLog2Pi - 0.5 * d * std::log(rec.kappa) +
         0.5 * rec.nu * d * kLog2 + log_multigamma(0.5 * rec.nu, d) -
         0.5 * rec.nu * logdet;
}

NiwNatural grad_log_partition(const NiwNatural& eta) {
  const int d = eta.dim();
  Recovered rec;
  if (d <= 0 || !recover(eta, rec))
    throw std::domain_error("NIW grad_log_partition: invalid natural parameters");
  const double logdet = log_det_from_llt(rec.llt);
  const Eigen::MatrixXd psi_inv =
      rec.llt.solve(Eigen::MatrixXd::Identity(d, d));

  NiwNatural g;
  g.n2 = -0.5 * rec.nu * psi_inv;                       // E[-Sigma^{-1}/2]
  g.n1 = rec.nu * psi_inv * rec.mu;                     // E[Sigma^{-1} mu]
  g.n3 = -0.5 * d / rec.kappa -
         0.5 * rec.nu * rec.mu.dot(psi_inv * rec.mu);   // E[-mu' Sigma^{-1} mu / 2]
  g.n4 = 0.5 * d * kLog2 + 0.5 * multi_digamma(0.5 * rec.nu, d) -
         0.5 * logdet;                                  // E[-log|Sigma| / 2]
  return g;
}

double inner(const NiwNatural& a, const NiwNatural& b) {
  return a.n1.dot(b.n1) + a.n2.cwiseProduct(b.n2).sum() + a.n3 * b.n3 +
         a.n4 * b.n4;
}

NiwNatural data_stats(const Eigen::VectorXd& x, double weight) {
  if (!x.allFinite()) throw std::invalid_argument("data_stats: non-finite point");
  if (!(weight >= 0.0 && weight <= 1.0))
    throw std::invalid_argument("data_stats: weight must be in [0, 1]");
  NiwNatural s;
  s.n1 = weight * x;
  s.n2 = weight * (x * x.transpose());
  s.n3 = weight;
  s.n4 = weight;
  return s;
}

NiwNatural posterior_update(const NiwNatural& eta, const NiwNatural& incr) {
  if (eta.dim() != incr.dim())
    throw std::invalid_argument("posterior_update: dimension mismatch");
  NiwNatural out = eta;
  out += incr;
  if (!is_valid(out))
    throw std::domain_error("posterior_update: result outside the valid NIW region");
  return out;
}

double log_predictive(const NiwNatural& eta, const Eigen::VectorXd& x) {
  const int d = eta.dim();
  Recovered rec;
  if (d <= 0 || !recover(eta, rec))
    throw std::domain_error("NIW log_predictive: invalid natural parameters");
  if (x.size() != d)
    throw std::invalid_argument("log_predictive: point dimension mismatch");

  // Student-t with dof nu - d + 1, location mu, scale Psi (kappa+1)/(kappa dof).
  const double tdof = rec.nu - d + 1.0;
  const Eigen::MatrixXd scale =
      rec.psi * ((rec.kappa + 1.0) / (rec.kappa * tdof));
  Eigen::LLT<Eigen::MatrixXd> llt(scale);
  const double logdet = log_det_from_llt(llt);
  const Eigen::VectorXd diff = x - rec.mu;
  const double quad = diff.dot(llt.solve(diff));
  return std::lgamma(0.5 * (tdof + d)) - std::lgamma(0.5 * tdof) -
         0.5 * d * std::log(tdof) - 0.5 * d * kLogPi - 0.5 * logdet -
         0.5 * (tdof + d) * std::log1p(quad / tdof);
}

double log_marginal(const NiwNatural& prior, const Eigen::MatrixXd& data) {
  const int d = prior.dim();
  const auto n = data.rows();
  if (n == 0) return 0.0;
  if (data.cols() != d)
    throw std::invalid_argument("log_marginal: data dimension mismatch");
  if (!data.allFinite())
    throw std::invalid_argument("log_marginal: non-finite data");

  NiwNatural post = prior;
  for (Eigen::Index j = 0; j < n; ++j)
    post += data_stats(data.row(j).transpose(), 1.0);
  return log_partition(post) - log_partition(prior) - 0.5 * n * d * kLog2Pi;
}

}  // namespace sdadp
