#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "sdadp/expfam.hpp"
#include "sdadp/reg_stats.hpp"

namespace sdadp {

/// Result of mean-field variational inference on one minibatch.
///
/// Components [0, k_o) are the prior (central snapshot) components in their
/// original order; components [k_o, k_m) are new ones discovered in this
/// minibatch, with near-empty new components already pruned. etas hold the
/// full posterior natural parameters (prior plus minibatch data), while
/// s_stats / t_stats summarize only this minibatch's responsibilities.
struct MinibatchPosterior {
  int k_o = 0;
  int k_m = 0;
  std::vector<NiwNatural> etas;
  Eigen::MatrixXd resp;      // N_m x k_m, rows sum to 1
  Eigen::VectorXd s_stats;   // sum_j log(1 - pi_jk), <= 0
  Eigen::VectorXd t_stats;   // sum_j pi_jk, >= 0
  std::vector<double> elbo_trace;
};

/// (s, t) regularization statistics of a responsibility matrix.
/// s_k = sum_j log(1 - pi_jk) with exact pi = 1 mapping to -inf,
/// t_k = sum_j pi_jk.
std::pair<Eigen::VectorXd, Eigen::VectorXd> stats_from_resp(
    const Eigen::MatrixXd& resp);

struct ViOptions {
  int k_max = 50;        // total component budget (prior + new)
  double tol = 1e-6;     // relative ELBO change for convergence
  int max_iters = 500;
};

/// Truncated stick-breaking DP mean-field coordinate ascent on one minibatch.
///
/// Existing components use the central snapshot etas as their parameter
/// prior; the k_max - k_o candidate slots use base_prior and are seeded from
/// randomly chosen minibatch points (seeded rng). prior_stats seed the
/// initial stick posteriors of the existing components so the first
/// responsibility update sees sensible weights.
MinibatchPosterior run_minibatch_vi(const Eigen::MatrixXd& data,
                                    const std::vector<NiwNatural>& prior_components,
                                    const std::vector<RegStats>& prior_stats,
                                    const NiwNatural& base_prior,
                                    double alpha,
                                    const ViOptions& opts,
                                    std::uint64_t seed);

}  // namespace sdadp
