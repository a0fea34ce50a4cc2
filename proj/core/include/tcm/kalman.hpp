#pragma once

#include <Eigen/Dense>
#include <vector>

#include "tcm/rng.hpp"
#include "tcm/state_space.hpp"

namespace tcm {

// Kalman filtering with exact diffuse initialization, sequential (univariate)
// measurement processing, and missing-value support (NaN entries skipped).
//
// Diffuse states are handled by augmentation: the filter runs the proper part
// and tracks, per scalar observation, the sensitivity of the innovation to
// the diffuse initial vector delta. The log-likelihood is the diffuse limit
//   lim_{kappa->inf} [ log L_kappa + (n_diffuse/2) log kappa ],
// obtained by a GLS correction from the accumulated (s, S) statistics. The
// same augmentation yields exact diffuse smoothed means and covariances.
// This requires every row observing a diffuse state to carry positive proper
// innovation variance (true for all model presets, where each observable has
// an idiosyncratic cycle; degenerate test systems use the jitter term).

struct FilterResult {
  double loglik = 0.0;
  int diffuse_scalar_count = 0;  // scalar updates consumed before delta is identified

  // Diffuse-limit moments per time (minimum-norm GLS convention while the
  // diffuse vector is not yet fully identified).
  Eigen::MatrixXd predicted_mean;            // T x m
  Eigen::MatrixXd filtered_mean;             // T x m
  std::vector<Eigen::MatrixXd> predicted_cov;
  std::vector<Eigen::MatrixXd> filtered_cov;

  // Joint (non-sequential) innovations on the observed rows of each date.
  std::vector<std::vector<int>> observed_rows;
  std::vector<Eigen::VectorXd> innovation;
  std::vector<Eigen::MatrixXd> innovation_cov;
};

struct SmootherResult {
  double loglik = 0.0;
  Eigen::MatrixXd mean;                 // T x m
  std::vector<Eigen::MatrixXd> cov;     // per t
};

// Exact Gaussian log-likelihood; -inf on any non-finite intermediate or
// degenerate innovation variance carrying diffuse information.
double loglik(const StateSpaceSystem& sys, const Eigen::MatrixXd& y);

FilterResult filter(const StateSpaceSystem& sys, const Eigen::MatrixXd& y);

SmootherResult smooth(const StateSpaceSystem& sys, const Eigen::MatrixXd& y);

// One draw from p(states | y) by mean correction: simulate an unconditional
// path with the diffuse components of a_1 fixed at their central values,
// smooth both the data and the simulated observations, and recombine.
Eigen::MatrixXd simulation_smoother(const StateSpaceSystem& sys, const Eigen::MatrixXd& y,
                                    Rng& rng);

struct SimulationResult {
  Eigen::MatrixXd states;  // T x m
  Eigen::MatrixXd obs;     // T x n
};

// Unconditional simulation. Diffuse initial states are drawn with standard
// deviation diffuse_scale around a1 (default 0: start at the center).
SimulationResult simulate(const StateSpaceSystem& sys, Eigen::Index T, Rng& rng,
                          double diffuse_scale = 0.0);

// E[y_{T+h} | data] for h = 1..horizon from the end-of-sample filtered state.
Eigen::MatrixXd forecast_observables(const StateSpaceSystem& sys, const Eigen::VectorXd& last_filtered_mean,
                                     int horizon);

}  // namespace tcm
