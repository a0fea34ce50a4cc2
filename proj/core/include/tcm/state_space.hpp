#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tcm/model_spec.hpp"
#include "tcm/param_layout.hpp"

namespace tcm {

// Linear Gaussian state space:
//
//   y_t     = d + Z a_t + e_t,          e_t   ~ N(0, diag(jitter))
//   a_{t+1} = c + T a_t + R eta_t,      eta_t ~ N(0, diag(q_diag))
//   a_1     = a1 + B delta + u_1,       u_1   ~ N(0, P1),  delta diffuse
//
// B selects the diffuse states. jitter is zero except in degenerate test
// systems: all model noise lives in the idiosyncratic cycles.
struct StateSpaceSystem {
  Eigen::MatrixXd Z;
  Eigen::VectorXd d;
  Eigen::MatrixXd T;
  Eigen::VectorXd c;
  Eigen::MatrixXd R;
  Eigen::VectorXd q_diag;
  Eigen::VectorXd jitter;

  Eigen::VectorXd a1;
  Eigen::MatrixXd P1;                 // proper part; zero rows/cols for diffuse states
  std::vector<int> diffuse_states;

  std::vector<std::string> state_labels;

  Eigen::Index m() const { return T.rows(); }
  Eigen::Index n() const { return Z.rows(); }
};

// State offsets per declared component. Cycle blocks hold
// [psi, psi_star, psi_{t-1}, ..., psi_{t-max_lag}], trends one state each.
struct StateIndex {
  struct Block {
    std::string name;
    int offset = 0;
    int size = 0;
  };
  std::vector<Block> cycle_blocks;
  std::vector<Block> trend_blocks;
  int m = 0;
  int q = 0;

  const Block* find_cycle(const std::string& name) const;
  const Block* find_trend(const std::string& name) const;
};

StateIndex build_state_index(const ModelSpec& spec);

// Compiles (spec, theta) into matrices. Throws EstimationError if theta is
// out of bounds; the sampler never passes such a point.
StateSpaceSystem assemble(const ModelSpec& spec, const ParameterVector& theta);

// Stationary covariance of x_{t+1} = T x_t + w, w ~ N(0, Q), for small
// blocks, via the Kronecker-product linear solve.
Eigen::MatrixXd solve_discrete_lyapunov(const Eigen::MatrixXd& T, const Eigen::MatrixXd& Q);

}  // namespace tcm
