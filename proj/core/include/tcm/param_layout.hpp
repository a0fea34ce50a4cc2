#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "tcm/model_spec.hpp"

namespace tcm {

enum class ParamTransform {
  kIdentity,   // loadings, drifts
  kLog,        // variances
  kLogitRange, // damping rho, frequency lambda
};

enum class ParamBlock {
  kLoading,
  kDrift,
  kTrendVariance,
  kCycleVariance,
  kDamping,
  kFrequency,
};

struct ParamInfo {
  std::string name;
  ParamBlock block;
  ParamTransform transform;
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
};

struct CycleBounds {
  double rho_lower = 0.001;
  double rho_upper = 0.970;
  double lambda_lower = 0.001;
  double lambda_upper = M_PI;
};

// Flat parameter layout compiled from a ModelSpec. Block order is fixed:
// loadings, drifts, trend variances, cycle variances, dampings, frequencies.
class ParameterLayout {
 public:
  std::size_t size() const { return params_.size(); }
  const ParamInfo& info(std::size_t i) const { return params_[i]; }
  const std::string& name(std::size_t i) const { return params_[i].name; }

  // Index by name; throws SpecError for unknown names (structural zeros
  // never receive a slot, so addressing one fails here).
  std::size_t index(const std::string& name) const;
  bool has(const std::string& name) const;

  std::vector<std::size_t> block_indices(ParamBlock b) const;

  bool in_bounds(const Eigen::VectorXd& theta) const;

  const CycleBounds& cycle_bounds() const { return bounds_; }

  friend std::shared_ptr<const ParameterLayout> compile_layout(const ModelSpec&,
                                                               const CycleBounds&);

 private:
  std::vector<ParamInfo> params_;
  CycleBounds bounds_;
};

std::shared_ptr<const ParameterLayout> compile_layout(const ModelSpec& spec,
                                                      const CycleBounds& bounds = {});

// A layout plus values. Neither knows about priors or the sampler.
struct ParameterVector {
  std::shared_ptr<const ParameterLayout> layout;
  Eigen::VectorXd values;

  double get(const std::string& name) const { return values[static_cast<Eigen::Index>(layout->index(name))]; }
  void set(const std::string& name, double v) { values[static_cast<Eigen::Index>(layout->index(name))] = v; }
};

ParameterVector make_parameter_vector(std::shared_ptr<const ParameterLayout> layout);

}  // namespace tcm
