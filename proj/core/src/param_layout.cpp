#include "tcm/param_layout.hpp"

#include <unordered_map>

#include "tcm/errors.hpp"

namespace tcm {

namespace {

struct LayoutBuilder {
  std::vector<ParamInfo> params;
  std::unordered_map<std::string, std::size_t> index;

  void add(std::string name, ParamBlock block, ParamTransform tr, double lo, double hi) {
    if (index.count(name)) throw SpecError("duplicate parameter name '" + name + "'");
    index[name] = params.size();
    params.push_back({std::move(name), block, tr, lo, hi});
  }
};

}  // namespace

std::shared_ptr<const ParameterLayout> compile_layout(const ModelSpec& spec,
                                                      const CycleBounds& bounds) {
  validate(spec);

  LayoutBuilder b;
  const double inf = std::numeric_limits<double>::infinity();

  for (const auto& ld : spec.loadings)
    if (!ld.fixed_value)
      b.add("load." + ld.cycle + "." + ld.observable + ".L" + std::to_string(ld.lag),
            ParamBlock::kLoading, ParamTransform::kIdentity, -inf, inf);

  for (const auto& t : spec.trends)
    if (t.has_drift)
      b.add("drift." + t.name, ParamBlock::kDrift, ParamTransform::kIdentity, -inf, inf);

  for (const auto& t : spec.trends)
    b.add("var." + t.name, ParamBlock::kTrendVariance, ParamTransform::kLog, 0.0, inf);

  for (const auto& c : spec.cycles)
    b.add("var." + c.name, ParamBlock::kCycleVariance, ParamTransform::kLog, 0.0, inf);

  for (const auto& c : spec.cycles)
    if (!c.fixed_damping)
      b.add("rho." + c.name, ParamBlock::kDamping, ParamTransform::kLogitRange,
            bounds.rho_lower, bounds.rho_upper);

  for (const auto& c : spec.cycles)
    if (!c.fixed_frequency)
      b.add("lambda." + c.name, ParamBlock::kFrequency, ParamTransform::kLogitRange,
            bounds.lambda_lower, bounds.lambda_upper);

  auto layout = std::make_shared<ParameterLayout>();
  layout->params_ = std::move(b.params);
  layout->bounds_ = bounds;
  return layout;
}

std::size_t ParameterLayout::index(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i].name == name) return i;
  throw SpecError("no parameter slot named '" + name + "'");
}

bool ParameterLayout::has(const std::string& name) const {
  for (const auto& p : params_)
    if (p.name == name) return true;
  return false;
}

std::vector<std::size_t> ParameterLayout::block_indices(ParamBlock block) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i].block == block) out.push_back(i);
  return out;
}

bool ParameterLayout::in_bounds(const Eigen::VectorXd& theta) const {
  if (theta.size() != static_cast<Eigen::Index>(params_.size())) return false;
  for (std::size_t i = 0; i < params_.size(); ++i) {
    double v = theta[static_cast<Eigen::Index>(i)];
    if (!std::isfinite(v)) return false;
    const ParamInfo& p = params_[i];
    switch (p.transform) {
      case ParamTransform::kIdentity:
        break;
      case ParamTransform::kLog:
        if (!(v > 0.0)) return false;
        break;
      case ParamTransform::kLogitRange:
        if (v < p.lower || v > p.upper) return false;
        break;
    }
  }
  return true;
}

ParameterVector make_parameter_vector(std::shared_ptr<const ParameterLayout> layout) {
  ParameterVector pv;
  pv.values = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(layout->size()));
  pv.layout = std::move(layout);
  return pv;
}

}  // namespace tcm
