#include "tcm/panel.hpp"

#include <cmath>

#include "tcm/errors.hpp"

namespace tcm {

namespace {

// Sample standard deviation of first differences over consecutive
// non-missing pairs in one column.
double first_diff_sd(const Eigen::VectorXd& col) {
  std::vector<double> diffs;
  diffs.reserve(static_cast<std::size_t>(col.size()));
  for (Eigen::Index t = 1; t < col.size(); ++t) {
    if (!is_missing(col[t]) && !is_missing(col[t - 1])) diffs.push_back(col[t] - col[t - 1]);
  }
  if (diffs.size() < 2) return 0.0;
  double mean = 0.0;
  for (double d : diffs) mean += d;
  mean /= static_cast<double>(diffs.size());
  double ss = 0.0;
  for (double d : diffs) ss += (d - mean) * (d - mean);
  return std::sqrt(ss / static_cast<double>(diffs.size() - 1));
}

}  // namespace

int TimeSeriesPanel::col(const std::string& id) const {
  for (std::size_t j = 0; j < ids_.size(); ++j)
    if (ids_[j] == id) return static_cast<int>(j);
  return -1;
}

int TimeSeriesPanel::col_checked(const std::string& id) const {
  int j = col(id);
  if (j < 0) throw DataError("panel has no series '" + id + "'");
  return j;
}

TimeSeriesPanel assemble_panel(const std::vector<RawSeries>& series,
                               const QuarterRange& window) {
  if (series.empty()) throw DataError("assemble_panel: no series given");
  if (window.size() <= 0) throw DataError("assemble_panel: empty window");

  const Eigen::Index T = static_cast<Eigen::Index>(window.size());
  const Eigen::Index n = static_cast<Eigen::Index>(series.size());

  TimeSeriesPanel p;
  p.window_ = window;
  p.raw_.setConstant(T, n, kMissing);

  for (Eigen::Index j = 0; j < n; ++j) {
    const RawSeries& s = series[static_cast<std::size_t>(j)];
    p.ids_.push_back(s.id);
    p.transformations_.push_back(s.transformation);
    for (std::size_t t = 0; t < s.values.size(); ++t) {
      Quarter d = s.date(t);
      if (!window.contains(d)) continue;
      p.raw_(d - window.start, j) = s.values[t];
    }
    bool any = false;
    for (Eigen::Index t = 0; t < T; ++t)
      if (!is_missing(p.raw_(t, j))) { any = true; break; }
    if (!any)
      throw DataError("series '" + s.id + "' entirely missing in window " +
                      window.start.str() + ".." + window.end.str());
  }

  p.scales_.resize(n);
  p.standardized_.setConstant(T, n, kMissing);
  for (Eigen::Index j = 0; j < n; ++j) {
    double sd = first_diff_sd(p.raw_.col(j));
    if (!(sd > 0.0))
      throw DataError("series '" + p.ids_[static_cast<std::size_t>(j)] +
                      "' has non-positive first-difference standard deviation in window");
    p.scales_[j] = sd;
    for (Eigen::Index t = 0; t < T; ++t)
      if (!is_missing(p.raw_(t, j))) p.standardized_(t, j) = p.raw_(t, j) / sd;
  }
  return p;
}

TimeSeriesPanel TimeSeriesPanel::truncated(const Quarter& new_end) const {
  if (new_end < window_.start) throw DataError("truncated: end before window start");
  if (new_end >= window_.end) return *this;
  std::vector<RawSeries> series;
  const Eigen::Index T = new_end - window_.start + 1;
  for (std::size_t j = 0; j < ids_.size(); ++j) {
    RawSeries s;
    s.id = ids_[j];
    s.transformation = Transformation::kLevels;  // values already transformed
    s.start = window_.start;
    s.values.assign(raw_.col(static_cast<Eigen::Index>(j)).data(),
                    raw_.col(static_cast<Eigen::Index>(j)).data() + T);
    series.push_back(std::move(s));
  }
  TimeSeriesPanel p = assemble_panel(series, {window_.start, new_end});
  for (std::size_t j = 0; j < ids_.size(); ++j) p.transformations_[j] = transformations_[j];
  p.synthetic_ = synthetic_;
  return p;
}

}  // namespace tcm
