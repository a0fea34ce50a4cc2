#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "tcm/quarter.hpp"
#include "tcm/series.hpp"

namespace tcm {

// Aligned quarterly panel. Values are stored both raw and standardized;
// standardization divides each series by the standard deviation of its first
// differences over the estimation window (no centering), so standardized
// first differences have unit standard deviation.
class TimeSeriesPanel {
 public:
  TimeSeriesPanel() = default;

  const std::vector<std::string>& ids() const { return ids_; }
  const QuarterRange& window() const { return window_; }
  Eigen::Index rows() const { return raw_.rows(); }
  Eigen::Index cols() const { return raw_.cols(); }
  Quarter date(Eigen::Index t) const { return window_.start + static_cast<int>(t); }

  // T x n matrices, NaN = missing.
  const Eigen::MatrixXd& raw() const { return raw_; }
  const Eigen::MatrixXd& standardized() const { return standardized_; }
  const Eigen::VectorXd& scale_factors() const { return scales_; }

  int col(const std::string& id) const;          // -1 when absent
  int col_checked(const std::string& id) const;  // throws DataError

  bool synthetic() const { return synthetic_; }
  void set_synthetic(bool s) { synthetic_ = s; }

  // Recorded per-series transformations (metadata only).
  const std::vector<Transformation>& transformations() const { return transformations_; }

  // Restriction to an earlier window end (expanding-window forecasting);
  // scale factors are recomputed on the shorter window.
  TimeSeriesPanel truncated(const Quarter& new_end) const;

  friend TimeSeriesPanel assemble_panel(const std::vector<RawSeries>& series,
                                        const QuarterRange& window);

 private:
  std::vector<std::string> ids_;
  std::vector<Transformation> transformations_;
  QuarterRange window_;
  Eigen::MatrixXd raw_;
  Eigen::MatrixXd standardized_;
  Eigen::VectorXd scales_;
  bool synthetic_ = false;
};

// Aligns transformed series on the window, computes scale factors from first
// differences over non-missing consecutive pairs, and standardizes. Throws
// DataError if a series has no usable observations in the window or if a
// scale factor is not strictly positive.
TimeSeriesPanel assemble_panel(const std::vector<RawSeries>& series,
                               const QuarterRange& window);

}  // namespace tcm
