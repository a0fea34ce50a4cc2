#pragma once

#include <limits>
#include <string>
#include <vector>

#include "tcm/quarter.hpp"

namespace tcm {

inline constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();

inline bool is_missing(double x) { return x != x; }

enum class Transformation {
  kLevels,          // identity
  kLogLevelsX100,   // 100 * ln(x)
  kYoyPct,          // 100 * ln(x_t / x_{t-4}); first 4 outputs missing
};

Transformation transformation_from_string(const std::string& s);
std::string to_string(Transformation t);

// One observable as loaded from file: contiguous quarterly dates, values with
// NaN as the missing marker, and the transformation it should receive.
struct RawSeries {
  std::string id;
  Quarter start;
  std::vector<double> values;
  Transformation transformation = Transformation::kLevels;

  std::size_t size() const { return values.size(); }
  Quarter date(std::size_t t) const { return start + static_cast<int>(t); }
};

// Applies the declared transformation. Throws DataError on non-positive
// values under a log transform (message carries the date).
RawSeries transform(const RawSeries& series);

// Inverse where defined (levels, log-levels). Throws SpecError for yoy.
RawSeries inverse_transform(const RawSeries& series);

}  // namespace tcm
