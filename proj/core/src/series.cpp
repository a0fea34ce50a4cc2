#include "tcm/series.hpp"

#include <cmath>

#include "tcm/errors.hpp"

namespace tcm {

Transformation transformation_from_string(const std::string& s) {
  if (s == "levels") return Transformation::kLevels;
  if (s == "log_levels_x100") return Transformation::kLogLevelsX100;
  if (s == "yoy_pct") return Transformation::kYoyPct;
  throw ConfigError("unknown transformation '" + s +
                    "' (expected levels, log_levels_x100, yoy_pct)");
}

std::string to_string(Transformation t) {
  switch (t) {
    case Transformation::kLevels: return "levels";
    case Transformation::kLogLevelsX100: return "log_levels_x100";
    case Transformation::kYoyPct: return "yoy_pct";
  }
  return "?";
}

RawSeries transform(const RawSeries& series) {
  RawSeries out = series;
  switch (series.transformation) {
    case Transformation::kLevels:
      return out;
    case Transformation::kLogLevelsX100:
      for (std::size_t t = 0; t < out.values.size(); ++t) {
        double x = out.values[t];
        if (is_missing(x)) continue;
        if (x <= 0.0)
          throw DataError("non-positive value under log transform for '" + series.id +
                          "' at " + series.date(t).str());
        out.values[t] = 100.0 * std::log(x);
      }
      return out;
    case Transformation::kYoyPct: {
      std::vector<double> v(out.values.size(), kMissing);
      for (std::size_t t = 4; t < out.values.size(); ++t) {
        double num = out.values[t];
        double den = out.values[t - 4];
        if (is_missing(num) || is_missing(den)) continue;
        if (num <= 0.0 || den <= 0.0)
          throw DataError("non-positive value under yoy transform for '" + series.id +
                          "' at " + series.date(t).str());
        v[t] = 100.0 * std::log(num / den);
      }
      out.values = std::move(v);
      return out;
    }
  }
  return out;
}

RawSeries inverse_transform(const RawSeries& series) {
  RawSeries out = series;
  switch (series.transformation) {
    case Transformation::kLevels:
      return out;
    case Transformation::kLogLevelsX100:
      for (double& x : out.values)
        if (!is_missing(x)) x = std::exp(x / 100.0);
      return out;
    case Transformation::kYoyPct:
      throw SpecError("yoy_pct has no pointwise inverse");
  }
  return out;
}

}  // namespace tcm
