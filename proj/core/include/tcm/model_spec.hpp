#pragma once

#include <optional>
#include <string>
#include <vector>

#include "tcm/panel.hpp"

namespace tcm {

// Declarative model description: observables, random-walk trends, stochastic
// cycles, and the loading pattern tying them together. Compiles to a flat
// parameter layout and assembles to state-space matrices.

enum class CycleKind { kCommon, kIdiosyncratic };

struct CycleDecl {
  std::string name;             // "BC", "EP", "idio:y", ...
  CycleKind kind = CycleKind::kCommon;
  int max_lag_loaded = 0;       // 0..2; cycle block has 2 + max_lag_loaded states
  // Pinned dynamics (no parameter slot); used by the stylized preset to turn
  // an idiosyncratic cycle into near-white noise.
  std::optional<double> fixed_damping;    // rho
  std::optional<double> fixed_frequency;  // lambda
};

struct TrendLoading {
  std::string observable;
  // Fixed loading constant; reciprocal_scale means 1/scale_factor of the
  // observable (unit loading in raw units), resolved when binding to a panel.
  double value = 1.0;
  bool reciprocal_scale = false;
};

struct TrendDecl {
  std::string name;       // "trend:y", "trend:pi", ...
  bool has_drift = false;
  std::vector<TrendLoading> loadings;
};

struct LoadingDecl {
  std::string observable;
  std::string cycle;
  int lag = 0;                       // 0, 1, or 2
  std::optional<double> fixed_value; // set -> no parameter slot
};

struct ModelSpec {
  std::string preset;                      // "baseline", "global", "stylized", "custom"
  std::vector<std::string> observables;    // ordered
  std::vector<TrendDecl> trends;
  std::vector<CycleDecl> cycles;
  std::vector<LoadingDecl> loadings;
  // Fixed per-observable measurement jitter variance (default 0). Not a
  // parameter; exists for degenerate test systems.
  std::vector<double> measurement_jitter;

  int obs_index(const std::string& id) const;  // -1 when absent
  const CycleDecl* find_cycle(const std::string& name) const;

  // Resolves reciprocal_scale trend loadings against the panel's scale
  // factors. Must be called before assembling when such loadings exist.
  void bind_scale_factors(const TimeSeriesPanel& panel);
};

// Presets.
ModelSpec baseline_spec();   // 8 observables, BC + EP + 8 idiosyncratic cycles
ModelSpec global_spec();     // baseline + baltic, gip
ModelSpec stylized_spec();   // 3 observables, BC only, white-noise idiosyncratics

// Structural validation; throws SpecError naming the violated rule.
void validate(const ModelSpec& spec);

// JSON (de)serialization of the declarative description.
std::string spec_to_json(const ModelSpec& spec);
ModelSpec spec_from_json(const std::string& json_text);

}  // namespace tcm
