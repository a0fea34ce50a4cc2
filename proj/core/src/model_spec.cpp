#include "tcm/model_spec.hpp"

#include <json.hpp>
#include <set>

#include "tcm/errors.hpp"

namespace tcm {

using nlohmann::json;

int ModelSpec::obs_index(const std::string& id) const {
  for (std::size_t j = 0; j < observables.size(); ++j)
    if (observables[j] == id) return static_cast<int>(j);
  return -1;
}

const CycleDecl* ModelSpec::find_cycle(const std::string& name) const {
  for (const auto& c : cycles)
    if (c.name == name) return &c;
  return nullptr;
}

void ModelSpec::bind_scale_factors(const TimeSeriesPanel& panel) {
  for (auto& tr : trends)
    for (auto& ld : tr.loadings)
      if (ld.reciprocal_scale) {
        int j = panel.col_checked(ld.observable);
        ld.value = 1.0 / panel.scale_factors()[j];
      }
}

namespace {

void add_idio_cycle(ModelSpec& spec, const std::string& obs) {
  CycleDecl c;
  c.name = "idio_" + obs;
  c.kind = CycleKind::kIdiosyncratic;
  c.max_lag_loaded = 0;
  spec.cycles.push_back(c);
  spec.loadings.push_back({obs, c.name, 0, 1.0});
}

void add_free_loadings(ModelSpec& spec, const std::string& obs, const std::string& cycle,
                       int max_lag) {
  for (int lag = 0; lag <= max_lag; ++lag)
    spec.loadings.push_back({obs, cycle, lag, std::nullopt});
}

void add_single_trend(ModelSpec& spec, const std::string& obs, bool drift) {
  TrendDecl t;
  t.name = "trend_" + obs;
  t.has_drift = drift;
  t.loadings.push_back({obs, 1.0, false});
  spec.trends.push_back(t);
}

}  // namespace

ModelSpec baseline_spec() {
  ModelSpec spec;
  spec.preset = "baseline";
  spec.observables = {"y", "e", "u", "oil", "pi", "pi_c", "uom", "spf"};

  add_single_trend(spec, "y", true);
  add_single_trend(spec, "e", true);
  add_single_trend(spec, "u", false);
  add_single_trend(spec, "oil", false);

  TrendDecl common;
  common.name = "trend_pi";
  common.has_drift = false;
  for (const char* obs : {"pi", "pi_c", "uom", "spf"})
    common.loadings.push_back({obs, 1.0, true});
  spec.trends.push_back(common);

  add_single_trend(spec, "uom", false);
  add_single_trend(spec, "spf", false);

  spec.cycles.push_back({"BC", CycleKind::kCommon, 2, std::nullopt, std::nullopt});
  spec.cycles.push_back({"EP", CycleKind::kCommon, 1, std::nullopt, std::nullopt});

  // Business cycle: output normalized to unit loading; labour, oil and price
  // variables load contemporaneous + one lag; surveys up to two lags.
  spec.loadings.push_back({"y", "BC", 0, 1.0});
  for (const char* obs : {"e", "u", "oil", "pi", "pi_c"}) add_free_loadings(spec, obs, "BC", 1);
  for (const char* obs : {"uom", "spf"}) add_free_loadings(spec, obs, "BC", 2);

  // Energy price cycle: oil normalized to unit loading; loads prices and
  // expectations only, never the real and labour variables.
  spec.loadings.push_back({"oil", "EP", 0, 1.0});
  for (const char* obs : {"pi", "pi_c", "uom", "spf"}) add_free_loadings(spec, obs, "EP", 1);

  for (const auto& obs : spec.observables) add_idio_cycle(spec, obs);

  spec.measurement_jitter.assign(spec.observables.size(), 0.0);
  return spec;
}

ModelSpec global_spec() {
  ModelSpec spec = baseline_spec();
  spec.preset = "global";
  for (const char* obs : {"baltic", "gip"}) {
    spec.observables.push_back(obs);
    add_single_trend(spec, obs, false);
    add_free_loadings(spec, obs, "BC", 1);
    add_free_loadings(spec, obs, "EP", 1);
    add_idio_cycle(spec, obs);
    spec.measurement_jitter.push_back(0.0);
  }
  return spec;
}

ModelSpec stylized_spec() {
  ModelSpec spec;
  spec.preset = "stylized";
  spec.observables = {"y", "pi", "exp"};

  add_single_trend(spec, "y", true);

  TrendDecl common;
  common.name = "trend_pi";
  for (const char* obs : {"pi", "exp"}) common.loadings.push_back({obs, 1.0, true});
  spec.trends.push_back(common);

  spec.cycles.push_back({"BC", CycleKind::kCommon, 1, std::nullopt, std::nullopt});
  spec.loadings.push_back({"y", "BC", 0, 1.0});
  spec.loadings.push_back({"pi", "BC", 0, std::nullopt});
  add_free_loadings(spec, "exp", "BC", 1);

  // White-noise disturbances realized as cycles pinned at the damping lower
  // bound; only their variances are estimated.
  for (const char* obs : {"y", "pi"}) {
    CycleDecl c;
    c.name = std::string("idio_") + obs;
    c.kind = CycleKind::kIdiosyncratic;
    c.fixed_damping = 0.001;
    c.fixed_frequency = M_PI / 2.0;
    spec.cycles.push_back(c);
    spec.loadings.push_back({obs, c.name, 0, 1.0});
  }

  spec.measurement_jitter.assign(spec.observables.size(), 0.0);
  return spec;
}

void validate(const ModelSpec& spec) {
  if (spec.observables.empty()) throw SpecError("spec has no observables");
  {
    std::set<std::string> seen;
    for (const auto& o : spec.observables)
      if (!seen.insert(o).second) throw SpecError("duplicate observable '" + o + "'");
  }
  {
    std::set<std::string> seen;
    for (const auto& c : spec.cycles) {
      if (!seen.insert(c.name).second) throw SpecError("duplicate cycle '" + c.name + "'");
      if (c.max_lag_loaded < 0 || c.max_lag_loaded > 2)
        throw SpecError("cycle '" + c.name + "': max_lag_loaded must be in 0..2");
    }
    for (const auto& t : spec.trends)
      if (!seen.insert(t.name).second) throw SpecError("duplicate component name '" + t.name + "'");
  }

  if (!spec.measurement_jitter.empty() &&
      spec.measurement_jitter.size() != spec.observables.size())
    throw SpecError("measurement_jitter length must match observables");
  for (double h : spec.measurement_jitter)
    if (!(h >= 0.0)) throw SpecError("measurement_jitter must be >= 0");

  for (const auto& t : spec.trends) {
    if (t.loadings.empty()) throw SpecError("trend '" + t.name + "' loads no observable");
    std::set<std::string> seen;
    for (const auto& ld : t.loadings) {
      if (spec.obs_index(ld.observable) < 0)
        throw SpecError("trend '" + t.name + "' loads unknown observable '" + ld.observable + "'");
      if (!seen.insert(ld.observable).second)
        throw SpecError("trend '" + t.name + "' loads '" + ld.observable + "' twice");
    }
  }

  // At most one idiosyncratic (single-observable) trend per observable.
  for (const auto& o : spec.observables) {
    int idio_trends = 0;
    for (const auto& t : spec.trends)
      if (t.loadings.size() == 1 && t.loadings[0].observable == o) ++idio_trends;
    if (idio_trends > 1)
      throw SpecError("observable '" + o + "' has more than one idiosyncratic trend");
  }

  for (const auto& ld : spec.loadings) {
    if (spec.obs_index(ld.observable) < 0)
      throw SpecError("loading references unknown observable '" + ld.observable + "'");
    const CycleDecl* c = spec.find_cycle(ld.cycle);
    if (!c) throw SpecError("loading references unknown cycle '" + ld.cycle + "'");
    if (ld.lag < 0 || ld.lag > c->max_lag_loaded)
      throw SpecError("loading of '" + ld.observable + "' on '" + ld.cycle +
                      "' at lag " + std::to_string(ld.lag) + " exceeds max_lag_loaded");
  }
  {
    std::set<std::string> seen;
    for (const auto& ld : spec.loadings) {
      std::string key = ld.observable + "|" + ld.cycle + "|" + std::to_string(ld.lag);
      if (!seen.insert(key).second)
        throw SpecError("duplicate loading of '" + ld.observable + "' on '" + ld.cycle +
                        "' lag " + std::to_string(ld.lag));
    }
  }

  for (const auto& c : spec.cycles) {
    std::vector<const LoadingDecl*> lds;
    for (const auto& ld : spec.loadings)
      if (ld.cycle == c.name) lds.push_back(&ld);
    if (c.kind == CycleKind::kIdiosyncratic) {
      if (lds.size() != 1 || lds[0]->lag != 0 || !lds[0]->fixed_value ||
          *lds[0]->fixed_value != 1.0)
        throw SpecError("idiosyncratic cycle '" + c.name +
                        "' must have exactly one unit loading at lag 0");
      // Only one idiosyncratic cycle may attach to an observable.
      for (const auto& other : spec.cycles) {
        if (other.name == c.name || other.kind != CycleKind::kIdiosyncratic) continue;
        for (const auto& ld : spec.loadings)
          if (ld.cycle == other.name && ld.observable == lds[0]->observable)
            throw SpecError("observable '" + lds[0]->observable +
                            "' has more than one idiosyncratic cycle");
      }
    } else {
      int fixed_units = 0;
      for (const auto* ld : lds)
        if (ld->fixed_value && *ld->fixed_value == 1.0) ++fixed_units;
      if (fixed_units != 1)
        throw SpecError("common cycle '" + c.name +
                        "' needs exactly one loading fixed to 1 (sign/scale normalization)");
    }
  }

  // Real and labour-market variables are structurally excluded from the
  // energy price cycle.
  if (spec.find_cycle("EP")) {
    for (const auto& ld : spec.loadings)
      if (ld.cycle == "EP" &&
          (ld.observable == "y" || ld.observable == "e" || ld.observable == "u"))
        throw SpecError("observable '" + ld.observable + "' must not load on the EP cycle");
  }
}

// --- JSON serialization ---

std::string spec_to_json(const ModelSpec& spec) {
  json j;
  j["preset"] = spec.preset;
  j["observables"] = spec.observables;
  j["trends"] = json::array();
  for (const auto& t : spec.trends) {
    json jt;
    jt["name"] = t.name;
    jt["drift"] = t.has_drift;
    jt["loadings"] = json::array();
    for (const auto& ld : t.loadings) {
      json jl;
      jl["observable"] = ld.observable;
      if (ld.reciprocal_scale) jl["value"] = "reciprocal_scale";
      else jl["value"] = ld.value;
      jt["loadings"].push_back(jl);
    }
    j["trends"].push_back(jt);
  }
  j["cycles"] = json::array();
  for (const auto& c : spec.cycles) {
    json jc;
    jc["name"] = c.name;
    jc["kind"] = c.kind == CycleKind::kCommon ? "common" : "idiosyncratic";
    jc["max_lag_loaded"] = c.max_lag_loaded;
    if (c.fixed_damping) jc["fixed_damping"] = *c.fixed_damping;
    if (c.fixed_frequency) jc["fixed_frequency"] = *c.fixed_frequency;
    j["cycles"].push_back(jc);
  }
  j["loadings"] = json::array();
  for (const auto& ld : spec.loadings) {
    json jl;
    jl["observable"] = ld.observable;
    jl["cycle"] = ld.cycle;
    jl["lag"] = ld.lag;
    if (ld.fixed_value) jl["fixed"] = *ld.fixed_value;
    j["loadings"].push_back(jl);
  }
  if (!spec.measurement_jitter.empty()) j["measurement_jitter"] = spec.measurement_jitter;
  return j.dump(2);
}

ModelSpec spec_from_json(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("model spec JSON parse error: ") + e.what());
  }
  ModelSpec spec;
  try {
    spec.preset = j.value("preset", "custom");
    spec.observables = j.at("observables").get<std::vector<std::string>>();
    for (const auto& jt : j.value("trends", json::array())) {
      TrendDecl t;
      t.name = jt.at("name").get<std::string>();
      t.has_drift = jt.value("drift", false);
      for (const auto& jl : jt.at("loadings")) {
        TrendLoading ld;
        ld.observable = jl.at("observable").get<std::string>();
        if (jl.at("value").is_string()) {
          if (jl.at("value").get<std::string>() != "reciprocal_scale")
            throw ConfigError("trend loading value must be a number or 'reciprocal_scale'");
          ld.reciprocal_scale = true;
        } else {
          ld.value = jl.at("value").get<double>();
        }
        t.loadings.push_back(ld);
      }
      spec.trends.push_back(t);
    }
    for (const auto& jc : j.value("cycles", json::array())) {
      CycleDecl c;
      c.name = jc.at("name").get<std::string>();
      std::string kind = jc.value("kind", "common");
      if (kind == "common") c.kind = CycleKind::kCommon;
      else if (kind == "idiosyncratic") c.kind = CycleKind::kIdiosyncratic;
      else throw ConfigError("cycle kind must be 'common' or 'idiosyncratic'");
      c.max_lag_loaded = jc.value("max_lag_loaded", 0);
      if (jc.contains("fixed_damping")) c.fixed_damping = jc["fixed_damping"].get<double>();
      if (jc.contains("fixed_frequency")) c.fixed_frequency = jc["fixed_frequency"].get<double>();
      spec.cycles.push_back(c);
    }
    for (const auto& jl : j.value("loadings", json::array())) {
      LoadingDecl ld;
      ld.observable = jl.at("observable").get<std::string>();
      ld.cycle = jl.at("cycle").get<std::string>();
      ld.lag = jl.value("lag", 0);
      if (jl.contains("fixed")) ld.fixed_value = jl["fixed"].get<double>();
      spec.loadings.push_back(ld);
    }
    if (j.contains("measurement_jitter"))
      spec.measurement_jitter = j["measurement_jitter"].get<std::vector<double>>();
    else
      spec.measurement_jitter.assign(spec.observables.size(), 0.0);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("model spec JSON: ") + e.what());
  }
  validate(spec);
  return spec;
}

}  // namespace tcm
