#pragma once

// JSON encodings of wave fields and reports, and CSV for critical-wavelength
// curves. Object keys are emitted sorted, so output is byte-stable.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "qgwave/channel.hpp"
#include "qgwave/errors.hpp"
#include "qgwave/geo_params.hpp"
#include "qgwave/profiles.hpp"
#include "qgwave/rayleigh_kuo.hpp"
#include "qgwave/wave_classifier.hpp"

namespace qgwave {

using json = nlohmann::json;

inline constexpr const char* kToolName = "qgwave";
inline constexpr const char* kToolVersion = "0.1.0";

// Malformed or unreadable WaveField documents.
class FieldFormatError : public Error {
 public:
  using Error::Error;
  const char* kind() const noexcept override { return "field_format_error"; }
};

inline json metadata_json() { return {{"tool", kToolName}, {"version", kToolVersion}}; }

// Non-finite values become null.
inline json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

// ---- WaveField -------------------------------------------------------------

inline json field_rows(const Field2D& f) {
  json rows = json::array();
  for (std::size_t j = 0; j < f.ny(); ++j) rows.push_back(std::vector<double>(f.row(j).begin(), f.row(j).end()));
  return rows;
}

inline json wave_field_to_json(const WaveField& field) {
  field.validate();
  const auto& g = field.grid.geometry();
  return {{"nx", field.grid.nx()}, {"ny", field.grid.ny()},  {"L", g.L()},
          {"d_minus", g.d_minus()}, {"d_plus", g.d_plus()}, {"c", field.c},
          {"beta", field.beta},     {"u", field_rows(field.u)}, {"v", field_rows(field.v)}};
}

namespace detail {

inline double finite_number(const json& doc, const char* key) {
  if (!doc.contains(key)) throw FieldFormatError(std::string("wave field is missing key '") + key + "'");
  const json& v = doc.at(key);
  if (!v.is_number()) throw FieldFormatError(std::string("wave field key '") + key + "' is not a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw FieldFormatError(std::string("wave field key '") + key + "' is not finite");
  return x;
}

inline std::size_t count(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc.at(key).is_number_integer() || doc.at(key).get<long long>() <= 0)
    throw FieldFormatError(std::string("wave field key '") + key + "' must be a positive integer");
  return doc.at(key).get<std::size_t>();
}

inline Field2D read_rows(const json& doc, const char* key, std::size_t ny, std::size_t nx) {
  if (!doc.contains(key) || !doc.at(key).is_array() || doc.at(key).size() != ny)
    throw FieldFormatError(std::string("wave field '") + key + "' must have ny rows");
  Field2D f(ny, nx);
  for (std::size_t j = 0; j < ny; ++j) {
    const json& row = doc.at(key)[j];
    if (!row.is_array() || row.size() != nx)
      throw FieldFormatError(std::string("wave field '") + key + "' row " + std::to_string(j) + " must have nx values");
    for (std::size_t i = 0; i < nx; ++i) {
      if (!row[i].is_number())
        throw FieldFormatError(std::string("wave field '") + key + "' holds a non-numeric or non-finite value");
      const double x = row[i].get<double>();
      if (!std::isfinite(x)) throw FieldFormatError(std::string("wave field '") + key + "' holds a non-finite value");
      f(j, i) = x;
    }
  }
  return f;
}

}  // namespace detail

inline WaveField wave_field_from_json(const json& doc) {
  if (!doc.is_object()) throw FieldFormatError("wave field document must be a JSON object");
  const std::size_t nx = detail::count(doc, "nx");
  const std::size_t ny = detail::count(doc, "ny");
  try {
    const ChannelGeometry geometry(detail::finite_number(doc, "L"), detail::finite_number(doc, "d_minus"),
                                   detail::finite_number(doc, "d_plus"));
    const Grid2D grid(nx, ny, geometry);
    WaveField field{grid, detail::read_rows(doc, "u", ny, nx), detail::read_rows(doc, "v", ny, nx),
                    detail::finite_number(doc, "c"), detail::finite_number(doc, "beta")};
    field.validate();
    return field;
  } catch (const FieldFormatError&) {
    throw;
  } catch (const Error& e) {
    throw FieldFormatError(std::string("invalid wave field: ") + e.what());
  }
}

inline WaveField read_wave_field(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FieldFormatError("cannot open wave field file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw FieldFormatError("wave field file '" + path + "' is not valid JSON: " + e.what());
  }
  return wave_field_from_json(doc);
}

// ---- Profiles and eigen results -------------------------------------------

inline const char* orientation_name(Orientation o) {
  switch (o) {
    case Orientation::increasing: return "increasing";
    case Orientation::decreasing: return "decreasing";
    default: return "none";
  }
}

inline json to_json(const ProfileOnBand& band) {
  return {{"profile", band.profile.spec()}, {"d", band.d},
          {"u0_min", band.u0_min},          {"u0_max", band.u0_max},
          {"u0pp_min", band.d2u_min},       {"u0pp_max", band.d2u_max},
          {"monotone", band.monotone},      {"orientation", orientation_name(band.orientation)},
          {"min_abs_slope", band.min_abs_slope}};
}

inline json to_json(const EigenResult& r, bool include_vector) {
  json ladder = json::array();
  for (const auto& s : r.ladder) ladder.push_back({{"N", s.intervals}, {"lambda", s.lambda}});
  json out = {{"lambda1", r.lambda1},         {"n_used", r.n_used},       {"extrapolated", r.extrapolated},
              {"singular", r.singular},       {"est_error", r.est_error}, {"ladder", ladder}};
  if (include_vector) {
    out["nodes"] = r.nodes;
    out["eigvec"] = r.eigvec;
  }
  return out;
}

inline json to_json(const CurvePoint& p) {
  json out = {{"beta", p.beta}, {"lambda1", number_or_null(p.lambda1_at_u0min)}, {"L_crit", number_or_null(p.L_crit)}};
  if (p.error) out["error"] = *p.error;
  return out;
}

inline json to_json(const std::vector<CurvePoint>& points) {
  json arr = json::array();
  for (const auto& p : points) arr.push_back(to_json(p));
  return arr;
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// CSV with header beta,lambda1,L_crit; empty cells for infinite or failed values.
inline std::string curve_csv(const std::vector<CurvePoint>& points) {
  std::string out = "beta,lambda1,L_crit\n";
  for (const auto& p : points) {
    out += format_g17(p.beta);
    out += ',';
    if (std::isfinite(p.lambda1_at_u0min)) out += format_g17(p.lambda1_at_u0min);
    out += ',';
    if (std::isfinite(p.L_crit)) out += format_g17(p.L_crit);
    out += '\n';
  }
  return out;
}

// ---- Classification --------------------------------------------------------

inline json to_json(const CategoryVerdict& v) {
  json w = json::array();
  for (const auto& x : v.witnesses)
    w.push_back({{"x", x.x}, {"y", x.y}, {"u_minus_c", x.u_minus_c}, {"test_value", x.test_value}});
  return {{"holds", v.holds}, {"witness_count", v.witness_count}, {"witnesses", w}};
}

inline json to_json(const ClassificationReport& r) {
  return {{"genuine", {{"holds", r.genuine}, {"max_abs_v", r.max_abs_v}}},
          {"u_min", r.u_min},
          {"u_max", r.u_max},
          {"c", r.c},
          {"beta", r.beta},
          {"c_beta_plus", r.c_beta_plus},
          {"category_inflection", to_json(r.category_inflection)},
          {"category_critical", to_json(r.category_critical)},
          {"category_extremum", {{"holds", r.category_extremum}}},
          {"category_outside", {{"holds", r.category_outside}}},
          {"categories", r.holding_categories()},
          {"tolerances",
           {{"eps_scale", r.tolerances.eps_scale},
            {"eps_c", r.tolerances.eps_c},
            {"eps_g", r.tolerances.eps_g},
            {"eps_q", r.tolerances.eps_q}}},
          {"theorem_consistent", r.theorem_consistent}};
}

inline json to_json(const RigidityVerdict& v) {
  json theorems = json::array();
  for (const auto& t : v.applicable_theorems) {
    json hyps = json::array();
    for (const auto& h : t.hypotheses)
      hyps.push_back({{"condition", h.condition}, {"satisfied", h.satisfied}, {"evidence", number_or_null(h.evidence)}});
    theorems.push_back({{"name", t.name}, {"hypotheses_checked", hyps},
                        {"conclusion", t.concludes_shear ? "shear flow" : "inconclusive"}});
  }
  return {{"applicable_theorems", theorems}, {"shear_predicted", v.shear_predicted}, {"genuine", v.genuine},
          {"lap_min", v.lap_min}, {"lap_max", v.lap_max}, {"margin", v.margin}};
}

// ---- Planetary examples ----------------------------------------------------

inline json to_json(const PlanetData& p) {
  return {{"name", p.name}, {"R_prime", p.R_prime}, {"Omega_prime", p.Omega_prime}, {"U_prime", p.U_prime}};
}

inline json to_json(const JupiterBandReport& r) {
  return {{"case", "jupiter_38S"},
          {"d", r.d},
          {"a", r.a},
          {"b", r.b},
          {"u_south", r.u_south},
          {"u_north", r.u_north},
          {"beta", r.beta},
          {"beta_expected", r.beta_expected},
          {"beta_delta", r.beta - r.beta_expected},
          {"beta_crit_couette", r.beta_crit_couette},
          {"beta_crit_scaling", r.beta_crit_scaling},
          {"beta_crit_scaling_seed", r.beta_crit_scaling_seed},
          {"beta_crit_direct", r.beta_crit_direct},
          {"beta_crit_expected", r.beta_crit_expected},
          {"beta_crit_delta", r.beta_crit_direct - r.beta_crit_expected},
          {"scaling_direct_rel_diff", r.scaling_direct_rel_diff},
          {"waves_expected", r.waves_expected}};
}

inline json to_json(const SaturnPolarReport& r) {
  return {{"case", "saturn_polar"},
          {"d", r.d},
          {"beta", r.beta},
          {"beta_expected", r.beta_expected},
          {"beta_delta", r.beta - r.beta_expected},
          {"threshold", r.threshold},
          {"threshold_expected", r.threshold_expected},
          {"threshold_delta", r.threshold - r.threshold_expected},
          {"u_south", r.u_south},
          {"u_north", r.u_north},
          {"slope_north", r.slope_north},
          {"margin", r.margin},
          {"rigidity_predicted", r.rigidity_predicted}};
}

}  // namespace qgwave
