#pragma once

#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "zonorad/dynamics.hpp"

namespace zr {

using Json = nlohmann::json;

// Rationals cross the I/O boundary as canonical "p/q" strings (q > 0),
// never as floats. Plain JSON integers are accepted on input for
// convenience.
inline Json rat_to_json(const Rat& r) { return rat_to_string(r); }

inline Rat rat_from_json(const Json& j) {
  if (j.is_number_integer()) return Rat(Int(j.get<long long>()));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw Error(ErrorKind::BadInput, "expected a rational \"p/q\" string");
}

inline Json rat_vec_to_json(const RatVec& v) {
  Json out = Json::array();
  for (const Rat& r : v) out.push_back(rat_to_json(r));
  return out;
}

inline RatVec rat_vec_from_json(const Json& j) {
  if (!j.is_array())
    throw Error(ErrorKind::BadInput, "expected an array of rationals");
  RatVec out;
  for (const auto& e : j) out.push_back(rat_from_json(e));
  return out;
}

inline Json int_vec_to_json(const IntVec& v) {
  Json out = Json::array();
  for (const Int& x : v) out.push_back(x.str());
  return out;
}

inline Int int_from_json(const Json& j) {
  if (j.is_number_integer()) return Int(j.get<long long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw Error(ErrorKind::BadInput, "expected an integer");
}

// {"generators": [[int, ...], ...]}; a bare array of arrays is accepted.
inline std::vector<IntVec> generators_from_json(const Json& j) {
  const Json& arr = j.is_object() ? j.at("generators") : j;
  if (!arr.is_array() || arr.empty())
    throw Error(ErrorKind::BadInput, "generators: expected a nonempty array");
  std::vector<IntVec> gens;
  for (const auto& row : arr) {
    if (!row.is_array())
      throw Error(ErrorKind::BadInput, "generators: expected integer rows");
    IntVec g;
    for (const auto& e : row) g.push_back(int_from_json(e));
    gens.push_back(std::move(g));
  }
  return gens;
}

inline Json generators_to_json(const std::vector<IntVec>& gens) {
  Json arr = Json::array();
  for (const auto& g : gens) arr.push_back(int_vec_to_json(g));
  return arr;
}

// Direction input: {"symbols": d, "alpha": [[q_0, ..., q_d], ...]} with
// rational strings, or the purely rational shorthand ["1", "2", "3"].
inline std::vector<FormalReal> direction_from_json(const Json& j) {
  std::vector<FormalReal> alpha;
  if (j.is_array()) {
    for (const auto& e : j) alpha.emplace_back(rat_from_json(e));
    if (alpha.empty())
      throw Error(ErrorKind::BadInput, "alpha: expected a nonempty array");
    return alpha;
  }
  if (!j.is_object() || !j.contains("symbols") || !j.contains("alpha"))
    throw Error(ErrorKind::BadInput,
                "direction: expected {\"symbols\", \"alpha\"} or an array");
  std::size_t d = j.at("symbols").get<std::size_t>();
  const Json& rows = j.at("alpha");
  if (!rows.is_array() || rows.empty())
    throw Error(ErrorKind::BadInput, "alpha: expected a nonempty array");
  for (const auto& row : rows) {
    RatVec c = rat_vec_from_json(row);
    if (c.size() != d + 1)
      throw Error(ErrorKind::BadInput,
                  "alpha: each row needs symbols + 1 coefficients");
    alpha.emplace_back(std::move(c));
  }
  return alpha;
}

inline Json direction_to_json(const std::vector<FormalReal>& alpha) {
  std::size_t d = alpha.empty() ? 0 : alpha[0].symbol_count();
  Json j;
  j["symbols"] = d;
  Json rows = Json::array();
  for (const FormalReal& f : alpha) rows.push_back(rat_vec_to_json(f.coeffs));
  j["alpha"] = rows;
  return j;
}

inline Json covering_to_json(const CoveringResult& r) {
  Json j;
  if (r.exact()) {
    j["kind"] = "exact";
    j["value"] = rat_to_json(r.lower);
  } else {
    j["kind"] = "interval";
    j["lower"] = rat_to_json(r.lower);
    j["upper"] = rat_to_json(r.upper);
    if (r.budget_hit) j["budget_hit"] = true;
  }
  if (!r.witness.empty()) j["witness"] = rat_vec_to_json(r.witness);
  return j;
}

inline CoveringResult covering_from_json(const Json& j) {
  CoveringResult r;
  if (j.at("kind") == "exact") {
    r.lower = r.upper = rat_from_json(j.at("value"));
  } else if (j.at("kind") == "interval") {
    r.lower = rat_from_json(j.at("lower"));
    r.upper = rat_from_json(j.at("upper"));
    r.budget_hit = j.value("budget_hit", false);
  } else {
    throw Error(ErrorKind::BadInput, "kind: expected exact or interval");
  }
  if (j.contains("witness")) r.witness = rat_vec_from_json(j.at("witness"));
  return r;
}

// one scan instance per JSON line
inline Json scan_record_to_json(const ScanRecord& r) {
  Json j;
  j["generators"] = generators_to_json(r.generators);
  j["n"] = r.n;
  j["m"] = r.m;
  j["mu"] = covering_to_json(r.mu);
  j["bound"] = rat_to_json(r.bound);
  j["violation"] = r.violation;
  return j;
}

inline ScanRecord scan_record_from_json(const Json& j) {
  ScanRecord r;
  r.generators = generators_from_json(j.at("generators"));
  r.n = j.at("n").get<std::size_t>();
  r.m = j.at("m").get<std::size_t>();
  r.mu = covering_from_json(j.at("mu"));
  r.bound = rat_from_json(j.at("bound"));
  r.violation = j.at("violation").get<bool>();
  return r;
}

inline Json gap_to_json(const GapResult& r) {
  Json j;
  j["epsilon_star"] = rat_to_json(r.epsilon_star);
  j["witness_t"] = rat_to_json(r.witness_t);
  j["active"] = r.active;
  return j;
}

// CSV exports of plottable data. Rational values stay exact strings.
inline std::string plot_envelope_csv(const MotionInstance& inst) {
  std::vector<Rat> ts = envelope_candidate_times(inst);
  std::vector<Rat> grid = ts;
  for (std::size_t i = 0; i + 1 < ts.size(); ++i)
    grid.push_back((ts[i] + ts[i + 1]) / 2);
  if (!ts.empty()) grid.push_back((ts.back() + inst.period) / 2);
  std::sort(grid.begin(), grid.end());
  std::ostringstream out;
  out << "t,min_distance\n";
  for (const Rat& t : grid)
    out << rat_to_string(t) << "," << rat_to_string(detail::envelope_value(inst, t))
        << "\n";
  return out.str();
}

inline std::string plot_trajectory_csv(const MotionInstance& inst) {
  std::ostringstream out;
  out << "t";
  for (std::size_t i = 0; i < inst.size(); ++i) out << ",x" << i;
  out << "\n";
  for (const Rat& t : envelope_candidate_times(inst)) {
    out << rat_to_string(t);
    for (const Rat& c : fold_position(inst, t)) out << "," << rat_to_string(c);
    out << "\n";
  }
  return out.str();
}

inline std::string plot_mu_vs_bound_csv(const std::vector<ScanRecord>& recs) {
  std::ostringstream out;
  out << "n,m,mu_lower,bound\n";
  for (const ScanRecord& r : recs)
    out << r.n << "," << r.m << "," << rat_to_string(r.mu.lower) << ","
        << rat_to_string(r.bound) << "\n";
  return out.str();
}

// kind dispatch: "envelope" and "trajectory" need a motion instance,
// "mu-vs-bound" a scan result set (possibly empty: header-only CSV).
inline std::string emit_plot_data(const std::string& kind,
                                  const MotionInstance* inst,
                                  const std::vector<ScanRecord>* scan) {
  if (kind == "envelope" || kind == "trajectory") {
    if (!inst)
      throw Error(ErrorKind::BadInput, kind + " needs a motion instance");
    return kind == "envelope" ? plot_envelope_csv(*inst)
                              : plot_trajectory_csv(*inst);
  }
  if (kind == "mu-vs-bound") {
    static const std::vector<ScanRecord> empty;
    return plot_mu_vs_bound_csv(scan ? *scan : empty);
  }
  throw Error(ErrorKind::UnknownKind, "unknown plot kind: " + kind);
}

}  // namespace zr
