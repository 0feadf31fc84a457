#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zonorad/json_io.hpp"

using namespace zr;

namespace {

// deterministic splitmix64, used only for the equivalence harness sampling
struct Rng {
  std::uint64_t state;
  explicit Rng(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % (hi - lo + 1));
  }
};

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, ',')) out.push_back(part);
  return out;
}

std::vector<IntVec> parse_generators_arg(const std::string& s) {
  if (s.rfind("vandermonde:", 0) == 0) {
    auto parts = split_commas(s.substr(12));
    if (parts.size() != 2)
      throw Error(ErrorKind::BadInput,
                  "generators: expected vandermonde:n,m");
    return vandermonde_generators(std::stoull(parts[0]),
                                  std::stoull(parts[1]));
  }
  return generators_from_json(Json::parse(s));
}

RatVec parse_rat_vec_arg(const std::string& s) {
  RatVec out;
  for (const auto& p : split_commas(s)) out.push_back(rat_from_string(p));
  return out;
}

IntVec parse_int_vec_arg(const std::string& s) {
  IntVec out;
  for (const auto& p : split_commas(s)) out.push_back(Int(p));
  return out;
}

std::vector<FormalReal> parse_direction_arg(const std::string& s) {
  if (!s.empty() && (s[0] == '{' || s[0] == '['))
    return direction_from_json(Json::parse(s));
  std::vector<FormalReal> out;
  for (const auto& p : split_commas(s)) out.emplace_back(rat_from_string(p));
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorKind::BadInput, "cannot open output: " + path);
  f << text;
}

void print_json(const Json& j) { std::cout << j.dump() << "\n"; }

constexpr int kCheckpointVersion = 1;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact computations on lattice zonotopes: covering radii, lattice "
      "widths, view-obstruction thresholds and lonely runner gaps."};
  app.require_subcommand(1);

  // Accepted for interface stability; every computation currently runs on
  // one thread so results are reproducible byte for byte.
  int threads = 1;
  app.add_option("--threads", threads, "Worker thread count (default 1)")
      ->envname("ZONORAD_THREADS")
      ->check(CLI::PositiveNumber);

  std::string gens_arg, x_arg, u0_arg, alpha_arg, v_arg;
  std::string tol_arg = "1/50", flt_c_arg = "3";
  std::string output, checkpoint, plot_kind;
  std::uint64_t max_nodes = 0;
  std::size_t opt_n = 0, opt_m = 0, count = 200, max_m = 5;
  long long bound = 1, max_den = 12, seed = 1;
  std::size_t budget = 0;

  auto* mu_cmd = app.add_subcommand(
      "mu",
      "Covering radius (exact for n <= 2, certified interval otherwise).\n"
      "Example: mu --generators '[[1,0],[0,1],[1,1]]'");
  mu_cmd->add_option("--generators", gens_arg,
                     "Generator matrix as JSON or vandermonde:n,m")
      ->required();
  mu_cmd->add_option("--tolerance", tol_arg, "Interval width target (p/q)");
  mu_cmd->add_option("--max-nodes", max_nodes,
                     "Node budget for certified mode (0 = unlimited)");

  auto* width_cmd = app.add_subcommand(
      "width",
      "Lattice width and a minimizing direction.\n"
      "Example: width --generators vandermonde:2,4");
  width_cmd->add_option("--generators", gens_arg, "Generator matrix")
      ->required();

  auto* lambda_cmd = app.add_subcommand(
      "lambda1",
      "First restricted successive minimum over the coset x + Z^n.\n"
      "Example: lambda1 --generators '[[1,0],[0,1],[1,1]]' --x 3/2,3/2");
  lambda_cmd->add_option("--generators", gens_arg, "Generator matrix")
      ->required();
  lambda_cmd->add_option("--x", x_arg, "Coset shift (comma rationals)")
      ->required();

  auto* scan_cmd = app.add_subcommand(
      "scan-mu",
      "Scan the mu <= n/m conjecture over the full LGP catalog; one JSON "
      "line per instance.\nExample: scan-mu --n 2 --m 3 --bound 1");
  scan_cmd->add_option("--n", opt_n, "Dimension (1..3)")->required();
  scan_cmd->add_option("--m", opt_m, "Generator count")->required();
  scan_cmd->add_option("--bound", bound, "Coordinate bound")->required();
  scan_cmd->add_option("--tolerance", tol_arg, "Interval target for n = 3");
  scan_cmd->add_option("--output", output, "Write JSON lines here");
  scan_cmd->add_option("--plot", plot_kind,
                       "Emit CSV instead (kind: mu-vs-bound)");

  auto* thr_cmd = app.add_subcommand(
      "threshold",
      "View-obstruction threshold of a billiard motion; rational "
      "directions are cross-checked over both routes.\n"
      "Example: threshold --u0 0,1/3,2/3 --alpha 1,1,1");
  thr_cmd->add_option("--alpha", alpha_arg,
                      "Direction: comma rationals or direction JSON")
      ->required();
  thr_cmd->add_option("--u0", u0_arg, "Start point (default 0)");
  thr_cmd->add_option("--plot", plot_kind,
                      "Emit CSV instead (kind: envelope | trajectory)");
  thr_cmd->add_option("--plot-output", output, "Write the CSV here");

  auto* gap_cmd = app.add_subcommand(
      "gap",
      "Lonely runner gap for integer velocities.\nExample: gap --v 1,2,3");
  gap_cmd->add_option("--v", v_arg, "Velocities (comma integers)")
      ->required();
  gap_cmd->add_option("--plot", plot_kind,
                      "Emit CSV instead (kind: envelope | trajectory)");
  gap_cmd->add_option("--plot-output", output, "Write the CSV here");

  auto* equiv_cmd = app.add_subcommand(
      "equiv-check",
      "Run both threshold routes on random rational instances and demand "
      "exact agreement.\nExample: equiv-check --count 200 --seed 7");
  equiv_cmd->add_option("--count", count, "Instance count (default 200)");
  equiv_cmd->add_option("--max-m", max_m, "Max coordinates (default 5)");
  equiv_cmd->add_option("--max-den", max_den,
                        "Denominators divide this (default 12)");
  equiv_cmd->add_option("--seed", seed, "Sampling seed (default 1)");

  auto* eps_cmd = app.add_subcommand(
      "explore-eps",
      "Running supremum of mu over LGP catalogs in dimensions k <= n and "
      "the derived epsilon entry; resumable.\n"
      "Example: explore-eps --n 2 --m 3 --bound 1 --checkpoint eps.jsonl");
  eps_cmd->add_option("--n", opt_n, "Table row (0..3)")->required();
  eps_cmd->add_option("--m", opt_m, "Table column")->required();
  eps_cmd->add_option("--bound", bound, "Coordinate bound")->required();
  eps_cmd->add_option("--budget", budget,
                      "Max instances this run (0 = unlimited)");
  eps_cmd->add_option("--checkpoint", checkpoint,
                      "Append-only JSON-lines checkpoint");
  eps_cmd->add_option("--flt-c", flt_c_arg, "Flatness constant (default 3)");

  auto* lrc_cmd = app.add_subcommand(
      "lrc-zono",
      "Zonotopal lonely runner check: restricted minimum vs the proven and "
      "conjectured bounds.\nExample: lrc-zono --v 1,2,3");
  lrc_cmd->add_option("--v", v_arg, "Velocities (comma integers)")
      ->required();

  auto* zono_cmd = app.add_subcommand(
      "zonotope",
      "Construct and inspect a lattice zonotope.\n"
      "Example: zonotope --generators '[[1,0],[0,1],[1,1]]'");
  zono_cmd->add_option("--generators", gens_arg, "Generator matrix")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*mu_cmd) {
      LatticeZonotope z(parse_generators_arg(gens_arg));
      CoveringResult r =
          covering_radius(z, rat_from_string(tol_arg), max_nodes);
      Json j = covering_to_json(r);
      j["n"] = z.dim();
      j["m"] = z.generator_count();
      print_json(j);
      return r.budget_hit ? 2 : 0;
    }

    if (*width_cmd) {
      LatticeZonotope z(parse_generators_arg(gens_arg));
      WidthResult w = lattice_width(z);
      Json j;
      j["value"] = std::stoll(w.value.str());
      Json dir = Json::array();
      for (const Int& x : w.direction) dir.push_back(std::stoll(x.str()));
      j["direction"] = dir;
      print_json(j);
      return 0;
    }

    if (*lambda_cmd) {
      LatticeZonotope z(parse_generators_arg(gens_arg));
      RestrictedMinimumResult r =
          restricted_successive_minimum(z, parse_rat_vec_arg(x_arg));
      Json j;
      j["value"] = rat_to_json(r.value);
      j["witness"] = rat_vec_to_json(r.witness);
      j["shift_in_lattice"] = r.shift_in_lattice;
      print_json(j);
      return 0;
    }

    if (*scan_cmd) {
      auto catalog = enumerate_lgp_catalog(opt_n, opt_m, Int(bound));
      auto report = scan_conjecture_mu(catalog, rat_from_string(tol_arg));
      if (plot_kind.empty()) {
        std::ostringstream lines;
        for (const ScanRecord& r : report)
          lines << scan_record_to_json(r).dump() << "\n";
        write_text(output, lines.str());
      } else if (plot_kind == "mu-vs-bound") {
        write_text(output, emit_plot_data(plot_kind, nullptr, &report));
      } else {
        throw Error(ErrorKind::UnknownKind, "unknown plot kind: " + plot_kind);
      }
      return 0;
    }

    if (*thr_cmd || *gap_cmd) {
      std::optional<MotionInstance> inst;
      Json j;
      if (*gap_cmd) {
        IntVec v = parse_int_vec_arg(v_arg);
        GapResult g = lonely_runner_gap(v);
        j = gap_to_json(g);
        RatVec a;
        for (const Int& x : v) a.push_back(Rat(abs_int(x)));
        inst.emplace(RatVec(v.size(), Rat(0)), a);
      } else {
        std::vector<FormalReal> alpha = parse_direction_arg(alpha_arg);
        RatVec u0 = u0_arg.empty() ? RatVec(alpha.size(), Rat(0))
                                   : parse_rat_vec_arg(u0_arg);
        bool rational = true;
        for (const FormalReal& f : alpha)
          if (!f.is_rational()) rational = false;
        DirectionSystem ds = build_direction_system(alpha);
        ZonotopeThreshold zt = obstruction_threshold_zonotope(ds, u0);
        j["epsilon_star"] = rat_to_json(zt.epsilon_star);
        j["route"] = rational ? "both" : "zonotope";
        if (zt.degenerate) j["degenerate"] = true;
        if (rational) {
          RatVec a;
          for (const FormalReal& f : alpha) a.push_back(f.rational_part());
          inst.emplace(u0, a);
          GapResult td = obstruction_threshold_time_domain(*inst);
          if (td.epsilon_star != zt.epsilon_star)
            throw Error(ErrorKind::BadParameters,
                        "internal: threshold routes disagree");
          j["witness_t"] = rat_to_json(td.witness_t);
          j["active"] = td.active;
        } else if (!zt.coset_witness.empty()) {
          j["coset_witness"] = rat_vec_to_json(zt.coset_witness);
        }
      }
      if (!plot_kind.empty()) {
        if (!inst)
          throw Error(ErrorKind::BadInput,
                      "plots need a rational motion instance");
        write_text(output, emit_plot_data(plot_kind, &*inst, nullptr));
        return 0;
      }
      print_json(j);
      return 0;
    }

    if (*equiv_cmd) {
      Rng rng(static_cast<std::uint64_t>(seed));
      std::vector<MotionInstance> insts;
      while (insts.size() < count) {
        std::size_t m =
            2 + static_cast<std::size_t>(
                    rng.range(0, static_cast<long long>(max_m) - 2));
        RatVec u0(m), a(m);
        for (std::size_t i = 0; i < m; ++i) {
          long long d = max_den / rng.range(1, max_den);
          u0[i] = Rat(Int(rng.range(0, d - 1)), Int(d));
          long long ad = max_den / rng.range(1, max_den);
          long long an = rng.range(-4 * ad, 4 * ad);
          if (an == 0) an = ad;
          a[i] = Rat(Int(an), Int(ad));
        }
        insts.emplace_back(std::move(u0), std::move(a));
      }
      EquivalenceReport rep = equivalence_harness(insts);
      Json j;
      j["instances"] = rep.records.size();
      j["discrepancies"] = rep.discrepancies;
      Json bad = Json::array();
      for (const EquivalenceRecord& r : rep.records)
        if (!r.agree) {
          Json e;
          e["index"] = r.index;
          e["time_value"] = rat_to_json(r.time_value);
          e["zonotope_value"] = rat_to_json(r.zono_value);
          e["witness_t"] = rat_to_json(r.witness_t);
          bad.push_back(e);
        }
      j["mismatches"] = bad;
      print_json(j);
      return rep.discrepancies == 0 ? 0 : 3;
    }

    if (*eps_cmd) {
      std::size_t skip = 0;
      Rat resume_sup(0);
      Json header;
      header["checkpoint"] = "explore-eps";
      header["version"] = kCheckpointVersion;
      header["n"] = opt_n;
      header["m"] = opt_m;
      header["bound"] = bound;
      std::ofstream appender;
      if (!checkpoint.empty()) {
        bool have_header = false;
        std::ifstream in(checkpoint);
        std::string line;
        if (in && std::getline(in, line)) {
          Json h = Json::parse(line);
          if (h != header)
            throw Error(ErrorKind::BadInput,
                        "checkpoint: parameters do not match");
          have_header = true;
          while (std::getline(in, line)) {
            if (line.empty()) continue;
            Json cell = Json::parse(line);
            Rat lo = rat_from_json(cell.at("mu").at(
                cell.at("mu").at("kind") == "exact" ? "value" : "lower"));
            if (lo > resume_sup) resume_sup = lo;
            ++skip;
          }
        }
        appender.open(checkpoint, std::ios::app);
        if (!appender)
          throw Error(ErrorKind::BadInput,
                      "cannot open checkpoint: " + checkpoint);
        if (!have_header) appender << header.dump() << "\n";
      }
      FlatnessConfig cfg;
      cfg.c = rat_from_string(flt_c_arg);
      auto on_cell = [&](const EpsilonCell& c) {
        if (!appender.is_open()) return;
        Json line;
        line["k"] = c.k;
        line["index"] = c.index;
        line["generators"] = generators_to_json(c.generators);
        line["mu"] = covering_to_json(c.mu);
        appender << line.dump() << "\n";
      };
      EpsilonEntry e = epsilon_explorer(opt_n, opt_m, Int(bound), budget,
                                        on_cell, skip, resume_sup, cfg);
      Json j;
      j["n"] = e.n;
      j["m"] = e.m;
      j["sup_mu"] = rat_to_json(e.sup_mu);
      j["eps"] = rat_to_json(e.eps);
      j["eps_conjectured"] = rat_to_json(e.eps_conjectured);
      j["eps_upper"] = rat_to_json(e.eps_upper);
      j["eps_lower"] = rat_to_json(e.eps_lower);
      j["best_generators"] = generators_to_json(e.best_generators);
      j["instances"] = e.instances;
      j["partial"] = e.partial;
      print_json(j);
      return e.partial ? 2 : 0;
    }

    if (*lrc_cmd) {
      LrcZonotopeCheck r = zonotopal_lrc_check(parse_int_vec_arg(v_arg));
      Json j;
      j["v"] = int_vec_to_json(r.v);
      j["n"] = r.n;
      j["lambda1"] = rat_to_json(r.lambda1);
      j["bound_schoenberg"] = rat_to_json(r.bound_schoenberg);
      j["bound_conjectured"] = rat_to_json(r.bound_conjectured);
      j["schoenberg_ok"] = r.schoenberg_ok;
      j["conjecture_ok"] = r.conjecture_ok;
      j["gap"] = rat_to_json(r.gap);
      print_json(j);
      return 0;
    }

    if (*zono_cmd) {
      LatticeZonotope z(parse_generators_arg(gens_arg));
      WidthResult w = lattice_width(z);
      LgpResult lgp = is_lgp(z.generators());
      Json j;
      j["n"] = z.dim();
      j["m"] = z.generator_count();
      j["generators"] = generators_to_json(z.generators());
      j["center"] = rat_vec_to_json(z.center());
      j["in_lgp"] = lgp.in_lgp;
      j["width"] = std::stoll(w.value.str());
      Json dir = Json::array();
      for (const Int& x : w.direction) dir.push_back(std::stoll(x.str()));
      j["width_direction"] = dir;
      print_json(j);
      return 0;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    if (e.kind() == ErrorKind::BudgetExceeded) return 2;
    if (std::string(e.what()).find("internal:") != std::string::npos)
      return 3;
    return 1;
  } catch (const Json::exception& e) {
    std::cerr << "error: invalid JSON input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
