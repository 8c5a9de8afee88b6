#pragma once

// Command-line frontend: one subcommand per computation, JSON on stdout,
// JSON errors on stderr.

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "athermal/athermal.hpp"
#include "athermal/io.hpp"

namespace athermal::cli {

using nlohmann::json;

enum ExitCode : int { kOk = 0, kInvalidInput = 2, kInfeasible = 3, kNumericFailure = 4 };

inline int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateTarget:
    case ErrorCode::TrivialRatio:
      return kInfeasible;
    case ErrorCode::NumericFailure:
      return kNumericFailure;
    default:
      return kInvalidInput;
  }
}

inline void write_error(std::ostream& err, const std::string& code, const std::string& message) {
  json j;
  j["error"] = {{"code", code}, {"message", message}};
  err << j.dump() << '\n';
}

namespace detail {

inline void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidInput, "cannot write " + path);
  f << content;
}

inline void require_same_beta(double a, double b) {
  if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(a))) {
    throw Error(ErrorCode::InvalidInput, "state files use different background beta values");
  }
}

/// Emits `text` (CSV/SVG) either to --out, with a JSON note on stdout, or
/// directly to stdout.
inline void emit_text(std::ostream& out, const std::string& text, const std::string& path,
                      const std::string& format) {
  if (path.empty()) {
    out << text;
    return;
  }
  write_file(path, text);
  out << json{{"format", format}, {"written", path}}.dump() << '\n';
}

inline void emit_json(std::ostream& out, const json& j, const std::string& path) {
  const std::string text = j.dump() + "\n";
  if (!path.empty()) write_file(path, text);
  out << text;
}

}  // namespace detail

/// Parses argv, dispatches, and returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout,
               std::ostream& err = std::cerr) {
  CLI::App app{"Convertibility, extremal temperatures and energy-gap sets for quasi-classical "
               "athermality states"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string state_path, target_path, from_path, to_path, out_path, format = "json";
  std::vector<std::string> state_paths;
  std::vector<double> gaps;
  double beta_tilde = 0.0, a = 0.0, tol = 1e-7;
  std::optional<double> e_max;
  std::size_t grid = 10000, ground_degeneracy = 0;
  bool no_header = false;

  auto* cool = app.add_subcommand("cool", "largest reachable inverse temperature of a target");
  auto* heat = app.add_subcommand("heat", "smallest reachable inverse temperature of a target");
  auto* overlap = app.add_subcommand("overlap", "largest reachable ground-state overlap");
  for (auto* sub : {cool, heat, overlap}) {
    sub->add_option("-s,--state", state_path, "resource state file")->required();
    sub->add_option("-t,--target", target_path, "target Hamiltonian (state file)")->required();
  }
  overlap->add_option("--ground-degeneracy", ground_degeneracy, "multiplicity of the target ground level");

  auto* convert = app.add_subcommand("convert", "decide convertibility from -> to");
  auto* oracle = app.add_subcommand("oracle", "decide convertibility with the LP oracle");
  for (auto* sub : {convert, oracle}) {
    sub->add_option("--from", from_path, "initial state file")->required();
    sub->add_option("--to", to_path, "target state file")->required();
  }
  oracle->add_option("--tol", tol, "phase-1 feasibility tolerance");

  auto* monotones = app.add_subcommand("monotones", "cooling/heating monotones at given gaps");
  monotones->add_option("-s,--state", state_path, "state file")->required();
  monotones->add_option("-E,--gap", gaps, "qubit energy gap (repeatable)")->required();

  auto* critical = app.add_subcommand("critical-energies", "critical gaps of a target state");
  critical->add_option("-s,--state", state_path, "target state file")->required();

  auto* eset = app.add_subcommand("eset", "set of gaps reachable at a given beta_tilde");
  eset->add_option("-s,--state", state_path, "resource state file")->required();
  eset->add_option("--beta-tilde", beta_tilde, "target inverse temperature")->required();
  eset->add_option("--e-max", e_max, "largest gap scanned");
  eset->add_option("--grid", grid, "number of w grid points");

  auto* example = app.add_subcommand("gap-example", "resource with a non-interval gap set");
  example->add_option("--a", a, "ratio beta_tilde / beta")->required();

  auto* curve = app.add_subcommand("curve", "plot testing-region boundaries");
  curve->add_option("-s,--state", state_paths, "state file (repeatable)");
  curve->add_option("--a", a, "also draw the F_a elbow curve");

  for (auto* sub : {eset, example, curve}) {
    sub->add_option("--out", out_path, "write the result to this file");
    sub->add_option("--format", format, "json, csv or svg")->check(CLI::IsMember({"json", "csv", "svg"}));
    sub->add_flag("--no-header", no_header, "omit the CSV header line");
  }
  for (auto* sub : {cool, heat, overlap, convert, oracle, monotones, critical}) {
    sub->add_option("--out", out_path, "also write the JSON result to this file");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    write_error(err, "InvalidArguments", e.what());
    return kInvalidInput;
  }

  try {
    if (cool->parsed() || heat->parsed() || overlap->parsed()) {
      const auto res = io::load_state(state_path);
      const auto tgt = io::load_state(target_path);
      detail::require_same_beta(res.context.beta(), tgt.context.beta());
      json j;
      j["beta"] = tgt.context.beta();
      if (cool->parsed()) {
        const CoolingReport rep = beta_max(res.state, tgt.context);
        j["beta_max"] = io::to_json(rep.beta_max);
        j["per_condition"] = json::array();
        for (const auto& c : rep.per_condition) {
          j["per_condition"].push_back({{"k", c.k}, {"beta_k", io::to_json(c.beta_k)}, {"alpha_k", c.alpha_k}});
        }
      } else if (heat->parsed()) {
        const HeatingReport rep = beta_min(res.state, tgt.context);
        j["beta_min"] = io::to_json(rep.beta_min);
        j["per_condition"] = json::array();
        for (const auto& c : rep.per_condition) {
          j["per_condition"].push_back(
              {{"k", c.k}, {"beta_k", io::to_json(c.beta_k)}, {"alpha_tilde_k", c.alpha_tilde_k}});
        }
      } else {
        const std::size_t d = ground_degeneracy == 0 ? tgt.context.ground_degeneracy() : ground_degeneracy;
        const double o = max_ground_overlap(res.state, tgt.context, d);
        j["o_max"] = o;
        j["ground_degeneracy"] = d;
        j["equilibrium_overlap"] = static_cast<double>(d) * gibbs_vector(tgt.context)[0];
      }
      detail::emit_json(out, j, out_path);
    } else if (convert->parsed()) {
      const auto from = io::load_state(from_path);
      const auto to = io::load_state(to_path);
      detail::require_same_beta(from.context.beta(), to.context.beta());
      json j;
      j["convertible"] = relatively_majorizes(from.state, to.state);
      if (!j["convertible"].get<bool>()) {
        const MonotoneVerdict v = check_via_monotones(from.state, to.state, from.context.beta());
        if (v.witness) {
          j["witness"] = {{"E", v.witness->energy},
                          {"kind", to_string(v.witness->kind)},
                          {"lhs", io::to_json(v.witness->lhs)},
                          {"rhs", io::to_json(v.witness->rhs)}};
        }
      }
      detail::emit_json(out, j, out_path);
    } else if (oracle->parsed()) {
      const auto from = io::load_state(from_path);
      const auto to = io::load_state(to_path);
      const FeasibilityResult fr = lp_feasible(from.state, to.state, tol);
      detail::emit_json(out, {{"feasible", fr.feasible}, {"max_violation", fr.max_violation}}, out_path);
    } else if (monotones->parsed()) {
      const auto s = io::load_state(state_path);
      const double beta = s.context.beta();
      json values = json::array();
      for (double e : gaps) {
        values.push_back({{"E", e},
                          {"C", io::to_json(cooling_monotone(s.state, beta, e))},
                          {"H", io::to_json(heating_monotone(s.state, beta, e))}});
      }
      detail::emit_json(out, {{"beta", beta}, {"values", values}}, out_path);
    } else if (critical->parsed()) {
      const auto s = io::load_state(state_path);
      const CriticalEnergySet set = critical_energies(s.state, s.context.beta());
      json entries = json::array();
      for (const auto& c : set.entries) {
        entries.push_back({{"k", c.k}, {"E", c.energy}, {"kind", to_string(c.kind)}});
      }
      detail::emit_json(out, {{"beta", s.context.beta()}, {"entries", entries}, {"degenerate", set.degenerate}},
                        out_path);
    } else if (eset->parsed()) {
      const auto s = io::load_state(state_path);
      const double beta = s.context.beta();
      const double emax = e_max.value_or(default_scan_limit(beta));
      if (format == "csv") {
        const auto samples = gap_scan(compute_elbows(s.state), beta, beta_tilde, emax, grid);
        std::string text = no_header ? "" : "E,phi,member\n";
        for (const auto& smp : samples) {
          text += io::format_g17(smp.energy) + "," + io::format_g17(smp.phi) + "," + (smp.member ? "1" : "0") + "\n";
        }
        detail::emit_text(out, text, out_path, format);
      } else if (format == "json") {
        const EnergyGapSet set = gap_set(s.state, beta, beta_tilde, emax, grid);
        json intervals = json::array();
        json closed = json::array();
        for (const auto& iv : set.intervals) {
          intervals.push_back({iv.lo, iv.hi});
          closed.push_back({iv.lo_closed, iv.hi_closed});
        }
        detail::emit_json(out,
                          {{"beta", beta},
                           {"beta_tilde", beta_tilde},
                           {"e_max", emax},
                           {"intervals", intervals},
                           {"closed", closed},
                           {"resolution", set.resolution}},
                          out_path);
      } else {
        throw Error(ErrorCode::InvalidInput, "eset supports --format json or csv");
      }
    } else if (example->parsed()) {
      const AthermalityState st = construct_gap_example(a);
      if (format != "json") throw Error(ErrorCode::InvalidInput, "gap-example writes a JSON state file");
      detail::emit_json(out, io::state_file_json(st, 1.0), out_path);
    } else if (curve->parsed()) {
      if (curve->count("--format") == 0) format = "svg";  // a plot unless asked otherwise
      std::vector<io::Series> series;
      for (std::size_t i = 0; i < state_paths.size(); ++i) {
        series.push_back(io::boundary_series(state_paths[i], io::load_state(state_paths[i]).state));
      }
      if (curve->count("--a") > 0) series.push_back(io::curve_series(a));
      if (series.empty()) throw Error(ErrorCode::InvalidInput, "curve needs --state or --a");
      if (format == "svg") {
        detail::emit_text(out, io::render_svg(series), out_path, format);
      } else if (format == "csv") {
        detail::emit_text(out, io::render_csv(series, !no_header), out_path, format);
      } else {
        json j = json::array();
        for (const auto& s : series) {
          json pts = json::array();
          for (const auto& p : s.points) pts.push_back({p.x, p.y});
          j.push_back({{"name", s.name}, {"points", pts}});
        }
        detail::emit_json(out, {{"series", j}}, out_path);
      }
    }
  } catch (const Error& e) {
    write_error(err, to_string(e.code()), e.what());
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    write_error(err, "InternalError", e.what());
    return kNumericFailure;
  }
  return kOk;
}

}  // namespace athermal::cli
