#pragma once

// State files, JSON encoding of results and boundary plots (SVG / CSV).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <json.hpp>

#include "athermal/core.hpp"
#include "athermal/esets.hpp"
#include "athermal/majorization.hpp"
#include "athermal/thermo.hpp"

namespace athermal::io {

using nlohmann::json;

/// On-disk description of a state: a Hamiltonian spectrum, the background
/// inverse temperature and at most one of populations / density matrix.
/// With neither, the file describes the free Gibbs state.
struct StateFile {
  std::vector<double> energies;
  double beta = 1.0;
  std::optional<std::vector<double>> populations;
  std::optional<Eigen::MatrixXcd> density_matrix;
};

/// Validated content of a state file.
struct LoadedState {
  GibbsContext context;
  AthermalityState state;
};

inline StateFile parse_state_file(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "state file must be a JSON object");
  if (!j.contains("energies") || !j.contains("beta")) {
    throw Error(ErrorCode::InvalidInput, "state file needs \"energies\" and \"beta\"");
  }
  StateFile f;
  try {
    f.energies = j.at("energies").get<std::vector<double>>();
    f.beta = j.at("beta").get<double>();
    if (j.contains("populations")) f.populations = j.at("populations").get<std::vector<double>>();
    if (j.contains("density_matrix")) {
      const json& rows = j.at("density_matrix");
      const auto n = static_cast<Eigen::Index>(rows.size());
      Eigen::MatrixXcd m(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        const json& row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<Eigen::Index>(row.size()) != n) {
          throw Error(ErrorCode::InvalidDensityMatrix, "density matrix must be square");
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const auto re_im = row.at(static_cast<std::size_t>(k)).get<std::vector<double>>();
          if (re_im.size() != 2) {
            throw Error(ErrorCode::InvalidDensityMatrix, "matrix entries are [re, im] pairs");
          }
          m(i, k) = {re_im[0], re_im[1]};
        }
      }
      f.density_matrix = std::move(m);
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("malformed state file: ") + e.what());
  }
  if (f.populations && f.density_matrix) {
    throw Error(ErrorCode::InvalidInput, "state file may carry populations or a density matrix, not both");
  }
  return f;
}

inline LoadedState resolve(const StateFile& f) {
  GibbsContext ctx(f.energies, f.beta);
  if (f.populations) {
    if (f.populations->size() != f.energies.size()) {
      throw Error(ErrorCode::DimensionMismatch, "populations and energies differ in length");
    }
    std::vector<double> r = ctx.permute<double>(*f.populations);
    return {ctx, AthermalityState(ProbabilityVector(std::move(r)), gibbs_vector(ctx))};
  }
  if (f.density_matrix) {
    if (static_cast<std::size_t>(f.density_matrix->rows()) != f.energies.size()) {
      throw Error(ErrorCode::DimensionMismatch, "density matrix and energies differ in dimension");
    }
    return {ctx, to_quasiclassical(DensityMatrix(*f.density_matrix), ctx)};
  }
  const ProbabilityVector g = gibbs_vector(ctx);
  return {ctx, AthermalityState(g, g)};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidInput, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, path + ": " + e.what());
  }
}

inline LoadedState load_state(const std::string& path) {
  return resolve(parse_state_file(read_json_file(path)));
}

/// State file for (context, state) with levels in sorted order.
inline json state_file_json(const GibbsContext& ctx, const AthermalityState& state) {
  json j;
  j["energies"] = std::vector<double>(ctx.energies().begin(), ctx.energies().end());
  j["beta"] = ctx.beta();
  j["populations"] = std::vector<double>(state.r().begin(), state.r().end());
  return j;
}

/// State file describing `state` at background `beta`: energies are
/// recovered from g as -ln(g_i)/beta, shifted so the ground level sits at 0.
inline json state_file_json(const AthermalityState& state, double beta) {
  std::vector<double> h(state.dim());
  for (std::size_t i = 0; i < h.size(); ++i) h[i] = -std::log(state.g()[i]) / beta;
  const double h0 = *std::min_element(h.begin(), h.end());
  for (double& x : h) x -= h0;
  GibbsContext ctx(h, beta);
  const std::vector<double> r = ctx.permute<double>(state.r().entries());
  json j;
  j["energies"] = std::vector<double>(ctx.energies().begin(), ctx.energies().end());
  j["beta"] = beta;
  j["populations"] = r;
  return j;
}

/// Finite values as numbers, infinities as "+inf" / "-inf".
inline json to_json(const ExtendedReal& v) {
  if (v.is_finite()) return v.value();
  return v.is_plus_infinity() ? "+inf" : "-inf";
}

inline std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

struct Series {
  std::string name;
  std::vector<Point> points;
};

inline Series boundary_series(const std::string& name, const AthermalityState& state) {
  return {name, compute_elbows(state).elbows()};
}

/// Samples of the F_a curve over w in (0, 1].
inline Series curve_series(double a, std::size_t samples = 200) {
  Series s{"F_a(a=" + format_g17(a) + ")", {}};
  for (std::size_t i = 1; i <= samples; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(samples);
    s.points.push_back(fa_point(a, w));
  }
  return s;
}

/// `series,x,y` rows with a header line unless suppressed.
inline std::string render_csv(const std::vector<Series>& series, bool header = true) {
  std::string out = header ? "series,x,y\n" : "";
  for (const auto& s : series) {
    for (const auto& p : s.points) out += s.name + "," + format_g17(p.x) + "," + format_g17(p.y) + "\n";
  }
  return out;
}

/// 600x600 plot of the unit square, the diagonal and one polyline per series.
inline std::string render_svg(const std::vector<Series>& series) {
  static const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
  auto px = [](double x) { return 50.0 + 500.0 * x; };
  auto py = [](double y) { return 550.0 - 500.0 * y; };
  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 600 600\" width=\"600\" height=\"600\">\n";
  o << "  <rect x=\"50\" y=\"50\" width=\"500\" height=\"500\" fill=\"none\" stroke=\"black\"/>\n";
  o << "  <line class=\"diagonal\" x1=\"50\" y1=\"550\" x2=\"550\" y2=\"50\" stroke=\"gray\" stroke-dasharray=\"4 4\"/>\n";
  o << "  <text x=\"300\" y=\"590\" text-anchor=\"middle\">x</text>\n";
  o << "  <text x=\"15\" y=\"300\" text-anchor=\"middle\">y</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    o << "  <polyline data-series=\"" << series[k].name << "\" fill=\"none\" stroke=\""
      << palette[k % std::size(palette)] << "\" points=\"";
    for (std::size_t i = 0; i < series[k].points.size(); ++i) {
      if (i) o << ' ';
      o << format_g17(px(series[k].points[i].x)) << ',' << format_g17(py(series[k].points[i].y));
    }
    o << "\"/>\n";
  }
  o << "</svg>\n";
  return o.str();
}

enum class PlotFormat { Svg, Csv };

inline std::string render_boundary(const std::vector<AthermalityState>& states, PlotFormat format) {
  std::vector<Series> series;
  for (std::size_t i = 0; i < states.size(); ++i) {
    series.push_back(boundary_series("state" + std::to_string(i), states[i]));
  }
  return format == PlotFormat::Svg ? render_svg(series) : render_csv(series);
}

}  // namespace athermal::io
