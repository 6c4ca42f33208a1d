#pragma once

// Declarative parameter sweeps: a quantity, fixed or list-valued settings and
// uniform axes. Points are enumerated settings-outermost, then axes with the
// last axis varying fastest; results are written in that order regardless of
// which worker finished first.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <ostream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hpssv/detail/parallel.hpp"
#include "hpssv/detail/summation.hpp"
#include "hpssv/io.hpp"
#include "hpssv/measures.hpp"
#include "hpssv/oracle.hpp"
#include "hpssv/reservoir.hpp"
#include "hpssv/state.hpp"
#include "hpssv/wigner.hpp"

#ifndef HPSSV_VERSION
#define HPSSV_VERSION "0.0.0"
#endif

namespace hpssv::sweep {

/// Malformed or incomplete sweep description (CLI exit code 2).
class SpecError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Quantity {
  mandel_q,
  g2,
  pnd,
  quadrature_dist,
  squeezing,
  wigner_grid,
  delta,
  delta_opt,
  evolved_wigner,
  evolved_delta,
  critical_time
};

inline const std::vector<std::pair<std::string, Quantity>>& quantity_names() {
  static const std::vector<std::pair<std::string, Quantity>> names = {
      {"mandel_q", Quantity::mandel_q},
      {"g2", Quantity::g2},
      {"pnd", Quantity::pnd},
      {"quadrature_dist", Quantity::quadrature_dist},
      {"squeezing", Quantity::squeezing},
      {"wigner_grid", Quantity::wigner_grid},
      {"delta", Quantity::delta},
      {"delta_opt", Quantity::delta_opt},
      {"evolved_wigner", Quantity::evolved_wigner},
      {"evolved_delta", Quantity::evolved_delta},
      {"critical_time", Quantity::critical_time}};
  return names;
}

inline Quantity parse_quantity(const std::string& name) {
  for (const auto& [key, q] : quantity_names()) {
    if (key == name) return q;
  }
  throw SpecError("unknown quantity '" + name + "'");
}

inline std::string quantity_name(Quantity q) {
  for (const auto& [key, value] : quantity_names()) {
    if (value == q) return key;
  }
  return "?";
}

struct Param {
  std::string name;
  bool integer = false;
};

inline std::vector<Param> parameters(Quantity q, bool complex_m = false) {
  const std::vector<Param> state = {{"n", true}, {"mu"}, {"nu"}, {"r"}};
  std::vector<Param> bath = {{"kt"}, {"nbar"}, {"M"}};
  if (complex_m) bath.push_back({"M_im"});
  auto join = [](std::vector<Param> a, const std::vector<Param>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };
  switch (q) {
    case Quantity::mandel_q:
    case Quantity::g2:
    case Quantity::squeezing:
    case Quantity::delta:
      return state;
    case Quantity::pnd:
      return join(state, {{"m", true}});
    case Quantity::quadrature_dist:
      return join(state, {{"p"}});
    case Quantity::wigner_grid:
      return join(state, {{"q"}, {"p"}});
    case Quantity::delta_opt:
      return {{"n", true}, {"r"}, {"samples", true}};
    case Quantity::evolved_wigner:
      return join(join(state, bath), {{"q"}, {"p"}});
    case Quantity::evolved_delta:
      return join(state, bath);
    case Quantity::critical_time: {
      std::vector<Param> out = {{"nbar"}, {"M"}};
      if (complex_m) out.push_back({"M_im"});
      return out;
    }
  }
  return {};
}

/// Coordinates that vary within one state (or state + bath) series.
inline bool is_point_coordinate(Quantity q, const std::string& name) {
  switch (q) {
    case Quantity::pnd:
      return name == "m";
    case Quantity::quadrature_dist:
      return name == "p";
    case Quantity::wigner_grid:
    case Quantity::evolved_wigner:
      return name == "q" || name == "p";
    default:
      return false;
  }
}

inline std::vector<std::string> value_columns(Quantity q) {
  if (q == Quantity::delta_opt) return {"nu_opt", "delta_opt"};
  return {"value"};
}

inline bool has_oracle(Quantity q) {
  switch (q) {
    case Quantity::delta:
    case Quantity::delta_opt:
    case Quantity::evolved_delta:
    case Quantity::critical_time:
      return false;
    default:
      return true;
  }
}

/// A value expression: a number, sqrt(x), 1/sqrt(x), or sqrt(1-<param>^2).
struct Expr {
  std::string text;
  double constant = 0.0;
  std::string depends_on;

  static Expr parse(const std::string& raw) {
    static const std::regex sqrt_form(R"(sqrt\(([^()]+)\))");
    static const std::regex inv_sqrt_form(R"(1/sqrt\(([^()]+)\))");
    static const std::regex unit_form(R"(sqrt\(1-([A-Za-z_]+)\^2\))");
    Expr e;
    e.text = raw;
    std::smatch m;
    if (std::regex_match(raw, m, unit_form)) {
      e.depends_on = m[1];
    } else if (std::regex_match(raw, m, inv_sqrt_form)) {
      e.constant = 1.0 / std::sqrt(number(m[1], raw));
    } else if (std::regex_match(raw, m, sqrt_form)) {
      e.constant = std::sqrt(number(m[1], raw));
    } else {
      e.constant = number(raw, raw);
    }
    if (e.depends_on.empty() && !std::isfinite(e.constant)) throw SpecError("non-finite value '" + raw + "'");
    return e;
  }

  static double number(const std::string& s, const std::string& context) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      throw SpecError("cannot parse value '" + context + "'");
    }
    if (used != s.size()) throw SpecError("cannot parse value '" + context + "'");
    return v;
  }
};

/// `key=v1,v2,...` or the zipped form `a+b=x1:y1,x2:y2`.
struct Setting {
  std::vector<std::string> keys;
  std::vector<std::vector<Expr>> rows;
  std::string text;

  static Setting parse(const std::string& text) {
    const auto eq = text.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == text.size()) {
      throw SpecError("setting '" + text + "' is not key=value");
    }
    Setting s;
    s.text = text;
    s.keys = split(text.substr(0, eq), '+');
    for (const auto& item : split(text.substr(eq + 1), ',')) {
      const auto parts = split(item, ':');
      if (parts.size() != s.keys.size()) {
        throw SpecError("setting '" + text + "': expected " + std::to_string(s.keys.size()) + " values per entry");
      }
      std::vector<Expr> row;
      for (const auto& p : parts) row.push_back(Expr::parse(p));
      s.rows.push_back(std::move(row));
    }
    return s;
  }

  static std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) {
      if (cur.empty()) throw SpecError("empty field in '" + s + "'");
      out.push_back(cur);
    }
    if (!s.empty() && s.back() == sep) throw SpecError("empty field in '" + s + "'");
    return out;
  }
};

/// `name:start:stop:count`, inclusive of both ends.
struct Axis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
  std::string text;

  static Axis parse(const std::string& text) {
    const auto parts = Setting::split(text, ':');
    if (parts.size() != 4) throw SpecError("axis '" + text + "' is not name:start:stop:count");
    Axis a;
    a.text = text;
    a.name = parts[0];
    a.start = Expr::parse(parts[1]).constant;
    a.stop = Expr::parse(parts[2]).constant;
    if (!Expr::parse(parts[1]).depends_on.empty() || !Expr::parse(parts[2]).depends_on.empty()) {
      throw SpecError("axis '" + text + "': bounds must be constants");
    }
    const double c = Expr::number(parts[3], text);
    if (c != std::floor(c) || c < 2 || c > 1e6) throw SpecError("axis '" + text + "': count must be an integer >= 2");
    a.count = static_cast<int>(c);
    return a;
  }

  double value(int i) const {
    if (i == count - 1) return stop;
    return start + (stop - start) * static_cast<double>(i) / (count - 1);
  }
};

struct SweepSpec {
  Quantity quantity = Quantity::mandel_q;
  std::vector<Setting> sets;
  std::vector<Axis> axes;
  bool oracle = false;
  bool complex_m = false;
  std::string format = "csv";
  double tol = 1e-4;
  std::string preset;

  /// Adds or replaces (by identical key list) a setting.
  void set(const std::string& text) {
    Setting s = Setting::parse(text);
    for (auto& existing : sets) {
      if (existing.keys == s.keys) {
        existing = std::move(s);
        return;
      }
    }
    sets.push_back(std::move(s));
  }
  void axis(const std::string& text) {
    Axis a = Axis::parse(text);
    for (auto& existing : axes) {
      if (existing.name == a.name) {
        existing = std::move(a);
        return;
      }
    }
    axes.push_back(std::move(a));
  }
};

inline SweepSpec spec_from_json(const io::Json& j) {
  SweepSpec spec;
  try {
    spec.quantity = parse_quantity(j.at("quantity").get<std::string>());
    if (j.contains("name")) spec.preset = j["name"].get<std::string>();
    if (j.contains("complex_m")) spec.complex_m = j["complex_m"].get<bool>();
    if (j.contains("tol")) spec.tol = j["tol"].get<double>();
    if (j.contains("format")) spec.format = j["format"].get<std::string>();
    for (const auto& s : j.value("set", io::Json::array())) spec.set(s.get<std::string>());
    for (const auto& a : j.value("axis", io::Json::array())) spec.axis(a.get<std::string>());
  } catch (const io::Json::exception& e) {
    throw SpecError(std::string("preset: ") + e.what());
  }
  return spec;
}

inline SweepSpec load_preset(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open preset '" + path + "'");
  io::Json j;
  try {
    j = io::Json::parse(in);
  } catch (const io::Json::exception& e) {
    throw SpecError("preset '" + path + "': " + e.what());
  }
  return spec_from_json(j);
}

/// One fully resolved parameter point, ordered as parameters(quantity).
using Point = std::vector<double>;

struct Plan {
  std::vector<Param> params;
  std::vector<Point> points;
};

inline Plan plan(const SweepSpec& spec) {
  if (spec.format != "csv" && spec.format != "json") throw SpecError("format must be csv or json");
  if (!(spec.tol > 0.0)) throw SpecError("tol must be positive");
  if (spec.oracle && !has_oracle(spec.quantity)) {
    throw SpecError("no oracle for quantity " + quantity_name(spec.quantity));
  }
  Plan out;
  out.params = parameters(spec.quantity, spec.complex_m);
  const auto index_of = [&](const std::string& name) -> int {
    for (std::size_t i = 0; i < out.params.size(); ++i) {
      if (out.params[i].name == name) return static_cast<int>(i);
    }
    throw SpecError("parameter '" + name + "' does not apply to " + quantity_name(spec.quantity));
  };

  std::vector<int> owner(out.params.size(), -1);
  const auto claim = [&](const std::string& name, int who) {
    const int i = index_of(name);
    if (owner[i] != -1) throw SpecError("parameter '" + name + "' given twice");
    owner[i] = who;
    return i;
  };
  std::vector<std::vector<int>> set_slots;
  for (std::size_t s = 0; s < spec.sets.size(); ++s) {
    std::vector<int> slots;
    for (const auto& k : spec.sets[s].keys) slots.push_back(claim(k, static_cast<int>(s)));
    set_slots.push_back(slots);
  }
  std::vector<int> axis_slots;
  for (const auto& a : spec.axes) axis_slots.push_back(claim(a.name, 1000));
  for (std::size_t i = 0; i < out.params.size(); ++i) {
    if (owner[i] == -1) throw SpecError("missing parameter '" + out.params[i].name + "'");
  }

  std::size_t total = 1;
  for (const auto& s : spec.sets) total *= s.rows.size();
  for (const auto& a : spec.axes) total *= static_cast<std::size_t>(a.count);
  if (total > 50'000'000) throw SpecError("sweep has too many points");
  out.points.reserve(total);

  std::vector<std::size_t> digit(spec.sets.size() + spec.axes.size(), 0);
  std::vector<std::size_t> radix;
  for (const auto& s : spec.sets) radix.push_back(s.rows.size());
  for (const auto& a : spec.axes) radix.push_back(static_cast<std::size_t>(a.count));

  for (std::size_t idx = 0; idx < total; ++idx) {
    Point pt(out.params.size(), 0.0);
    std::vector<const Expr*> pending(out.params.size(), nullptr);
    for (std::size_t s = 0; s < spec.sets.size(); ++s) {
      const auto& row = spec.sets[s].rows[digit[s]];
      for (std::size_t k = 0; k < row.size(); ++k) {
        if (row[k].depends_on.empty()) {
          pt[set_slots[s][k]] = row[k].constant;
        } else {
          pending[set_slots[s][k]] = &row[k];
        }
      }
    }
    for (std::size_t a = 0; a < spec.axes.size(); ++a) {
      pt[axis_slots[a]] = spec.axes[a].value(static_cast<int>(digit[spec.sets.size() + a]));
    }
    for (std::size_t i = 0; i < pt.size(); ++i) {
      if (!pending[i]) continue;
      const int dep = index_of(pending[i]->depends_on);
      if (pending[dep]) throw SpecError("'" + pending[i]->text + "' refers to another derived value");
      const double x = pt[dep];
      if (std::abs(x) > 1.0) throw SpecError("'" + pending[i]->text + "' undefined at " + std::to_string(x));
      pt[i] = std::sqrt(1.0 - x * x);
    }
    for (std::size_t i = 0; i < pt.size(); ++i) {
      if (out.params[i].integer && (pt[i] != std::round(pt[i]) || pt[i] < 0)) {
        throw SpecError("parameter '" + out.params[i].name + "' must be a non-negative integer");
      }
    }
    out.points.push_back(std::move(pt));

    for (std::size_t d = digit.size(); d-- > 0;) {
      if (++digit[d] < radix[d]) break;
      digit[d] = 0;
    }
  }
  return out;
}

struct PointResult {
  std::vector<double> values;
  double oracle = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
  double imag_residue = 0.0;
  double normalization_error = 0.0;
};

struct SweepResult {
  Plan plan;
  std::vector<PointResult> results;
  io::Json diagnostics;
};

namespace detail {

struct Lookup {
  const std::vector<Param>& params;
  const Point& pt;
  double operator()(const std::string& name, double fallback = 0.0) const {
    for (std::size_t i = 0; i < params.size(); ++i) {
      if (params[i].name == name) return pt[i];
    }
    return fallback;
  }
  int integer(const std::string& name) const { return static_cast<int>(std::lround((*this)(name))); }
  StateParams state() const { return StateParams(integer("n"), (*this)("mu"), (*this)("nu"), (*this)("r")); }
  ReservoirParams bath() const { return {(*this)("kt"), (*this)("nbar"), Complex((*this)("M"), (*this)("M_im"))}; }
};

/// Shared per-series state: the oracle representation and, for the
/// quadrature distribution, its normalization integral.
struct Series {
  std::optional<oracle::FockState> state;
  std::optional<oracle::FockDensity> density;
  double normalization = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
};

inline double quadrature_normalization(const StateParams& s) {
  const double half = 8.0 * std::exp(std::abs(s.r())) * std::sqrt(s.n() + 1.0);
  const int intervals = 8000;
  const double h = 2.0 * half / intervals;
  std::vector<double> terms(intervals + 1);
  for (int i = 0; i <= intervals; ++i) {
    terms[i] = hpssv::detail::simpson_weight(i, intervals) * quadrature_dist(s, -half + i * h);
  }
  return hpssv::detail::pairwise_sum(terms) * h / 3.0;
}

inline oracle::FockState oracle_state(const StateParams& s) {
  return oracle::build_state(s, oracle::adequate_cutoff(s));
}

inline double oracle_mandel_q(const oracle::FockState& st) {
  const double mean = oracle::oracle_moment(st, 1, 1).real();
  if (mean == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return oracle::oracle_moment(st, 2, 2).real() / mean - mean;
}

}  // namespace detail

inline SweepResult run(const SweepSpec& spec) {
  SweepResult out;
  out.plan = plan(spec);
  const auto& params = out.plan.params;
  const auto& points = out.plan.points;
  const Quantity q = spec.quantity;

  // group points into series (all parameters but the point coordinates)
  std::vector<std::size_t> series_of(points.size());
  std::vector<std::size_t> series_first;
  {
    std::map<std::vector<double>, std::size_t> index;
    for (std::size_t i = 0; i < points.size(); ++i) {
      std::vector<double> key;
      for (std::size_t k = 0; k < params.size(); ++k) {
        if (!is_point_coordinate(q, params[k].name)) key.push_back(points[i][k]);
      }
      auto [it, inserted] = index.emplace(key, series_first.size());
      if (inserted) series_first.push_back(i);
      series_of[i] = it->second;
    }
  }
  const bool need_series = spec.oracle || q == Quantity::quadrature_dist;
  std::vector<detail::Series> series(need_series ? series_first.size() : 0);
  if (need_series) {
    hpssv::detail::parallel_for(series.size(), [&](std::size_t k) {
      const detail::Lookup look{params, points[series_first[k]]};
      auto& sr = series[k];
      try {
        const StateParams s = look.state();
        if (q == Quantity::quadrature_dist) sr.normalization = detail::quadrature_normalization(s);
        if (!spec.oracle) return;
        sr.state = detail::oracle_state(s);
        if (q == Quantity::evolved_wigner) {
          const ReservoirParams res = look.bath();
          res.validate();
          sr.density = oracle::evolve_master_equation(oracle::FockDensity::pure(*sr.state), res,
                                                      oracle::steps_for(res.kappa_t))
                           .rho;
        }
      } catch (const Error& e) {
        if (!e.undefined_point()) throw;
        sr.status = e.name();
      }
    });
  }

  out.results.resize(points.size());
  hpssv::detail::parallel_for(points.size(), [&](std::size_t i) {
    const detail::Lookup look{params, points[i]};
    PointResult& res = out.results[i];
    try {
      switch (q) {
        case Quantity::mandel_q:
          res.values = {mandel_q(look.state())};
          break;
        case Quantity::g2:
          res.values = {g2(look.state())};
          break;
        case Quantity::squeezing:
          res.values = {squeezing_degree(look.state())};
          break;
        case Quantity::pnd: {
          const int m = look.integer("m");
          res.values = {pnd(look.state(), m).probabilities[m]};
          break;
        }
        case Quantity::quadrature_dist:
          res.values = {quadrature_dist(look.state(), look("p"))};
          res.normalization_error = std::abs(series[series_of[i]].normalization - 1.0);
          break;
        case Quantity::wigner_grid: {
          const auto w = WignerEvaluator(look.state()).evaluate(phase_point(look("q"), look("p")));
          res.values = {w.value};
          res.imag_residue = w.imag_residue;
          break;
        }
        case Quantity::delta: {
          const auto integral = negative_volume_integral(look.state(), spec.tol);
          res.values = {integral.negative_volume()};
          res.normalization_error = std::abs(integral.integral - 1.0);
          break;
        }
        case Quantity::delta_opt: {
          const auto best = optimize_delta(look.integer("n"), look("r"), look.integer("samples"), spec.tol);
          res.values = {best.nu_opt, best.delta_opt};
          break;
        }
        case Quantity::evolved_wigner: {
          const auto w = EvolvedWignerEvaluator(look.state(), look.bath()).evaluate(phase_point(look("q"), look("p")));
          res.values = {w.value};
          res.imag_residue = w.imag_residue;
          break;
        }
        case Quantity::evolved_delta: {
          const auto integral = evolved_negative_volume_integral(look.state(), look.bath(), spec.tol);
          res.values = {integral.negative_volume()};
          res.normalization_error = std::abs(integral.integral - 1.0);
          break;
        }
        case Quantity::critical_time:
          res.values = {critical_time(look("nbar"), Complex(look("M"), look("M_im")))};
          break;
      }
      if (spec.oracle) {
        const auto& sr = series[series_of[i]];
        if (!sr.state) {
          res.oracle = std::numeric_limits<double>::quiet_NaN();
        } else {
          const auto& st = *sr.state;
          switch (q) {
            case Quantity::mandel_q:
              res.oracle = detail::oracle_mandel_q(st);
              break;
            case Quantity::g2: {
              const double mean = oracle::oracle_moment(st, 1, 1).real();
              res.oracle = oracle::oracle_moment(st, 2, 2).real() / (mean * mean);
              break;
            }
            case Quantity::squeezing:
              res.oracle = 2.0 * (oracle::oracle_moment(st, 1, 1).real() - std::abs(oracle::oracle_moment(st, 2, 0)));
              break;
            case Quantity::pnd: {
              const int m = look.integer("m");
              res.oracle = m <= st.cutoff ? oracle::oracle_pnd(st, m)[m] : 0.0;
              break;
            }
            case Quantity::quadrature_dist:
              res.oracle = oracle::oracle_quadrature(st, look("p"));
              break;
            case Quantity::wigner_grid:
              res.oracle = oracle::oracle_wigner(st, phase_point(look("q"), look("p")));
              break;
            case Quantity::evolved_wigner:
              res.oracle = oracle::oracle_wigner(*sr.density, phase_point(look("q"), look("p")));
              break;
            default:
              break;
          }
        }
      }
    } catch (const Error& e) {
      if (!e.undefined_point()) throw;
      res.values.assign(value_columns(q).size(), std::numeric_limits<double>::quiet_NaN());
      res.status = e.name();
    }
  });

  io::Json diag = io::Json::object();
  double residue = 0.0, norm_err = 0.0, oracle_gap = 0.0;
  std::size_t undefined = 0;
  for (const auto& r : out.results) {
    residue = std::max(residue, r.imag_residue);
    norm_err = std::max(norm_err, r.normalization_error);
    if (r.status != "ok") ++undefined;
    if (spec.oracle && std::isfinite(r.oracle) && std::isfinite(r.values[0])) {
      oracle_gap = std::max(oracle_gap, std::abs(r.values[0] - r.oracle));
    }
  }
  diag["points"] = points.size();
  diag["undefined_points"] = undefined;
  if (q == Quantity::wigner_grid || q == Quantity::evolved_wigner) diag["max_imag_residue"] = residue;
  if (q == Quantity::quadrature_dist || q == Quantity::delta || q == Quantity::evolved_delta) {
    diag["max_normalization_error"] = norm_err;
  }
  if (q == Quantity::quadrature_dist) {
    io::Json list = io::Json::array();
    for (std::size_t k = 0; k < series.size(); ++k) {
      io::Json entry;
      const auto& pt = points[series_first[k]];
      for (std::size_t j = 0; j < params.size(); ++j) {
        if (!is_point_coordinate(q, params[j].name)) entry[params[j].name] = pt[j];
      }
      entry["integral"] = series[k].normalization;
      entry["flagged"] = !(std::abs(series[k].normalization - 1.0) <= 1e-6);
      list.push_back(entry);
    }
    diag["quadrature_normalization"] = list;
  }
  if (spec.oracle) diag["max_oracle_gap"] = oracle_gap;
  out.diagnostics = diag;
  return out;
}

inline io::Json spec_json(const SweepSpec& spec) {
  io::Json j;
  if (!spec.preset.empty()) j["preset"] = spec.preset;
  j["quantity"] = quantity_name(spec.quantity);
  io::Json sets = io::Json::array();
  for (const auto& s : spec.sets) sets.push_back(s.text);
  io::Json axes = io::Json::array();
  for (const auto& a : spec.axes) axes.push_back(a.text);
  j["set"] = sets;
  j["axis"] = axes;
  j["oracle"] = spec.oracle;
  j["complex_m"] = spec.complex_m;
  j["tol"] = spec.tol;
  j["format"] = spec.format;
  return j;
}

inline io::Json metadata(const SweepSpec& spec, const SweepResult& result) {
  io::Json j;
  j["version"] = HPSSV_VERSION;
  j["spec"] = spec_json(spec);
  io::Json columns = io::Json::array();
  for (const auto& p : result.plan.params) columns.push_back(p.name);
  for (const auto& c : value_columns(spec.quantity)) columns.push_back(c);
  if (spec.oracle) columns.push_back("oracle");
  columns.push_back("status");
  j["columns"] = columns;
  j["diagnostics"] = result.diagnostics;
  return j;
}

inline void write_csv(std::ostream& out, const SweepSpec& spec, const SweepResult& result) {
  std::vector<std::string> header;
  for (const auto& p : result.plan.params) header.push_back(p.name);
  for (const auto& c : value_columns(spec.quantity)) header.push_back(c);
  if (spec.oracle) header.push_back("oracle");
  header.push_back("status");
  io::write_csv_row(out, header);
  for (std::size_t i = 0; i < result.results.size(); ++i) {
    std::vector<std::string> row;
    for (double v : result.plan.points[i]) row.push_back(io::format_real(v));
    for (double v : result.results[i].values) row.push_back(io::format_real(v));
    if (spec.oracle) row.push_back(io::format_real(result.results[i].oracle));
    row.push_back(result.results[i].status);
    io::write_csv_row(out, row);
  }
}

}  // namespace hpssv::sweep
