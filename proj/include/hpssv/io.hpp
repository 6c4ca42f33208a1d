#pragma once

// CSV and JSON-header serialization. CSV carries samples at round-trip
// precision; JSON carries metadata only.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "hpssv/reservoir.hpp"
#include "hpssv/state.hpp"
#include "hpssv/wigner.hpp"

namespace hpssv::io {

using Json = nlohmann::ordered_json;

/// 17 significant digits; non-finite values print as nan / inf / -inf.
inline std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << cells[i];
  }
  out << '\n';
}

inline void write_field_csv(std::ostream& out, const WignerField& field) {
  write_csv_row(out, {"q", "p", "W"});
  for (int j = 0; j < field.grid.np; ++j) {
    for (int i = 0; i < field.grid.nq; ++i) {
      write_csv_row(out, {format_real(field.grid.q(i)), format_real(field.grid.p(j)), format_real(field.at(i, j))});
    }
  }
}

inline Json state_json(const StateParams& p) {
  return {{"n", p.n()}, {"mu", p.mu()}, {"nu", p.nu()}, {"r", p.r()}, {"mu1", p.mu1()}, {"nu1", p.nu1()}};
}

inline Json reservoir_json(const ReservoirParams& res) {
  return {{"kappa_t", res.kappa_t}, {"nbar", res.nbar}, {"M", {res.m.real(), res.m.imag()}}};
}

inline Json grid_json(const PhaseGrid& g) {
  return {{"q_min", g.q_min}, {"q_max", g.q_max}, {"nq", g.nq}, {"p_min", g.p_min}, {"p_max", g.p_max}, {"np", g.np}};
}

inline Json field_metadata(const WignerField& field, const StateParams& p) {
  return {{"state", state_json(p)},
          {"grid", grid_json(field.grid)},
          {"integral", field.integral()},
          {"min_value", field.min_value()},
          {"max_imag_residue", field.max_imag_residue}};
}

inline Json field_metadata(const WignerField& field, const StateParams& p, const ReservoirParams& res) {
  Json j = field_metadata(field, p);
  j["reservoir"] = reservoir_json(res);
  return j;
}

}  // namespace hpssv::io
