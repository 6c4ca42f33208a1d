#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <limits>
#include <sstream>
#include <string>

#include "hpssv/io.hpp"

using hpssv::StateParams;
namespace io = hpssv::io;

TEST(FormatReal, RoundTrips) {
  for (double v : {0.1, -1.0 / 3.0, 6.02214076e23, 5e-324, 1.0}) {
    EXPECT_EQ(std::strtod(io::format_real(v).c_str(), nullptr), v);
  }
  EXPECT_EQ(io::format_real(std::numeric_limits<double>::quiet_NaN()), "nan");
  EXPECT_EQ(io::format_real(-std::numeric_limits<double>::infinity()), "-inf");
  EXPECT_EQ(io::format_real(0.5), "0.5");
}

TEST(FieldCsv, LayoutAndValues) {
  const StateParams p(1, 1.0, 1.0, 0.3);
  const auto field = hpssv::wigner_grid(p, hpssv::PhaseGrid::symmetric(2.0, 5));
  std::ostringstream out;
  io::write_field_csv(out, field);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "q,p,W");
  int rows = 0;
  while (std::getline(in, line)) {
    double q = 0.0, pv = 0.0, w = 0.0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%lf,%lf,%lf", &q, &pv, &w), 3);
    EXPECT_EQ(w, field.at(rows % 5, rows / 5));
    EXPECT_EQ(q, field.grid.q(rows % 5));
    ++rows;
  }
  EXPECT_EQ(rows, 25);
}

TEST(FieldMetadata, CarriesStateAndReservoir) {
  const StateParams p(2, 1.0, 1.0, 0.3);
  const hpssv::ReservoirParams res{0.08, 1.0, 0.1};
  const auto field = hpssv::evolved_wigner_grid(p, res, hpssv::PhaseGrid::symmetric(3.0, 7));
  const auto meta = io::field_metadata(field, p, res);
  EXPECT_EQ(meta["state"]["n"], 2);
  EXPECT_EQ(meta["grid"]["nq"], 7);
  EXPECT_EQ(meta["reservoir"]["nbar"], 1.0);
  EXPECT_EQ(meta["max_imag_residue"].get<double>(), field.max_imag_residue);
  const auto again = io::Json::parse(meta.dump());
  EXPECT_EQ(again, meta);
}
