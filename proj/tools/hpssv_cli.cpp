#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "hpssv/sweep.hpp"

#ifndef HPSSV_PRESET_DIR
#define HPSSV_PRESET_DIR "presets"
#endif

namespace {

namespace sweep = hpssv::sweep;

constexpr int kSpecFailure = 2;
constexpr int kNumericFailure = 3;

std::string preset_path(const std::string& name, const std::string& dir) {
  if (name.find('/') != std::string::npos || name.ends_with(".json")) return name;
  return (std::filesystem::path(dir) / (name + ".json")).string();
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sweep::SpecError("cannot write '" + path + "'");
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Nonclassicality measures and reservoir evolution of Hermite-excited squeezed vacuum"};
  app.set_version_flag("--version", std::string(HPSSV_VERSION));

  std::string quantity, preset, out_path, format, preset_dir = HPSSV_PRESET_DIR;
  std::vector<std::string> sets, axes;
  bool oracle = false, complex_m = false;
  double tol = 0.0;
  app.add_option("--quantity", quantity, "Quantity to compute")
      ->check(CLI::IsMember({"mandel_q", "g2", "pnd", "quadrature_dist", "squeezing", "wigner_grid", "delta",
                             "delta_opt", "evolved_wigner", "evolved_delta", "critical_time"}));
  app.add_option("--set", sets, "key=value[,value...] or a+b=x:y[,x:y...]; lists form series");
  app.add_option("--axis", axes, "name:start:stop:count");
  app.add_option("--preset", preset, "Preset name or path to a preset JSON file");
  app.add_option("--preset-dir", preset_dir, "Directory searched for preset names");
  app.add_flag("--oracle", oracle, "Add a Fock-space oracle column");
  app.add_flag("--complex-m", complex_m, "Accept an imaginary part M_im for the bath correlation");
  app.add_option("--out", out_path, "Output file; CSV output also writes <out>.json metadata");
  app.add_option("--format", format, "csv or json (metadata only)")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--tol", tol, "Absolute tolerance for negative-volume quadrature")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kSpecFailure;
  }

  try {
    sweep::SweepSpec spec;
    if (!preset.empty()) {
      spec = sweep::load_preset(preset_path(preset, preset_dir));
      if (!quantity.empty() && sweep::parse_quantity(quantity) != spec.quantity) {
        throw sweep::SpecError("--quantity conflicts with the preset");
      }
    } else if (quantity.empty()) {
      throw sweep::SpecError("one of --quantity or --preset is required");
    } else {
      spec.quantity = sweep::parse_quantity(quantity);
    }
    for (const auto& s : sets) spec.set(s);
    for (const auto& a : axes) spec.axis(a);
    if (oracle) spec.oracle = true;
    if (complex_m) spec.complex_m = true;
    if (!format.empty()) spec.format = format;
    if (tol > 0.0) spec.tol = tol;

    const auto result = sweep::run(spec);
    const std::string meta = sweep::metadata(spec, result).dump(2) + "\n";
    if (spec.format == "json") {
      if (out_path.empty()) {
        std::cout << meta;
      } else {
        write_text(out_path, meta);
      }
      return 0;
    }
    std::ostringstream csv;
    sweep::write_csv(csv, spec, result);
    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      write_text(out_path, csv.str());
      write_text(out_path + ".json", meta);
    }
    return 0;
  } catch (const sweep::SpecError& e) {
    std::cerr << "spec error: " << e.what() << "\n";
    return kSpecFailure;
  } catch (const hpssv::Error& e) {
    std::cerr << e.what() << "\n";
    return kNumericFailure;
  }
}
