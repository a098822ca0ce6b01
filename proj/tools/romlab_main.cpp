/// romlab: parameter sweeps for the POD filter and L-ROM studies.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "romlab/study.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;

std::vector<double> parse_sweep(const std::string& text) {
  std::vector<double> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty entry in --sweep");
    std::size_t used = 0;
    const double v = std::stod(item, &used);
    if (used != item.size()) throw std::invalid_argument("bad number in --sweep: " + item);
    values.push_back(v);
  }
  return values;
}

std::filesystem::path plot_path(const std::filesystem::path& csv) {
  auto p = csv;
  p.replace_extension(".dat");
  return p;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Filtered POD reduced-order model studies"};

  std::string kind_name;
  std::size_t mesh_n = 0, r = 0, threads = 0;
  double delta = -1, dt = -1, nu = -1, t_final = -1;
  std::string sweep_text, out, cache_dir, linearization = "picard-implicit";
  std::string h1 = "full", variant = "rom-state";

  app.add_option("study", kind_name,
                 "filter-delta | filter-r | lrom-dt | lrom-delta | lrom-r")
      ->required();
  app.add_option("--mesh-n", mesh_n, "cells per side");
  app.add_option("--r", r, "number of POD modes");
  app.add_option("--delta", delta, "filter radius");
  app.add_option("--dt", dt, "ROM time step");
  app.add_option("--nu", nu, "viscosity");
  app.add_option("--t-final", t_final, "final time");
  app.add_option("--sweep", sweep_text, "comma separated sweep values");
  app.add_option("--out", out, "CSV output path (plot data goes next to it as .dat)");
  app.add_option("--cache", cache_dir, "POD cache directory");
  app.add_option("--linearization", linearization, "picard-implicit | semi-implicit");
  app.add_option("--h1-convention", h1, "full | seminorm");
  app.add_option("--error-variant", variant, "rom-state | filtered-snapshot");
  app.add_option("--threads", threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalidConfig;
  }

  romlab::StudyConfig cfg;
  try {
    const auto kind = romlab::parse_study_kind(kind_name);
    if (!kind) throw std::invalid_argument("unknown study kind: " + kind_name);
    cfg = romlab::StudyConfig::defaults(*kind);
    if (mesh_n) cfg.mesh_n = mesh_n;
    if (r) cfg.r = r;
    if (delta >= 0) cfg.delta = delta;
    if (dt >= 0) cfg.dt = dt;
    if (nu >= 0) cfg.nu = nu;
    if (t_final >= 0) cfg.t_final = t_final;
    if (!sweep_text.empty()) cfg.sweep = parse_sweep(sweep_text);
    cfg.out = out.empty() ? kind_name + ".csv" : out;
    cfg.cache_dir = cache_dir;
    cfg.threads = threads;

    if (linearization == "picard-implicit") {
      cfg.linearization = romlab::Linearization::picard_implicit;
    } else if (linearization == "semi-implicit") {
      cfg.linearization = romlab::Linearization::semi_implicit;
    } else {
      throw std::invalid_argument("unknown linearization: " + linearization);
    }
    if (h1 == "full") {
      cfg.h1 = romlab::H1Convention::full_norm;
    } else if (h1 == "seminorm") {
      cfg.h1 = romlab::H1Convention::seminorm;
    } else {
      throw std::invalid_argument("unknown H1 convention: " + h1);
    }
    if (variant == "rom-state") {
      cfg.error_variant = romlab::FinalErrorVariant::rom_state;
    } else if (variant == "filtered-snapshot") {
      cfg.error_variant = romlab::FinalErrorVariant::filtered_snapshot;
    } else {
      throw std::invalid_argument("unknown error variant: " + variant);
    }
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "romlab: invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  }

  romlab::StudyResult result;
  try {
    result = romlab::run_study(cfg, &std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "romlab: invalid configuration: " << e.what() << "\n";
    return kExitInvalidConfig;
  } catch (const std::exception& e) {
    std::cerr << "romlab: setup failed: " << e.what() << "\n";
    return 3;
  }

  const std::filesystem::path csv_path(cfg.out);
  {
    std::ofstream csv(csv_path);
    if (!csv) {
      std::cerr << "romlab: cannot write " << csv_path << "\n";
      return 3;
    }
    romlab::write_csv(result, csv);
  }
  {
    std::ofstream dat(plot_path(csv_path));
    romlab::write_plot_data(result, dat);
  }

  for (const auto& w : result.warnings) std::cerr << "warning: " << w << "\n";
  if (result.fit_l2) {
    std::printf("slope %.4f  intercept %.4f  R^2 %.4f\n", result.fit_l2->slope,
                result.fit_l2->intercept, result.fit_l2->r_squared);
  }
  if (result.fit_h1) {
    std::printf("slope_h1 %.4f  intercept_h1 %.4f  R^2_h1 %.4f\n", result.fit_h1->slope,
                result.fit_h1->intercept, result.fit_h1->r_squared);
  }
  return result.exit_code();
}
