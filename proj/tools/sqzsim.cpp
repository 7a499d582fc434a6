// sqzsim: loss budgets, noise spectra and efficiency sweeps for
// squeezed-light-enhanced interferometer scenarios.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "sqz/error.hpp"
#include "sqz/interferometer.hpp"
#include "sqz/report.hpp"
#include "sqz/scenario_file.hpp"

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitUnphysical = 3;

void warn(const sqz::Scenario& sc) {
  for (const std::string& w : sqz::single_resonance_warnings(sc)) std::cerr << "warning: " << w << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squeezed-light interferometer noise simulator"};
  app.require_subcommand(1);

  std::string budget_file;
  auto* budget = app.add_subcommand("budget", "Frequency-independent loss budget of a scenario");
  budget->add_option("file", budget_file, "Scenario file")->required();

  std::string spectrum_file;
  std::optional<double> fmin_mhz;
  std::optional<double> fmax_mhz;
  std::optional<int> points;
  auto* spectrum = app.add_subcommand("spectrum", "Noise, signal and SNR-improvement spectrum as CSV");
  spectrum->add_option("file", spectrum_file, "Scenario file")->required();
  spectrum->add_option("--fmin-mhz", fmin_mhz, "Lowest sideband frequency (MHz)");
  spectrum->add_option("--fmax-mhz", fmax_mhz, "Highest sideband frequency (MHz)");
  spectrum->add_option("--points", points, "Number of grid points");

  double input_db = 0.0;
  double eta_min = 0.0;
  double eta_max = 1.0;
  int sweep_points = 101;
  auto* sweep = app.add_subcommand("sweep", "Observed squeezing versus detection efficiency as CSV");
  sweep->add_option("--input-db", input_db, "Generated squeezing (dB)")->required();
  sweep->add_option("--eta-min", eta_min, "Lowest efficiency")->capture_default_str();
  sweep->add_option("--eta-max", eta_max, "Highest efficiency")->capture_default_str();
  sweep->add_option("--points", sweep_points, "Number of efficiency points")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*budget) {
      const sqz::Scenario sc = sqz::load_scenario(budget_file);
      std::cout << sqz::format_budget(sqz::budget_report(sc), sc.name);
    } else if (*spectrum) {
      sqz::Scenario sc = sqz::load_scenario(spectrum_file);
      if (fmin_mhz) sc.grid.fmin_hz = *fmin_mhz * 1e6;
      if (fmax_mhz) sc.grid.fmax_hz = *fmax_mhz * 1e6;
      if (points) sc.grid.points = *points;
      sqz::validate(sc.grid);
      warn(sc);
      std::cout << sqz::format_spectrum_csv(sqz::snr_spectrum(sc));
    } else if (*sweep) {
      const auto rows = sqz::efficiency_sweep(input_db, eta_min, eta_max, sweep_points);
      std::cout << sqz::format_sweep_csv(rows);
    }
  } catch (const sqz::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sqz::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const sqz::UnphysicalError& e) {
    std::cerr << "error: unphysical model: " << e.what() << "\n";
    return kExitUnphysical;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
