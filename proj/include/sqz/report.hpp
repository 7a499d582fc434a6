#pragma once

// Text renderings used by the command-line tool. All numbers are formatted
// without locale influence so outputs are byte-stable.

#include <span>
#include <string>

#include "sqz/chain.hpp"
#include "sqz/interferometer.hpp"

namespace sqz {

/// Aligned budget table: rows, category subtotals, total (4 decimals) and
/// input / output squeezing (2 decimals).
std::string format_budget(const BudgetReport& r, std::string_view scenario_name);

/// `frequency_mhz,noise_db,signal_db,snr_improvement_db`
std::string format_spectrum_csv(const NoiseSpectrum& s);

/// `eta,observed_db`
std::string format_sweep_csv(std::span<const SweepPoint> points);

/// Fixed 6-decimal rendering with negative zero folded to zero.
std::string csv_number(double v);

}  // namespace sqz
