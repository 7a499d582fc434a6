#pragma once

// Sectioned key-value scenario files.
//
//   name = tabletop            # optional, before any section
//   [source]      mode, gen_db | classical_gain, escape | t_out + loss_rt, bandwidth_mhz
//   [filter_cavity] / [src]
//                 length_m, t_in, loss_rt, detuning_mhz, hwhm_mhz (src also signal_amplitude)
//   [losses]      `name = eta @ category` lines in chain order; the bare words
//                 `filter_cavity` and `src` mark where those cavities sit
//   [detection]   homodyne_angle_rad
//   [grid]        fmin_mhz, fmax_mhz, points
//
// A filter cavity with neither hwhm_mhz nor length_m takes the linewidth of
// the SRC. Frequencies are MHz in text and Hz in memory; the conversion is
// done on the decimal string so that to_text() round-trips exactly.

#include <filesystem>
#include <string>
#include <string_view>

#include "sqz/chain.hpp"

namespace sqz {

/// Parses and finalizes a scenario. Throws ParseError for malformed text and
/// UnphysicalError / UsageError for values the model rejects.
Scenario parse_scenario(std::string_view text, std::string default_name = {});

/// Reads a file; the scenario name defaults to the file stem.
Scenario load_scenario(const std::filesystem::path& path);

/// Canonical text form; parse_scenario(to_text(sc)) == sc for finalized sc.
std::string to_text(const Scenario& sc);

/// Decimal text of value / 10^shift for a finite double, without exponent,
/// such that parsing it and scaling by 10^shift on the text recovers `value`.
std::string scaled_decimal(double value, int shift);

/// Parses decimal text as value * 10^shift, rounding once.
double parse_scaled(std::string_view text, int shift);

}  // namespace sqz
