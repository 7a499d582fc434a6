#pragma once

// End-to-end propagation path of the squeezed field: source, an ordered list
// of loss elements and cavities, and homodyne readout.

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sqz/cavity.hpp"
#include "sqz/quadcore.hpp"
#include "sqz/source.hpp"

namespace sqz {

enum class LossCategory { escape, mode_matching, isolator_rotator, photodiode, intra_cavity, other };

std::string_view to_string(LossCategory c);
std::optional<LossCategory> parse_loss_category(std::string_view s);

struct LossElement {
  std::string name;
  Efficiency eta;
  LossCategory category = LossCategory::other;

  friend bool operator==(const LossElement&, const LossElement&) = default;
};

enum class CavityRole { filter, src };

std::string_view to_string(CavityRole r);

struct CavityStage {
  CavityRole role;
  CavityParams cavity;

  friend bool operator==(const CavityStage&, const CavityStage&) = default;
};

using Stage = std::variant<LossElement, CavityStage>;

/// Uniform grid of sideband frequencies, endpoints included.
struct FrequencyGrid {
  double fmin_hz = 5e6;
  double fmax_hz = 15e6;
  int points = 201;

  std::vector<double> frequencies() const;
  bool contains(double omega_hz) const noexcept;

  friend bool operator==(const FrequencyGrid&, const FrequencyGrid&) = default;
};

void validate(const FrequencyGrid& g);

struct Scenario {
  std::string name;
  SourceParams source;
  std::vector<Stage> stages;
  double homodyne_angle = 0.0;  ///< radians; 0 reads the amplitude quadrature
  FrequencyGrid grid;
  double signal_injection = 1.0;  ///< single-sideband signal amplitude, relative units

  const CavityStage* cavity(CavityRole role) const;
  std::vector<LossElement> loss_elements() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Validates every part of the scenario and derives cavity rates. Throws
/// UnphysicalError for out-of-range values, UsageError for structural problems
/// (duplicate cavity roles, bad grid).
Scenario finalize(Scenario sc);

/// Human-readable notes for cavities driven outside the single-resonance range.
std::vector<std::string> single_resonance_warnings(const Scenario& sc);

/// Product of the element efficiencies; 1 for an empty list.
Efficiency total_efficiency(std::span<const LossElement> elements);

/// Covariance reaching the detector at sideband frequency omega_hz. Expects a
/// finalized scenario and omega_hz inside its grid.
SpectralCovariance propagate(const Scenario& sc, double omega_hz);

/// v^T S v with v = (cos theta, sin theta).
RelativeVariance homodyne_readout(const SpectralCovariance& s, double theta);

struct BudgetRow {
  std::string name;
  LossCategory category;
  Efficiency eta;
};

struct CategorySubtotal {
  LossCategory category;
  Efficiency eta;
};

struct BudgetReport {
  std::vector<BudgetRow> rows;
  std::vector<CategorySubtotal> subtotals;  ///< in LossCategory order, present categories only
  Efficiency total{1.0};
  DecibelLevel input_db{0.0};
  DecibelLevel output_db{0.0};
};

/// Frequency-independent budget: escape efficiency plus every loss element.
/// Cavities are not part of it.
BudgetReport budget_report(const Scenario& sc);

struct SweepPoint {
  double eta;
  double observed_db;
};

/// Observed squeezing for a fixed generated level on a uniform efficiency grid.
std::vector<SweepPoint> efficiency_sweep(double input_db, double eta_min, double eta_max, int n);

}  // namespace sqz
