#include "sqz/chain.hpp"

#include <array>
#include <cmath>

#include <fmt/format.h>

#include "sqz/error.hpp"

namespace sqz {
namespace {

constexpr std::array kCategoryNames{"escape",     "mode_matching", "isolator_rotator",
                                    "photodiode", "intra_cavity",  "other"};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

}  // namespace

std::string_view to_string(LossCategory c) { return kCategoryNames[static_cast<size_t>(c)]; }

std::optional<LossCategory> parse_loss_category(std::string_view s) {
  for (size_t i = 0; i < kCategoryNames.size(); ++i) {
    if (s == kCategoryNames[i]) return static_cast<LossCategory>(i);
  }
  return std::nullopt;
}

std::string_view to_string(CavityRole r) { return r == CavityRole::filter ? "filter_cavity" : "src"; }

std::vector<double> FrequencyGrid::frequencies() const {
  validate(*this);
  std::vector<double> out(static_cast<size_t>(points));
  const double step = (fmax_hz - fmin_hz) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = fmin_hz + step * i;
  out.back() = fmax_hz;
  return out;
}

bool FrequencyGrid::contains(double omega_hz) const noexcept {
  const double slack = 1e-9 * fmax_hz;
  return omega_hz >= fmin_hz - slack && omega_hz <= fmax_hz + slack;
}

void validate(const FrequencyGrid& g) {
  if (!(g.fmin_hz > 0.0) || !std::isfinite(g.fmax_hz)) {
    throw UsageError("grid frequencies must be positive and finite");
  }
  if (!(g.fmin_hz < g.fmax_hz)) {
    throw UsageError(fmt::format("grid needs fmin < fmax (got {} Hz, {} Hz)", g.fmin_hz, g.fmax_hz));
  }
  if (g.points < 2) {
    throw UsageError(fmt::format("grid needs at least 2 points (got {})", g.points));
  }
}

const CavityStage* Scenario::cavity(CavityRole role) const {
  for (const Stage& st : stages) {
    if (const auto* c = std::get_if<CavityStage>(&st); c && c->role == role) return c;
  }
  return nullptr;
}

std::vector<LossElement> Scenario::loss_elements() const {
  std::vector<LossElement> out;
  for (const Stage& st : stages) {
    if (const auto* e = std::get_if<LossElement>(&st)) out.push_back(*e);
  }
  return out;
}

Scenario finalize(Scenario sc) {
  validate(sc.source);
  validate(sc.grid);
  if (!std::isfinite(sc.homodyne_angle)) throw UnphysicalError("homodyne angle must be finite");
  if (!(sc.signal_injection > 0.0) || !std::isfinite(sc.signal_injection)) {
    throw UnphysicalError("signal injection amplitude must be positive");
  }
  int filters = 0;
  int srcs = 0;
  for (Stage& st : sc.stages) {
    if (auto* c = std::get_if<CavityStage>(&st)) {
      (c->role == CavityRole::filter ? filters : srcs) += 1;
      c->cavity = derive_rates(c->cavity);
    }
  }
  if (filters > 1 || srcs > 1) {
    throw UsageError("a scenario holds at most one filter cavity and one signal-recycling cavity");
  }
  return sc;
}

std::vector<std::string> single_resonance_warnings(const Scenario& sc) {
  std::vector<std::string> out;
  for (const Stage& st : sc.stages) {
    const auto* c = std::get_if<CavityStage>(&st);
    if (!c) continue;
    for (double f : {sc.grid.fmin_hz, sc.grid.fmax_hz}) {
      if (!within_single_resonance(c->cavity, f)) {
        out.push_back(fmt::format(
            "{}: sideband at {} MHz is more than a quarter FSR from resonance; "
            "single-resonance model is inaccurate",
            to_string(c->role), f / 1e6));
        break;
      }
    }
  }
  return out;
}

Efficiency total_efficiency(std::span<const LossElement> elements) {
  double product = 1.0;
  for (const LossElement& e : elements) product *= e.eta.value();
  return Efficiency(product);
}

SpectralCovariance propagate(const Scenario& sc, double omega_hz) {
  if (!(omega_hz > 0.0) || !sc.grid.contains(omega_hz)) {
    throw UsageError(fmt::format("sideband frequency {} Hz outside the scenario grid", omega_hz));
  }
  SpectralCovariance s = generated_spectrum(sc.source, omega_hz);
  for (const Stage& st : sc.stages) {
    s = std::visit(overloaded{
                       [&](const LossElement& e) { return apply_loss_cov(s, e.eta); },
                       [&](const CavityStage& c) {
                         return quadrature_transfer(c.cavity, omega_hz).apply(s);
                       },
                   },
                   st);
  }
  if (s.min_eigenvalue() < -1e-9) {
    throw InternalError(fmt::format("propagated covariance lost positivity at {} Hz (min eig {})",
                                    omega_hz, s.min_eigenvalue()));
  }
  return s;
}

RelativeVariance homodyne_readout(const SpectralCovariance& s, double theta) {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  return RelativeVariance(c * c * s.s11() + sn * sn * s.s22() + 2.0 * c * sn * s.s12().real());
}

BudgetReport budget_report(const Scenario& sc) {
  BudgetReport r;
  r.rows.push_back({"escape", LossCategory::escape, escape_efficiency(sc.source)});
  for (const LossElement& e : sc.loss_elements()) r.rows.push_back({e.name, e.category, e.eta});

  std::array<std::optional<double>, kCategoryNames.size()> by_category;
  double total = 1.0;
  for (const BudgetRow& row : r.rows) {
    auto& slot = by_category[static_cast<size_t>(row.category)];
    slot = slot.value_or(1.0) * row.eta.value();
    total *= row.eta.value();
  }
  for (size_t i = 0; i < by_category.size(); ++i) {
    if (by_category[i]) r.subtotals.push_back({static_cast<LossCategory>(i), Efficiency(*by_category[i])});
  }
  r.total = Efficiency(total);
  r.input_db = generated_db_at_dc(sc.source);
  r.output_db = variance_to_db(apply_loss(db_to_variance(r.input_db), r.total));
  return r;
}

std::vector<SweepPoint> efficiency_sweep(double input_db, double eta_min, double eta_max, int n) {
  if (!(eta_min >= 0.0 && eta_min <= eta_max && eta_max <= 1.0)) {
    throw UsageError(fmt::format("efficiency range [{}, {}] must satisfy 0 <= min <= max <= 1",
                                 eta_min, eta_max));
  }
  if (n < 2) throw UsageError(fmt::format("sweep needs at least 2 points (got {})", n));
  const RelativeVariance input = db_to_variance(DecibelLevel(input_db));
  std::vector<SweepPoint> out;
  out.reserve(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) {
    const double eta = i == n - 1 ? eta_max : eta_min + (eta_max - eta_min) * i / (n - 1);
    out.push_back({eta, variance_to_db(apply_loss(input, Efficiency(eta))).db()});
  }
  return out;
}

}  // namespace sqz
