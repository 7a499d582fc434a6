#include "sqz/report.hpp"

#include <algorithm>

#include <fmt/format.h>

namespace sqz {
namespace {

// Conventional numbering of the loss groups: escape (I), mode matching (II),
// isolators/rotators (III), photodiodes (IV).
std::string_view numeral(LossCategory c) {
  switch (c) {
    case LossCategory::escape: return " (I)";
    case LossCategory::mode_matching: return " (II)";
    case LossCategory::isolator_rotator: return " (III)";
    case LossCategory::photodiode: return " (IV)";
    default: return "";
  }
}

}  // namespace

std::string csv_number(double v) {
  std::string s = fmt::format("{:.6f}", v);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

std::string format_budget(const BudgetReport& r, std::string_view scenario_name) {
  size_t name_w = std::string_view("total efficiency").size();
  for (const BudgetRow& row : r.rows) name_w = std::max(name_w, row.name.size());
  size_t cat_w = std::string_view("category").size();
  for (const BudgetRow& row : r.rows) cat_w = std::max(cat_w, to_string(row.category).size() + numeral(row.category).size());
  const size_t label_w = name_w + 2 + cat_w;

  std::string out;
  if (!scenario_name.empty()) out += fmt::format("scenario: {}\n\n", scenario_name);
  out += fmt::format("{:<{}}  {:<{}}  {:>6}\n", "element", name_w, "category", cat_w, "eta");
  out += std::string(name_w + cat_w + 10, '-') + "\n";
  for (const BudgetRow& row : r.rows) {
    const std::string cat = fmt::format("{}{}", to_string(row.category), numeral(row.category));
    out += fmt::format("{:<{}}  {:<{}}  {:.4f}\n", row.name, name_w, cat, cat_w, row.eta.value());
  }
  out += "\nsubtotals by category\n";
  for (const CategorySubtotal& sub : r.subtotals) {
    const std::string cat = fmt::format("{}{}", to_string(sub.category), numeral(sub.category));
    out += fmt::format("{:<{}}  {:.4f}\n", cat, label_w, sub.eta.value());
  }
  out += "\n";
  out += fmt::format("{:<{}}  {:.4f}\n", "total efficiency", label_w, r.total.value());
  out += fmt::format("{:<{}}  {:.2f} dB\n", "input squeezing", label_w, r.input_db.db());
  out += fmt::format("{:<{}}  {:.2f} dB\n", "output squeezing", label_w, r.output_db.db());
  return out;
}

std::string format_spectrum_csv(const NoiseSpectrum& s) {
  std::string out = "frequency_mhz,noise_db,signal_db,snr_improvement_db\n";
  for (const SpectrumPoint& p : s.points) {
    out += fmt::format("{},{},{},{}\n", csv_number(p.frequency_hz / 1e6), csv_number(p.noise_db),
                       csv_number(p.signal_db), csv_number(p.snr_improvement_db));
  }
  return out;
}

std::string format_sweep_csv(std::span<const SweepPoint> points) {
  std::string out = "eta,observed_db\n";
  for (const SweepPoint& p : points) {
    out += fmt::format("{},{}\n", csv_number(p.eta), csv_number(p.observed_db));
  }
  return out;
}

}  // namespace sqz
