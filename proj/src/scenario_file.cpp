#include "sqz/scenario_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "sqz/error.hpp"

namespace sqz {
namespace {

constexpr int kMhz = 6;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

struct Entry {
  std::string value;
  int line;
};

// Keys of one section in file order, plus the raw [losses] lines.
struct Section {
  int line = 0;
  std::map<std::string, Entry, std::less<>> keys;
  std::vector<std::pair<std::string, int>> lines;
};

const std::set<std::string, std::less<>> kSections{"source", "filter_cavity", "src",
                                                   "losses", "detection",     "grid"};

const std::map<std::string, std::set<std::string, std::less<>>, std::less<>> kAllowedKeys{
    {"", {"name"}},
    {"source", {"mode", "gen_db", "classical_gain", "escape", "t_out", "loss_rt", "bandwidth_mhz"}},
    {"filter_cavity", {"length_m", "t_in", "loss_rt", "detuning_mhz", "hwhm_mhz"}},
    {"src", {"length_m", "t_in", "loss_rt", "detuning_mhz", "hwhm_mhz", "signal_amplitude"}},
    {"detection", {"homodyne_angle_rad"}},
    {"grid", {"fmin_mhz", "fmax_mhz", "points"}},
};

class Reader {
 public:
  explicit Reader(std::map<std::string, Section, std::less<>> sections)
      : sections_(std::move(sections)) {}

  bool has(std::string_view section) const { return sections_.contains(section); }

  const Section& section(std::string_view name) const { return sections_.find(name)->second; }

  const Entry* find(std::string_view section, std::string_view key) const {
    auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    auto k = s->second.keys.find(key);
    return k == s->second.keys.end() ? nullptr : &k->second;
  }

  std::optional<double> number(std::string_view section, std::string_view key, int shift = 0) const {
    const Entry* e = find(section, key);
    if (!e) return std::nullopt;
    try {
      return parse_scaled(e->value, shift);
    } catch (const ParseError& err) {
      throw ParseError(e->line, fmt::format("{}: {}", key, err.what()));
    }
  }

  double required(std::string_view section, std::string_view key, int shift = 0) const {
    if (auto v = number(section, key, shift)) return *v;
    throw ParseError(section_line(section), fmt::format("[{}] requires '{}'", section, key));
  }

  int section_line(std::string_view section) const {
    auto s = sections_.find(section);
    return s == sections_.end() ? 0 : s->second.line;
  }

 private:
  std::map<std::string, Section, std::less<>> sections_;
};

std::map<std::string, Section, std::less<>> tokenize(std::string_view text) {
  std::map<std::string, Section, std::less<>> sections;
  sections[""];
  std::string current;
  int line_no = 0;
  while (!text.empty()) {
    const size_t nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const size_t hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      const std::string name(trim(line.substr(1, line.size() - 2)));
      if (!kSections.contains(name)) throw ParseError(line_no, fmt::format("unknown section [{}]", name));
      if (sections.contains(name)) throw ParseError(line_no, fmt::format("duplicate section [{}]", name));
      sections[name].line = line_no;
      current = name;
      continue;
    }

    Section& sec = sections[current];
    if (current == "losses") {
      sec.lines.emplace_back(std::string(line), line_no);
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    const auto& allowed = kAllowedKeys.at(current);
    if (!allowed.contains(key)) {
      throw ParseError(line_no, current.empty() ? fmt::format("unknown key '{}' outside a section", key)
                                                : fmt::format("unknown key '{}' in [{}]", key, current));
    }
    if (value.empty()) throw ParseError(line_no, fmt::format("'{}' has no value", key));
    if (!sec.keys.emplace(key, Entry{value, line_no}).second) {
      throw ParseError(line_no, fmt::format("duplicate key '{}'", key));
    }
  }
  return sections;
}

SourceParams read_source(const Reader& in) {
  if (!in.has("source")) throw ParseError(0, "missing [source] section");
  SourceParams p;
  const Entry* mode = in.find("source", "mode");
  const std::string mode_text = mode ? mode->value : "direct";
  if (mode_text == "direct") {
    p.mode = SourceMode::direct;
    p.gen_db_at_dc = in.required("source", "gen_db");
    if (const Entry* e = in.find("source", "classical_gain")) {
      throw ParseError(e->line, "classical_gain applies to physical mode only");
    }
  } else if (mode_text == "physical") {
    p.mode = SourceMode::physical;
    p.classical_gain = in.required("source", "classical_gain");
    if (const Entry* e = in.find("source", "gen_db")) {
      throw ParseError(e->line, "gen_db applies to direct mode only");
    }
  } else {
    throw ParseError(mode->line, fmt::format("unknown source mode '{}'", mode_text));
  }

  const auto escape = in.number("source", "escape");
  const auto t_out = in.number("source", "t_out");
  const auto loss = in.number("source", "loss_rt");
  if (escape) {
    if (t_out || loss) {
      throw ParseError(in.find("source", "escape")->line,
                       "give either escape or t_out/loss_rt, not both");
    }
    p.escape = *escape;
  } else {
    if (!t_out) throw ParseError(in.section_line("source"), "[source] requires 'escape' or 't_out'");
    p.t_out = *t_out;
    p.loss_rt = loss.value_or(0.0);
  }
  if (auto bw = in.number("source", "bandwidth_mhz", kMhz)) p.bandwidth_hz = *bw;
  return p;
}

CavityParams read_cavity(const Reader& in, std::string_view section) {
  CavityParams p;
  p.length_m = in.number(section, "length_m");
  p.t_in = in.required(section, "t_in");
  p.loss_rt = in.number(section, "loss_rt").value_or(0.0);
  p.detuning_hz = in.number(section, "detuning_mhz", kMhz).value_or(0.0);
  p.hwhm_hz = in.number(section, "hwhm_mhz", kMhz).value_or(0.0);
  return p;
}

LossElement read_loss_line(std::string_view line, int line_no) {
  const size_t eq = line.find('=');
  const std::string name(trim(line.substr(0, eq)));
  if (name.empty()) throw ParseError(line_no, "loss element needs a name");
  std::string_view rest = trim(line.substr(eq + 1));
  LossCategory category = LossCategory::other;
  if (const size_t at = rest.find('@'); at != std::string_view::npos) {
    const std::string_view cat = trim(rest.substr(at + 1));
    auto parsed = parse_loss_category(cat);
    if (!parsed) throw ParseError(line_no, fmt::format("unknown loss category '{}'", cat));
    category = *parsed;
    rest = trim(rest.substr(0, at));
  }
  double eta = 0.0;
  try {
    eta = parse_scaled(rest, 0);
  } catch (const ParseError& err) {
    throw ParseError(line_no, fmt::format("{}: {}", name, err.what()));
  }
  return LossElement{name, Efficiency(eta), category};
}

std::string number_text(double v) { return scaled_decimal(v, 0); }
std::string mhz_text(double hz) { return scaled_decimal(hz, kMhz); }

void write_cavity(std::string& out, const CavityStage& c, const Scenario& sc) {
  const CavityParams& p = c.cavity;
  out += fmt::format("[{}]\n", to_string(c.role));
  if (p.length_m) out += fmt::format("length_m = {}\n", number_text(*p.length_m));
  out += fmt::format("t_in = {}\n", number_text(p.t_in));
  out += fmt::format("loss_rt = {}\n", number_text(p.loss_rt));
  out += fmt::format("detuning_mhz = {}\n", mhz_text(p.detuning_hz));
  out += fmt::format("hwhm_mhz = {}\n", mhz_text(p.hwhm_hz));
  if (c.role == CavityRole::src) out += fmt::format("signal_amplitude = {}\n", number_text(sc.signal_injection));
  out += "\n";
}

}  // namespace

std::string scaled_decimal(double value, int shift) {
  if (!std::isfinite(value)) throw UsageError("cannot serialize a non-finite value");
  const std::string repr = fmt::format("{}", value);  // shortest round-trip form
  std::string_view s = repr;
  const bool negative = !s.empty() && s.front() == '-';
  if (negative) s.remove_prefix(1);

  int exponent = 0;
  if (const size_t e = s.find_first_of("eE"); e != std::string_view::npos) {
    std::from_chars(s.data() + e + 1 + (s[e + 1] == '+'), s.data() + s.size(), exponent);
    s = s.substr(0, e);
  }
  std::string digits;
  int point = static_cast<int>(s.size());
  for (size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '.') {
      point = static_cast<int>(i);
    } else {
      digits += s[i];
    }
  }
  point += exponent - shift;

  const size_t first = digits.find_first_not_of('0');
  if (first == std::string::npos) return "0";
  digits.erase(0, first);
  point -= static_cast<int>(first);
  digits.erase(digits.find_last_not_of('0') + 1);

  const int n = static_cast<int>(digits.size());
  std::string out = negative ? "-" : "";
  if (point <= 0) {
    out += "0." + std::string(static_cast<size_t>(-point), '0') + digits;
  } else if (point >= n) {
    out += digits + std::string(static_cast<size_t>(point - n), '0');
  } else {
    out += digits.substr(0, point) + "." + digits.substr(point);
  }
  return out;
}

double parse_scaled(std::string_view text, int shift) {
  text = trim(text);
  // sign? digits [. digits] [e sign? digits]
  size_t i = 0;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) ++i;
  const size_t mantissa_start = i;
  size_t mantissa_digits = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++mantissa_digits;
  if (i < text.size() && text[i] == '.') {
    ++i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i, ++mantissa_digits;
  }
  if (mantissa_digits == 0) throw ParseError(0, fmt::format("'{}' is not a number", text));
  const size_t mantissa_end = i;
  long exponent = 0;
  if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    const char* begin = text.data() + i + (i < text.size() && text[i] == '+');
    const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), exponent);
    if (ec != std::errc{} || ptr == begin) throw ParseError(0, fmt::format("'{}' is not a number", text));
    i = static_cast<size_t>(ptr - text.data());
  }
  if (i != text.size()) throw ParseError(0, fmt::format("'{}' is not a number", text));

  std::string scaled(text.substr(0, mantissa_end));
  if (mantissa_start == 1 && scaled.front() == '+') scaled.erase(0, 1);
  scaled += fmt::format("e{}", exponent + shift);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(scaled.data(), scaled.data() + scaled.size(), v);
  if (ec != std::errc{} || ptr != scaled.data() + scaled.size() || !std::isfinite(v)) {
    throw ParseError(0, fmt::format("'{}' is out of range", text));
  }
  return v;
}

Scenario parse_scenario(std::string_view text, std::string default_name) {
  const Reader in(tokenize(text));
  Scenario sc;
  sc.name = std::move(default_name);
  if (const Entry* e = in.find("", "name")) sc.name = e->value;
  sc.source = read_source(in);

  std::optional<CavityParams> filter;
  std::optional<CavityParams> src;
  if (in.has("filter_cavity")) filter = read_cavity(in, "filter_cavity");
  if (in.has("src")) {
    src = derive_rates(read_cavity(in, "src"));
    if (auto amp = in.number("src", "signal_amplitude")) sc.signal_injection = *amp;
  }
  if (filter && filter->hwhm_hz == 0.0 && !filter->length_m) {
    if (!src) {
      throw ParseError(in.section_line("filter_cavity"),
                       "[filter_cavity] needs hwhm_mhz or length_m when there is no [src]");
    }
    filter->hwhm_hz = src->hwhm_hz;
  }

  bool placed_filter = false;
  bool placed_src = false;
  if (in.has("losses")) {
    for (const auto& [line, line_no] : in.section("losses").lines) {
      const bool is_filter = line == "filter_cavity";
      if (is_filter || line == "src") {
        bool& placed = is_filter ? placed_filter : placed_src;
        const auto& params = is_filter ? filter : src;
        if (!params) throw ParseError(line_no, fmt::format("marker '{}' without its section", line));
        if (placed) throw ParseError(line_no, fmt::format("marker '{}' appears twice", line));
        placed = true;
        sc.stages.emplace_back(CavityStage{is_filter ? CavityRole::filter : CavityRole::src, *params});
        continue;
      }
      if (line.find('=') == std::string::npos) {
        throw ParseError(line_no, "expected 'name = eta @ category' or a cavity marker");
      }
      sc.stages.emplace_back(read_loss_line(line, line_no));
    }
  }
  if (filter && !placed_filter) {
    throw ParseError(in.section_line("filter_cavity"), "[filter_cavity] is not placed in [losses]");
  }
  if (src && !placed_src) throw ParseError(in.section_line("src"), "[src] is not placed in [losses]");

  sc.homodyne_angle = in.number("detection", "homodyne_angle_rad").value_or(0.0);
  if (auto f = in.number("grid", "fmin_mhz", kMhz)) sc.grid.fmin_hz = *f;
  if (auto f = in.number("grid", "fmax_mhz", kMhz)) sc.grid.fmax_hz = *f;
  if (const Entry* e = in.find("grid", "points")) {
    int points = 0;
    const auto [ptr, ec] = std::from_chars(e->value.data(), e->value.data() + e->value.size(), points);
    if (ec != std::errc{} || ptr != e->value.data() + e->value.size()) {
      throw ParseError(e->line, "points must be an integer");
    }
    sc.grid.points = points;
  }
  return finalize(std::move(sc));
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw ParseError(0, fmt::format("cannot open '{}'", path.string()));
  std::ostringstream buf;
  buf << file.rdbuf();
  return parse_scenario(buf.str(), path.stem().string());
}

std::string to_text(const Scenario& sc) {
  std::string out;
  if (!sc.name.empty()) out += fmt::format("name = {}\n\n", sc.name);

  const SourceParams& s = sc.source;
  out += "[source]\n";
  if (s.mode == SourceMode::direct) {
    out += fmt::format("mode = direct\ngen_db = {}\n", number_text(s.gen_db_at_dc));
  } else {
    out += fmt::format("mode = physical\nclassical_gain = {}\n", number_text(s.classical_gain));
  }
  if (s.escape) {
    out += fmt::format("escape = {}\n", number_text(*s.escape));
  } else {
    out += fmt::format("t_out = {}\nloss_rt = {}\n", number_text(s.t_out), number_text(s.loss_rt));
  }
  out += fmt::format("bandwidth_mhz = {}\n\n", mhz_text(s.bandwidth_hz));

  for (CavityRole role : {CavityRole::filter, CavityRole::src}) {
    if (const CavityStage* c = sc.cavity(role)) write_cavity(out, *c, sc);
  }

  out += "[losses]\n";
  for (const Stage& st : sc.stages) {
    if (const auto* c = std::get_if<CavityStage>(&st)) {
      out += fmt::format("{}\n", to_string(c->role));
    } else {
      const auto& e = std::get<LossElement>(st);
      out += fmt::format("{} = {} @ {}\n", e.name, number_text(e.eta.value()), to_string(e.category));
    }
  }
  out += fmt::format("\n[detection]\nhomodyne_angle_rad = {}\n", number_text(sc.homodyne_angle));
  out += fmt::format("\n[grid]\nfmin_mhz = {}\nfmax_mhz = {}\npoints = {}\n", mhz_text(sc.grid.fmin_hz),
                     mhz_text(sc.grid.fmax_hz), sc.grid.points);
  return out;
}

}  // namespace sqz
