#include "polariscope/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "polariscope/errors.hpp"

namespace polariscope {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Unit {
  const char* suffix;
  double factor;
};

// Frequencies convert to angular frequency on ingestion; "rad/s" admits
// already-angular values (used by the serializer for exact round trips).
const std::map<std::string, std::vector<Unit>>& unit_table() {
  static const std::map<std::string, std::vector<Unit>> table = {
      {"frequency",
       {{"GHz", kTwoPi * 1e9},
        {"MHz", kTwoPi * 1e6},
        {"kHz", kTwoPi * 1e3},
        {"Hz", kTwoPi},
        {"rad/s", 1.0}}},
      {"power", {{"mW", 1e-3}, {"uW", 1e-6}, {"nW", 1e-9}, {"W", 1.0}}},
      {"length",
       {{"nm", 1e-9}, {"um", 1e-6}, {"mm", 1e-3}, {"cm", 1e-2}, {"m", 1.0}}},
      {"time", {{"ns", 1e-9}, {"us", 1e-6}, {"ms", 1e-3}, {"s", 1.0}}},
      {"angle", {{"deg", std::numbers::pi / 180.0}, {"rad", 1.0}}},
  };
  return table;
}

std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& text) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  if (pos != text.size()) {
    throw std::invalid_argument("trailing characters after number: '" + text + "'");
  }
  return v;
}

}  // namespace

double parse_quantity(const std::string& text, const std::string& dimension) {
  const auto it = unit_table().find(dimension);
  if (it == unit_table().end()) {
    throw std::logic_error("unknown dimension '" + dimension + "'");
  }
  const std::string s = trim(text);
  for (const Unit& u : it->second) {
    const std::string suffix = u.suffix;
    if (s.size() > suffix.size() && s.ends_with(suffix)) {
      // The character before the suffix must not belong to the number
      // or to a longer unit name ("mHz" must not match "Hz").
      const char before = s[s.size() - suffix.size() - 1];
      if (std::isalpha(static_cast<unsigned char>(before))) continue;
      const std::string number = trim(s.substr(0, s.size() - suffix.size()));
      return parse_number(number) * u.factor;
    }
  }
  throw std::invalid_argument("missing or unknown " + dimension +
                              " unit suffix in '" + s +
                              "' (no silent unit guessing)");
}

namespace {

struct IniEntry {
  std::string value;
  int line = 0;
};

using IniSection = std::vector<std::pair<std::string, IniEntry>>;
using IniFile = std::map<std::string, IniSection>;

IniFile parse_ini(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file", path.string());
  IniFile file;
  std::string section;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto comment = line.find('#');
    if (comment != std::string::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ParseError("malformed section header", path.string(), lineno);
      }
      section = trim(line.substr(1, line.size() - 2));
      file[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected 'key = value'", path.string(), lineno);
    }
    if (section.empty()) {
      throw ParseError("key outside any section", path.string(), lineno);
    }
    file[section].emplace_back(trim(line.substr(0, eq)),
                               IniEntry{trim(line.substr(eq + 1)), lineno});
  }
  return file;
}

class SectionReader {
public:
  SectionReader(const IniFile& file, std::string section, std::string path)
      : path_(std::move(path)), section_(std::move(section)) {
    const auto it = file.find(section_);
    if (it == file.end()) {
      throw ParseError("missing [" + section_ + "] section", path_);
    }
    entries_ = &it->second;
  }

  const IniEntry* find(const std::string& key) const {
    for (const auto& [k, e] : *entries_) {
      if (k == key) return &e;
    }
    return nullptr;
  }

  const IniEntry& require(const std::string& key) const {
    const IniEntry* e = find(key);
    if (!e) {
      throw ParseError("missing field '" + key + "' in [" + section_ + "]", path_);
    }
    return *e;
  }

  std::string text(const std::string& key) const { return require(key).value; }

  double quantity(const std::string& key, const std::string& dimension) const {
    const IniEntry& e = require(key);
    try {
      return parse_quantity(e.value, dimension);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(std::string("field '") + key + "': " + ex.what(), path_,
                       e.line);
    }
  }

  double number(const std::string& key) const {
    const IniEntry& e = require(key);
    try {
      return parse_number(e.value);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(std::string("field '") + key + "': " + ex.what(), path_,
                       e.line);
    }
  }

  HalfInt half_int(const std::string& key) const {
    const IniEntry& e = require(key);
    try {
      return HalfInt::parse(e.value);
    } catch (const std::invalid_argument& ex) {
      throw ParseError(std::string("field '") + key + "': " + ex.what(), path_,
                       e.line);
    }
  }

  const IniSection& entries() const { return *entries_; }

private:
  std::string path_;
  std::string section_;
  const IniSection* entries_;
};

}  // namespace

AtomSpecies load_species(const std::filesystem::path& path) {
  const IniFile file = parse_ini(path);
  const SectionReader species(file, "species", path.string());
  const SectionReader levels(file, "levels", path.string());

  AtomSpecies out;
  out.name = species.text("name");
  out.nuclear_spin = species.half_int("nuclear_spin");
  out.ground_j = species.half_int("ground_j");
  out.excited_j = species.half_int("excited_j");
  out.ground_f = species.half_int("ground_f");
  out.linewidth = species.quantity("linewidth", "frequency");
  out.wavelength = species.quantity("wavelength", "length");

  for (const auto& [key, entry] : levels.entries()) {
    ExcitedLevel lvl;
    try {
      lvl.fprime = HalfInt::parse(key);
      lvl.offset = parse_quantity(entry.value, "frequency");
    } catch (const std::invalid_argument& ex) {
      throw ParseError(std::string("level entry: ") + ex.what(), path.string(),
                       entry.line);
    }
    out.excited_levels.push_back(lvl);
  }
  out.validate();
  return out;
}

ExperimentConfig load_experiment(const std::filesystem::path& path) {
  const IniFile file = parse_ini(path);
  const SectionReader species(file, "species", path.string());
  const SectionReader cloud(file, "cloud", path.string());
  const SectionReader probe(file, "probe", path.string());
  const SectionReader sim(file, "simulation", path.string());

  ExperimentConfig cfg;
  std::filesystem::path species_path = species.text("file");
  if (species_path.is_relative()) {
    species_path = path.parent_path() / species_path;
  }
  cfg.species = load_species(species_path);

  cfg.cloud.n_atoms = cloud.number("atoms");
  cfg.cloud.radius = cloud.quantity("radius", "length");
  if (cloud.find("length")) cfg.cloud.length = cloud.quantity("length", "length");

  cfg.probe.power = probe.quantity("power", "power");
  cfg.probe.detuning = probe.quantity("detuning", "frequency");
  cfg.probe.efficiency = probe.number("efficiency");
  if (probe.find("pol_angle")) {
    cfg.probe.pol_angle = probe.quantity("pol_angle", "angle");
  }

  cfg.simulation.dt = sim.quantity("dt", "time");
  cfg.simulation.duration = sim.quantity("duration", "time");
  cfg.simulation.seed = static_cast<std::uint64_t>(sim.number("seed"));
  cfg.simulation.samples = static_cast<int>(sim.number("samples"));

  cfg.validate();
  return cfg;
}

void ExperimentConfig::validate() const {
  species.validate();
  if (cloud.n_atoms <= 0.0) throw std::invalid_argument("cloud: atoms must be > 0");
  if (cloud.radius <= 0.0) throw std::invalid_argument("cloud: radius must be > 0");
  if (cloud.length && *cloud.length <= 0.0) {
    throw std::invalid_argument("cloud: length must be > 0");
  }
  probe.validate();
  if (simulation.dt <= 0.0) throw std::invalid_argument("simulation: dt must be > 0");
  if (simulation.duration < simulation.dt) {
    throw std::invalid_argument("simulation: duration must be >= dt");
  }
  if (simulation.samples < 1) {
    throw std::invalid_argument("simulation: samples must be >= 1");
  }
  // On-resonance guard: the detuning must stay off every hyperfine line
  // after offset arithmetic.
  for (const ExcitedLevel& lvl : species.excited_levels) {
    const double delta = species.detuning_from_level(probe.detuning, lvl);
    if (std::abs(delta) < 1e-9 * species.linewidth) {
      throw std::invalid_argument(
          "probe: detuning sits exactly on the f' = " + lvl.fprime.str() +
          " line after hyperfine offsets");
    }
  }
}

std::string serialize_experiment(const ExperimentConfig& config,
                                 const std::string& species_file) {
  auto full = [](double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
  };
  std::ostringstream out;
  out << "[species]\nfile = " << species_file << "\n\n";
  out << "[cloud]\n";
  out << "atoms = " << full(config.cloud.n_atoms) << "\n";
  out << "radius = " << full(config.cloud.radius) << " m\n";
  if (config.cloud.length) {
    out << "length = " << full(*config.cloud.length) << " m\n";
  }
  out << "\n[probe]\n";
  out << "power = " << full(config.probe.power) << " W\n";
  out << "detuning = " << full(config.probe.detuning) << " rad/s\n";
  out << "efficiency = " << full(config.probe.efficiency) << "\n";
  out << "pol_angle = " << full(config.probe.pol_angle) << " rad\n";
  out << "\n[simulation]\n";
  out << "dt = " << full(config.simulation.dt) << " s\n";
  out << "duration = " << full(config.simulation.duration) << " s\n";
  out << "seed = " << config.simulation.seed << "\n";
  out << "samples = " << config.simulation.samples << "\n";
  return out.str();
}

}  // namespace polariscope
