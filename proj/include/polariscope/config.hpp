#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "polariscope/measurement.hpp"
#include "polariscope/semiclassical.hpp"
#include "polariscope/species.hpp"

namespace polariscope {

// Parses "150 MHz", "10 uW", "4 mm", ... into SI base units.
// Frequencies are converted to angular frequency (multiplied by 2 pi).
// Dimensioned quantities require an explicit unit suffix; bare numbers
// are rejected.
double parse_quantity(const std::string& text, const std::string& dimension);

struct SimulationParams {
  double dt = 1e-6;        // seconds
  double duration = 1e-3;  // seconds
  std::uint64_t seed = 0;
  int samples = 200;       // path sample count for trajectories/scans
};

// Fully validated experiment configuration with SI-normalized values.
struct ExperimentConfig {
  AtomSpecies species;
  CloudParams cloud;
  ProbeParams probe;
  SimulationParams simulation;

  void validate() const;
};

// Loads a species data file ([species] + [levels] sections).  All
// frequencies come out in rad/s.  Throws ParseError with line context
// on malformed input and std::invalid_argument on physics violations.
AtomSpecies load_species(const std::filesystem::path& path);

// Loads an experiment file ([species]/[cloud]/[probe]/[simulation]);
// the [species] section names the species file (resolved relative to
// the experiment file's directory).
ExperimentConfig load_experiment(const std::filesystem::path& path);

// Serializes a configuration in the experiment-file format with full
// precision, such that reloading reproduces every SI value bit-exactly.
std::string serialize_experiment(const ExperimentConfig& config,
                                 const std::string& species_file);

}  // namespace polariscope
