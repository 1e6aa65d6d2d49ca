#pragma once

// Seeded instance generators and the repeated-run probe of Even mode.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "evendt/even.hpp"

namespace evendt {

enum class Distribution { Uniform, GridJitter, CocircularStress };

std::string distribution_name(Distribution d);
/// Throws InvalidInput on anything but uniform, grid-jitter or cocircular-stress.
Distribution parse_distribution(std::string_view name);

/// n distinct points. Uniform: the unit square. GridJitter: a square grid with
/// each point moved by at most a thousandth of the spacing. CocircularStress:
/// integer points on small circles around coarse grid centers, so many
/// quadruples are exactly cocircular.
std::vector<Point> generate(Distribution d, std::size_t n, std::uint64_t seed);

/// Seed of trial i, derived from the probe seed alone.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

enum class Outcome { Ok, CapTriggered, PlacementFailed };

struct ProbeRecord {
  std::size_t trial = 0;
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t iterations = 0;
  std::size_t merge_u_depth = 0;
  Outcome outcome = Outcome::Ok;
  /// Input of a trial that did not finish normally.
  std::vector<Point> reproducer;
};

struct ProbeReport {
  std::vector<ProbeRecord> records;  // in trial order
  std::size_t max_m = 0;
  double mean_m = 0.0;
  std::size_t cap_triggers = 0;
  std::size_t placement_failures = 0;
};

struct ProbeConfig {
  Distribution distribution = Distribution::Uniform;
  std::size_t n = 100;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks the hardware concurrency. Results do not depend on it.
  std::size_t threads = 0;
};

/// Runs dqa_even once per trial. Cap triggers and placement failures are data.
ProbeReport probe_conjecture(const ProbeConfig& probe, const EvenConfig& config);

/// Probe on one fixed instance.
ProbeRecord probe_instance(const std::vector<Point>& points, const EvenConfig& config, std::size_t trial = 0);

/// Header, one row per trial (trial,n,m,iterations,merge_u_depth,cap_triggered,outcome),
/// then '#'-prefixed aggregate lines.
std::string probe_csv(const ProbeReport& report);

std::string outcome_name(Outcome o);

}  // namespace evendt
