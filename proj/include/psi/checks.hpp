#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "psi/dcr.hpp"
#include "psi/event_structure.hpp"

namespace psi {

/// Deterministic sample source; a fixed seed fixes every generated structure.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  std::size_t below(std::size_t bound);  // uniform in [0, bound), bound > 0
  bool chance(double p);

 private:
  std::mt19937_64 engine_;
};

/// Events e0..e(n-1), random transitively closed causality, conflicts
/// saturated under heredity (resampled if saturation hits irreflexivity).
EventStructure random_es(Rng& rng, std::size_t max_events);

/// Uniform over all configurations of es.
Configuration random_config(Rng& rng, const EventStructure& es);

/// Each ordered pair (self-loops included) enters each relation with
/// probability density.
DcrGraph random_dcr(Rng& rng, std::size_t max_events, double density);

Marking random_marking(Rng& rng, const DcrGraph& g);

struct CheckFailure {
  std::string input;
  std::string expected;
  std::string actual;
};

struct CheckReport {
  std::string name;
  std::size_t inputs_tried = 0;
  std::vector<CheckFailure> failures;
  bool passed() const { return failures.empty(); }
};

struct CheckOptions {
  std::uint64_t seed = 7;
  std::size_t samples = 200;
  std::size_t max_events = 6;
  double density = 0.3;
  int max_depth = 8;
  std::size_t max_states = 10000;
};

/// Canonical check names in reporting order.
std::vector<std::string> check_names();

/// Runs one named check (a few short aliases are accepted).
CheckReport run_check(const std::string& name, const CheckOptions& opts);

std::string format_report(const CheckReport& report);

}  // namespace psi
