// quantities.hpp
// Shannon entropy of clock-label distributions and the entropic
// uncertainty bound for sets of mutually complementary measurements.

#pragma once

#include <string>
#include <vector>

#include "lonsim/measurement.hpp"

namespace lonsim {

// -sum p log p in the given log base (2, e, 10, ...). Throws if the
// distribution has a negative entry below -1e-12 or its total differs from
// 1 by more than 1e-9.
double shannon_entropy(const LabelDistribution& dist, double log_base);

// Splits "xi,l0,l1" style lists into measurement configs, attaching the
// sigma labeling to the xi entry.
std::vector<MeasurementConfig> parse_measurement_set(const std::string& list,
                                                     const SigmaConfig& sigma = SigmaConfig{});

// Checks that the configs form a mutually complementary set on every orbit
// of the sector: no duplicates, at most one of xi/z, and the gcd criterion
// for every shift-and-clock pair. Throws with the offending pair and orbit.
void validate_complementary_set(const std::vector<MeasurementConfig>& configs,
                                const ClassPartition& part);

struct WeightedClass {
  std::string representative;
  int dim = 0;
  double weight = 0.0;
};

struct EntropyReport {
  std::vector<std::string> config_names;
  std::vector<double> entropies;       // per config, same order
  double value = 0.0;                  // average entropy
  double bound = 0.0;
  std::string bound_method;            // "pair_weighted", "small_set", "large_set"
  std::vector<WeightedClass> weights;  // pair_weighted only
  double log_base = 0.0;
  bool satisfied = false;              // value >= bound - 1e-9
};

// Average label entropy over the set against the matching lower bound.
// Two measurements use the orbit-weighted bound; larger sets require
// gcd(N, M) = 1 and use the size-dependent constant. `force` skips the
// complementarity validation (the bound is then not guaranteed).
EntropyReport complementary_entropy(const SectorState& state,
                                    const std::vector<MeasurementConfig>& configs,
                                    double log_base, bool force = false);
EntropyReport complementary_entropy(const MixedState& state,
                                    const std::vector<MeasurementConfig>& configs,
                                    double log_base, bool force = false);

}  // namespace lonsim
