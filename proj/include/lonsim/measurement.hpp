// measurement.hpp
// Clock-label measurements on a photon-number sector: the computational
// clock (xi and its coarse z variant) and the shift-and-clock family,
// realized by evolving through the matching mode transform and binning
// Fock outcomes by their clock label.

#pragma once

#include <string>
#include <vector>

#include "lonsim/pauli.hpp"
#include "lonsim/state.hpp"

namespace lonsim {

// Probabilities over labels {0, ..., modulus-1}.
struct LabelDistribution {
  int modulus = 0;
  std::vector<double> probs;

  double sum() const;
};

enum class MeasurementKind { xi, z, lambda };

struct MeasurementConfig {
  MeasurementKind kind = MeasurementKind::lambda;
  int j = 0;          // lambda only
  SigmaConfig sigma;  // xi only

  static MeasurementConfig lambda_op(int j);
  static MeasurementConfig xi_op(SigmaConfig sigma = SigmaConfig{});
  static MeasurementConfig z_op();

  // "l<j>", "xi", or "z".
  std::string name() const;
};

// Parses "xi", "z", or "l<j>"; the sigma labeling applies to xi.
MeasurementConfig parse_measurement_op(const std::string& token,
                                       const SigmaConfig& sigma = SigmaConfig{});

// A measurement bound to one sector basis, with the lifted mode transform
// (shift-and-clock only) and per-outcome labels precomputed so that many
// states can be measured against it cheaply.
class CompiledMeasurement {
 public:
  CompiledMeasurement(const SectorBasis& basis, const MeasurementConfig& config);

  const MeasurementConfig& config() const { return config_; }
  const SectorBasis& basis() const { return basis_; }
  int modulus() const { return basis_.modes(); }

  bool has_transform() const { return transform_.size() > 0; }
  const Eigen::MatrixXcd& transform() const { return transform_; }
  const std::vector<int>& labels() const { return labels_; }

  // Amplitudes in the frame whose Fock outcomes carry the labels: the
  // input state itself for xi/z, the transformed state for shift-and-clock.
  Eigen::VectorXcd outcome_amplitudes(const SectorState& state) const;

  LabelDistribution run(const SectorState& state) const;
  LabelDistribution run(const MixedState& state) const;

 private:
  SectorBasis basis_;
  MeasurementConfig config_;
  Eigen::MatrixXcd transform_;  // empty when no transform is needed
  std::vector<int> labels_;
};

// One-shot conveniences.
LabelDistribution pauli_measurement(const SectorState& state, int j);
LabelDistribution pauli_measurement(const MixedState& state, int j);
LabelDistribution xi_measurement(const SectorState& state,
                                 const SigmaConfig& sigma = SigmaConfig{});
LabelDistribution xi_measurement(const MixedState& state,
                                 const SigmaConfig& sigma = SigmaConfig{});
LabelDistribution z_measurement(const SectorState& state);
LabelDistribution z_measurement(const MixedState& state);

// Rank-d_E-summed projector onto outcome label m, as a dense sector matrix.
Eigen::MatrixXcd pauli_projector_matrix(const SectorBasis& basis,
                                        const MeasurementConfig& config, int m);

// Total probability carried by each orbit, read off the computational-basis
// distribution. Order follows part.classes.
std::vector<double> subspace_weights(const SectorState& state, const ClassPartition& part);
std::vector<double> subspace_weights(const MixedState& state, const ClassPartition& part);

// Drops coherences between orbits: mixture of the normalized projections
// onto each orbit, weighted by the orbit probabilities.
MixedState decohere(const SectorState& state, const ClassPartition& part);
MixedState decohere(const MixedState& state, const ClassPartition& part);

}  // namespace lonsim
