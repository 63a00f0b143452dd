// bipartite.hpp
// Two-party states with fixed local photon numbers, joint clock-label
// measurements, and the complementary mutual-information and
// mutual-predictability entanglement criteria with their separable bounds.

#pragma once

#include <string>
#include <vector>

#include "lonsim/quantities.hpp"

namespace lonsim {

// Pure state sum_{a,b} amplitudes(a,b) |a> (x) |b> over two sector bases.
struct BipartitePure {
  SectorBasis basis_a;
  SectorBasis basis_b;
  Eigen::MatrixXcd amplitudes;  // rows index side A, columns side B

  BipartitePure(SectorBasis a, SectorBasis b, Eigen::MatrixXcd amp);

  double norm() const { return amplitudes.norm(); }
  double normalize();
  bool same_sectors(const BipartitePure& other) const;
};

struct BipartiteMixed {
  std::vector<double> weights;
  std::vector<BipartitePure> components;

  void validate() const;
};

BipartiteMixed as_mixed(const BipartitePure& state);

BipartitePure product_state(const SectorState& a, const SectorState& b);

// Translation-invariant two-party state on 5 modes with 3 + 2 photons:
// (1/sqrt(10)) sum_m shift^m (x) shift^m (|11100>|11000> + |11010>|01001>).
// Joint eigenstate of Z(x)Z and of every shift-and-clock pair.
BipartitePure build_phi32();

// eps * (maximally mixed) + (1 - eps) |target><target|, as an explicit
// mixture of the target and every computational product state.
BipartiteMixed white_noise_state(const BipartitePure& target, double eps);

// Applies id (x) Z^theta for real theta: column phases exp(i 2 pi theta mu / M).
BipartitePure phase_shifted_state(const BipartitePure& state, double theta);

// A measurement on each side, performed jointly.
struct PairConfig {
  MeasurementConfig a;
  MeasurementConfig b;

  std::string name() const;  // "z,z", "l2,l2", ...
};

// "z,z" or "xi,l0"; sigma labelings attach to xi entries per side.
PairConfig parse_pair(const std::string& token, const SigmaConfig& sigma_a = SigmaConfig{},
                      const SigmaConfig& sigma_b = SigmaConfig{});

// Semicolon-separated pair list, or "all" for the canonical family
// (z,z) plus (lj,lj) for j = 0..M-1.
std::vector<PairConfig> parse_pairs(const std::string& list, int modes,
                                    const SigmaConfig& sigma_a = SigmaConfig{},
                                    const SigmaConfig& sigma_b = SigmaConfig{});

// Joint probabilities over label pairs, probs(m_a, m_b).
struct JointLabelDistribution {
  int modulus = 0;
  Eigen::MatrixXd probs;

  double sum() const { return probs.sum(); }
};

class CompiledJointMeasurement {
 public:
  CompiledJointMeasurement(const SectorBasis& basis_a, const SectorBasis& basis_b,
                           const PairConfig& pair);

  const CompiledMeasurement& side_a() const { return a_; }
  const CompiledMeasurement& side_b() const { return b_; }

  JointLabelDistribution run(const BipartitePure& state) const;
  JointLabelDistribution run(const BipartiteMixed& state) const;

 private:
  CompiledMeasurement a_;
  CompiledMeasurement b_;
};

JointLabelDistribution joint_pauli_measurement(const BipartitePure& state,
                                               const PairConfig& pair);
JointLabelDistribution joint_pauli_measurement(const BipartiteMixed& state,
                                               const PairConfig& pair);

// I(A:B) of the label pair in the given log base.
double mutual_information(const JointLabelDistribution& joint, double log_base);

// Probability that m_a + m_b = target (mod M).
double mutual_predictability(const JointLabelDistribution& joint, int target);

// Probability mass per orbit pair, probs summed over computational
// amplitudes; weights[ca][cb] follows the two partitions' class orders.
std::vector<std::vector<double>> joint_class_weights(const BipartitePure& state,
                                                     const ClassPartition& part_a,
                                                     const ClassPartition& part_b);
std::vector<std::vector<double>> joint_class_weights(const BipartiteMixed& state,
                                                     const ClassPartition& part_a,
                                                     const ClassPartition& part_b);

// Correlated label target of a joint eigenstate: the label sum every
// projector pair with support must satisfy. Throws if the state is not an
// eigenstate of the pair (operator expectation off the unit circle) or if
// no integer target exists.
int extract_target(const BipartitePure& state, const PairConfig& pair);
std::vector<int> extract_targets(const BipartitePure& state,
                                 const std::vector<PairConfig>& pairs);

struct JointWeightedClass {
  std::string rep_a;
  std::string rep_b;
  int dim_a = 0;
  int dim_b = 0;
  double weight = 0.0;
};

// Entanglement witness evaluation: per-pair values, their average, the
// separable bound, and the verdict at 1e-9 resolution ("entangled",
// "inconclusive", "not_detected").
struct CorrelationReport {
  std::string quantity;  // "cmi" or "cmp"
  std::vector<std::string> pair_names;
  std::vector<double> pair_values;
  std::vector<int> targets;  // cmp only
  double value = 0.0;
  double bound = 0.0;
  std::string bound_method;  // "subspace_weighted", "small_set", "large_set", "uniform"
  std::vector<JointWeightedClass> weights;  // subspace_weighted only
  double log_base = 0.0;                    // cmi only
  std::string verdict;
};

// Average mutual information against the separable bound. When both local
// photon numbers are coprime to M the bound depends only on the family
// size; otherwise exactly two pairs are required and the orbit-weighted
// bound applies. `force` skips per-side complementarity validation.
CorrelationReport cmi_report(const BipartitePure& state, const std::vector<PairConfig>& pairs,
                             double log_base, bool force = false);
CorrelationReport cmi_report(const BipartiteMixed& state, const std::vector<PairConfig>& pairs,
                             double log_base, bool force = false);

// Average mutual predictability toward the given targets (one per pair)
// against the separable bound.
CorrelationReport cmp_report(const BipartitePure& state, const std::vector<PairConfig>& pairs,
                             const std::vector<int>& targets, bool force = false);
CorrelationReport cmp_report(const BipartiteMixed& state, const std::vector<PairConfig>& pairs,
                             const std::vector<int>& targets, bool force = false);

// One row of a parameter sweep.
struct SweepPoint {
  double param = 0.0;
  double cmi = 0.0;
  double cmi_bound = 0.0;
  std::string cmi_verdict;
  double cmp = 0.0;
  double cmp_bound = 0.0;
  std::string cmp_verdict;
};

// "start:end:step" inclusive of both ends (within step * 1e-9).
std::vector<double> parse_grid(const std::string& text);

// White-noise admixture sweep around `target`. Joint distributions and
// orbit weights are affine in the noise parameter, so each pair is
// measured twice (target and maximally mixed) regardless of grid size.
// Empty `targets` extracts them from the clean target state.
std::vector<SweepPoint> noise_sweep(const BipartitePure& target,
                                    const std::vector<PairConfig>& pairs,
                                    const std::vector<int>& targets,
                                    const std::vector<double>& grid, double log_base,
                                    bool force = false);

// Sweep of id (x) Z^theta applied to `target`, detected against the clean
// state's targets.
std::vector<SweepPoint> phase_sweep(const BipartitePure& target,
                                    const std::vector<PairConfig>& pairs,
                                    const std::vector<int>& targets,
                                    const std::vector<double>& grid, double log_base,
                                    bool force = false);

}  // namespace lonsim
