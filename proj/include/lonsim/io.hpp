// io.hpp
// JSON/CSV serialization of states, distributions, and reports, plus state
// file loading. All numbers are emitted with 12 significant digits.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lonsim/bipartite.hpp"

namespace lonsim {

// Shortest "%.12g" form; values below 1e-12 in magnitude collapse to "0".
std::string format_number(double x);

// A state file holds exactly one of: a pure or mixed single-party state, or
// a pure or mixed two-party state. Raw amplitudes are normalized on load;
// `normalization` records the largest factor divided out.
struct LoadedState {
  std::optional<SectorState> pure;
  std::optional<MixedState> mixed;
  std::optional<BipartitePure> bi_pure;
  std::optional<BipartiteMixed> bi_mixed;
  double normalization = 1.0;

  bool bipartite() const { return bi_pure.has_value() || bi_mixed.has_value(); }
};

LoadedState load_state_text(const std::string& text, const std::string& origin = "state");
LoadedState load_state_file(const std::string& path);

// Sigma labeling file: {"mode": "identity"|"z"} or
// {"classes": [{"rep": "11000", "sigma": [0,2,1,3,4]}, ...]} for a custom
// per-class permutation (unlisted classes keep the identity labeling).
SigmaConfig load_sigma_file(const std::string& path);

std::string state_to_json(const SectorState& state);
std::string state_to_json(const MixedState& state);
std::string state_to_json(const BipartitePure& state);

std::string eigenstate_to_json(const PauliEigenstate& eig, const ClassPartition& part);

struct BreakdownRow {
  std::string cls;
  int label = 0;
  double probability = 0.0;
};

std::string distribution_to_json(const LabelDistribution& dist, const std::string& op_name,
                                 const std::vector<BreakdownRow>& breakdown = {});
std::string distribution_to_csv(const LabelDistribution& dist);

std::string joint_distribution_to_json(const JointLabelDistribution& joint,
                                       const std::string& pair_name);
std::string joint_distribution_to_csv(const JointLabelDistribution& joint);

std::string classes_to_json(const ClassPartition& part);
std::string grid_to_csv(const ClassPartition& part, const ComplementarityGrid& grid);

std::string entropy_report_to_json(const EntropyReport& report);
std::string correlation_report_to_json(const CorrelationReport& report);

std::string sweep_to_csv(const std::vector<SweepPoint>& points);
std::string sweep_to_json(const std::vector<SweepPoint>& points);

// Writes to the path, or to stdout when the path is empty. Refuses to
// overwrite an existing file unless `force` is set.
void write_output(const std::string& path, const std::string& content, bool force);

}  // namespace lonsim
