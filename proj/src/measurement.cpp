#include "lonsim/measurement.hpp"

#include <stdexcept>

#include "lonsim/unitary.hpp"

namespace lonsim {

double LabelDistribution::sum() const {
  double total = 0.0;
  for (double p : probs) total += p;
  return total;
}

MeasurementConfig MeasurementConfig::lambda_op(int j) {
  MeasurementConfig cfg;
  cfg.kind = MeasurementKind::lambda;
  cfg.j = j;
  return cfg;
}

MeasurementConfig MeasurementConfig::xi_op(SigmaConfig sigma) {
  MeasurementConfig cfg;
  cfg.kind = MeasurementKind::xi;
  cfg.sigma = std::move(sigma);
  return cfg;
}

MeasurementConfig MeasurementConfig::z_op() {
  MeasurementConfig cfg;
  cfg.kind = MeasurementKind::z;
  return cfg;
}

std::string MeasurementConfig::name() const {
  switch (kind) {
    case MeasurementKind::xi:
      return "xi";
    case MeasurementKind::z:
      return "z";
    case MeasurementKind::lambda:
      return "l" + std::to_string(j);
  }
  return "?";
}

MeasurementConfig parse_measurement_op(const std::string& token, const SigmaConfig& sigma) {
  if (token == "xi") return MeasurementConfig::xi_op(sigma);
  if (token == "z") return MeasurementConfig::z_op();
  if (token.size() >= 2 && token[0] == 'l') {
    std::size_t pos = 0;
    int j = -1;
    try {
      j = std::stoi(token.substr(1), &pos);
    } catch (const std::exception&) {
      pos = 0;
    }
    if (pos == token.size() - 1 && j >= 0) return MeasurementConfig::lambda_op(j);
  }
  throw std::invalid_argument("unknown measurement op '" + token +
                              "' (expected xi, z, or l<j>)");
}

CompiledMeasurement::CompiledMeasurement(const SectorBasis& basis,
                                         const MeasurementConfig& config)
    : basis_(basis), config_(config) {
  const int modes = basis.modes();
  switch (config.kind) {
    case MeasurementKind::lambda: {
      if (config.j < 0 || config.j >= modes)
        throw std::invalid_argument("phase index j must lie in [0, M)");
      transform_ = lift_unitary(inverse_hadamard(modes, config.j), basis);
      labels_.resize(basis.size());
      for (int i = 0; i < basis.size(); ++i) labels_[i] = mu_label(basis.at(i));
      break;
    }
    case MeasurementKind::xi: {
      labels_ = xi_labels(ClassPartition(basis), config.sigma);
      break;
    }
    case MeasurementKind::z: {
      labels_.resize(basis.size());
      for (int i = 0; i < basis.size(); ++i) labels_[i] = mu_label(basis.at(i));
      break;
    }
  }
}

Eigen::VectorXcd CompiledMeasurement::outcome_amplitudes(const SectorState& state) const {
  if (!state.basis.same_sector(basis_))
    throw std::invalid_argument("state sector does not match the compiled measurement");
  if (has_transform()) return transform_ * state.amplitudes;
  return state.amplitudes;
}

LabelDistribution CompiledMeasurement::run(const SectorState& state) const {
  const Eigen::VectorXcd amps = outcome_amplitudes(state);
  LabelDistribution dist;
  dist.modulus = modulus();
  dist.probs.assign(dist.modulus, 0.0);
  for (int i = 0; i < amps.size(); ++i) dist.probs[labels_[i]] += std::norm(amps[i]);
  return dist;
}

LabelDistribution CompiledMeasurement::run(const MixedState& state) const {
  state.validate();
  LabelDistribution dist;
  dist.modulus = modulus();
  dist.probs.assign(dist.modulus, 0.0);
  for (std::size_t c = 0; c < state.components.size(); ++c) {
    const LabelDistribution part = run(state.components[c]);
    for (int m = 0; m < dist.modulus; ++m) dist.probs[m] += state.weights[c] * part.probs[m];
  }
  return dist;
}

LabelDistribution pauli_measurement(const SectorState& state, int j) {
  return CompiledMeasurement(state.basis, MeasurementConfig::lambda_op(j)).run(state);
}

LabelDistribution pauli_measurement(const MixedState& state, int j) {
  if (state.components.empty()) throw std::invalid_argument("empty mixed state");
  return CompiledMeasurement(state.components.front().basis, MeasurementConfig::lambda_op(j))
      .run(state);
}

LabelDistribution xi_measurement(const SectorState& state, const SigmaConfig& sigma) {
  return CompiledMeasurement(state.basis, MeasurementConfig::xi_op(sigma)).run(state);
}

LabelDistribution xi_measurement(const MixedState& state, const SigmaConfig& sigma) {
  if (state.components.empty()) throw std::invalid_argument("empty mixed state");
  return CompiledMeasurement(state.components.front().basis, MeasurementConfig::xi_op(sigma))
      .run(state);
}

LabelDistribution z_measurement(const SectorState& state) {
  return CompiledMeasurement(state.basis, MeasurementConfig::z_op()).run(state);
}

LabelDistribution z_measurement(const MixedState& state) {
  if (state.components.empty()) throw std::invalid_argument("empty mixed state");
  return CompiledMeasurement(state.components.front().basis, MeasurementConfig::z_op())
      .run(state);
}

Eigen::MatrixXcd pauli_projector_matrix(const SectorBasis& basis,
                                        const MeasurementConfig& config, int m) {
  const int modes = basis.modes();
  if (m < 0 || m >= modes) throw std::invalid_argument("outcome label out of range");
  const CompiledMeasurement meas(basis, config);
  Eigen::MatrixXcd indicator = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
  for (int i = 0; i < basis.size(); ++i)
    if (meas.labels()[i] == m) indicator(i, i) = 1.0;
  if (!meas.has_transform()) return indicator;
  return meas.transform().adjoint() * indicator * meas.transform();
}

std::vector<double> subspace_weights(const SectorState& state, const ClassPartition& part) {
  if (!state.basis.same_sector(part.basis))
    throw std::invalid_argument("state sector does not match the partition");
  std::vector<double> weights(part.classes.size(), 0.0);
  for (int i = 0; i < state.basis.size(); ++i)
    weights[part.class_of[i]] += std::norm(state.amplitudes[i]);
  return weights;
}

std::vector<double> subspace_weights(const MixedState& state, const ClassPartition& part) {
  state.validate();
  std::vector<double> weights(part.classes.size(), 0.0);
  for (std::size_t c = 0; c < state.components.size(); ++c) {
    const std::vector<double> w = subspace_weights(state.components[c], part);
    for (std::size_t k = 0; k < weights.size(); ++k) weights[k] += state.weights[c] * w[k];
  }
  return weights;
}

MixedState decohere(const SectorState& state, const ClassPartition& part) {
  if (!state.basis.same_sector(part.basis))
    throw std::invalid_argument("state sector does not match the partition");
  MixedState out;
  for (const PauliClass& cls : part.classes) {
    Eigen::VectorXcd proj = Eigen::VectorXcd::Zero(state.basis.size());
    double weight = 0.0;
    for (int idx : cls.members) {
      proj[idx] = state.amplitudes[idx];
      weight += std::norm(state.amplitudes[idx]);
    }
    if (weight < 1e-15) continue;
    proj /= std::sqrt(weight);
    out.weights.push_back(weight);
    out.components.emplace_back(state.basis, std::move(proj));
  }
  return out;
}

MixedState decohere(const MixedState& state, const ClassPartition& part) {
  state.validate();
  MixedState out;
  for (std::size_t c = 0; c < state.components.size(); ++c) {
    MixedState piece = decohere(state.components[c], part);
    for (std::size_t k = 0; k < piece.components.size(); ++k) {
      out.weights.push_back(state.weights[c] * piece.weights[k]);
      out.components.push_back(std::move(piece.components[k]));
    }
  }
  return out;
}

}  // namespace lonsim
