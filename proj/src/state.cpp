#include "lonsim/state.hpp"

#include <cmath>
#include <stdexcept>

namespace lonsim {

SectorState::SectorState(SectorBasis b, Eigen::VectorXcd a)
    : basis(std::move(b)), amplitudes(std::move(a)) {
  if (amplitudes.size() != basis.size())
    throw std::invalid_argument("amplitude vector length does not match the basis dimension");
}

double SectorState::normalize() {
  const double n = amplitudes.norm();
  if (n < 1e-300) throw std::invalid_argument("cannot normalize a zero state");
  amplitudes /= n;
  return n;
}

SectorState fock_state(const SectorBasis& basis, const FockVector& n) {
  Eigen::VectorXcd amp = Eigen::VectorXcd::Zero(basis.size());
  amp(basis.index_of(n)) = 1.0;
  return SectorState(basis, std::move(amp));
}

void MixedState::validate() const {
  if (weights.size() != components.size())
    throw std::invalid_argument("mixed state weight/component count mismatch");
  if (components.empty()) throw std::invalid_argument("mixed state has no components");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mixed state weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixed state weights must sum to 1 within 1e-12");
  for (const SectorState& c : components)
    if (!c.basis.same_sector(components.front().basis))
      throw std::invalid_argument("mixed state components live on different sectors");
}

MixedState as_mixed(const SectorState& state) {
  MixedState mixed;
  mixed.weights.push_back(1.0);
  mixed.components.push_back(state);
  return mixed;
}

SectorState evolve(const SectorState& state, const ModeUnitary& u) {
  return evolve_lifted(state, lift_unitary(u, state.basis));
}

MixedState evolve(const MixedState& state, const ModeUnitary& u) {
  state.validate();
  const Eigen::MatrixXcd g = lift_unitary(u, state.components.front().basis);
  MixedState out;
  out.weights = state.weights;
  out.components.reserve(state.components.size());
  for (const SectorState& c : state.components) out.components.push_back(evolve_lifted(c, g));
  return out;
}

SectorState evolve_lifted(const SectorState& state, const Eigen::MatrixXcd& sector_matrix) {
  if (sector_matrix.rows() != state.basis.size() || sector_matrix.cols() != state.basis.size())
    throw std::invalid_argument("sector matrix dimension does not match the basis");
  return SectorState(state.basis, sector_matrix * state.amplitudes);
}

std::complex<double> inner_product(const SectorState& a, const SectorState& b) {
  if (!a.basis.same_sector(b.basis))
    throw std::invalid_argument("inner product requires states on the same sector");
  return a.amplitudes.dot(b.amplitudes);
}

}  // namespace lonsim
