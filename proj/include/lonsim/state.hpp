// state.hpp
// Pure and mixed states on a fixed-photon-number sector.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "lonsim/fock.hpp"
#include "lonsim/unitary.hpp"

namespace lonsim {

struct SectorState {
  SectorBasis basis;
  Eigen::VectorXcd amplitudes;

  SectorState(SectorBasis b, Eigen::VectorXcd a);

  double norm() const { return amplitudes.norm(); }

  // Scales to unit norm and returns the factor that was divided out.
  double normalize();
};

// Pure basis state |n>.
SectorState fock_state(const SectorBasis& basis, const FockVector& n);

// Convex mixture of pure states on a common sector. Weights are
// non-negative and sum to 1 within 1e-12.
struct MixedState {
  std::vector<double> weights;
  std::vector<SectorState> components;

  void validate() const;
};

MixedState as_mixed(const SectorState& state);

SectorState evolve(const SectorState& state, const ModeUnitary& u);
MixedState evolve(const MixedState& state, const ModeUnitary& u);

// Same evolution with a precomputed sector matrix (see lift_unitary).
SectorState evolve_lifted(const SectorState& state, const Eigen::MatrixXcd& sector_matrix);

std::complex<double> inner_product(const SectorState& a, const SectorState& b);

}  // namespace lonsim
