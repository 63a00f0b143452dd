// unitary.hpp
// Mode unitaries of a linear optics network and their lifting to
// fixed-photon-number sector matrices via permanents.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "lonsim/fock.hpp"

namespace lonsim {

// exp(i pi h / M): every phase in this library is an integer multiple h of
// the principal 2M-th root of unity, which keeps phase bookkeeping exact
// mod 2M.
std::complex<double> half_root_phase(long long h, int modes);

// An M x M unitary u_{m'm} acting on modes in the Heisenberg picture:
// U a^dag_m U^dag = sum_{m'} u_{m'm} b^dag_{m'}. With this convention the
// operator product U.W corresponds to the matrix product U * W.
class ModeUnitary {
 public:
  // Checks unitarity to 1e-10 entrywise unless `trusted` is set.
  explicit ModeUnitary(Eigen::MatrixXcd matrix, bool trusted = false);

  int modes() const { return static_cast<int>(matrix_.rows()); }
  const Eigen::MatrixXcd& matrix() const { return matrix_; }

  ModeUnitary adjoint() const { return ModeUnitary(matrix_.adjoint(), true); }

 private:
  Eigen::MatrixXcd matrix_;
};

ModeUnitary identity_unitary(int modes);

// Cyclic mode shift as a permutation matrix (single application of the shift).
ModeUnitary mode_shift_unitary(int modes);

// Discrete Fourier transform, entries w^{m'm}/sqrt(M) with w = exp(i 2 pi / M).
ModeUnitary fourier_unitary(int modes);

// Diagonal phase gradient, entries w^{(M-m)m/2}. Exponents may be
// half-integral for even M; the principal 2M-th root of unity is used.
ModeUnitary phase_gradient_unitary(int modes);

// The transform that maps the j-th shift-and-clock eigenbasis to the
// computational Fock basis: the DFT times the j-th power of the phase
// gradient. j = 0 gives the plain DFT.
ModeUnitary inverse_hadamard(int modes, int j);

// <n_out| U |n_in> by the permanent of the row/column-repeated submatrix:
// rows repeat per output occupations, columns per input occupations,
// divided by sqrt(prod n_in! * prod n_out!). Throws on photon-number mismatch.
std::complex<double> transition_amplitude(const ModeUnitary& u, const FockVector& n_in,
                                          const FockVector& n_out);

// Dense sector matrix G with G(i_out, i_in) = <basis[i_out]| U |basis[i_in]>.
Eigen::MatrixXcd lift_unitary(const ModeUnitary& u, const SectorBasis& basis);

}  // namespace lonsim
