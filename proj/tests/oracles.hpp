// oracles.hpp
// Independent reference implementations used only by the test suite to
// cross-check the library: a factorial-time permanent, a creation-operator
// polynomial expansion for sector lifting, and eigenbasis-overlap
// measurement statistics. Deliberately simple and slow.

#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <complex>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "lonsim/measurement.hpp"
#include "lonsim/pauli.hpp"
#include "lonsim/state.hpp"
#include "lonsim/unitary.hpp"

namespace oracle {

using Complex = std::complex<double>;

// per(A) by direct sum over all permutations, O(n!).
inline Complex naive_permanent(const Eigen::MatrixXcd& a) {
  const int n = static_cast<int>(a.rows());
  if (n == 0) return Complex(1.0, 0.0);
  std::vector<int> sigma(n);
  std::iota(sigma.begin(), sigma.end(), 0);
  Complex total(0.0, 0.0);
  do {
    Complex term(1.0, 0.0);
    for (int i = 0; i < n; ++i) term *= a(i, sigma[i]);
    total += term;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return total;
}

inline double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// <out| U |in> by expanding prod_m (sum_{m'} u_{m'm} b^dag_{m'})^{n_m} |vac>
// as a polynomial in the output-mode creation operators. Avoids permanents
// entirely; exponential but fine at desk scale.
inline Complex oracle_transition(const Eigen::MatrixXcd& u, const lonsim::FockVector& in,
                                 const lonsim::FockVector& out) {
  const int modes = static_cast<int>(u.rows());
  std::map<std::vector<int>, Complex> poly;
  poly[std::vector<int>(modes, 0)] = Complex(1.0, 0.0);
  for (int m = 0; m < modes; ++m) {
    for (int rep = 0; rep < in[m]; ++rep) {
      std::map<std::vector<int>, Complex> next;
      for (const auto& [mono, coeff] : poly) {
        for (int mp = 0; mp < modes; ++mp) {
          if (u(mp, m) == Complex(0.0, 0.0)) continue;
          std::vector<int> grown = mono;
          ++grown[mp];
          next[grown] += coeff * u(mp, m);
        }
      }
      poly = std::move(next);
    }
  }
  const auto it = poly.find(out);
  if (it == poly.end()) return Complex(0.0, 0.0);
  double in_fact = 1.0;
  double out_fact = 1.0;
  for (int m = 0; m < modes; ++m) {
    in_fact *= factorial(in[m]);
    out_fact *= factorial(out[m]);
  }
  return it->second * std::sqrt(out_fact) / std::sqrt(in_fact);
}

// Full sector matrix of U from the polynomial expansion.
inline Eigen::MatrixXcd oracle_lift(const Eigen::MatrixXcd& u, const lonsim::SectorBasis& basis) {
  const int dim = basis.size();
  Eigen::MatrixXcd g(dim, dim);
  for (int col = 0; col < dim; ++col) {
    // One expansion of U|in> yields the whole column.
    const lonsim::FockVector& in = basis.at(col);
    for (int row = 0; row < dim; ++row) g(row, col) = oracle_transition(u, in, basis.at(row));
  }
  return g;
}

// Label statistics summed from eigenbasis overlaps, p(m) = sum |<e_{j,m}|psi>|^2
// over all orbits carrying label m.
inline lonsim::LabelDistribution eigen_overlap_distribution(const lonsim::ClassPartition& part,
                                                            const lonsim::SectorState& state,
                                                            int j) {
  const int modes = part.basis.modes();
  lonsim::LabelDistribution dist;
  dist.modulus = modes;
  dist.probs.assign(modes, 0.0);
  for (int c = 0; c < static_cast<int>(part.classes.size()); ++c) {
    for (const lonsim::PauliEigenstate& eig : lonsim::class_eigenbasis(part, c, j)) {
      const Complex overlap = lonsim::inner_product(eig.state, state);
      dist.probs[eig.m] += std::norm(overlap);
    }
  }
  return dist;
}

inline Eigen::MatrixXcd random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) a(r, c) = Complex(gauss(rng), gauss(rng));
  return a;
}

// Haar-like unitary: QR of a Gaussian matrix with the standard phase fix.
inline lonsim::ModeUnitary random_unitary(int modes, std::mt19937_64& rng) {
  const Eigen::MatrixXcd a = random_matrix(modes, modes, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(a);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < modes; ++c) {
    const Complex d = r(c, c);
    if (std::abs(d) > 0.0) q.col(c) *= d / std::abs(d);
  }
  return lonsim::ModeUnitary(q);
}

inline lonsim::SectorState random_sector_state(const lonsim::SectorBasis& basis,
                                               std::mt19937_64& rng) {
  Eigen::VectorXcd amps = random_matrix(basis.size(), 1, rng).col(0);
  lonsim::SectorState state(basis, amps);
  state.normalize();
  return state;
}

}  // namespace oracle
