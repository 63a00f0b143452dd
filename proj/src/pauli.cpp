#include "lonsim/pauli.hpp"

#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include "lonsim/unitary.hpp"

namespace lonsim {

ClassPartition::ClassPartition(const SectorBasis& b) : basis(b) {
  const int dim = basis.size();
  const int modes = basis.modes();
  class_of.assign(dim, -1);
  shift_of.assign(dim, 0);
  // The basis is in descending lexicographic order, so scanning ascending
  // indices makes every representative the greatest rotation in its orbit.
  for (int i = 0; i < dim; ++i) {
    if (class_of[i] >= 0) continue;
    PauliClass cls;
    cls.representative = basis.at(i);
    const int id = static_cast<int>(classes.size());
    FockVector current = cls.representative;
    for (int k = 0; k < modes; ++k) {
      if (k > 0 && current == cls.representative) break;
      const int idx = basis.index_of(current);
      cls.members.push_back(idx);
      class_of[idx] = id;
      shift_of[idx] = k;
      current = apply_mode_shift(current, 1);
    }
    cls.dim = static_cast<int>(cls.members.size());
    classes.push_back(std::move(cls));
  }
}

ClassPartition partition_pauli_classes(const SectorBasis& basis) { return ClassPartition(basis); }

SectorState apply_shift(const SectorState& state, int k) {
  const SectorBasis& basis = state.basis;
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(basis.size());
  for (int i = 0; i < basis.size(); ++i) {
    if (state.amplitudes[i] == 0.0) continue;
    out[basis.index_of(apply_mode_shift(basis.at(i), k))] += state.amplitudes[i];
  }
  return SectorState(basis, std::move(out));
}

SectorState apply_clock(const SectorState& state, int power) {
  const SectorBasis& basis = state.basis;
  const int modes = basis.modes();
  Eigen::VectorXcd out = state.amplitudes;
  for (int i = 0; i < basis.size(); ++i)
    out[i] *= half_root_phase(2LL * power * mu_label(basis.at(i)), modes);
  return SectorState(basis, std::move(out));
}

SectorState apply_shift_clock(const SectorState& state, int j) {
  return apply_shift(apply_clock(state, j), 1);
}

namespace {

void check_class_index(const ClassPartition& part, int class_index) {
  if (class_index < 0 || class_index >= static_cast<int>(part.classes.size()))
    throw std::invalid_argument("class index out of range");
}

}  // namespace

PauliEigenstate build_pauli_eigenstate(const ClassPartition& part, int class_index, int j,
                                       int m) {
  check_class_index(part, class_index);
  const PauliClass& cls = part.classes[class_index];
  const int modes = part.basis.modes();
  const int photons = part.basis.photons();
  if (j < 0 || j >= modes) throw std::invalid_argument("phase index j must lie in [0, M)");
  const int step = modes / cls.dim;
  if (m < 0 || m >= modes || m % step != 0)
    throw std::invalid_argument("clock label " + std::to_string(m) +
                                " is not a multiple of M/dim = " + std::to_string(step) +
                                " for class " + occ_to_string(cls.representative));

  const int mu = mu_label(cls.representative);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(part.basis.size());
  const double scale = 1.0 / std::sqrt(static_cast<double>(cls.dim));
  for (int k = 0; k < cls.dim; ++k) {
    // Half-exponent of the amplitude carried by the k-fold shifted member.
    const long long h = static_cast<long long>(j) * photons * k * (k - modes) -
                        2LL * m * k + 2LL * j * k * mu;
    amps[cls.members[k]] = scale * half_root_phase(h, modes);
  }
  return PauliEigenstate{class_index, j, m, SectorState(part.basis, std::move(amps))};
}

std::vector<PauliEigenstate> class_eigenbasis(const ClassPartition& part, int class_index,
                                              int j) {
  check_class_index(part, class_index);
  const PauliClass& cls = part.classes[class_index];
  const int step = part.basis.modes() / cls.dim;
  std::vector<PauliEigenstate> out;
  out.reserve(cls.dim);
  for (int k = 0; k < cls.dim; ++k)
    out.push_back(build_pauli_eigenstate(part, class_index, j, k * step));
  return out;
}

std::vector<int> xi_labels(const ClassPartition& part, const SigmaConfig& sigma) {
  const int modes = part.basis.modes();
  std::vector<int> labels(part.basis.size(), 0);
  for (const PauliClass& cls : part.classes) {
    const int step = modes / cls.dim;
    std::vector<int> perm(cls.dim);
    std::iota(perm.begin(), perm.end(), 0);
    if (sigma.mode == SigmaMode::custom) {
      auto it = sigma.perms.find(occ_to_string(cls.representative));
      if (it != sigma.perms.end()) {
        perm = it->second;
        if (static_cast<int>(perm.size()) != cls.dim)
          throw std::invalid_argument("sigma permutation for class " +
                                      occ_to_string(cls.representative) + " must have length " +
                                      std::to_string(cls.dim));
        std::set<int> seen(perm.begin(), perm.end());
        if (static_cast<int>(seen.size()) != cls.dim || *seen.begin() < 0 ||
            *seen.rbegin() >= cls.dim)
          throw std::invalid_argument("sigma permutation for class " +
                                      occ_to_string(cls.representative) +
                                      " is not a bijection of {0,...,dim-1}");
      }
    }

    if (sigma.mode == SigmaMode::z_label) {
      std::set<int> seen;
      for (int k = 0; k < cls.dim; ++k) {
        const int label = mu_label(part.basis.at(cls.members[k]));
        labels[cls.members[k]] = label;
        seen.insert(label);
      }
      if (static_cast<int>(seen.size()) != cls.dim)
        throw std::invalid_argument("clock labels are degenerate on class " +
                                    occ_to_string(cls.representative) +
                                    "; the z labeling is not valid for this sector");
    } else {
      // Member sigma(k) carries label k * M/dim, so invert the permutation.
      for (int k = 0; k < cls.dim; ++k) labels[cls.members[perm[k]]] = k * step;
    }
  }
  return labels;
}

bool is_complementary(int j, int l, const PauliClass& cls, int modes) {
  if (cls.dim <= 1) return true;
  const int photons = total_photons(cls.representative);
  // dim divides M and M/dim divides N, so N * dim / M is an integer.
  const long long reduced = static_cast<long long>(photons) * cls.dim / modes;
  const long long diff = ((static_cast<long long>(l) - j) % modes + modes) % modes;
  const long long a = (diff * reduced) % cls.dim;
  return std::gcd(a, static_cast<long long>(cls.dim)) == 1;
}

std::vector<PauliOperatorId> complementary_set(int modes, int photons) {
  std::vector<PauliOperatorId> out;
  out.push_back(PauliOperatorId{true, 0});
  if (std::gcd(photons, modes) == 1) {
    int p1 = modes;
    for (int p = 2; p * p <= modes; ++p)
      if (modes % p == 0) {
        p1 = p;
        break;
      }
    for (int j = 0; j < p1; ++j) out.push_back(PauliOperatorId{false, j});
  } else {
    out.push_back(PauliOperatorId{false, 0});
  }
  return out;
}

ComplementarityGrid complementarity_grid(const ClassPartition& part) {
  const int modes = part.basis.modes();
  ComplementarityGrid grid;
  for (int j = 0; j < modes; ++j)
    for (int l = j + 1; l < modes; ++l) grid.pairs.emplace_back(j, l);
  for (const PauliClass& cls : part.classes) {
    std::vector<bool> pred, verdict;
    pred.reserve(grid.pairs.size());
    verdict.reserve(grid.pairs.size());
    for (const auto& [j, l] : grid.pairs) {
      const bool ok = is_complementary(j, l, cls, modes);
      pred.push_back(ok);
      verdict.push_back(ok && cls.dim > 1);
    }
    grid.predicate.push_back(std::move(pred));
    grid.verdict.push_back(std::move(verdict));
  }
  return grid;
}

SectorState build_psi0() {
  const SectorBasis basis(5, 2);
  const ClassPartition part(basis);
  const int ca = part.class_of[basis.index_of(occ_from_string("11000"))];
  const int cb = part.class_of[basis.index_of(occ_from_string("10100"))];
  const SectorState ea = build_pauli_eigenstate(part, ca, 0, 0).state;
  const SectorState eb = build_pauli_eigenstate(part, cb, 0, 0).state;
  Eigen::VectorXcd amps = (ea.amplitudes + eb.amplitudes) / std::sqrt(2.0);
  return SectorState(basis, std::move(amps));
}

}  // namespace lonsim
