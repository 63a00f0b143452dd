// pauli.hpp
// Orbit decomposition of a sector basis under the cyclic mode shift,
// shift-and-clock eigenstates, computational-basis clock labelings, and
// complementarity predicates.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "lonsim/state.hpp"

namespace lonsim {

// Orbit of a Fock vector under the mode shift. members[k] is the basis index
// of the k-fold shifted representative; dim divides the mode count.
struct PauliClass {
  FockVector representative;  // lexicographically greatest rotation
  std::vector<int> members;   // basis indices, k = 0 .. dim-1
  int dim = 0;
};

// Disjoint orbits covering a sector basis, plus per-basis-index lookups.
struct ClassPartition {
  SectorBasis basis;
  std::vector<PauliClass> classes;
  std::vector<int> class_of;  // basis index -> position in `classes`
  std::vector<int> shift_of;  // basis index -> k with shifted rep == vector

  explicit ClassPartition(const SectorBasis& b);
};

ClassPartition partition_pauli_classes(const SectorBasis& basis);

// Exact operator actions on sector states (permutation and phase only).
SectorState apply_shift(const SectorState& state, int k);       // mode shift^k
SectorState apply_clock(const SectorState& state, int power);   // Z^power
SectorState apply_shift_clock(const SectorState& state, int j); // X Z^j

// Eigenstate of the j-th shift-and-clock operator supported on one orbit.
// Valid clock labels m are the multiples of M/dim in {0, ..., M-1}; the
// eigenvalue is the 2M-th root of unity with exponent (M-1)*j*N + 2m.
struct PauliEigenstate {
  int class_index;
  int j;
  int m;
  SectorState state;
};

PauliEigenstate build_pauli_eigenstate(const ClassPartition& part, int class_index, int j, int m);

// All dim eigenstates of one class for a given j, ordered by label.
std::vector<PauliEigenstate> class_eigenbasis(const ClassPartition& part, int class_index, int j);

// Clock labeling of the computational basis itself, one label per orbit
// member. identity maps the k-fold shifted representative to label k*M/dim;
// z_label bins by mu(n) directly (requires mu to be injective on every
// orbit); custom applies a per-class permutation of {0,...,dim-1}, with
// unlisted classes falling back to identity.
enum class SigmaMode { identity, z_label, custom };

struct SigmaConfig {
  SigmaMode mode = SigmaMode::identity;
  std::map<std::string, std::vector<int>> perms;  // occ string of rep -> sigma
};

// Label per basis index. Throws if z_label hits a degenerate orbit or a
// custom permutation is not a bijection of the right size.
std::vector<int> xi_labels(const ClassPartition& part, const SigmaConfig& sigma);

// gcd criterion for two shift-and-clock operators sharing an unbiased
// eigenbasis pair within one orbit's span. True for dim = 1 (vacuous).
bool is_complementary(int j, int l, const PauliClass& cls, int modes);

// Identifier for an operator drawn from the clock-label family:
// the computational-basis clock (xi) or a shift-and-clock index j.
struct PauliOperatorId {
  bool xi = false;
  int j = 0;
};

// Maximal set of pairwise-complementary operators valid in every orbit of
// the N-photon sector: always contains xi; all M shift-and-clock operators
// iff M is prime and N is not a multiple of M; the first p1 of them when
// gcd(N,M) = 1 with p1 the smallest prime factor of M; a single pair
// {xi, lambda_0} otherwise.
std::vector<PauliOperatorId> complementary_set(int modes, int photons);

// Pairwise complementarity of all shift-and-clock pairs per class.
// `verdict` additionally marks one-dimensional orbits as non-complementary,
// matching the sector-level reading; `predicate` is the raw gcd criterion.
struct ComplementarityGrid {
  std::vector<std::pair<int, int>> pairs;  // (j, l) with j < l
  std::vector<std::vector<bool>> predicate;  // [class][pair]
  std::vector<std::vector<bool>> verdict;    // [class][pair]
};

ComplementarityGrid complementarity_grid(const ClassPartition& part);

// Equal superposition of the two label-0 eigenstates of the j=0 operator on
// the orbits of 11000 and 10100 (5 modes, 2 photons); 10 Fock amplitudes of
// modulus 1/sqrt(10).
SectorState build_psi0();

}  // namespace lonsim
