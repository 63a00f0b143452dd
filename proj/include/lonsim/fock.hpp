// fock.hpp
// Occupation-number vectors and fixed-photon-number sector bases.

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace lonsim {

// Photon occupations per mode, (n_0, ..., n_{M-1}).
using FockVector = std::vector<int>;

int total_photons(const FockVector& n);

// Clock label mu(n) = sum_m n_m * m  (mod M).
int mu_label(const FockVector& n);

// Cyclic mode shift: k = 1 maps (n_0, ..., n_{M-1}) to (n_{M-1}, n_0, ..., n_{M-2}).
// Any integer k is accepted and reduced mod M.
FockVector apply_mode_shift(const FockVector& n, int k);

// Compact text form: digit string "11000" when every entry is a single digit,
// otherwise comma separated "10,0,2".
std::string occ_to_string(const FockVector& n);
FockVector occ_from_string(const std::string& text);

// All occupation vectors with M modes and N photons total, in descending
// lexicographic order (index 0 is (N, 0, ..., 0)). Cheap to copy.
class SectorBasis {
 public:
  SectorBasis(int modes, int photons);

  int modes() const { return data_->modes; }
  int photons() const { return data_->photons; }
  int size() const { return static_cast<int>(data_->vectors.size()); }
  const FockVector& at(int index) const { return data_->vectors.at(index); }
  const std::vector<FockVector>& vectors() const { return data_->vectors; }

  // Position of an occupation vector in this basis; throws if it does not
  // belong to the sector.
  int index_of(const FockVector& n) const;

  bool same_sector(const SectorBasis& other) const {
    return modes() == other.modes() && photons() == other.photons();
  }

 private:
  struct Data {
    int modes;
    int photons;
    std::vector<FockVector> vectors;
    std::unordered_map<std::string, int> index;
  };
  std::shared_ptr<const Data> data_;
};

std::uint64_t binomial(int n, int k);

}  // namespace lonsim
