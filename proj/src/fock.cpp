#include "lonsim/fock.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace lonsim {

int total_photons(const FockVector& n) {
  int total = 0;
  for (int c : n) total += c;
  return total;
}

int mu_label(const FockVector& n) {
  const int modes = static_cast<int>(n.size());
  long long acc = 0;
  for (int m = 0; m < modes; ++m) acc += static_cast<long long>(n[m]) * m;
  return static_cast<int>(acc % modes);
}

FockVector apply_mode_shift(const FockVector& n, int k) {
  const int modes = static_cast<int>(n.size());
  int shift = ((k % modes) + modes) % modes;
  FockVector out(modes);
  for (int m = 0; m < modes; ++m) out[(m + shift) % modes] = n[m];
  return out;
}

std::string occ_to_string(const FockVector& n) {
  bool single_digit = std::all_of(n.begin(), n.end(), [](int c) { return c >= 0 && c <= 9; });
  std::ostringstream out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!single_digit && i > 0) out << ',';
    out << n[i];
  }
  return out.str();
}

FockVector occ_from_string(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty occupation string");
  FockVector n;
  if (text.find(',') == std::string::npos) {
    for (char c : text) {
      if (c < '0' || c > '9') throw std::invalid_argument("invalid occupation string: " + text);
      n.push_back(c - '0');
    }
  } else {
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      std::size_t pos = 0;
      int value = std::stoi(item, &pos);
      if (pos != item.size() || value < 0)
        throw std::invalid_argument("invalid occupation string: " + text);
      n.push_back(value);
    }
  }
  return n;
}

namespace {

void enumerate_rec(int remaining, int mode, int modes, FockVector& current,
                   std::vector<FockVector>& out) {
  if (mode == modes - 1) {
    current[mode] = remaining;
    out.push_back(current);
    return;
  }
  for (int c = remaining; c >= 0; --c) {
    current[mode] = c;
    enumerate_rec(remaining - c, mode + 1, modes, current, out);
  }
}

}  // namespace

SectorBasis::SectorBasis(int modes, int photons) {
  if (modes < 1) throw std::invalid_argument("mode count must be at least 1");
  if (photons < 0) throw std::invalid_argument("photon count must be non-negative");
  auto data = std::make_shared<Data>();
  data->modes = modes;
  data->photons = photons;
  FockVector current(modes, 0);
  enumerate_rec(photons, 0, modes, current, data->vectors);
  data->index.reserve(data->vectors.size());
  for (std::size_t i = 0; i < data->vectors.size(); ++i)
    data->index.emplace(occ_to_string(data->vectors[i]), static_cast<int>(i));
  data_ = std::move(data);
}

int SectorBasis::index_of(const FockVector& n) const {
  auto it = data_->index.find(occ_to_string(n));
  if (it == data_->index.end())
    throw std::out_of_range("occupation vector " + occ_to_string(n) + " is not in the " +
                            std::to_string(photons()) + "-photon sector");
  return it->second;
}

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) result = result * (n - k + i) / i;
  return result;
}

}  // namespace lonsim
