#include "lonsim/permanent.hpp"

#include <bit>
#include <cstdint>
#include <stdexcept>

namespace lonsim {

std::complex<double> permanent(const Eigen::MatrixXcd& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("permanent requires a square matrix");
  const int n = static_cast<int>(a.rows());
  if (n == 0) return 1.0;
  if (n > kMaxPermanentSize)
    throw std::invalid_argument("permanent size " + std::to_string(n) + " exceeds the limit of " +
                                std::to_string(kMaxPermanentSize));

  // Ryser: per(A) = (-1)^n sum_{S != empty} (-1)^{|S|} prod_i sum_{j in S} a_ij.
  // Row sums are updated incrementally as the Gray code walks column subsets.
  Eigen::VectorXcd row_sum = Eigen::VectorXcd::Zero(n);
  std::complex<double> total = 0.0;
  std::uint64_t gray_prev = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t s = 1; s < count; ++s) {
    const std::uint64_t gray = s ^ (s >> 1);
    const std::uint64_t changed = gray ^ gray_prev;
    const int col = std::countr_zero(changed);
    if (gray & changed)
      row_sum += a.col(col);
    else
      row_sum -= a.col(col);
    gray_prev = gray;

    std::complex<double> prod = 1.0;
    for (int i = 0; i < n; ++i) prod *= row_sum(i);
    if (std::popcount(gray) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  if (n % 2 != 0) total = -total;
  return total;
}

}  // namespace lonsim
