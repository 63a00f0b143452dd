// permanent.hpp
// Matrix permanent for multiphoton transition amplitudes.

#pragma once

#include <Eigen/Dense>
#include <complex>

namespace lonsim {

inline constexpr int kMaxPermanentSize = 12;

// per(A) of a square complex matrix via Ryser's formula with Gray-code
// subset updates, O(2^n * n). Throws for n > kMaxPermanentSize.
std::complex<double> permanent(const Eigen::MatrixXcd& a);

}  // namespace lonsim
