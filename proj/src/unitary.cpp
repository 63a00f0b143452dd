#include "lonsim/unitary.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lonsim/permanent.hpp"

namespace lonsim {

namespace {

constexpr double kPi = std::numbers::pi;

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::complex<double> half_root_phase(long long h, int modes) {
  const long long period = 2LL * modes;
  h %= period;
  if (h < 0) h += period;
  return std::polar(1.0, kPi * static_cast<double>(h) / modes);
}

ModeUnitary::ModeUnitary(Eigen::MatrixXcd matrix, bool trusted) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1)
    throw std::invalid_argument("mode matrix must be square and non-empty");
  if (!trusted) {
    const Eigen::MatrixXcd defect =
        matrix_ * matrix_.adjoint() - Eigen::MatrixXcd::Identity(matrix_.rows(), matrix_.cols());
    if (defect.cwiseAbs().maxCoeff() > 1e-10)
      throw std::invalid_argument("mode matrix is not unitary within 1e-10");
  }
}

ModeUnitary identity_unitary(int modes) {
  return ModeUnitary(Eigen::MatrixXcd::Identity(modes, modes), true);
}

ModeUnitary mode_shift_unitary(int modes) {
  Eigen::MatrixXcd x = Eigen::MatrixXcd::Zero(modes, modes);
  for (int m = 0; m < modes; ++m) x((m + 1) % modes, m) = 1.0;
  return ModeUnitary(std::move(x), true);
}

ModeUnitary fourier_unitary(int modes) {
  Eigen::MatrixXcd f(modes, modes);
  const double norm = 1.0 / std::sqrt(static_cast<double>(modes));
  for (int row = 0; row < modes; ++row)
    for (int col = 0; col < modes; ++col)
      f(row, col) = norm * half_root_phase(2LL * row * col, modes);
  return ModeUnitary(std::move(f), true);
}

ModeUnitary phase_gradient_unitary(int modes) {
  Eigen::MatrixXcd v = Eigen::MatrixXcd::Zero(modes, modes);
  for (int m = 0; m < modes; ++m)
    v(m, m) = half_root_phase(static_cast<long long>(modes - m) * m, modes);
  return ModeUnitary(std::move(v), true);
}

ModeUnitary inverse_hadamard(int modes, int j) {
  if (j < 0 || j >= modes) throw std::invalid_argument("phase index j must lie in [0, M)");
  Eigen::MatrixXcd h(modes, modes);
  const double norm = 1.0 / std::sqrt(static_cast<double>(modes));
  for (int row = 0; row < modes; ++row)
    for (int col = 0; col < modes; ++col)
      h(row, col) = norm * half_root_phase(2LL * row * col +
                                               static_cast<long long>(j) * (modes - col) * col,
                                           modes);
  return ModeUnitary(std::move(h), true);
}

std::complex<double> transition_amplitude(const ModeUnitary& u, const FockVector& n_in,
                                          const FockVector& n_out) {
  const int modes = u.modes();
  if (static_cast<int>(n_in.size()) != modes || static_cast<int>(n_out.size()) != modes)
    throw std::invalid_argument("occupation vector length does not match the mode count");
  const int photons = total_photons(n_in);
  if (photons != total_photons(n_out))
    throw std::invalid_argument("photon numbers differ between input and output occupations");
  if (photons == 0) return 1.0;
  if (photons > kMaxPermanentSize)
    throw std::invalid_argument("photon number exceeds the permanent size limit");

  Eigen::MatrixXcd sub(photons, photons);
  int row = 0;
  for (int mo = 0; mo < modes; ++mo)
    for (int r = 0; r < n_out[mo]; ++r) {
      int col = 0;
      for (int mi = 0; mi < modes; ++mi)
        for (int c = 0; c < n_in[mi]; ++c) sub(row, col++) = u.matrix()(mo, mi);
      ++row;
    }

  double norm = 1.0;
  for (int m = 0; m < modes; ++m) norm *= factorial(n_in[m]) * factorial(n_out[m]);
  return permanent(sub) / std::sqrt(norm);
}

Eigen::MatrixXcd lift_unitary(const ModeUnitary& u, const SectorBasis& basis) {
  if (u.modes() != basis.modes())
    throw std::invalid_argument("mode count mismatch between unitary and basis");
  const int dim = basis.size();
  Eigen::MatrixXcd g(dim, dim);
  for (int col = 0; col < dim; ++col)
    for (int row = 0; row < dim; ++row)
      g(row, col) = transition_amplitude(u, basis.at(col), basis.at(row));
  return g;
}

}  // namespace lonsim
