#include "lonsim/selfcheck.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

#include "lonsim/bipartite.hpp"
#include "lonsim/io.hpp"
#include "lonsim/permanent.hpp"
#include "lonsim/unitary.hpp"

namespace lonsim {

namespace {

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

void require_near(double a, double b, double tol, const std::string& msg) {
  if (!(std::abs(a - b) <= tol)) {
    std::ostringstream out;
    out << msg << " (" << format_number(a) << " vs " << format_number(b) << ")";
    throw std::runtime_error(out.str());
  }
}

Eigen::MatrixXcd random_unitary(int n, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd g(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) g(r, c) = std::complex<double>(gauss(rng), gauss(rng));
  const Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int c = 0; c < n; ++c) q.col(c) *= r(c, c) / std::abs(r(c, c));
  return q;
}

void check_basis() {
  const int expected[][3] = {{2, 1, 2}, {4, 2, 10}, {5, 2, 15}, {5, 3, 35}, {6, 2, 21},
                             {4, 4, 35}, {3, 0, 1},  {1, 5, 1}};
  for (const auto& row : expected) {
    const SectorBasis basis(row[0], row[1]);
    require(basis.size() == row[2], "sector dimension mismatch for M=" +
                                        std::to_string(row[0]) + " N=" + std::to_string(row[1]));
    require(static_cast<std::uint64_t>(basis.size()) ==
                binomial(row[0] + row[1] - 1, row[1]),
            "sector dimension disagrees with the binomial count");
    for (int i = 0; i < basis.size(); ++i) {
      require(total_photons(basis.at(i)) == row[1], "wrong photon number in basis");
      require(basis.index_of(basis.at(i)) == i, "index_of does not invert at()");
      if (i > 0)
        require(basis.at(i - 1) > basis.at(i), "basis is not in descending lexicographic order");
    }
    if (row[1] > 0) {
      FockVector first(row[0], 0);
      first[0] = row[1];
      require(basis.at(0) == first, "basis index 0 is not (N, 0, ..., 0)");
    }
  }
}

void check_permanent() {
  require_near(std::abs(permanent(Eigen::MatrixXcd::Identity(6, 6)) - 1.0), 0.0, 1e-12,
               "permanent of the identity must be 1");
  Eigen::MatrixXcd ones = Eigen::MatrixXcd::Ones(5, 5);
  require_near(std::abs(permanent(ones) - 120.0), 0.0, 1e-12,
               "permanent of the all-ones 5x5 matrix must be 5!");
  Eigen::MatrixXcd two(2, 2);
  two << std::complex<double>(1, 2), std::complex<double>(0, 1),
      std::complex<double>(3, -1), std::complex<double>(2, 0);
  const std::complex<double> expected =
      std::complex<double>(1, 2) * 2.0 + std::complex<double>(0, 1) * std::complex<double>(3, -1);
  require_near(std::abs(permanent(two) - expected), 0.0, 1e-12, "2x2 permanent ad + bc");

  std::mt19937 rng(7);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(4, 4), b(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      a(r, c) = std::complex<double>(gauss(rng), gauss(rng));
      b(r, c) = a(r, c);
    }
  // Multilinearity in one row: splitting row 2 into x + y splits the value.
  Eigen::MatrixXcd x = a, y = a;
  for (int c = 0; c < 4; ++c) {
    x(2, c) = std::complex<double>(gauss(rng), gauss(rng));
    y(2, c) = a(2, c) - x(2, c);
  }
  require_near(std::abs(permanent(x) + permanent(y) - permanent(a)), 0.0, 1e-10,
               "permanent must be linear in each row");
  // Invariance under column swaps.
  b.col(0).swap(b.col(3));
  require_near(std::abs(permanent(b) - permanent(a)), 0.0, 1e-10,
               "permanent must be invariant under column swaps");
}

void check_lifting() {
  for (const auto& [modes, photons] : {std::pair{4, 2}, std::pair{5, 3}, std::pair{3, 3}}) {
    const SectorBasis basis(modes, photons);
    const ModeUnitary u(random_unitary(modes, 100 + modes));
    const Eigen::MatrixXcd g = lift_unitary(u, basis);
    const double defect =
        (g * g.adjoint() - Eigen::MatrixXcd::Identity(basis.size(), basis.size()))
            .cwiseAbs()
            .maxCoeff();
    require(defect < 1e-8, "lifted matrix is not unitary within 1e-8");

    const ModeUnitary w(random_unitary(modes, 200 + modes));
    const Eigen::MatrixXcd gw = lift_unitary(w, basis);
    const Eigen::MatrixXcd guw = lift_unitary(ModeUnitary(u.matrix() * w.matrix()), basis);
    require((guw - g * gw).cwiseAbs().maxCoeff() < 1e-9,
            "lifting must turn operator products into matrix products");
  }
  // One photon: the sector matrix is the mode matrix in basis order.
  const SectorBasis one(4, 1);
  const ModeUnitary u(random_unitary(4, 11));
  const Eigen::MatrixXcd g = lift_unitary(u, one);
  for (int col = 0; col < 4; ++col)
    for (int row = 0; row < 4; ++row) {
      int mode_in = 0, mode_out = 0;
      for (int m = 0; m < 4; ++m) {
        if (one.at(col)[m] == 1) mode_in = m;
        if (one.at(row)[m] == 1) mode_out = m;
      }
      require(std::abs(g(row, col) - u.matrix()(mode_out, mode_in)) < 1e-12,
              "one-photon lift must equal the mode matrix");
    }
  // The lifted mode shift permutes Fock vectors without phases.
  const SectorBasis basis(5, 2);
  const Eigen::MatrixXcd shift = lift_unitary(mode_shift_unitary(5), basis);
  for (int col = 0; col < basis.size(); ++col) {
    const int target = basis.index_of(apply_mode_shift(basis.at(col), 1));
    for (int row = 0; row < basis.size(); ++row) {
      const double want = row == target ? 1.0 : 0.0;
      require(std::abs(shift(row, col) - want) < 1e-12,
              "lifted mode shift must be the orbit permutation");
    }
  }
}

void check_classes() {
  for (const auto& [modes, photons] :
       {std::pair{4, 1}, std::pair{4, 2}, std::pair{4, 4}, std::pair{5, 2}, std::pair{5, 3},
        std::pair{6, 2}}) {
    const SectorBasis basis(modes, photons);
    const ClassPartition part(basis);
    int covered = 0;
    for (const PauliClass& cls : part.classes) {
      covered += cls.dim;
      require(modes % cls.dim == 0, "orbit size must divide the mode count");
      require(photons % (modes / cls.dim) == 0,
              "M/dim must divide the photon number for a period-dim orbit");
      for (int k = 0; k < cls.dim; ++k) {
        const FockVector expect = apply_mode_shift(cls.representative, k);
        require(basis.at(cls.members[k]) == expect, "orbit member order must follow the shift");
        require(part.class_of[cls.members[k]] ==
                    part.class_of[basis.index_of(cls.representative)],
                "class lookup mismatch");
        require(part.shift_of[cls.members[k]] == k, "shift lookup mismatch");
        require(!(expect > cls.representative),
                "representative must be the lexicographically greatest rotation");
      }
    }
    require(covered == basis.size(), "orbits must cover the basis exactly");
  }
}

void check_eigenstates() {
  for (const auto& [modes, photons] :
       {std::pair{4, 2}, std::pair{5, 2}, std::pair{5, 3}, std::pair{6, 2}}) {
    const SectorBasis basis(modes, photons);
    const ClassPartition part(basis);
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
      const PauliClass& cls = part.classes[c];
      for (int j : {0, 1, modes - 1}) {
        const auto eigs = class_eigenbasis(part, static_cast<int>(c), j);
        for (std::size_t p = 0; p < eigs.size(); ++p) {
          // Exact eigenequation under the shift-and-clock action.
          const SectorState applied = apply_shift_clock(eigs[p].state, j);
          const std::complex<double> phase = half_root_phase(
              static_cast<long long>(modes - 1) * j * photons + 2LL * eigs[p].m, modes);
          require((applied.amplitudes - phase * eigs[p].state.amplitudes).norm() < 1e-9,
                  "eigenstate fails its eigenequation");
          for (std::size_t q = 0; q <= p; ++q) {
            const std::complex<double> ov =
                inner_product(eigs[p].state, eigs[q].state);
            const double want = p == q ? 1.0 : 0.0;
            require(std::abs(std::abs(ov) - want) < 1e-9,
                    "class eigenbasis must be orthonormal");
          }
          // Support confined to the orbit, flat in modulus.
          for (int i = 0; i < basis.size(); ++i) {
            const double a = std::abs(eigs[p].state.amplitudes[i]);
            if (part.class_of[i] == static_cast<int>(c))
              require_near(a, 1.0 / std::sqrt(static_cast<double>(cls.dim)), 1e-12,
                           "eigenstate must be flat on its orbit");
            else
              require(a < 1e-15, "eigenstate must vanish outside its orbit");
          }
        }
      }
    }
  }
}

void check_mub() {
  for (const auto& [modes, photons] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{5, 3}}) {
    const SectorBasis basis(modes, photons);
    const ClassPartition part(basis);
    const std::vector<int> labels = xi_labels(part, SigmaConfig{});
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
      const PauliClass& cls = part.classes[c];
      if (cls.dim == 1) continue;
      const double flat = 1.0 / static_cast<double>(cls.dim);
      for (int j = 0; j < modes; ++j) {
        const auto eig_j = class_eigenbasis(part, static_cast<int>(c), j);
        // Unbiased against the computational orbit members (the xi basis).
        for (const PauliEigenstate& e : eig_j)
          for (int idx : cls.members)
            require_near(std::norm(e.state.amplitudes[idx]), flat, 1e-9,
                         "eigenbasis must be unbiased against the computational basis");
        for (int l = j + 1; l < modes; ++l) {
          if (!is_complementary(j, l, cls, modes)) continue;
          const auto eig_l = class_eigenbasis(part, static_cast<int>(c), l);
          for (const PauliEigenstate& a : eig_j)
            for (const PauliEigenstate& b : eig_l)
              require_near(std::norm(inner_product(a.state, b.state)), flat, 1e-9,
                           "complementary eigenbases must be mutually unbiased");
        }
      }
    }
  }
}

void check_hadamard() {
  for (const auto& [modes, photons] : {std::pair{4, 2}, std::pair{5, 2}, std::pair{5, 3}}) {
    const SectorBasis basis(modes, photons);
    const ClassPartition part(basis);
    for (int j = 0; j < modes; ++j) {
      const Eigen::MatrixXcd g = lift_unitary(inverse_hadamard(modes, j), basis);
      // Evolving a label-m eigenstate must land on Fock outputs with clock
      // label m only.
      for (std::size_t c = 0; c < part.classes.size(); ++c)
        for (const PauliEigenstate& e : class_eigenbasis(part, static_cast<int>(c), j)) {
          const Eigen::VectorXcd evolved = g * e.state.amplitudes;
          for (int i = 0; i < basis.size(); ++i)
            if (mu_label(basis.at(i)) != e.m)
              require(std::abs(evolved[i]) < 1e-9,
                      "evolved eigenstate leaks outside its clock label");
        }
      // Projector equivalence: the lifted transform conjugating the clock
      // indicator must reproduce the eigenstate sum.
      for (int m = 0; m < modes; ++m) {
        const Eigen::MatrixXcd proj =
            pauli_projector_matrix(basis, MeasurementConfig::lambda_op(j), m);
        Eigen::MatrixXcd direct = Eigen::MatrixXcd::Zero(basis.size(), basis.size());
        for (std::size_t c = 0; c < part.classes.size(); ++c) {
          const PauliClass& cls = part.classes[c];
          if (m % (modes / cls.dim) != 0) continue;
          const SectorState e = build_pauli_eigenstate(part, static_cast<int>(c), j, m).state;
          direct += e.amplitudes * e.amplitudes.adjoint();
        }
        require((proj - direct).cwiseAbs().maxCoeff() < 1e-9,
                "projector must equal the eigenstate dyad sum");
        require((proj * proj - proj).cwiseAbs().maxCoeff() < 1e-9,
                "projector must be idempotent");
      }
    }
  }
}

void check_suppression() {
  const SectorState psi0 = build_psi0();
  require_near(psi0.norm(), 1.0, 1e-12, "psi0 must be normalized");
  const LabelDistribution l0 = pauli_measurement(psi0, 0);
  require_near(l0.probs[0], 1.0, 1e-9, "psi0 must always yield label 0 under j=0");
  for (int j = 1; j < 5; ++j) {
    const LabelDistribution d = pauli_measurement(psi0, j);
    for (int m = 0; m < 5; ++m)
      require_near(d.probs[m], 0.2, 1e-9, "psi0 must be flat under j != 0");
  }
  const LabelDistribution xi = xi_measurement(psi0);
  for (int m = 0; m < 5; ++m)
    require_near(xi.probs[m], 0.2, 1e-9, "psi0 must be flat under the computational clock");
}

void check_targets() {
  const BipartitePure phi = build_phi32();
  require_near(phi.norm(), 1.0, 1e-12, "phi32 must be normalized");
  const std::vector<PairConfig> pairs = parse_pairs("all", 5);
  const std::vector<int> targets = extract_targets(phi, pairs);
  const std::vector<int> expected = {4, 0, 4, 3, 2, 1};
  require(targets == expected, "phi32 target labels must be 4 and (5 - j) mod 5");
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const JointLabelDistribution joint = joint_pauli_measurement(phi, pairs[p]);
    require_near(joint.sum(), 1.0, 1e-9, "joint distribution must be normalized");
    require_near(mutual_predictability(joint, targets[p]), 1.0, 1e-9,
                 "phi32 must be perfectly correlated on every pair");
    require_near(mutual_information(joint, std::numbers::e), std::log(5.0), 1e-9,
                 "phi32 must carry log 5 mutual information per pair");
  }
}

void check_decoherence() {
  const SectorState psi0 = build_psi0();
  const ClassPartition part(psi0.basis);
  const MixedState rho = decohere(psi0, part);
  rho.validate();
  require(rho.components.size() == 2, "psi0 must decohere into two orbit components");
  const LabelDistribution before = xi_measurement(psi0);
  const LabelDistribution after = xi_measurement(rho);
  for (int m = 0; m < 5; ++m)
    require_near(before.probs[m], after.probs[m], 1e-12,
                 "orbit decoherence must not change the computational clock statistics");
  const std::vector<double> weights = subspace_weights(psi0, part);
  double total = 0.0;
  for (double w : weights) total += w;
  require_near(total, 1.0, 1e-12, "orbit weights must sum to 1");

  const BipartitePure phi = build_phi32();
  const BipartiteMixed noisy = white_noise_state(phi, 0.4);
  noisy.validate();
  const std::vector<PairConfig> pairs = parse_pairs("all", 5);
  const std::vector<int> targets = extract_targets(phi, pairs);
  const CorrelationReport cmp = cmp_report(noisy, pairs, targets);
  require_near(cmp.value, 1.0 - 4.0 * 0.4 / 5.0, 1e-9,
               "white noise must reduce the predictability affinely");
}

void check_bounds() {
  const SectorState psi0 = build_psi0();
  const auto small = parse_measurement_set("xi,l0");
  const EntropyReport tight = complementary_entropy(psi0, small, std::numbers::e);
  require_near(tight.value, 0.5 * std::log(5.0), 1e-9,
               "psi0 must sit exactly on the two-measurement bound");
  require_near(tight.bound, 0.5 * std::log(5.0), 1e-9,
               "two-measurement bound must be half log 5 here");
  require(tight.satisfied, "bound must be reported as satisfied");

  const auto full = parse_measurement_set("xi,l0,l1,l2,l3,l4");
  const EntropyReport big = complementary_entropy(psi0, full, std::numbers::e);
  require_near(big.value, 5.0 / 6.0 * std::log(5.0), 1e-9,
               "psi0 full-set average entropy must be (5/6) log 5");
  require_near(big.bound, std::log(3.0), 1e-9, "full-set bound must be log 3");
  require(big.satisfied, "full-set bound must hold");

  const BipartitePure phi = build_phi32();
  const std::vector<PairConfig> pairs = parse_pairs("all", 5);
  const CorrelationReport cmi = cmi_report(phi, pairs, std::numbers::e);
  require_near(cmi.value, std::log(5.0), 1e-9, "phi32 average mutual information");
  require_near(cmi.bound, std::log(5.0 / 3.0), 1e-9, "six-pair separable bound");
  require(cmi.verdict == "entangled", "phi32 must be detected as entangled");

  const CorrelationReport cmp =
      cmp_report(phi, pairs, extract_targets(phi, pairs));
  require_near(cmp.value, 1.0, 1e-9, "phi32 average predictability");
  require_near(cmp.bound, 1.0 / 3.0, 1e-9, "six-pair predictability bound");
  require(cmp.verdict == "entangled", "phi32 must be detected as entangled");

  // Separable product states must never beat the bound.
  const SectorBasis basis_a(5, 3);
  const SectorBasis basis_b(5, 2);
  const BipartitePure product =
      product_state(fock_state(basis_a, occ_from_string("11100")),
                    fock_state(basis_b, occ_from_string("11000")));
  const CorrelationReport sep = cmi_report(product, pairs, std::numbers::e);
  require(sep.value <= sep.bound + 1e-9, "a product state must respect the bound");
  require(sep.verdict != "entangled", "a product state must not be flagged entangled");
}

struct Suite {
  std::string name;
  std::function<void()> body;
};

const std::vector<Suite>& suites() {
  static const std::vector<Suite> all = {
      {"basis", check_basis},           {"permanent", check_permanent},
      {"lifting", check_lifting},       {"classes", check_classes},
      {"eigenstates", check_eigenstates}, {"mub", check_mub},
      {"hadamard", check_hadamard},     {"suppression", check_suppression},
      {"targets", check_targets},       {"decoherence", check_decoherence},
      {"bounds", check_bounds},
  };
  return all;
}

}  // namespace

std::vector<std::string> selfcheck_names() {
  std::vector<std::string> names;
  for (const Suite& s : suites()) names.push_back(s.name);
  return names;
}

std::vector<CheckResult> run_selfchecks(const std::string& only) {
  std::vector<CheckResult> results;
  for (const Suite& suite : suites()) {
    if (!only.empty() && suite.name.find(only) == std::string::npos) continue;
    CheckResult result;
    result.name = suite.name;
    try {
      suite.body();
      result.pass = true;
    } catch (const std::exception& e) {
      result.pass = false;
      result.message = e.what();
    }
    results.push_back(std::move(result));
  }
  if (results.empty()) throw std::invalid_argument("no self-check suite matches '" + only + "'");
  return results;
}

}  // namespace lonsim
