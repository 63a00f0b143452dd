// Acceptance gate: eleven release criteria, each printed as one PASS/FAIL
// line. Exits nonzero if any criterion fails. Tolerances are part of the
// contract and are asserted literally.

#include <cmath>
#include <complex>
#include <cstdio>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "lonsim/bipartite.hpp"
#include "lonsim/io.hpp"
#include "lonsim/measurement.hpp"
#include "lonsim/pauli.hpp"
#include "lonsim/permanent.hpp"
#include "lonsim/quantities.hpp"
#include "lonsim/state.hpp"
#include "lonsim/unitary.hpp"
#include "oracles.hpp"

namespace {

using namespace lonsim;

constexpr double kE = std::numbers::e;
const double kLog5 = std::log(5.0);

[[noreturn]] void fail(const std::string& msg) { throw std::runtime_error(msg); }

void require(bool ok, const std::string& msg) {
  if (!ok) fail(msg);
}

void require_close(double got, double want, double tol, const std::string& what) {
  if (std::abs(got - want) > tol)
    fail(what + ": got " + std::to_string(got) + ", want " + std::to_string(want));
}

// --------------------------------------------------------------------------
// 1. Complementarity grid for 4 modes, 1-4 photons: the gcd predicate, the
//    numerical unbiased-overlap test, and the published cell pattern agree.
void criterion_grid() {
  const std::vector<std::pair<int, int>> pair_order = {{0, 1}, {0, 2}, {0, 3},
                                                       {1, 2}, {1, 3}, {2, 3}};
  const std::vector<bool> kAlternating = {true, false, true, true, false, true};
  const std::vector<bool> kNone(6, false);
  std::map<int, std::map<std::string, std::vector<bool>>> expected;
  expected[1] = {{"1000", kAlternating}};
  expected[2] = {{"2000", kNone}, {"1100", kNone}, {"1010", kAlternating}};
  expected[3] = {{"3000", kAlternating},
                 {"2100", kAlternating},
                 {"2010", kAlternating},
                 {"2001", kAlternating},
                 {"1110", kAlternating}};

  for (int photons = 1; photons <= 4; ++photons) {
    const SectorBasis basis(4, photons);
    const ClassPartition part(basis);
    const ComplementarityGrid grid = complementarity_grid(part);
    require(grid.pairs == pair_order, "unexpected pair ordering");

    std::vector<bool> sector(6, true);
    bool saw_trivial_orbit = false;
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
      const PauliClass& cls = part.classes[c];
      const std::string rep = occ_to_string(cls.representative);
      const double flat = 1.0 / std::sqrt(static_cast<double>(cls.dim));
      for (std::size_t p = 0; p < grid.pairs.size(); ++p) {
        // Numerical test: the two eigenbases are mutually unbiased on the
        // orbit span iff every cross overlap has modulus 1/sqrt(dim).
        bool unbiased = true;
        const auto basis_j = class_eigenbasis(part, static_cast<int>(c), grid.pairs[p].first);
        const auto basis_l = class_eigenbasis(part, static_cast<int>(c), grid.pairs[p].second);
        for (const auto& ej : basis_j)
          for (const auto& el : basis_l)
            if (std::abs(std::abs(inner_product(ej.state, el.state)) - flat) > 1e-9)
              unbiased = false;
        require(unbiased == grid.predicate[c][p],
                "overlap test disagrees with gcd predicate on orbit " + rep);
        require(grid.verdict[c][p] == (grid.predicate[c][p] && cls.dim > 1),
                "verdict convention broken on orbit " + rep);
        if (photons <= 3)
          require(grid.verdict[c][p] == expected[photons].at(rep)[p],
                  "grid cell mismatch on orbit " + rep);
        else
          require(!grid.verdict[c][p], "4-photon cells must all be non-complementary");
        sector[p] = sector[p] && grid.verdict[c][p];
      }
      if (cls.dim == 1) {
        saw_trivial_orbit = true;
        for (std::size_t p = 0; p < grid.pairs.size(); ++p)
          require(grid.predicate[c][p] && !grid.verdict[c][p],
                  "one-dimensional orbit must pass the predicate but fail the verdict");
      }
    }
    const std::vector<bool>& sector_expected =
        (photons % 2 == 1) ? kAlternating : kNone;
    require(sector == sector_expected, "sector-level row mismatch");
    if (photons == 4)
      require(saw_trivial_orbit, "4-photon sector must contain the one-dimensional orbit");
  }
}

// --------------------------------------------------------------------------
// 2. A label-0 shift-clock eigenstate measures sharp in its own basis and
//    flat in every other shift-clock basis.
void criterion_eigenstate_statistics() {
  const SectorBasis basis(5, 2);
  const ClassPartition part(basis);
  const int cls = part.class_of[basis.index_of(occ_from_string("11000"))];
  const PauliEigenstate eig = build_pauli_eigenstate(part, cls, 0, 0);

  const LabelDistribution own = pauli_measurement(eig.state, 0);
  for (int m = 0; m < 5; ++m)
    require_close(own.probs[m], m == 0 ? 1.0 : 0.0, 1e-9, "own-basis outcome " + std::to_string(m));
  for (int j = 1; j <= 4; ++j) {
    const LabelDistribution other = pauli_measurement(eig.state, j);
    for (int m = 0; m < 5; ++m)
      require_close(other.probs[m], 0.2, 1e-9,
                    "j=" + std::to_string(j) + " outcome " + std::to_string(m));
  }
}

// --------------------------------------------------------------------------
// 3. The label-m projector assembled from eigenstate dyads equals the
//    transformed clock projector, for every operator index and label.
void criterion_projector_equivalence() {
  const std::vector<std::pair<int, int>> sectors = {{4, 2}, {5, 2}, {5, 3}};
  for (const auto& [modes, photons] : sectors) {
    const SectorBasis basis(modes, photons);
    const ClassPartition part(basis);
    const int dim = basis.size();
    for (int j = 0; j < modes; ++j) {
      std::vector<Eigen::MatrixXcd> dyads(modes, Eigen::MatrixXcd::Zero(dim, dim));
      for (std::size_t c = 0; c < part.classes.size(); ++c)
        for (const PauliEigenstate& eig : class_eigenbasis(part, static_cast<int>(c), j))
          dyads[eig.m] += eig.state.amplitudes * eig.state.amplitudes.adjoint();
      for (int m = 0; m < modes; ++m) {
        const Eigen::MatrixXcd proj =
            pauli_projector_matrix(basis, MeasurementConfig::lambda_op(j), m);
        const double dev = (proj - dyads[m]).cwiseAbs().maxCoeff();
        require(dev < 1e-9, "projector mismatch at modes=" + std::to_string(modes) +
                                " photons=" + std::to_string(photons) + " j=" + std::to_string(j) +
                                " m=" + std::to_string(m) + " (dev " + std::to_string(dev) + ")");
      }
    }
  }
}

// --------------------------------------------------------------------------
// 4. Entropic uncertainty bound: tight pair and full set on the two-orbit
//    superposition; never violated by random pure states in four sectors.
void criterion_entropy_bound() {
  const SectorState psi0 = build_psi0();

  const EntropyReport tight = complementary_entropy(psi0, parse_measurement_set("xi,l0"), kE);
  require_close(tight.value, 0.5 * kLog5, 1e-9, "tight pair value");
  require(std::abs(tight.value - tight.bound) < 1e-9, "pair bound must be attained");
  require(tight.satisfied, "tight pair must satisfy the bound");

  const EntropyReport full =
      complementary_entropy(psi0, parse_measurement_set("xi,l0,l1,l2,l3,l4"), kE);
  require_close(full.value, 5.0 / 6.0 * kLog5, 1e-9, "full set value");
  require_close(full.bound, std::log(3.0), 1e-9, "full set bound");
  require(full.value >= full.bound - 1e-9 && full.satisfied, "full set must satisfy the bound");

  std::mt19937_64 rng(20260817ULL);
  const std::vector<std::pair<int, int>> sectors = {{4, 2}, {4, 3}, {5, 2}, {5, 3}};
  for (const auto& [modes, photons] : sectors) {
    const SectorBasis basis(modes, photons);
    const ClassPartition part(basis);

    std::vector<std::vector<MeasurementConfig>> sets;
    for (int j = 0; j < modes; ++j)
      sets.push_back({MeasurementConfig::xi_op(), MeasurementConfig::lambda_op(j)});
    for (int j = 0; j < modes; ++j)
      for (int l = j + 1; l < modes; ++l)
        sets.push_back({MeasurementConfig::lambda_op(j), MeasurementConfig::lambda_op(l)});
    std::vector<MeasurementConfig> maximal;
    for (const PauliOperatorId& id : complementary_set(modes, photons))
      maximal.push_back(id.xi ? MeasurementConfig::xi_op() : MeasurementConfig::lambda_op(id.j));
    sets.push_back(maximal);
    if (modes == 5) {
      std::vector<MeasurementConfig> lambdas;
      for (int j = 0; j < modes; ++j) lambdas.push_back(MeasurementConfig::lambda_op(j));
      sets.push_back(lambdas);
    }

    std::vector<std::vector<MeasurementConfig>> valid;
    for (const auto& set : sets) {
      try {
        validate_complementary_set(set, part);
        valid.push_back(set);
      } catch (const std::exception&) {
      }
    }
    require(valid.size() >= 2, "expected at least two valid measurement sets per sector");

    for (int trial = 0; trial < 200; ++trial) {
      const SectorState state = oracle::random_sector_state(basis, rng);
      for (const auto& set : valid) {
        const EntropyReport report = complementary_entropy(state, set, kE);
        if (report.value < report.bound - 1e-9)
          fail("bound violated at modes=" + std::to_string(modes) +
               " photons=" + std::to_string(photons) + " |set|=" + std::to_string(set.size()));
      }
    }
  }
}

// --------------------------------------------------------------------------
// 5. Complementary mutual information of the two-party stabilizer state.
void criterion_cmi() {
  const BipartitePure phi = build_phi32();
  const std::vector<PairConfig> all6 = parse_pairs("all", 5);
  for (int count = 2; count <= 6; ++count) {
    const std::vector<PairConfig> pairs(all6.begin(), all6.begin() + count);
    const CorrelationReport report = cmi_report(phi, pairs, kE);
    for (double v : report.pair_values)
      require_close(v, kLog5, 1e-9, "per-pair information at |set|=" + std::to_string(count));
    require_close(report.value, kLog5, 1e-9, "value at |set|=" + std::to_string(count));
    if (count == 2) require_close(report.bound, 0.5 * kLog5, 1e-9, "pair bound");
    if (count == 6) require_close(report.bound, std::log(5.0 / 3.0), 1e-9, "full-family bound");
    require(report.verdict == "entangled",
            "verdict at |set|=" + std::to_string(count) + " is " + report.verdict);
  }
}

// --------------------------------------------------------------------------
// 6. Complementary mutual predictability: value 1, bound (L+4)/(5L), and the
//    bound is attained by a computational product state.
void criterion_cmp() {
  const BipartitePure phi = build_phi32();
  const std::vector<PairConfig> all6 = parse_pairs("all", 5);
  const std::vector<int> targets = extract_targets(phi, all6);
  require(targets == std::vector<int>({4, 0, 4, 3, 2, 1}), "extracted targets");

  const SectorBasis basis_a(5, 3);
  const SectorBasis basis_b(5, 2);
  const BipartitePure separable =
      product_state(fock_state(basis_a, occ_from_string("11100")),
                    fock_state(basis_b, occ_from_string("11000")));

  for (int count = 2; count <= 6; ++count) {
    const std::vector<PairConfig> pairs(all6.begin(), all6.begin() + count);
    const std::vector<int> t(targets.begin(), targets.begin() + count);

    const CorrelationReport report = cmp_report(phi, pairs, t);
    require_close(report.value, 1.0, 1e-9, "value at |set|=" + std::to_string(count));
    require_close(report.bound, (count + 4.0) / (5.0 * count), 1e-12, "bound formula");
    require(report.verdict == "entangled", "verdict at |set|=" + std::to_string(count));

    const CorrelationReport sep = cmp_report(separable, pairs, t);
    require(std::abs(sep.value - sep.bound) < 1e-9,
            "product state must attain the bound at |set|=" + std::to_string(count));
    require(sep.verdict != "entangled", "product state must not be flagged entangled");
  }
}

double interpolated_crossing(const std::vector<SweepPoint>& rows, bool predictability) {
  for (std::size_t i = 0; i + 1 < rows.size(); ++i) {
    const double d0 = predictability ? rows[i].cmp - rows[i].cmp_bound
                                     : rows[i].cmi - rows[i].cmi_bound;
    const double d1 = predictability ? rows[i + 1].cmp - rows[i + 1].cmp_bound
                                     : rows[i + 1].cmi - rows[i + 1].cmi_bound;
    if (d0 > 0.0 && d1 <= 0.0)
      return rows[i].param + (rows[i + 1].param - rows[i].param) * d0 / (d0 - d1);
  }
  fail("no crossing found in sweep");
}

// --------------------------------------------------------------------------
// 7. White-noise sweep on a 0.01 grid: closed-form predictability, crossing
//    at 5/6, and the information crossing strictly earlier for every family.
void criterion_noise_threshold() {
  const BipartitePure phi = build_phi32();
  const std::vector<PairConfig> all6 = parse_pairs("all", 5);
  const std::vector<int> targets = extract_targets(phi, all6);
  const std::vector<double> grid = parse_grid("0:1:0.01");
  require(grid.size() == 101, "grid resolution");

  for (int count = 2; count <= 6; ++count) {
    const std::vector<PairConfig> pairs(all6.begin(), all6.begin() + count);
    const std::vector<int> t(targets.begin(), targets.begin() + count);
    const std::vector<SweepPoint> rows = noise_sweep(phi, pairs, t, grid, kE);

    if (count == 6) {
      for (const SweepPoint& row : rows)
        require_close(row.cmp, 1.0 - 0.8 * row.param, 1e-9, "closed-form predictability");
      const double cross = interpolated_crossing(rows, true);
      require(std::abs(cross - 5.0 / 6.0) <= 0.01,
              "predictability crossing at " + std::to_string(cross));
      const std::vector<SweepPoint> at_threshold =
          noise_sweep(phi, pairs, t, {5.0 / 6.0}, kE);
      require_close(at_threshold[0].cmp, 1.0 / 3.0, 1e-9, "value exactly at threshold");
      require_close(at_threshold[0].cmp_bound, 1.0 / 3.0, 1e-12, "bound at threshold");
    }

    const double cmi_cross = interpolated_crossing(rows, false);
    const double cmp_cross = interpolated_crossing(rows, true);
    require(cmi_cross < cmp_cross - 1e-9,
            "information crossing " + std::to_string(cmi_cross) +
                " must precede predictability crossing " + std::to_string(cmp_cross) +
                " at |set|=" + std::to_string(count));
  }
}

// --------------------------------------------------------------------------
// 8. Local clock-power sweep: information stays log 5 at integer shifts; at
//    shift 1 the correlations move off the fixed targets, so predictability
//    no longer detects.
void criterion_phase_shift() {
  const BipartitePure phi = build_phi32();
  const std::vector<PairConfig> all6 = parse_pairs("all", 5);
  const std::vector<int> targets = extract_targets(phi, all6);

  for (int theta = 0; theta <= 4; ++theta) {
    const BipartitePure shifted = phase_shifted_state(phi, theta);
    const CorrelationReport report = cmi_report(shifted, all6, kE);
    require_close(report.value, kLog5, 1e-9, "information at shift " + std::to_string(theta));
  }

  const BipartitePure shifted = phase_shifted_state(phi, 1.0);
  const JointLabelDistribution joint = joint_pauli_measurement(shifted, parse_pair("l0,l0"));
  double on_diagonal = 0.0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      if ((a + b) % 5 == 3)
        on_diagonal += joint.probs(a, b);
      else
        require(joint.probs(a, b) < 1e-9, "support off the shifted correlation line");
    }
  require_close(on_diagonal, 1.0, 1e-9, "mass on the shifted correlation line");

  const CorrelationReport report = cmp_report(shifted, all6, targets);
  require_close(report.value, 1.0 / 6.0, 1e-9, "fixed-target predictability at shift 1");
  require(report.value <= report.bound + 1e-9 && report.verdict != "entangled",
          "fixed-target predictability must not detect the shifted state");
}

// --------------------------------------------------------------------------
// 9. Separable soundness: random product states never exceed either bound,
//    in both the coprime and the shared-factor sector pairs.
void criterion_separable_soundness() {
  std::mt19937_64 rng(771128ULL);
  std::uniform_int_distribution<int> label5(0, 4);
  std::uniform_int_distribution<int> label4(0, 3);

  {
    const SectorBasis basis_a(5, 3);
    const SectorBasis basis_b(5, 2);
    const std::vector<PairConfig> pairs = parse_pairs("all", 5);
    for (int trial = 0; trial < 100; ++trial) {
      const BipartitePure prod = product_state(oracle::random_sector_state(basis_a, rng),
                                               oracle::random_sector_state(basis_b, rng));
      const CorrelationReport mi = cmi_report(prod, pairs, kE);
      require(mi.value <= mi.bound + 1e-9, "information bound exceeded (coprime sectors)");
      std::vector<int> targets(pairs.size());
      for (int& t : targets) t = label5(rng);
      const CorrelationReport mp = cmp_report(prod, pairs, targets);
      require(mp.value <= mp.bound + 1e-9, "predictability bound exceeded (coprime sectors)");
    }
  }
  {
    const SectorBasis basis(4, 2);
    const std::vector<PairConfig> pairs = parse_pairs("z,z;l0,l0", 4);
    for (int trial = 0; trial < 100; ++trial) {
      const BipartitePure prod = product_state(oracle::random_sector_state(basis, rng),
                                               oracle::random_sector_state(basis, rng));
      const CorrelationReport mi = cmi_report(prod, pairs, kE);
      require(mi.value <= mi.bound + 1e-9, "information bound exceeded (shared-factor sectors)");
      std::vector<int> targets = {label4(rng), label4(rng)};
      const CorrelationReport mp = cmp_report(prod, pairs, targets);
      require(mp.value <= mp.bound + 1e-9,
              "predictability bound exceeded (shared-factor sectors)");
    }
  }
}

// --------------------------------------------------------------------------
// 10. Permanent vs naive expansion; lifted unitarity, composition, and the
//     label-shift law.
void criterion_oracle_equivalence() {
  std::mt19937_64 rng(101ULL);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 1 + trial % 4;
    const Eigen::MatrixXcd a = oracle::random_matrix(n, n, rng);
    const std::complex<double> fast = permanent(a);
    const std::complex<double> slow = oracle::naive_permanent(a);
    require(std::abs(fast - slow) <= 1e-12 * std::max(1.0, std::abs(slow)),
            "permanent mismatch at n=" + std::to_string(n));
  }

  const std::vector<std::pair<int, int>> sectors = {{4, 2}, {4, 3}, {5, 2}, {5, 3}};
  for (const auto& [modes, photons] : sectors) {
    const SectorBasis basis(modes, photons);
    for (int r = 0; r < 3; ++r) {
      const ModeUnitary u = oracle::random_unitary(modes, rng);
      const Eigen::MatrixXcd g = lift_unitary(u, basis);
      const Eigen::MatrixXcd gram = g.adjoint() * g;
      const double dev =
          (gram - Eigen::MatrixXcd::Identity(basis.size(), basis.size())).cwiseAbs().maxCoeff();
      require(dev < 1e-8, "lifted matrix not unitary at modes=" + std::to_string(modes) +
                              " photons=" + std::to_string(photons));
    }
  }

  for (const auto& [modes, photons] : std::vector<std::pair<int, int>>{{4, 2}, {5, 2}}) {
    const SectorBasis basis(modes, photons);
    const ModeUnitary u = oracle::random_unitary(modes, rng);
    const ModeUnitary v = oracle::random_unitary(modes, rng);
    const ModeUnitary uv(u.matrix() * v.matrix());
    const double dev =
        (lift_unitary(uv, basis) - lift_unitary(u, basis) * lift_unitary(v, basis))
            .cwiseAbs()
            .maxCoeff();
    require(dev < 1e-8, "lifting must respect composition");
  }

  for (int photons = 0; photons <= 3; ++photons) {
    const SectorBasis basis(5, photons);
    for (const FockVector& n : basis.vectors())
      for (int k = 0; k <= 5; ++k)
        require(mu_label(apply_mode_shift(n, k)) == (mu_label(n) + k * photons) % 5,
                "label-shift law broken at " + occ_to_string(n));
  }
}

// --------------------------------------------------------------------------
// 11. Orbit decoherence leaves all six clock-label distributions unchanged.
void criterion_decoherence_invariance() {
  const SectorState psi0 = build_psi0();
  const ClassPartition part(psi0.basis);
  const MixedState decohered = decohere(psi0, part);
  require(decohered.components.size() == 2, "two-orbit superposition decoheres to two parts");

  const std::vector<MeasurementConfig> six = parse_measurement_set("xi,l0,l1,l2,l3,l4");
  for (const MeasurementConfig& config : six) {
    const CompiledMeasurement meas(psi0.basis, config);
    const LabelDistribution before = meas.run(psi0);
    const LabelDistribution after = meas.run(decohered);
    for (int m = 0; m < 5; ++m)
      require(std::abs(before.probs[m] - after.probs[m]) < 1e-9,
              "distribution changed under " + config.name());
  }
}

struct Gate {
  int index = 0;
  int failures = 0;

  void run(const char* name, const std::function<void()>& body) {
    ++index;
    try {
      body();
      std::printf("PASS %2d/11 %s\n", index, name);
    } catch (const std::exception& ex) {
      ++failures;
      std::printf("FAIL %2d/11 %s: %s\n", index, name, ex.what());
    }
    std::fflush(stdout);
  }
};

}  // namespace

int main() {
  Gate gate;
  gate.run("complementarity grid: gcd predicate, unbiased overlaps, published pattern",
           criterion_grid);
  gate.run("eigenstate statistics: sharp in its own basis, flat in the others",
           criterion_eigenstate_statistics);
  gate.run("eigenbasis projectors equal transformed clock projectors",
           criterion_projector_equivalence);
  gate.run("entropy bound: tight pair, full set, 200 random states per sector",
           criterion_entropy_bound);
  gate.run("complementary mutual information: log 5 and entangled at every family size",
           criterion_cmi);
  gate.run("complementary mutual predictability: value 1, bound (L+4)/(5L), tight product state",
           criterion_cmp);
  gate.run("white-noise sweep: crossing at 5/6, information crossing strictly earlier",
           criterion_noise_threshold);
  gate.run("clock-power sweep: log 5 at integer shifts, fixed targets miss at shift 1",
           criterion_phase_shift);
  gate.run("separable soundness: 100 random product states per sector pair",
           criterion_separable_soundness);
  gate.run("permanent vs naive expansion; lifted unitarity and composition",
           criterion_oracle_equivalence);
  gate.run("orbit decoherence leaves all six distributions unchanged",
           criterion_decoherence_invariance);

  std::printf("%d/11 criteria passed\n", 11 - gate.failures);
  return gate.failures == 0 ? 0 : 1;
}
