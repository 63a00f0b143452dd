#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

#include "lonsim/measurement.hpp"
#include "lonsim/quantities.hpp"
#include "oracles.hpp"

using namespace lonsim;

namespace {

constexpr double kE = std::numbers::e;
const double kLog5 = std::log(5.0);

LabelDistribution make_dist(std::vector<double> probs) {
  LabelDistribution dist;
  dist.modulus = static_cast<int>(probs.size());
  dist.probs = std::move(probs);
  return dist;
}

}  // namespace

TEST_CASE("shannon entropy") {
  CHECK(shannon_entropy(make_dist({1.0, 0.0, 0.0}), kE) == doctest::Approx(0.0));
  CHECK(shannon_entropy(make_dist({0.25, 0.25, 0.25, 0.25}), 2.0) == doctest::Approx(2.0));
  CHECK(shannon_entropy(make_dist({0.2, 0.2, 0.2, 0.2, 0.2}), kE) == doctest::Approx(kLog5));
  CHECK(shannon_entropy(make_dist({0.5, 0.5}), 10.0) == doctest::Approx(std::log10(2.0)));
  // a tiny negative rounding residue is tolerated
  CHECK(shannon_entropy(make_dist({1.0, -1e-13, 1e-13}), kE) == doctest::Approx(0.0));

  CHECK_THROWS_AS(shannon_entropy(make_dist({0.7, 0.7}), kE), std::invalid_argument);
  CHECK_THROWS_AS(shannon_entropy(make_dist({1.2, -0.2}), kE), std::invalid_argument);
  CHECK_THROWS_AS(shannon_entropy(make_dist({0.5, 0.5}), 1.0), std::invalid_argument);
  CHECK_THROWS_AS(shannon_entropy(make_dist({0.5, 0.5}), 0.0), std::invalid_argument);
  CHECK_THROWS_AS(shannon_entropy(make_dist({0.5, 0.5}), -2.0), std::invalid_argument);
}

TEST_CASE("measurement set parsing") {
  const std::vector<MeasurementConfig> configs = parse_measurement_set("xi,l0,l1");
  REQUIRE(configs.size() == 3);
  CHECK(configs[0].name() == "xi");
  CHECK(configs[1].name() == "l0");
  CHECK(configs[2].name() == "l1");
  CHECK(parse_measurement_set("z,l2")[0].name() == "z");
  CHECK_THROWS_AS(parse_measurement_set(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_measurement_set("xi,q1"), std::invalid_argument);
}

TEST_CASE("complementary set validation") {
  const ClassPartition five_two{SectorBasis(5, 2)};
  const ClassPartition four_two{SectorBasis(4, 2)};

  CHECK_NOTHROW(validate_complementary_set(parse_measurement_set("xi,l0,l1,l2,l3,l4"), five_two));
  CHECK_NOTHROW(validate_complementary_set(parse_measurement_set("z,l3"), five_two));
  CHECK_NOTHROW(validate_complementary_set(parse_measurement_set("xi,l2"), four_two));

  CHECK_THROWS_WITH_AS(validate_complementary_set(parse_measurement_set("xi"), five_two),
                       doctest::Contains("at least two"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(validate_complementary_set(parse_measurement_set("xi,z"), five_two),
                       doctest::Contains("at most one"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(validate_complementary_set(parse_measurement_set("l1,l1"), five_two),
                       doctest::Contains("duplicate"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(validate_complementary_set(parse_measurement_set("l0,l1"), four_two),
                       doctest::Contains("not complementary on class 2000"),
                       std::invalid_argument);
  // out-of-range operator index for the sector's mode count
  CHECK_THROWS_AS(validate_complementary_set(parse_measurement_set("xi,l7"), five_two),
                  std::invalid_argument);
}

TEST_CASE("entropy reports for the two-orbit superposition") {
  const SectorState psi0 = build_psi0();

  SUBCASE("tight pair") {
    const EntropyReport report = complementary_entropy(psi0, parse_measurement_set("xi,l0"), kE);
    CHECK(report.value == doctest::Approx(0.5 * kLog5).epsilon(1e-12));
    CHECK(report.bound == doctest::Approx(0.5 * kLog5).epsilon(1e-12));
    CHECK(report.bound_method == "pair_weighted");
    CHECK(report.satisfied);
    REQUIRE(report.entropies.size() == 2);
    CHECK(report.entropies[0] == doctest::Approx(kLog5));  // identity labeling is flat
    CHECK(report.entropies[1] == doctest::Approx(0.0));    // own shift basis is sharp
    // the weighted bound sees two five-element orbits at weight 1/2 each
    double weighted = 0.0;
    for (const WeightedClass& w : report.weights) weighted += 0.5 * w.weight * std::log(w.dim);
    CHECK(weighted == doctest::Approx(report.bound));
  }

  SUBCASE("pair with a different shift-clock index is flat on both and not tight") {
    const EntropyReport report = complementary_entropy(psi0, parse_measurement_set("xi,l1"), kE);
    CHECK(report.value == doctest::Approx(kLog5));
    CHECK(report.bound == doctest::Approx(0.5 * kLog5));
    CHECK(report.satisfied);
  }

  SUBCASE("three measurements use the small-family constant") {
    const EntropyReport report =
        complementary_entropy(psi0, parse_measurement_set("xi,l0,l1"), kE);
    CHECK(report.bound_method == "small_set");
    CHECK(report.bound == doctest::Approx(0.5 * kLog5));
    CHECK(report.value == doctest::Approx((kLog5 + 0.0 + kLog5) / 3.0));
    CHECK(report.satisfied);
  }

  SUBCASE("five measurements use the large-family constant") {
    const EntropyReport report =
        complementary_entropy(psi0, parse_measurement_set("l0,l1,l2,l3,l4"), kE);
    CHECK(report.bound_method == "large_set");
    CHECK(report.bound == doctest::Approx(std::log(25.0 / 9.0)));
    CHECK(report.value == doctest::Approx(4.0 / 5.0 * kLog5));
    CHECK(report.satisfied);
  }

  SUBCASE("full family") {
    const EntropyReport report =
        complementary_entropy(psi0, parse_measurement_set("xi,l0,l1,l2,l3,l4"), kE);
    CHECK(report.bound_method == "large_set");
    CHECK(report.value == doctest::Approx(5.0 / 6.0 * kLog5));
    CHECK(report.bound == doctest::Approx(std::log(3.0)));
    CHECK(report.satisfied);
  }

  SUBCASE("the tight ratio is base independent") {
    for (double base : {2.0, kE, 10.0}) {
      const EntropyReport report =
          complementary_entropy(psi0, parse_measurement_set("xi,l0"), base);
      CHECK(report.log_base == base);
      CHECK(report.value / report.bound == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
}

TEST_CASE("entropy bound dispatch by sector arithmetic") {
  std::mt19937_64 rng(51);
  const SectorBasis shared_factor(4, 2);  // photon count shares a factor with the mode count
  const SectorState state = oracle::random_sector_state(shared_factor, rng);

  SUBCASE("pairs fall back to the orbit-weighted bound") {
    const EntropyReport report = complementary_entropy(state, parse_measurement_set("xi,l0"), kE);
    CHECK(report.bound_method == "pair_weighted");
    const ClassPartition part(shared_factor);
    const std::vector<double> weights = subspace_weights(state, part);
    double expected = 0.0;
    for (std::size_t c = 0; c < part.classes.size(); ++c)
      expected += 0.5 * weights[c] * std::log(part.classes[c].dim);
    CHECK(report.bound == doctest::Approx(expected).epsilon(1e-9));
    CHECK(report.value >= report.bound - 1e-9);
  }

  SUBCASE("larger families are refused, with or without validation") {
    CHECK_THROWS_WITH_AS(
        complementary_entropy(state, parse_measurement_set("xi,l0,l1"), kE),
        doctest::Contains("not complementary"), std::invalid_argument);
    CHECK_THROWS_WITH_AS(
        complementary_entropy(state, parse_measurement_set("xi,l0,l1"), kE, /*force=*/true),
        doctest::Contains("requires gcd(N, M) = 1"), std::invalid_argument);
  }

  SUBCASE("force skips only the validation step") {
    // l0,l2 is not complementary on every orbit of this sector; force still
    // reports the average entropy with the pair bound.
    CHECK_THROWS_AS(complementary_entropy(state, parse_measurement_set("l0,l2"), kE),
                    std::invalid_argument);
    const EntropyReport forced =
        complementary_entropy(state, parse_measurement_set("l0,l2"), kE, /*force=*/true);
    CHECK(forced.bound_method == "pair_weighted");
    CHECK(forced.entropies.size() == 2);
  }
}

TEST_CASE("entropy of mixtures") {
  std::mt19937_64 rng(52);
  const SectorBasis basis(5, 2);
  const std::vector<MeasurementConfig> set = parse_measurement_set("xi,l0,l1,l2,l3,l4");

  SUBCASE("mixture entropy is computed on the mixed distribution") {
    const SectorState a = oracle::random_sector_state(basis, rng);
    const SectorState b = oracle::random_sector_state(basis, rng);
    const MixedState mix{{0.5, 0.5}, {a, b}};
    const EntropyReport report = complementary_entropy(mix, set, kE);
    // cross-check one member against explicitly mixed statistics
    const CompiledMeasurement meas(basis, set[1]);
    LabelDistribution blended = meas.run(a);
    const LabelDistribution other = meas.run(b);
    for (int m = 0; m < 5; ++m) blended.probs[m] = 0.5 * blended.probs[m] + 0.5 * other.probs[m];
    CHECK(report.entropies[1] == doctest::Approx(shannon_entropy(blended, kE)));
  }

  SUBCASE("concavity: mixing never lowers the average entropy") {
    for (int trial = 0; trial < 10; ++trial) {
      const SectorState a = oracle::random_sector_state(basis, rng);
      const SectorState b = oracle::random_sector_state(basis, rng);
      std::uniform_real_distribution<double> unit(0.05, 0.95);
      const double w = unit(rng);
      const MixedState mix{{w, 1.0 - w}, {a, b}};
      const double mixed = complementary_entropy(mix, set, kE).value;
      const double avg = w * complementary_entropy(a, set, kE).value +
                         (1.0 - w) * complementary_entropy(b, set, kE).value;
      CHECK(mixed >= avg - 1e-9);
    }
  }

  SUBCASE("orbit decoherence leaves the reports unchanged") {
    const SectorState psi0 = build_psi0();
    const ClassPartition part(psi0.basis);
    const MixedState decohered = decohere(psi0, part);
    const EntropyReport pure_report = complementary_entropy(psi0, set, kE);
    const EntropyReport mixed_report = complementary_entropy(decohered, set, kE);
    CHECK(pure_report.value == doctest::Approx(mixed_report.value).epsilon(1e-12));
    CHECK(pure_report.bound == doctest::Approx(mixed_report.bound).epsilon(1e-12));
    for (std::size_t i = 0; i < pure_report.entropies.size(); ++i)
      CHECK(pure_report.entropies[i] == doctest::Approx(mixed_report.entropies[i]));
  }
}

TEST_CASE("random states satisfy the bound in every valid family") {
  std::mt19937_64 rng(53);
  const SectorBasis basis(5, 3);
  const std::vector<std::string> families = {"xi,l0", "xi,l3", "l1,l4", "xi,l0,l1",
                                             "xi,l0,l1,l2,l3,l4"};
  for (int trial = 0; trial < 40; ++trial) {
    const SectorState state = oracle::random_sector_state(basis, rng);
    for (const std::string& family : families) {
      const EntropyReport report =
          complementary_entropy(state, parse_measurement_set(family), kE);
      CHECK(report.value >= report.bound - 1e-9);
      CHECK(report.satisfied);
    }
  }
}
