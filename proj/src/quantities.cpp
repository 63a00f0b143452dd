#include "lonsim/quantities.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace lonsim {

double shannon_entropy(const LabelDistribution& dist, double log_base) {
  if (log_base <= 0.0 || log_base == 1.0)
    throw std::invalid_argument("log base must be positive and different from 1");
  double total = 0.0;
  double acc = 0.0;
  for (double p : dist.probs) {
    if (p < -1e-12) throw std::invalid_argument("negative probability in distribution");
    total += p;
    if (p > 0.0) acc -= p * std::log(p);
  }
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("distribution is not normalized within 1e-9");
  return acc / std::log(log_base);
}

std::vector<MeasurementConfig> parse_measurement_set(const std::string& list,
                                                     const SigmaConfig& sigma) {
  std::vector<MeasurementConfig> configs;
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ','))
    if (!token.empty()) configs.push_back(parse_measurement_op(token, sigma));
  if (configs.empty()) throw std::invalid_argument("empty measurement set '" + list + "'");
  return configs;
}

void validate_complementary_set(const std::vector<MeasurementConfig>& configs,
                                const ClassPartition& part) {
  if (configs.size() < 2)
    throw std::invalid_argument("a complementary set needs at least two measurements");
  const int modes = part.basis.modes();
  int label_ops = 0;
  std::vector<int> lambdas;
  for (const MeasurementConfig& cfg : configs) {
    if (cfg.kind == MeasurementKind::lambda) {
      if (cfg.j < 0 || cfg.j >= modes)
        throw std::invalid_argument("phase index j must lie in [0, M)");
      lambdas.push_back(cfg.j);
    } else {
      ++label_ops;
    }
  }
  if (label_ops > 1)
    throw std::invalid_argument(
        "a complementary set may contain at most one computational-clock measurement");
  std::vector<int> sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate shift-and-clock index in measurement set");

  // xi is complementary to every shift-and-clock operator, so only
  // lambda/lambda pairs need the gcd criterion.
  for (std::size_t a = 0; a < lambdas.size(); ++a)
    for (std::size_t b = a + 1; b < lambdas.size(); ++b)
      for (const PauliClass& cls : part.classes)
        if (!is_complementary(lambdas[a], lambdas[b], cls, modes))
          throw std::invalid_argument(
              "measurements l" + std::to_string(lambdas[a]) + " and l" +
              std::to_string(lambdas[b]) + " are not complementary on class " +
              occ_to_string(cls.representative));
}

namespace {

struct BoundResult {
  double value_nats = 0.0;
  std::string method;
  std::vector<WeightedClass> weights;
};

BoundResult entropy_bound_nats(const ClassPartition& part, const std::vector<double>& weights,
                               std::size_t set_size) {
  const int modes = part.basis.modes();
  const int photons = part.basis.photons();
  BoundResult out;
  if (set_size == 2) {
    out.method = "pair_weighted";
    double acc = 0.0;
    for (std::size_t c = 0; c < part.classes.size(); ++c) {
      const PauliClass& cls = part.classes[c];
      acc += weights[c] * std::log(static_cast<double>(cls.dim));
      out.weights.push_back(
          WeightedClass{occ_to_string(cls.representative), cls.dim, weights[c]});
    }
    out.value_nats = 0.5 * acc;
    return out;
  }
  if (std::gcd(photons, modes) != 1)
    throw std::invalid_argument(
        "entropy bound for more than two measurements requires gcd(N, M) = 1");
  const double size = static_cast<double>(set_size);
  if (size <= std::sqrt(static_cast<double>(modes)) + 1.0 + 1e-12) {
    out.method = "small_set";
    out.value_nats = 0.5 * std::log(static_cast<double>(modes));
  } else {
    out.method = "large_set";
    out.value_nats = -std::log((size + modes - 1.0) / (size * modes));
  }
  return out;
}

template <typename State>
EntropyReport entropy_report_impl(const State& state, const SectorBasis& basis,
                                  const std::vector<MeasurementConfig>& configs,
                                  double log_base, bool force) {
  if (configs.empty()) throw std::invalid_argument("empty measurement set");
  const ClassPartition part(basis);
  if (!force) validate_complementary_set(configs, part);

  EntropyReport report;
  report.log_base = log_base;
  double acc = 0.0;
  for (const MeasurementConfig& cfg : configs) {
    const CompiledMeasurement meas(basis, cfg);
    const double h = shannon_entropy(meas.run(state), log_base);
    report.config_names.push_back(cfg.name());
    report.entropies.push_back(h);
    acc += h;
  }
  report.value = acc / static_cast<double>(configs.size());

  const BoundResult bound =
      entropy_bound_nats(part, subspace_weights(state, part), configs.size());
  report.bound = bound.value_nats / std::log(log_base);
  report.bound_method = bound.method;
  report.weights = bound.weights;
  report.satisfied = report.value >= report.bound - 1e-9;
  return report;
}

}  // namespace

EntropyReport complementary_entropy(const SectorState& state,
                                    const std::vector<MeasurementConfig>& configs,
                                    double log_base, bool force) {
  return entropy_report_impl(state, state.basis, configs, log_base, force);
}

EntropyReport complementary_entropy(const MixedState& state,
                                    const std::vector<MeasurementConfig>& configs,
                                    double log_base, bool force) {
  state.validate();
  if (state.components.empty()) throw std::invalid_argument("empty mixed state");
  return entropy_report_impl(state, state.components.front().basis, configs, log_base, force);
}

}  // namespace lonsim
