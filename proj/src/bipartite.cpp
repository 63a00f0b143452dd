#include "lonsim/bipartite.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lonsim/unitary.hpp"

namespace lonsim {

BipartitePure::BipartitePure(SectorBasis a, SectorBasis b, Eigen::MatrixXcd amp)
    : basis_a(std::move(a)), basis_b(std::move(b)), amplitudes(std::move(amp)) {
  if (basis_a.modes() != basis_b.modes())
    throw std::invalid_argument("both sides must share the same mode count");
  if (amplitudes.rows() != basis_a.size() || amplitudes.cols() != basis_b.size())
    throw std::invalid_argument("amplitude matrix shape does not match the sector bases");
}

double BipartitePure::normalize() {
  const double n = norm();
  if (n < 1e-300) throw std::invalid_argument("cannot normalize a zero state");
  amplitudes /= n;
  return n;
}

bool BipartitePure::same_sectors(const BipartitePure& other) const {
  return basis_a.same_sector(other.basis_a) && basis_b.same_sector(other.basis_b);
}

void BipartiteMixed::validate() const {
  if (weights.size() != components.size())
    throw std::invalid_argument("mixed state weight/component count mismatch");
  if (components.empty()) throw std::invalid_argument("empty mixed state");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw std::invalid_argument("mixed state weights must be non-negative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-12)
    throw std::invalid_argument("mixed state weights must sum to 1 within 1e-12");
  for (const BipartitePure& c : components)
    if (!c.same_sectors(components.front()))
      throw std::invalid_argument("mixed state components live on different sectors");
}

BipartiteMixed as_mixed(const BipartitePure& state) {
  BipartiteMixed out;
  out.weights.push_back(1.0);
  out.components.push_back(state);
  return out;
}

BipartitePure product_state(const SectorState& a, const SectorState& b) {
  Eigen::MatrixXcd amp = a.amplitudes * b.amplitudes.transpose();
  return BipartitePure(a.basis, b.basis, std::move(amp));
}

BipartitePure build_phi32() {
  const SectorBasis basis_a(5, 3);
  const SectorBasis basis_b(5, 2);
  Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(basis_a.size(), basis_b.size());
  const double scale = 1.0 / std::sqrt(10.0);
  const FockVector a1 = occ_from_string("11100");
  const FockVector b1 = occ_from_string("11000");
  const FockVector a2 = occ_from_string("11010");
  const FockVector b2 = occ_from_string("01001");
  for (int m = 0; m < 5; ++m) {
    amp(basis_a.index_of(apply_mode_shift(a1, m)), basis_b.index_of(apply_mode_shift(b1, m))) +=
        scale;
    amp(basis_a.index_of(apply_mode_shift(a2, m)), basis_b.index_of(apply_mode_shift(b2, m))) +=
        scale;
  }
  return BipartitePure(basis_a, basis_b, std::move(amp));
}

BipartiteMixed white_noise_state(const BipartitePure& target, double eps) {
  if (eps < 0.0 || eps > 1.0)
    throw std::invalid_argument("noise parameter must lie in [0, 1]");
  BipartiteMixed out;
  const int dim_a = target.basis_a.size();
  const int dim_b = target.basis_b.size();
  if (eps < 1.0) {
    out.weights.push_back(1.0 - eps);
    out.components.push_back(target);
  }
  if (eps > 0.0) {
    const double w = eps / (static_cast<double>(dim_a) * dim_b);
    for (int a = 0; a < dim_a; ++a)
      for (int b = 0; b < dim_b; ++b) {
        Eigen::MatrixXcd amp = Eigen::MatrixXcd::Zero(dim_a, dim_b);
        amp(a, b) = 1.0;
        out.weights.push_back(w);
        out.components.emplace_back(target.basis_a, target.basis_b, std::move(amp));
      }
  }
  return out;
}

BipartitePure phase_shifted_state(const BipartitePure& state, double theta) {
  const int modes = state.basis_b.modes();
  Eigen::MatrixXcd amp = state.amplitudes;
  for (int b = 0; b < state.basis_b.size(); ++b) {
    const double angle =
        2.0 * std::numbers::pi * theta * mu_label(state.basis_b.at(b)) / modes;
    amp.col(b) *= std::polar(1.0, angle);
  }
  return BipartitePure(state.basis_a, state.basis_b, std::move(amp));
}

std::string PairConfig::name() const { return a.name() + "," + b.name(); }

PairConfig parse_pair(const std::string& token, const SigmaConfig& sigma_a,
                      const SigmaConfig& sigma_b) {
  const std::size_t comma = token.find(',');
  if (comma == std::string::npos || token.find(',', comma + 1) != std::string::npos)
    throw std::invalid_argument("pair '" + token + "' must have the form opA,opB");
  return PairConfig{parse_measurement_op(token.substr(0, comma), sigma_a),
                    parse_measurement_op(token.substr(comma + 1), sigma_b)};
}

std::vector<PairConfig> parse_pairs(const std::string& list, int modes,
                                    const SigmaConfig& sigma_a, const SigmaConfig& sigma_b) {
  std::vector<PairConfig> pairs;
  if (list == "all") {
    pairs.push_back(PairConfig{MeasurementConfig::z_op(), MeasurementConfig::z_op()});
    for (int j = 0; j < modes; ++j)
      pairs.push_back(
          PairConfig{MeasurementConfig::lambda_op(j), MeasurementConfig::lambda_op(j)});
    return pairs;
  }
  std::istringstream in(list);
  std::string token;
  while (std::getline(in, token, ';'))
    if (!token.empty()) pairs.push_back(parse_pair(token, sigma_a, sigma_b));
  if (pairs.empty()) throw std::invalid_argument("empty pair list '" + list + "'");
  return pairs;
}

CompiledJointMeasurement::CompiledJointMeasurement(const SectorBasis& basis_a,
                                                   const SectorBasis& basis_b,
                                                   const PairConfig& pair)
    : a_(basis_a, pair.a), b_(basis_b, pair.b) {
  if (basis_a.modes() != basis_b.modes())
    throw std::invalid_argument("both sides must share the same mode count");
}

JointLabelDistribution CompiledJointMeasurement::run(const BipartitePure& state) const {
  if (!state.basis_a.same_sector(a_.basis()) || !state.basis_b.same_sector(b_.basis()))
    throw std::invalid_argument("state sectors do not match the compiled measurement");
  Eigen::MatrixXcd evolved = state.amplitudes;
  if (a_.has_transform()) evolved = a_.transform() * evolved;
  if (b_.has_transform()) evolved = evolved * b_.transform().transpose();
  JointLabelDistribution joint;
  joint.modulus = a_.modulus();
  joint.probs = Eigen::MatrixXd::Zero(joint.modulus, joint.modulus);
  for (int i = 0; i < evolved.rows(); ++i)
    for (int k = 0; k < evolved.cols(); ++k)
      joint.probs(a_.labels()[i], b_.labels()[k]) += std::norm(evolved(i, k));
  return joint;
}

JointLabelDistribution CompiledJointMeasurement::run(const BipartiteMixed& state) const {
  state.validate();
  JointLabelDistribution joint;
  joint.modulus = a_.modulus();
  joint.probs = Eigen::MatrixXd::Zero(joint.modulus, joint.modulus);
  for (std::size_t c = 0; c < state.components.size(); ++c)
    joint.probs += state.weights[c] * run(state.components[c]).probs;
  return joint;
}

JointLabelDistribution joint_pauli_measurement(const BipartitePure& state,
                                               const PairConfig& pair) {
  return CompiledJointMeasurement(state.basis_a, state.basis_b, pair).run(state);
}

JointLabelDistribution joint_pauli_measurement(const BipartiteMixed& state,
                                               const PairConfig& pair) {
  state.validate();
  const BipartitePure& front = state.components.front();
  return CompiledJointMeasurement(front.basis_a, front.basis_b, pair).run(state);
}

namespace {

double plogp(double p) { return p > 0.0 ? p * std::log(p) : 0.0; }

}  // namespace

double mutual_information(const JointLabelDistribution& joint, double log_base) {
  if (log_base <= 0.0 || log_base == 1.0)
    throw std::invalid_argument("log base must be positive and different from 1");
  const int modulus = joint.modulus;
  if (std::abs(joint.probs.sum() - 1.0) > 1e-9)
    throw std::invalid_argument("joint distribution is not normalized within 1e-9");
  double h_a = 0.0, h_b = 0.0, h_ab = 0.0;
  for (int a = 0; a < modulus; ++a) h_a -= plogp(joint.probs.row(a).sum());
  for (int b = 0; b < modulus; ++b) h_b -= plogp(joint.probs.col(b).sum());
  for (int a = 0; a < modulus; ++a)
    for (int b = 0; b < modulus; ++b) {
      if (joint.probs(a, b) < -1e-12)
        throw std::invalid_argument("negative probability in joint distribution");
      h_ab -= plogp(joint.probs(a, b));
    }
  return (h_a + h_b - h_ab) / std::log(log_base);
}

double mutual_predictability(const JointLabelDistribution& joint, int target) {
  const int modulus = joint.modulus;
  if (target < 0 || target >= modulus)
    throw std::invalid_argument("target label out of range");
  double acc = 0.0;
  for (int a = 0; a < modulus; ++a)
    acc += joint.probs(a, ((target - a) % modulus + modulus) % modulus);
  return acc;
}

std::vector<std::vector<double>> joint_class_weights(const BipartitePure& state,
                                                     const ClassPartition& part_a,
                                                     const ClassPartition& part_b) {
  if (!state.basis_a.same_sector(part_a.basis) || !state.basis_b.same_sector(part_b.basis))
    throw std::invalid_argument("state sectors do not match the partitions");
  std::vector<std::vector<double>> weights(part_a.classes.size(),
                                           std::vector<double>(part_b.classes.size(), 0.0));
  for (int i = 0; i < state.amplitudes.rows(); ++i)
    for (int k = 0; k < state.amplitudes.cols(); ++k)
      weights[part_a.class_of[i]][part_b.class_of[k]] += std::norm(state.amplitudes(i, k));
  return weights;
}

std::vector<std::vector<double>> joint_class_weights(const BipartiteMixed& state,
                                                     const ClassPartition& part_a,
                                                     const ClassPartition& part_b) {
  state.validate();
  std::vector<std::vector<double>> weights(part_a.classes.size(),
                                           std::vector<double>(part_b.classes.size(), 0.0));
  for (std::size_t c = 0; c < state.components.size(); ++c) {
    const auto piece = joint_class_weights(state.components[c], part_a, part_b);
    for (std::size_t i = 0; i < weights.size(); ++i)
      for (std::size_t k = 0; k < weights[i].size(); ++k)
        weights[i][k] += state.weights[c] * piece[i][k];
  }
  return weights;
}

namespace {

// Exact action of a clock-label operator on basis states:
// out[target[i]] += phase[i] * in[i].
struct LabelOperator {
  std::vector<int> target;
  std::vector<std::complex<double>> phase;
};

LabelOperator label_operator(const SectorBasis& basis, const MeasurementConfig& config) {
  const int modes = basis.modes();
  LabelOperator op;
  op.target.resize(basis.size());
  op.phase.resize(basis.size());
  switch (config.kind) {
    case MeasurementKind::z:
      for (int i = 0; i < basis.size(); ++i) {
        op.target[i] = i;
        op.phase[i] = half_root_phase(2LL * mu_label(basis.at(i)), modes);
      }
      break;
    case MeasurementKind::xi: {
      const std::vector<int> labels = xi_labels(ClassPartition(basis), config.sigma);
      for (int i = 0; i < basis.size(); ++i) {
        op.target[i] = i;
        op.phase[i] = half_root_phase(2LL * labels[i], modes);
      }
      break;
    }
    case MeasurementKind::lambda:
      for (int i = 0; i < basis.size(); ++i) {
        op.target[i] = basis.index_of(apply_mode_shift(basis.at(i), 1));
        op.phase[i] = half_root_phase(2LL * config.j * mu_label(basis.at(i)), modes);
      }
      break;
  }
  return op;
}

// Half-exponent of the label-independent eigenvalue offset: the operator's
// eigenvalue on a label-m eigenstate is the 2M-th root with exponent
// offset + 2m.
long long eigenvalue_offset(const MeasurementConfig& config, int modes, int photons) {
  if (config.kind == MeasurementKind::lambda)
    return static_cast<long long>(modes - 1) * config.j * photons;
  return 0;
}

}  // namespace

int extract_target(const BipartitePure& state, const PairConfig& pair) {
  const int modes = state.basis_a.modes();
  const LabelOperator op_a = label_operator(state.basis_a, pair.a);
  const LabelOperator op_b = label_operator(state.basis_b, pair.b);
  std::complex<double> val = 0.0;
  for (int i = 0; i < state.amplitudes.rows(); ++i)
    for (int k = 0; k < state.amplitudes.cols(); ++k) {
      const std::complex<double> amp = state.amplitudes(i, k);
      if (amp == 0.0) continue;
      val += std::conj(state.amplitudes(op_a.target[i], op_b.target[k])) * op_a.phase[i] *
             op_b.phase[k] * amp;
    }
  if (std::abs(std::abs(val) - 1.0) > 1e-9)
    throw std::invalid_argument("state is not a joint eigenstate of pair " + pair.name() +
                                "; pass explicit targets instead");
  const double half_exponent = std::arg(val) * modes / std::numbers::pi;
  const long long rounded = std::llround(half_exponent);
  if (std::abs(half_exponent - static_cast<double>(rounded)) > 1e-6)
    throw std::invalid_argument("eigenvalue of pair " + pair.name() +
                                " is not a 2M-th root of unity");
  const long long offset = eigenvalue_offset(pair.a, modes, state.basis_a.photons()) +
                           eigenvalue_offset(pair.b, modes, state.basis_b.photons());
  const long long period = 2LL * modes;
  long long t2 = ((rounded - offset) % period + period) % period;
  if (t2 % 2 != 0)
    throw std::invalid_argument("pair " + pair.name() +
                                " admits no integer target label for this state");
  return static_cast<int>((t2 / 2) % modes);
}

std::vector<int> extract_targets(const BipartitePure& state,
                                 const std::vector<PairConfig>& pairs) {
  std::vector<int> targets;
  targets.reserve(pairs.size());
  for (const PairConfig& pair : pairs) targets.push_back(extract_target(state, pair));
  return targets;
}

namespace {

constexpr double kVerdictTol = 1e-9;

std::string verdict_of(double value, double bound) {
  if (value > bound + kVerdictTol) return "entangled";
  if (value < bound - kVerdictTol) return "not_detected";
  return "inconclusive";
}

struct JointContext {
  ClassPartition part_a;
  ClassPartition part_b;
  std::vector<std::vector<double>> weights;

  JointContext(const SectorBasis& basis_a, const SectorBasis& basis_b)
      : part_a(basis_a), part_b(basis_b) {}
};

struct BoundInfo {
  double value = 0.0;
  std::string method;
  std::vector<JointWeightedClass> weights;
};

bool coprime_sectors(const JointContext& ctx) {
  const int modes = ctx.part_a.basis.modes();
  return std::gcd(ctx.part_a.basis.photons(), modes) == 1 &&
         std::gcd(ctx.part_b.basis.photons(), modes) == 1;
}

std::vector<JointWeightedClass> collect_joint_weights(const JointContext& ctx) {
  std::vector<JointWeightedClass> out;
  for (std::size_t ca = 0; ca < ctx.part_a.classes.size(); ++ca)
    for (std::size_t cb = 0; cb < ctx.part_b.classes.size(); ++cb) {
      if (ctx.weights[ca][cb] <= 0.0) continue;
      const PauliClass& cls_a = ctx.part_a.classes[ca];
      const PauliClass& cls_b = ctx.part_b.classes[cb];
      out.push_back(JointWeightedClass{occ_to_string(cls_a.representative),
                                       occ_to_string(cls_b.representative), cls_a.dim,
                                       cls_b.dim, ctx.weights[ca][cb]});
    }
  return out;
}

BoundInfo cmi_bound_nats(const JointContext& ctx, std::size_t n_pairs) {
  const int modes = ctx.part_a.basis.modes();
  BoundInfo out;
  if (coprime_sectors(ctx)) {
    const double size = static_cast<double>(n_pairs);
    if (size <= std::sqrt(static_cast<double>(modes)) + 1.0 + 1e-12) {
      out.method = "small_set";
      out.value = 0.5 * std::log(static_cast<double>(modes));
    } else {
      out.method = "large_set";
      out.value = std::log((size + modes - 1.0) / size);
    }
    return out;
  }
  if (n_pairs != 2)
    throw std::invalid_argument(
        "with a local photon number sharing a factor with M the bound is only available "
        "for exactly two measurement pairs");
  out.method = "subspace_weighted";
  out.weights = collect_joint_weights(ctx);
  double acc = 0.0;
  for (const JointWeightedClass& w : out.weights)
    acc += w.weight * std::log(static_cast<double>(std::min(w.dim_a, w.dim_b)));
  out.value = std::log(static_cast<double>(modes)) - 0.5 * acc;
  return out;
}

BoundInfo cmp_bound(const JointContext& ctx, std::size_t n_pairs) {
  const int modes = ctx.part_a.basis.modes();
  BoundInfo out;
  if (coprime_sectors(ctx)) {
    const double size = static_cast<double>(n_pairs);
    out.method = "uniform";
    out.value = (size + modes - 1.0) / (size * modes);
    return out;
  }
  if (n_pairs != 2)
    throw std::invalid_argument(
        "with a local photon number sharing a factor with M the bound is only available "
        "for exactly two measurement pairs");
  out.method = "subspace_weighted";
  out.weights = collect_joint_weights(ctx);
  double acc = 0.0;
  for (const JointWeightedClass& w : out.weights)
    acc += w.weight / static_cast<double>(std::min(w.dim_a, w.dim_b));
  out.value = 0.5 + 0.5 * acc;
  return out;
}

void validate_pair_family(const std::vector<PairConfig>& pairs, const JointContext& ctx) {
  std::vector<MeasurementConfig> side_a, side_b;
  for (const PairConfig& pair : pairs) {
    side_a.push_back(pair.a);
    side_b.push_back(pair.b);
  }
  validate_complementary_set(side_a, ctx.part_a);
  validate_complementary_set(side_b, ctx.part_b);
}

template <typename State>
std::vector<JointLabelDistribution> measure_pairs(const State& state,
                                                  const SectorBasis& basis_a,
                                                  const SectorBasis& basis_b,
                                                  const std::vector<PairConfig>& pairs) {
  std::vector<JointLabelDistribution> joints;
  joints.reserve(pairs.size());
  for (const PairConfig& pair : pairs)
    joints.push_back(CompiledJointMeasurement(basis_a, basis_b, pair).run(state));
  return joints;
}

CorrelationReport cmi_from_joints(const std::vector<PairConfig>& pairs,
                                  const std::vector<JointLabelDistribution>& joints,
                                  const JointContext& ctx, double log_base) {
  CorrelationReport report;
  report.quantity = "cmi";
  report.log_base = log_base;
  double acc = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double mi = mutual_information(joints[p], log_base);
    report.pair_names.push_back(pairs[p].name());
    report.pair_values.push_back(mi);
    acc += mi;
  }
  report.value = acc / static_cast<double>(pairs.size());
  const BoundInfo bound = cmi_bound_nats(ctx, pairs.size());
  report.bound = bound.value / std::log(log_base);
  report.bound_method = bound.method;
  report.weights = bound.weights;
  report.verdict = verdict_of(report.value, report.bound);
  return report;
}

CorrelationReport cmp_from_joints(const std::vector<PairConfig>& pairs,
                                  const std::vector<JointLabelDistribution>& joints,
                                  const std::vector<int>& targets, const JointContext& ctx) {
  if (targets.size() != pairs.size())
    throw std::invalid_argument("need exactly one target label per measurement pair");
  CorrelationReport report;
  report.quantity = "cmp";
  report.targets = targets;
  double acc = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double mp = mutual_predictability(joints[p], targets[p]);
    report.pair_names.push_back(pairs[p].name());
    report.pair_values.push_back(mp);
    acc += mp;
  }
  report.value = acc / static_cast<double>(pairs.size());
  const BoundInfo bound = cmp_bound(ctx, pairs.size());
  report.bound = bound.value;
  report.bound_method = bound.method;
  report.weights = bound.weights;
  report.verdict = verdict_of(report.value, report.bound);
  return report;
}

template <typename State>
CorrelationReport cmi_report_impl(const State& state, const SectorBasis& basis_a,
                                  const SectorBasis& basis_b,
                                  const std::vector<PairConfig>& pairs, double log_base,
                                  bool force) {
  if (pairs.size() < 2)
    throw std::invalid_argument("the criterion needs at least two measurement pairs");
  JointContext ctx(basis_a, basis_b);
  if (!force) validate_pair_family(pairs, ctx);
  ctx.weights = joint_class_weights(state, ctx.part_a, ctx.part_b);
  return cmi_from_joints(pairs, measure_pairs(state, basis_a, basis_b, pairs), ctx, log_base);
}

template <typename State>
CorrelationReport cmp_report_impl(const State& state, const SectorBasis& basis_a,
                                  const SectorBasis& basis_b,
                                  const std::vector<PairConfig>& pairs,
                                  const std::vector<int>& targets, bool force) {
  if (pairs.size() < 2)
    throw std::invalid_argument("the criterion needs at least two measurement pairs");
  JointContext ctx(basis_a, basis_b);
  if (!force) validate_pair_family(pairs, ctx);
  ctx.weights = joint_class_weights(state, ctx.part_a, ctx.part_b);
  return cmp_from_joints(pairs, measure_pairs(state, basis_a, basis_b, pairs), targets, ctx);
}

}  // namespace

CorrelationReport cmi_report(const BipartitePure& state, const std::vector<PairConfig>& pairs,
                             double log_base, bool force) {
  return cmi_report_impl(state, state.basis_a, state.basis_b, pairs, log_base, force);
}

CorrelationReport cmi_report(const BipartiteMixed& state, const std::vector<PairConfig>& pairs,
                             double log_base, bool force) {
  state.validate();
  const BipartitePure& front = state.components.front();
  return cmi_report_impl(state, front.basis_a, front.basis_b, pairs, log_base, force);
}

CorrelationReport cmp_report(const BipartitePure& state, const std::vector<PairConfig>& pairs,
                             const std::vector<int>& targets, bool force) {
  return cmp_report_impl(state, state.basis_a, state.basis_b, pairs, targets, force);
}

CorrelationReport cmp_report(const BipartiteMixed& state, const std::vector<PairConfig>& pairs,
                             const std::vector<int>& targets, bool force) {
  state.validate();
  const BipartitePure& front = state.components.front();
  return cmp_report_impl(state, front.basis_a, front.basis_b, pairs, targets, force);
}

std::vector<double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ':')) parts.push_back(item);
  try {
    if (parts.size() == 1) return {std::stod(parts[0])};
    if (parts.size() == 3) {
      const double start = std::stod(parts[0]);
      const double end = std::stod(parts[1]);
      const double step = std::stod(parts[2]);
      if (step <= 0.0 || end < start)
        throw std::invalid_argument("grid requires start <= end and step > 0");
      std::vector<double> grid;
      for (int i = 0;; ++i) {
        const double value = start + i * step;
        if (value > end + step * 1e-9) break;
        grid.push_back(value);
      }
      return grid;
    }
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    // fall through to the format error
  }
  throw std::invalid_argument("grid '" + text + "' must have the form start:end:step");
}

namespace {

// Label weights of the maximally mixed sector state: the lifted transform is
// unitary, so each computational input contributes exactly one unit spread
// over rows, and the label weight is the label's outcome count over the
// dimension.
std::vector<double> mixed_label_weights(const CompiledMeasurement& meas) {
  std::vector<double> weights(meas.modulus(), 0.0);
  for (int label : meas.labels()) weights[label] += 1.0;
  for (double& w : weights) w /= static_cast<double>(meas.labels().size());
  return weights;
}

std::vector<std::vector<double>> mixed_class_weights(const JointContext& ctx) {
  const double dim =
      static_cast<double>(ctx.part_a.basis.size()) * ctx.part_b.basis.size();
  std::vector<std::vector<double>> weights(ctx.part_a.classes.size(),
                                           std::vector<double>(ctx.part_b.classes.size()));
  for (std::size_t ca = 0; ca < ctx.part_a.classes.size(); ++ca)
    for (std::size_t cb = 0; cb < ctx.part_b.classes.size(); ++cb)
      weights[ca][cb] =
          static_cast<double>(ctx.part_a.classes[ca].dim) * ctx.part_b.classes[cb].dim / dim;
  return weights;
}

SweepPoint sweep_point(double param, const std::vector<PairConfig>& pairs,
                       const std::vector<JointLabelDistribution>& joints,
                       const std::vector<int>& targets, const JointContext& ctx,
                       double log_base) {
  SweepPoint point;
  point.param = param;
  const CorrelationReport cmi = cmi_from_joints(pairs, joints, ctx, log_base);
  const CorrelationReport cmp = cmp_from_joints(pairs, joints, targets, ctx);
  point.cmi = cmi.value;
  point.cmi_bound = cmi.bound;
  point.cmi_verdict = cmi.verdict;
  point.cmp = cmp.value;
  point.cmp_bound = cmp.bound;
  point.cmp_verdict = cmp.verdict;
  return point;
}

}  // namespace

std::vector<SweepPoint> noise_sweep(const BipartitePure& target,
                                    const std::vector<PairConfig>& pairs,
                                    const std::vector<int>& targets,
                                    const std::vector<double>& grid, double log_base,
                                    bool force) {
  if (pairs.size() < 2)
    throw std::invalid_argument("the criterion needs at least two measurement pairs");
  JointContext ctx(target.basis_a, target.basis_b);
  if (!force) validate_pair_family(pairs, ctx);
  const std::vector<int> used_targets =
      targets.empty() ? extract_targets(target, pairs) : targets;

  // Joint distributions and orbit weights are affine in the noise parameter:
  // J(eps) = (1 - eps) J_target + eps J_mixed.
  std::vector<JointLabelDistribution> j_target, j_mixed;
  for (const PairConfig& pair : pairs) {
    const CompiledJointMeasurement meas(target.basis_a, target.basis_b, pair);
    j_target.push_back(meas.run(target));
    const std::vector<double> wa = mixed_label_weights(meas.side_a());
    const std::vector<double> wb = mixed_label_weights(meas.side_b());
    JointLabelDistribution uniform;
    uniform.modulus = target.basis_a.modes();
    uniform.probs = Eigen::MatrixXd::Zero(uniform.modulus, uniform.modulus);
    for (int a = 0; a < uniform.modulus; ++a)
      for (int b = 0; b < uniform.modulus; ++b) uniform.probs(a, b) = wa[a] * wb[b];
    j_mixed.push_back(std::move(uniform));
  }
  const auto w_target = joint_class_weights(target, ctx.part_a, ctx.part_b);
  const auto w_mixed = mixed_class_weights(ctx);

  std::vector<SweepPoint> points;
  points.reserve(grid.size());
  for (double eps : grid) {
    if (eps < -1e-12 || eps > 1.0 + 1e-12)
      throw std::invalid_argument("noise parameter must lie in [0, 1]");
    std::vector<JointLabelDistribution> joints;
    joints.reserve(pairs.size());
    for (std::size_t p = 0; p < pairs.size(); ++p) {
      JointLabelDistribution j;
      j.modulus = j_target[p].modulus;
      j.probs = (1.0 - eps) * j_target[p].probs + eps * j_mixed[p].probs;
      joints.push_back(std::move(j));
    }
    ctx.weights = w_target;
    for (std::size_t ca = 0; ca < ctx.weights.size(); ++ca)
      for (std::size_t cb = 0; cb < ctx.weights[ca].size(); ++cb)
        ctx.weights[ca][cb] = (1.0 - eps) * w_target[ca][cb] + eps * w_mixed[ca][cb];
    points.push_back(sweep_point(eps, pairs, joints, used_targets, ctx, log_base));
  }
  return points;
}

std::vector<SweepPoint> phase_sweep(const BipartitePure& target,
                                    const std::vector<PairConfig>& pairs,
                                    const std::vector<int>& targets,
                                    const std::vector<double>& grid, double log_base,
                                    bool force) {
  if (pairs.size() < 2)
    throw std::invalid_argument("the criterion needs at least two measurement pairs");
  JointContext ctx(target.basis_a, target.basis_b);
  if (!force) validate_pair_family(pairs, ctx);
  const std::vector<int> used_targets =
      targets.empty() ? extract_targets(target, pairs) : targets;
  // Phases leave |amplitude|^2 unchanged, so the orbit weights are
  // parameter independent.
  ctx.weights = joint_class_weights(target, ctx.part_a, ctx.part_b);

  std::vector<CompiledJointMeasurement> compiled;
  compiled.reserve(pairs.size());
  for (const PairConfig& pair : pairs)
    compiled.emplace_back(target.basis_a, target.basis_b, pair);

  std::vector<SweepPoint> points;
  points.reserve(grid.size());
  for (double theta : grid) {
    const BipartitePure state = phase_shifted_state(target, theta);
    std::vector<JointLabelDistribution> joints;
    joints.reserve(pairs.size());
    for (const CompiledJointMeasurement& meas : compiled) joints.push_back(meas.run(state));
    points.push_back(sweep_point(theta, pairs, joints, used_targets, ctx, log_base));
  }
  return points;
}

}  // namespace lonsim
