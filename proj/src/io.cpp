#include "lonsim/io.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace lonsim {

namespace {

using ordered_json = nlohmann::ordered_json;

// Round-trips through the 12-digit text form so the JSON writer cannot
// reintroduce longer decimal expansions.
double rounded(double x) { return std::stod(format_number(x)); }

ordered_json log_base_json(double base) {
  if (std::abs(base - 2.0) < 1e-12) return 2;
  if (std::abs(base - 10.0) < 1e-12) return 10;
  if (std::abs(base - std::numbers::e) < 1e-12) return "e";
  return rounded(base);
}

[[noreturn]] void fail(const std::string& origin, const std::string& message) {
  throw std::invalid_argument(origin + ": " + message);
}

FockVector parse_occ(const ordered_json& value, const std::string& origin) {
  if (value.is_string()) return occ_from_string(value.get<std::string>());
  if (value.is_array()) {
    FockVector n;
    for (const auto& item : value) {
      if (!item.is_number_integer() || item.get<int>() < 0)
        fail(origin, "occupation entries must be non-negative integers");
      n.push_back(item.get<int>());
    }
    return n;
  }
  fail(origin, "occupation must be a string or an array of integers");
}

std::complex<double> parse_amp(const ordered_json& entry, const std::string& origin) {
  double re = 0.0, im = 0.0;
  if (entry.contains("re")) re = entry.at("re").get<double>();
  if (entry.contains("im")) im = entry.at("im").get<double>();
  if (!entry.contains("re") && !entry.contains("im"))
    fail(origin, "amplitude entry needs re and/or im");
  if (!std::isfinite(re) || !std::isfinite(im)) fail(origin, "amplitude is not finite");
  return {re, im};
}

int require_int(const ordered_json& obj, const std::string& key, const std::string& origin) {
  if (!obj.contains(key)) fail(origin, "missing key '" + key + "'");
  if (!obj.at(key).is_number_integer()) fail(origin, "'" + key + "' must be an integer");
  return obj.at(key).get<int>();
}

SectorState parse_pure(const ordered_json& obj, const std::string& origin,
                       double& normalization) {
  const int modes = require_int(obj, "modes", origin);
  const int photons = require_int(obj, "photons", origin);
  if (modes < 1 || photons < 0) fail(origin, "modes must be >= 1 and photons >= 0");
  if (!obj.contains("amplitudes") || !obj.at("amplitudes").is_array() ||
      obj.at("amplitudes").empty())
    fail(origin, "missing or empty 'amplitudes' array");
  const SectorBasis basis(modes, photons);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(basis.size());
  std::vector<bool> seen(basis.size(), false);
  for (const auto& entry : obj.at("amplitudes")) {
    if (!entry.contains("occ")) fail(origin, "amplitude entry missing 'occ'");
    const FockVector n = parse_occ(entry.at("occ"), origin);
    if (static_cast<int>(n.size()) != modes)
      fail(origin, "occupation " + occ_to_string(n) + " has the wrong number of modes");
    if (total_photons(n) != photons)
      fail(origin, "occupation " + occ_to_string(n) + " has the wrong photon number");
    const int idx = basis.index_of(n);
    if (seen[idx]) fail(origin, "duplicate occupation " + occ_to_string(n));
    seen[idx] = true;
    amps[idx] = parse_amp(entry, origin);
  }
  SectorState state(basis, std::move(amps));
  if (state.norm() < 1e-300) fail(origin, "state has zero norm");
  const double factor = state.normalize();
  if (std::abs(factor - 1.0) > std::abs(normalization - 1.0)) normalization = factor;
  return state;
}

BipartitePure parse_bipartite_pure(const ordered_json& obj, const std::string& origin,
                                   double& normalization) {
  const int modes = require_int(obj, "modes", origin);
  const int photons_a = require_int(obj, "photons_a", origin);
  const int photons_b = require_int(obj, "photons_b", origin);
  if (modes < 1 || photons_a < 0 || photons_b < 0)
    fail(origin, "modes must be >= 1 and photon numbers >= 0");
  if (!obj.contains("amplitudes") || !obj.at("amplitudes").is_array() ||
      obj.at("amplitudes").empty())
    fail(origin, "missing or empty 'amplitudes' array");
  const SectorBasis basis_a(modes, photons_a);
  const SectorBasis basis_b(modes, photons_b);
  Eigen::MatrixXcd amps = Eigen::MatrixXcd::Zero(basis_a.size(), basis_b.size());
  std::vector<bool> seen(static_cast<std::size_t>(basis_a.size()) * basis_b.size(), false);
  for (const auto& entry : obj.at("amplitudes")) {
    if (!entry.contains("occ_a") || !entry.contains("occ_b"))
      fail(origin, "amplitude entry missing 'occ_a'/'occ_b'");
    const FockVector na = parse_occ(entry.at("occ_a"), origin);
    const FockVector nb = parse_occ(entry.at("occ_b"), origin);
    if (static_cast<int>(na.size()) != modes || static_cast<int>(nb.size()) != modes)
      fail(origin, "occupation has the wrong number of modes");
    if (total_photons(na) != photons_a)
      fail(origin, "occupation " + occ_to_string(na) + " has the wrong photon number");
    if (total_photons(nb) != photons_b)
      fail(origin, "occupation " + occ_to_string(nb) + " has the wrong photon number");
    const int ia = basis_a.index_of(na);
    const int ib = basis_b.index_of(nb);
    const std::size_t flat = static_cast<std::size_t>(ia) * basis_b.size() + ib;
    if (seen[flat])
      fail(origin,
           "duplicate occupation pair " + occ_to_string(na) + ", " + occ_to_string(nb));
    seen[flat] = true;
    amps(ia, ib) = parse_amp(entry, origin);
  }
  BipartitePure state(basis_a, basis_b, std::move(amps));
  if (state.norm() < 1e-300) fail(origin, "state has zero norm");
  const double factor = state.normalize();
  if (std::abs(factor - 1.0) > std::abs(normalization - 1.0)) normalization = factor;
  return state;
}

bool looks_bipartite(const ordered_json& obj) {
  return obj.contains("photons_a") || obj.contains("photons_b");
}

std::vector<double> parse_weights(const ordered_json& components, const std::string& origin) {
  std::vector<double> weights;
  double total = 0.0;
  for (const auto& comp : components) {
    if (!comp.contains("weight") || !comp.at("weight").is_number())
      fail(origin, "mixture component missing numeric 'weight'");
    const double w = comp.at("weight").get<double>();
    if (!(w >= 0.0)) fail(origin, "mixture weights must be non-negative");
    weights.push_back(w);
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-6)
    fail(origin, "mixture weights sum to " + format_number(total) + ", expected 1");
  for (double& w : weights) w /= total;
  return weights;
}

}  // namespace

std::string format_number(double x) {
  if (std::abs(x) < 1e-12) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

LoadedState load_state_text(const std::string& text, const std::string& origin) {
  ordered_json obj;
  try {
    obj = ordered_json::parse(text);
  } catch (const std::exception& e) {
    fail(origin, std::string("invalid JSON: ") + e.what());
  }
  if (!obj.is_object()) fail(origin, "state file must hold a JSON object");

  LoadedState loaded;
  if (obj.contains("components")) {
    const auto& comps = obj.at("components");
    if (!comps.is_array() || comps.empty())
      fail(origin, "'components' must be a non-empty array");
    const std::vector<double> weights = parse_weights(comps, origin);
    bool bipartite = false;
    for (const auto& comp : comps) {
      if (!comp.contains("state")) fail(origin, "mixture component missing 'state'");
      if (looks_bipartite(comp.at("state"))) bipartite = true;
    }
    if (bipartite) {
      BipartiteMixed mixed;
      mixed.weights = weights;
      for (const auto& comp : comps)
        mixed.components.push_back(
            parse_bipartite_pure(comp.at("state"), origin, loaded.normalization));
      mixed.validate();
      loaded.bi_mixed = std::move(mixed);
    } else {
      MixedState mixed;
      mixed.weights = weights;
      for (const auto& comp : comps)
        mixed.components.push_back(parse_pure(comp.at("state"), origin, loaded.normalization));
      mixed.validate();
      loaded.mixed = std::move(mixed);
    }
    return loaded;
  }
  if (looks_bipartite(obj)) {
    loaded.bi_pure = parse_bipartite_pure(obj, origin, loaded.normalization);
    return loaded;
  }
  loaded.pure = parse_pure(obj, origin, loaded.normalization);
  return loaded;
}

LoadedState load_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open state file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_state_text(buffer.str(), path);
}

SigmaConfig load_sigma_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open sigma file: " + path);
  ordered_json obj;
  try {
    obj = ordered_json::parse(in);
  } catch (const std::exception& e) {
    throw std::invalid_argument(path + ": invalid JSON: " + e.what());
  }
  SigmaConfig sigma;
  if (obj.contains("classes")) {
    sigma.mode = SigmaMode::custom;
    for (const auto& entry : obj.at("classes")) {
      if (!entry.contains("rep") || !entry.contains("sigma"))
        throw std::invalid_argument(path + ": each class entry needs 'rep' and 'sigma'");
      std::vector<int> perm;
      for (const auto& v : entry.at("sigma")) perm.push_back(v.get<int>());
      sigma.perms[entry.at("rep").get<std::string>()] = std::move(perm);
    }
    return sigma;
  }
  const std::string mode = obj.value("mode", "identity");
  if (mode == "identity")
    sigma.mode = SigmaMode::identity;
  else if (mode == "z")
    sigma.mode = SigmaMode::z_label;
  else
    throw std::invalid_argument(path + ": unknown sigma mode '" + mode + "'");
  return sigma;
}

namespace {

ordered_json pure_state_json(const SectorState& state) {
  ordered_json out;
  out["modes"] = state.basis.modes();
  out["photons"] = state.basis.photons();
  ordered_json amps = ordered_json::array();
  for (int i = 0; i < state.basis.size(); ++i) {
    const std::complex<double> a = state.amplitudes[i];
    if (std::abs(a) <= 1e-15) continue;
    ordered_json entry;
    entry["occ"] = occ_to_string(state.basis.at(i));
    entry["re"] = rounded(a.real());
    entry["im"] = rounded(a.imag());
    amps.push_back(std::move(entry));
  }
  out["amplitudes"] = std::move(amps);
  return out;
}

std::string dump(const ordered_json& obj) { return obj.dump(2) + "\n"; }

}  // namespace

std::string state_to_json(const SectorState& state) { return dump(pure_state_json(state)); }

std::string state_to_json(const MixedState& state) {
  ordered_json out;
  ordered_json comps = ordered_json::array();
  for (std::size_t c = 0; c < state.components.size(); ++c) {
    ordered_json comp;
    comp["weight"] = rounded(state.weights[c]);
    comp["state"] = pure_state_json(state.components[c]);
    comps.push_back(std::move(comp));
  }
  out["components"] = std::move(comps);
  return dump(out);
}

std::string state_to_json(const BipartitePure& state) {
  ordered_json out;
  out["modes"] = state.basis_a.modes();
  out["photons_a"] = state.basis_a.photons();
  out["photons_b"] = state.basis_b.photons();
  ordered_json amps = ordered_json::array();
  for (int a = 0; a < state.amplitudes.rows(); ++a)
    for (int b = 0; b < state.amplitudes.cols(); ++b) {
      const std::complex<double> v = state.amplitudes(a, b);
      if (std::abs(v) <= 1e-15) continue;
      ordered_json entry;
      entry["occ_a"] = occ_to_string(state.basis_a.at(a));
      entry["occ_b"] = occ_to_string(state.basis_b.at(b));
      entry["re"] = rounded(v.real());
      entry["im"] = rounded(v.imag());
      amps.push_back(std::move(entry));
    }
  out["amplitudes"] = std::move(amps);
  return dump(out);
}

std::string eigenstate_to_json(const PauliEigenstate& eig, const ClassPartition& part) {
  const PauliClass& cls = part.classes.at(eig.class_index);
  const int modes = part.basis.modes();
  ordered_json out = pure_state_json(eig.state);
  ordered_json meta;
  meta["class"] = occ_to_string(cls.representative);
  meta["dim"] = cls.dim;
  meta["j"] = eig.j;
  meta["m"] = eig.m;
  // Eigenvalue exp(i pi h / M) as the integer h mod 2M.
  const long long h = ((static_cast<long long>(modes - 1) * eig.j * part.basis.photons() +
                        2LL * eig.m) %
                           (2LL * modes) +
                       2LL * modes) %
                      (2LL * modes);
  meta["eigenvalue_half_exponent"] = h;
  out["eigenstate"] = std::move(meta);
  return dump(out);
}

std::string distribution_to_json(const LabelDistribution& dist, const std::string& op_name,
                                 const std::vector<BreakdownRow>& breakdown) {
  ordered_json out;
  out["op"] = op_name;
  out["modulus"] = dist.modulus;
  ordered_json probs = ordered_json::array();
  for (double p : dist.probs) probs.push_back(rounded(p));
  out["probs"] = std::move(probs);
  if (!breakdown.empty()) {
    ordered_json rows = ordered_json::array();
    for (const BreakdownRow& row : breakdown) {
      ordered_json r;
      r["class"] = row.cls;
      r["label"] = row.label;
      r["probability"] = rounded(row.probability);
      rows.push_back(std::move(r));
    }
    out["breakdown"] = std::move(rows);
  }
  return dump(out);
}

std::string distribution_to_csv(const LabelDistribution& dist) {
  std::ostringstream out;
  out << "label,probability\n";
  for (int m = 0; m < dist.modulus; ++m)
    out << m << ',' << format_number(dist.probs[m]) << '\n';
  return out.str();
}

std::string joint_distribution_to_json(const JointLabelDistribution& joint,
                                       const std::string& pair_name) {
  ordered_json out;
  out["pair"] = pair_name;
  out["modulus"] = joint.modulus;
  ordered_json rows = ordered_json::array();
  for (int a = 0; a < joint.modulus; ++a) {
    ordered_json row = ordered_json::array();
    for (int b = 0; b < joint.modulus; ++b) row.push_back(rounded(joint.probs(a, b)));
    rows.push_back(std::move(row));
  }
  out["probs"] = std::move(rows);
  return dump(out);
}

std::string joint_distribution_to_csv(const JointLabelDistribution& joint) {
  std::ostringstream out;
  out << "label_a,label_b,probability\n";
  for (int a = 0; a < joint.modulus; ++a)
    for (int b = 0; b < joint.modulus; ++b)
      out << a << ',' << b << ',' << format_number(joint.probs(a, b)) << '\n';
  return out.str();
}

std::string classes_to_json(const ClassPartition& part) {
  ordered_json out;
  out["modes"] = part.basis.modes();
  out["photons"] = part.basis.photons();
  out["sector_dim"] = part.basis.size();
  ordered_json classes = ordered_json::array();
  for (const PauliClass& cls : part.classes) {
    ordered_json entry;
    entry["representative"] = occ_to_string(cls.representative);
    entry["dim"] = cls.dim;
    ordered_json members = ordered_json::array();
    for (int idx : cls.members) members.push_back(occ_to_string(part.basis.at(idx)));
    entry["members"] = std::move(members);
    classes.push_back(std::move(entry));
  }
  out["classes"] = std::move(classes);
  ordered_json family = ordered_json::array();
  for (const PauliOperatorId& id :
       complementary_set(part.basis.modes(), part.basis.photons()))
    family.push_back(id.xi ? std::string("xi") : "l" + std::to_string(id.j));
  out["complementary_set"] = std::move(family);
  return dump(out);
}

std::string grid_to_csv(const ClassPartition& part, const ComplementarityGrid& grid) {
  std::ostringstream out;
  out << "class,dim";
  for (const auto& [j, l] : grid.pairs) out << ",l" << j << ":l" << l;
  out << ",note\n";
  for (std::size_t c = 0; c < part.classes.size(); ++c) {
    const PauliClass& cls = part.classes[c];
    out << occ_to_string(cls.representative) << ',' << cls.dim;
    for (std::size_t p = 0; p < grid.pairs.size(); ++p)
      out << ',' << (grid.verdict[c][p] ? "✓" : "✗");
    out << ',' << (cls.dim == 1 ? "d=1" : "") << '\n';
  }
  return out.str();
}

std::string entropy_report_to_json(const EntropyReport& report) {
  ordered_json out;
  out["quantity"] = "entropy";
  out["log_base"] = log_base_json(report.log_base);
  out["measurements"] = report.config_names;
  ordered_json entropies = ordered_json::array();
  for (double h : report.entropies) entropies.push_back(rounded(h));
  out["entropies"] = std::move(entropies);
  out["value"] = rounded(report.value);
  out["bound"] = rounded(report.bound);
  out["bound_method"] = report.bound_method;
  if (!report.weights.empty()) {
    ordered_json weights = ordered_json::array();
    for (const WeightedClass& w : report.weights) {
      ordered_json entry;
      entry["class"] = w.representative;
      entry["dim"] = w.dim;
      entry["weight"] = rounded(w.weight);
      weights.push_back(std::move(entry));
    }
    out["weights"] = std::move(weights);
  }
  out["satisfied"] = report.satisfied;
  return dump(out);
}

std::string correlation_report_to_json(const CorrelationReport& report) {
  ordered_json out;
  out["quantity"] = report.quantity;
  if (report.quantity == "cmi") out["log_base"] = log_base_json(report.log_base);
  out["pairs"] = report.pair_names;
  ordered_json values = ordered_json::array();
  for (double v : report.pair_values) values.push_back(rounded(v));
  out["values"] = std::move(values);
  if (!report.targets.empty()) out["targets"] = report.targets;
  out["value"] = rounded(report.value);
  out["bound"] = rounded(report.bound);
  out["bound_method"] = report.bound_method;
  if (!report.weights.empty()) {
    ordered_json weights = ordered_json::array();
    for (const JointWeightedClass& w : report.weights) {
      ordered_json entry;
      entry["class_a"] = w.rep_a;
      entry["class_b"] = w.rep_b;
      entry["dim_a"] = w.dim_a;
      entry["dim_b"] = w.dim_b;
      entry["weight"] = rounded(w.weight);
      weights.push_back(std::move(entry));
    }
    out["weights"] = std::move(weights);
  }
  out["verdict"] = report.verdict;
  return dump(out);
}

std::string sweep_to_csv(const std::vector<SweepPoint>& points) {
  std::ostringstream out;
  out << "param,cmi,cmi_bound,cmi_verdict,cmp,cmp_bound,cmp_verdict\n";
  for (const SweepPoint& p : points)
    out << format_number(p.param) << ',' << format_number(p.cmi) << ','
        << format_number(p.cmi_bound) << ',' << p.cmi_verdict << ',' << format_number(p.cmp)
        << ',' << format_number(p.cmp_bound) << ',' << p.cmp_verdict << '\n';
  return out.str();
}

std::string sweep_to_json(const std::vector<SweepPoint>& points) {
  ordered_json rows = ordered_json::array();
  for (const SweepPoint& p : points) {
    ordered_json row;
    row["param"] = rounded(p.param);
    row["cmi"] = rounded(p.cmi);
    row["cmi_bound"] = rounded(p.cmi_bound);
    row["cmi_verdict"] = p.cmi_verdict;
    row["cmp"] = rounded(p.cmp);
    row["cmp_bound"] = rounded(p.cmp_bound);
    row["cmp_verdict"] = p.cmp_verdict;
    rows.push_back(std::move(row));
  }
  return dump(rows);
}

void write_output(const std::string& path, const std::string& content, bool force) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  if (!force && std::filesystem::exists(path))
    throw std::runtime_error("output file exists (use --force to overwrite): " + path);
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace lonsim
