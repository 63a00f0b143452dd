// lonsim: command line front end for clock-label statistics of
// linear-optics multiphoton states.

#include <cmath>
#include <iostream>
#include <memory>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "lonsim/bipartite.hpp"
#include "lonsim/io.hpp"
#include "lonsim/selfcheck.hpp"

namespace {

using namespace lonsim;

double parse_log_base(const std::string& text) {
  if (text == "e") return std::numbers::e;
  try {
    std::size_t pos = 0;
    const double base = std::stod(text, &pos);
    if (pos == text.size() && base > 0.0 && base != 1.0) return base;
  } catch (const std::exception&) {
  }
  throw std::invalid_argument("invalid log base '" + text + "' (use 2, e, or 10)");
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t pos = 0;
    const int value = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("invalid integer list '" + text + "'");
    values.push_back(value);
  }
  if (values.empty()) throw std::invalid_argument("empty integer list");
  return values;
}

// Built-in sources: "psi0", "phi32", "eig:<occ>:<j>:<m>", else a file path.
LoadedState resolve_state(const std::string& src) {
  LoadedState loaded;
  if (src == "psi0") {
    loaded.pure = build_psi0();
    return loaded;
  }
  if (src == "phi32") {
    loaded.bi_pure = build_phi32();
    return loaded;
  }
  if (src.rfind("eig:", 0) == 0) {
    std::vector<std::string> parts;
    std::istringstream in(src);
    std::string item;
    while (std::getline(in, item, ':')) parts.push_back(item);
    if (parts.size() != 4)
      throw std::invalid_argument("built-in eigenstate must be eig:<occ>:<j>:<m>");
    const FockVector occ = occ_from_string(parts[1]);
    const SectorBasis basis(static_cast<int>(occ.size()), total_photons(occ));
    const ClassPartition part(basis);
    const int cls = part.class_of[basis.index_of(occ)];
    loaded.pure =
        build_pauli_eigenstate(part, cls, std::stoi(parts[2]), std::stoi(parts[3])).state;
    return loaded;
  }
  return load_state_file(src);
}

void note_normalization(const LoadedState& state) {
  if (std::abs(state.normalization - 1.0) > 1e-9)
    std::cerr << "note: input state normalized (factor " << format_number(state.normalization)
              << ")\n";
}

SigmaConfig load_sigma_opt(const std::string& path) {
  if (path.empty()) return SigmaConfig{};
  return load_sigma_file(path);
}

// ---- subcommand option blocks ----

struct OutOpts {
  std::string out;
  bool force = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--out", out, "Write to this file instead of stdout");
    cmd->add_flag("--force", force, "Overwrite an existing output file");
  }
};

struct ClassesOpts {
  int modes = 0;
  int photons = 0;
  bool grid = false;
  std::string format = "";
  OutOpts out;
};

struct EigenstateOpts {
  int modes = 0;
  std::string occ;
  int j = 0;
  int m = 0;
  OutOpts out;
};

struct MeasureOpts {
  std::string state;
  std::string op;
  std::string pair;
  std::string sigma;
  std::string sigma_b;
  double noise = 0.0;
  double theta = 0.0;
  bool breakdown = false;
  std::string format = "json";
  OutOpts out;
  CLI::Option* noise_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
};

struct EntropyOpts {
  std::string state;
  std::string set;
  std::string sigma;
  std::string log_base = "e";
  bool unchecked = false;
  OutOpts out;
};

struct CorrelOpts {
  std::string state;
  std::string pairs;
  std::string targets;
  std::string sigma_a;
  std::string sigma_b;
  std::string log_base = "e";
  double noise = 0.0;
  double theta = 0.0;
  bool unchecked = false;
  OutOpts out;
  CLI::Option* noise_opt = nullptr;
  CLI::Option* theta_opt = nullptr;
};

struct SweepOpts {
  std::string mode;
  std::string state;
  std::string pairs;
  std::string targets;
  std::string grid;
  std::string sigma_a;
  std::string sigma_b;
  std::string log_base = "e";
  std::string format = "csv";
  bool unchecked = false;
  OutOpts out;
};

struct VerifyOpts {
  std::string only;
  bool list = false;
};

// ---- command bodies ----

void run_classes(const ClassesOpts& o) {
  const SectorBasis basis(o.modes, o.photons);
  const ClassPartition part(basis);
  if (o.grid) {
    if (!o.format.empty() && o.format != "csv")
      throw std::invalid_argument("the complementarity grid is CSV output");
    write_output(o.out.out, grid_to_csv(part, complementarity_grid(part)), o.out.force);
    return;
  }
  if (!o.format.empty() && o.format != "json")
    throw std::invalid_argument("class listings are JSON output (use --grid for CSV)");
  write_output(o.out.out, classes_to_json(part), o.out.force);
}

void run_eigenstate(const EigenstateOpts& o) {
  const FockVector occ = occ_from_string(o.occ);
  if (o.modes != 0 && o.modes != static_cast<int>(occ.size()))
    throw std::invalid_argument("-M disagrees with the occupation length");
  const SectorBasis basis(static_cast<int>(occ.size()), total_photons(occ));
  const ClassPartition part(basis);
  const int cls = part.class_of[basis.index_of(occ)];
  const PauliEigenstate eig = build_pauli_eigenstate(part, cls, o.j, o.m);
  write_output(o.out.out, eigenstate_to_json(eig, part), o.out.force);
}

std::vector<BreakdownRow> collect_breakdown(const CompiledMeasurement& meas,
                                            const LoadedState& state) {
  const ClassPartition part(meas.basis());
  std::vector<std::vector<double>> acc(part.classes.size(),
                                       std::vector<double>(meas.modulus(), 0.0));
  const MixedState mixed = state.pure ? as_mixed(*state.pure) : *state.mixed;
  for (std::size_t c = 0; c < mixed.components.size(); ++c) {
    const Eigen::VectorXcd amps = meas.outcome_amplitudes(mixed.components[c]);
    for (int i = 0; i < amps.size(); ++i)
      acc[part.class_of[i]][meas.labels()[i]] += mixed.weights[c] * std::norm(amps[i]);
  }
  std::vector<BreakdownRow> rows;
  for (std::size_t c = 0; c < part.classes.size(); ++c)
    for (int m = 0; m < meas.modulus(); ++m)
      if (acc[c][m] > 1e-15)
        rows.push_back(
            BreakdownRow{occ_to_string(part.classes[c].representative), m, acc[c][m]});
  return rows;
}

void run_measure(const MeasureOpts& o) {
  if (o.op.empty() == o.pair.empty())
    throw std::invalid_argument("pass exactly one of --op (single party) or --pair (two party)");
  LoadedState state = resolve_state(o.state);
  note_normalization(state);

  if (!o.op.empty()) {
    if (state.bipartite())
      throw std::invalid_argument("--op applies to single-party states; use --pair");
    if (o.noise_opt->count() || o.theta_opt->count())
      throw std::invalid_argument("--noise and --theta apply to two-party states");
    const MeasurementConfig config = parse_measurement_op(o.op, load_sigma_opt(o.sigma));
    const SectorBasis basis =
        state.pure ? state.pure->basis : state.mixed->components.front().basis;
    const CompiledMeasurement meas(basis, config);
    const LabelDistribution dist = state.pure ? meas.run(*state.pure) : meas.run(*state.mixed);
    if (o.format == "csv") {
      if (o.breakdown)
        throw std::invalid_argument("--breakdown requires JSON output");
      write_output(o.out.out, distribution_to_csv(dist), o.out.force);
    } else if (o.format == "json") {
      std::vector<BreakdownRow> rows;
      if (o.breakdown) rows = collect_breakdown(meas, state);
      write_output(o.out.out, distribution_to_json(dist, config.name(), rows), o.out.force);
    } else {
      throw std::invalid_argument("unknown format '" + o.format + "'");
    }
    return;
  }

  if (!state.bipartite())
    throw std::invalid_argument("--pair applies to two-party states; use --op");
  if (o.breakdown) throw std::invalid_argument("--breakdown applies to single-party states");
  if (o.noise_opt->count() && o.theta_opt->count())
    throw std::invalid_argument("choose one of --noise and --theta");
  const PairConfig pair =
      parse_pair(o.pair, load_sigma_opt(o.sigma), load_sigma_opt(o.sigma_b));
  JointLabelDistribution joint;
  if (o.noise_opt->count() || o.theta_opt->count()) {
    if (!state.bi_pure)
      throw std::invalid_argument("--noise and --theta need a pure two-party state");
    if (o.theta_opt->count())
      joint = joint_pauli_measurement(phase_shifted_state(*state.bi_pure, o.theta), pair);
    else
      joint = joint_pauli_measurement(white_noise_state(*state.bi_pure, o.noise), pair);
  } else {
    joint = state.bi_pure ? joint_pauli_measurement(*state.bi_pure, pair)
                          : joint_pauli_measurement(*state.bi_mixed, pair);
  }
  if (o.format == "csv")
    write_output(o.out.out, joint_distribution_to_csv(joint), o.out.force);
  else if (o.format == "json")
    write_output(o.out.out, joint_distribution_to_json(joint, pair.name()), o.out.force);
  else
    throw std::invalid_argument("unknown format '" + o.format + "'");
}

void run_entropy(const EntropyOpts& o) {
  LoadedState state = resolve_state(o.state);
  note_normalization(state);
  if (state.bipartite())
    throw std::invalid_argument("entropy applies to single-party states; see cmi/cmp");
  const std::vector<MeasurementConfig> configs =
      parse_measurement_set(o.set, load_sigma_opt(o.sigma));
  const double base = parse_log_base(o.log_base);
  const EntropyReport report =
      state.pure ? complementary_entropy(*state.pure, configs, base, o.unchecked)
                 : complementary_entropy(*state.mixed, configs, base, o.unchecked);
  write_output(o.out.out, entropy_report_to_json(report), o.out.force);
}

struct ResolvedBipartite {
  LoadedState loaded;
  std::vector<PairConfig> pairs;
  std::vector<int> targets;  // empty unless requested or extractable
};

ResolvedBipartite resolve_correlation_input(const std::string& state_src,
                                            const std::string& pairs_text,
                                            const std::string& targets_text,
                                            const std::string& sigma_a_path,
                                            const std::string& sigma_b_path,
                                            bool need_targets) {
  ResolvedBipartite r;
  r.loaded = resolve_state(state_src);
  note_normalization(r.loaded);
  if (!r.loaded.bipartite())
    throw std::invalid_argument("this command needs a two-party state");
  const int modes = r.loaded.bi_pure ? r.loaded.bi_pure->basis_a.modes()
                                     : r.loaded.bi_mixed->components.front().basis_a.modes();
  r.pairs = parse_pairs(pairs_text, modes, load_sigma_opt(sigma_a_path),
                        load_sigma_opt(sigma_b_path));
  if (!targets_text.empty()) {
    r.targets = parse_int_list(targets_text);
    for (int t : r.targets)
      if (t < 0 || t >= modes) throw std::invalid_argument("target label out of range");
    if (r.targets.size() != r.pairs.size())
      throw std::invalid_argument("need exactly one target label per measurement pair");
  } else if (need_targets) {
    if (!r.loaded.bi_pure)
      throw std::invalid_argument(
          "targets cannot be extracted from a mixed state; pass --targets");
    r.targets = extract_targets(*r.loaded.bi_pure, r.pairs);
  }
  return r;
}

void run_cmi(const CorrelOpts& o) {
  ResolvedBipartite r = resolve_correlation_input(o.state, o.pairs, "", o.sigma_a, o.sigma_b,
                                                  /*need_targets=*/false);
  const double base = parse_log_base(o.log_base);
  if (o.noise_opt->count() && o.theta_opt->count())
    throw std::invalid_argument("choose one of --noise and --theta");
  CorrelationReport report;
  if (o.noise_opt->count() || o.theta_opt->count()) {
    if (!r.loaded.bi_pure)
      throw std::invalid_argument("--noise and --theta need a pure two-party state");
    if (o.theta_opt->count())
      report = cmi_report(phase_shifted_state(*r.loaded.bi_pure, o.theta), r.pairs, base,
                          o.unchecked);
    else
      report = cmi_report(white_noise_state(*r.loaded.bi_pure, o.noise), r.pairs, base,
                          o.unchecked);
  } else {
    report = r.loaded.bi_pure ? cmi_report(*r.loaded.bi_pure, r.pairs, base, o.unchecked)
                              : cmi_report(*r.loaded.bi_mixed, r.pairs, base, o.unchecked);
  }
  write_output(o.out.out, correlation_report_to_json(report), o.out.force);
}

void run_cmp(const CorrelOpts& o) {
  ResolvedBipartite r = resolve_correlation_input(o.state, o.pairs, o.targets, o.sigma_a,
                                                  o.sigma_b, /*need_targets=*/true);
  if (o.noise_opt->count() && o.theta_opt->count())
    throw std::invalid_argument("choose one of --noise and --theta");
  CorrelationReport report;
  if (o.noise_opt->count() || o.theta_opt->count()) {
    if (!r.loaded.bi_pure)
      throw std::invalid_argument("--noise and --theta need a pure two-party state");
    if (o.theta_opt->count())
      report = cmp_report(phase_shifted_state(*r.loaded.bi_pure, o.theta), r.pairs, r.targets,
                          o.unchecked);
    else
      report = cmp_report(white_noise_state(*r.loaded.bi_pure, o.noise), r.pairs, r.targets,
                          o.unchecked);
  } else {
    report = r.loaded.bi_pure ? cmp_report(*r.loaded.bi_pure, r.pairs, r.targets, o.unchecked)
                              : cmp_report(*r.loaded.bi_mixed, r.pairs, r.targets, o.unchecked);
  }
  write_output(o.out.out, correlation_report_to_json(report), o.out.force);
}

void run_sweep(const SweepOpts& o) {
  ResolvedBipartite r = resolve_correlation_input(o.state, o.pairs, o.targets, o.sigma_a,
                                                  o.sigma_b, /*need_targets=*/false);
  if (!r.loaded.bi_pure)
    throw std::invalid_argument("sweeps need a pure two-party state as the clean target");
  const double base = parse_log_base(o.log_base);
  const std::vector<double> grid = parse_grid(o.grid);
  std::vector<SweepPoint> points;
  if (o.mode == "noise")
    points = noise_sweep(*r.loaded.bi_pure, r.pairs, r.targets, grid, base, o.unchecked);
  else
    points = phase_sweep(*r.loaded.bi_pure, r.pairs, r.targets, grid, base, o.unchecked);
  if (o.format == "csv")
    write_output(o.out.out, sweep_to_csv(points), o.out.force);
  else if (o.format == "json")
    write_output(o.out.out, sweep_to_json(points), o.out.force);
  else
    throw std::invalid_argument("unknown format '" + o.format + "'");
}

int run_verify(const VerifyOpts& o) {
  if (o.list) {
    for (const std::string& name : selfcheck_names()) std::cout << name << "\n";
    return 0;
  }
  const std::vector<CheckResult> results = run_selfchecks(o.only);
  int failed = 0;
  for (const CheckResult& result : results) {
    if (result.pass) {
      std::cout << "PASS " << result.name << "\n";
    } else {
      std::cout << "FAIL " << result.name << ": " << result.message << "\n";
      ++failed;
    }
  }
  std::cout << results.size() - failed << "/" << results.size() << " suites passed\n";
  return failed == 0 ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"clock-label statistics of multiphoton states in linear optics networks"};
  app.require_subcommand(1);
  int exit_code = 0;

  auto classes = std::make_shared<ClassesOpts>();
  {
    CLI::App* cmd = app.add_subcommand(
        "classes", "List the shift orbits of a sector, or their complementarity grid");
    cmd->add_option("-M,--modes", classes->modes, "Number of modes")->required();
    cmd->add_option("-N,--photons", classes->photons, "Total photon number")->required();
    cmd->add_flag("--grid", classes->grid, "Emit the pairwise complementarity grid (CSV)");
    cmd->add_option("--format", classes->format, "json (listing) or csv (grid)");
    classes->out.attach(cmd);
    cmd->callback([classes]() { run_classes(*classes); });
  }

  auto eigenstate = std::make_shared<EigenstateOpts>();
  {
    CLI::App* cmd = app.add_subcommand(
        "eigenstate", "Construct a shift-and-clock eigenstate on the orbit of an occupation");
    cmd->add_option("-M,--modes", eigenstate->modes,
                    "Number of modes (optional, checked against --occ)");
    cmd->add_option("--occ", eigenstate->occ, "Occupation selecting the orbit, e.g. 11000")
        ->required();
    cmd->add_option("-j,--phase-index", eigenstate->j, "Operator index j in [0, M)")
        ->required();
    cmd->add_option("-m,--label", eigenstate->m, "Clock label (multiple of M/dim)")->required();
    eigenstate->out.attach(cmd);
    cmd->callback([eigenstate]() { run_eigenstate(*eigenstate); });
  }

  auto measure = std::make_shared<MeasureOpts>();
  {
    CLI::App* cmd = app.add_subcommand("measure", "Clock-label distribution of a state");
    cmd->add_option("--state", measure->state,
                    "psi0 | phi32 | eig:<occ>:<j>:<m> | state file path")
        ->required();
    cmd->add_option("--op", measure->op, "Single-party measurement: xi, z, or l<j>");
    cmd->add_option("--pair", measure->pair, "Two-party measurement: opA,opB");
    cmd->add_option("--sigma", measure->sigma, "Sigma labeling file (side A / single party)");
    cmd->add_option("--sigma-b", measure->sigma_b, "Sigma labeling file for side B");
    measure->noise_opt =
        cmd->add_option("--noise", measure->noise, "White-noise admixture in [0, 1]");
    measure->theta_opt =
        cmd->add_option("--theta", measure->theta, "Apply id (x) Z^theta before measuring");
    cmd->add_flag("--breakdown", measure->breakdown,
                  "Add per-(class,label) contributions (JSON, single party)");
    cmd->add_option("--format", measure->format, "json or csv")->default_str("json");
    measure->out.attach(cmd);
    cmd->callback([measure]() { run_measure(*measure); });
  }

  auto entropy = std::make_shared<EntropyOpts>();
  {
    CLI::App* cmd = app.add_subcommand(
        "entropy", "Average label entropy over a measurement set, with its lower bound");
    cmd->add_option("--state", entropy->state, "psi0 | eig:<occ>:<j>:<m> | state file path")
        ->required();
    cmd->add_option("-L,--set", entropy->set, "Comma list of measurements, e.g. xi,l0,l1")
        ->required();
    cmd->add_option("--sigma", entropy->sigma, "Sigma labeling file for xi");
    cmd->add_option("--log-base", entropy->log_base, "2, e, or 10")->default_str("e");
    cmd->add_flag("--unchecked", entropy->unchecked,
                  "Skip the complementarity validation of the set");
    entropy->out.attach(cmd);
    cmd->callback([entropy]() { run_entropy(*entropy); });
  }

  auto cmi = std::make_shared<CorrelOpts>();
  {
    CLI::App* cmd = app.add_subcommand(
        "cmi", "Average mutual information over measurement pairs, with the separable bound");
    cmd->add_option("--state", cmi->state, "phi32 | state file path")->required();
    cmd->add_option("--pairs", cmi->pairs, "Semicolon list of opA,opB pairs, or 'all'")
        ->required();
    cmd->add_option("--sigma-a", cmi->sigma_a, "Sigma labeling file for side A");
    cmd->add_option("--sigma-b", cmi->sigma_b, "Sigma labeling file for side B");
    cmd->add_option("--log-base", cmi->log_base, "2, e, or 10")->default_str("e");
    cmi->noise_opt = cmd->add_option("--noise", cmi->noise, "White-noise admixture in [0, 1]");
    cmi->theta_opt =
        cmd->add_option("--theta", cmi->theta, "Apply id (x) Z^theta before measuring");
    cmd->add_flag("--unchecked", cmi->unchecked,
                  "Skip the complementarity validation of the pair family");
    cmi->out.attach(cmd);
    cmd->callback([cmi]() { run_cmi(*cmi); });
  }

  auto cmp = std::make_shared<CorrelOpts>();
  {
    CLI::App* cmd = app.add_subcommand(
        "cmp", "Average mutual predictability over measurement pairs, with the separable bound");
    cmd->add_option("--state", cmp->state, "phi32 | state file path")->required();
    cmd->add_option("--pairs", cmp->pairs, "Semicolon list of opA,opB pairs, or 'all'")
        ->required();
    cmd->add_option("--targets", cmp->targets,
                    "Comma list of target labels, one per pair (default: extracted)");
    cmd->add_option("--sigma-a", cmp->sigma_a, "Sigma labeling file for side A");
    cmd->add_option("--sigma-b", cmp->sigma_b, "Sigma labeling file for side B");
    cmp->noise_opt = cmd->add_option("--noise", cmp->noise, "White-noise admixture in [0, 1]");
    cmp->theta_opt =
        cmd->add_option("--theta", cmp->theta, "Apply id (x) Z^theta before measuring");
    cmd->add_flag("--unchecked", cmp->unchecked,
                  "Skip the complementarity validation of the pair family");
    cmp->out.attach(cmd);
    cmd->callback([cmp]() { run_cmp(*cmp); });
  }

  auto sweep = std::make_shared<SweepOpts>();
  {
    CLI::App* cmd = app.add_subcommand(
        "sweep", "Criterion values along a noise or phase parameter grid");
    cmd->add_option("mode", sweep->mode, "noise or phase")
        ->required()
        ->check(CLI::IsMember({"noise", "phase"}));
    cmd->add_option("--state", sweep->state, "phi32 | pure two-party state file")->required();
    cmd->add_option("--pairs", sweep->pairs, "Semicolon list of opA,opB pairs, or 'all'")
        ->required();
    cmd->add_option("--grid", sweep->grid, "start:end:step")->required();
    cmd->add_option("--targets", sweep->targets,
                    "Comma list of target labels (default: extracted from the clean state)");
    cmd->add_option("--sigma-a", sweep->sigma_a, "Sigma labeling file for side A");
    cmd->add_option("--sigma-b", sweep->sigma_b, "Sigma labeling file for side B");
    cmd->add_option("--log-base", sweep->log_base, "2, e, or 10")->default_str("e");
    cmd->add_option("--format", sweep->format, "csv or json")->default_str("csv");
    cmd->add_flag("--unchecked", sweep->unchecked,
                  "Skip the complementarity validation of the pair family");
    sweep->out.attach(cmd);
    cmd->callback([sweep]() { run_sweep(*sweep); });
  }

  auto verify = std::make_shared<VerifyOpts>();
  {
    CLI::App* cmd =
        app.add_subcommand("verify", "Run the built-in consistency suites (exit 2 on failure)");
    cmd->add_option("--only", verify->only, "Run only suites whose name contains this text");
    cmd->add_flag("--list", verify->list, "List suite names and exit");
    cmd->callback([verify, &exit_code]() { exit_code = run_verify(*verify); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return exit_code;
}
