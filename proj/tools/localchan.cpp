// Command-line runner: wires experiment configs to the library and
// serializes reports. Exit codes: 0 success, 1 usage or I/O error,
// 2 a proven bound was violated beyond slack (a software defect).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "localchan/bounds.hpp"
#include "localchan/channels.hpp"
#include "localchan/explorer.hpp"
#include "localchan/io.hpp"
#include "localchan/metrics.hpp"
#include "localchan/states.hpp"
#include "localchan/witness.hpp"

namespace {

using localchan::BoundReport;
using nlohmann::json;

struct Options {
  int d1 = 2;
  int d2 = 2;
  double p = 2.0;
  double epsilon = 0.01;
  int trials = 10000;
  std::uint64_t seed = 42;
  std::string channel = "contraction";
  int env_dim = 2;
  std::string out;
  std::string format = "json";
  int n = 4;
  std::string input;
  std::string space = "entangled";
  std::string channel_file1;
  std::string channel_file2;
  std::string export_channels;
};

localchan::ChannelKind parse_channel(const std::string& name) {
  if (name == "contraction") return localchan::ChannelKind::contraction;
  if (name == "dephasing") return localchan::ChannelKind::dephasing;
  if (name == "random") return localchan::ChannelKind::random;
  throw std::invalid_argument("unknown channel kind '" + name + "'");
}

json load_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open input file '" + path + "'");
  json parsed;
  f >> parsed;
  return parsed;
}

localchan::ExperimentConfig make_config(const Options& o) {
  localchan::ExperimentConfig cfg;
  cfg.seed = o.seed;
  cfg.trials = o.trials;
  cfg.d1 = o.d1;
  cfg.d2 = o.d2;
  cfg.p = o.p;
  cfg.epsilon = o.epsilon;
  cfg.channel.kind = parse_channel(o.channel);
  cfg.channel.env_dim = o.env_dim;
  if (!o.channel_file1.empty()) {
    cfg.channel.kind = localchan::ChannelKind::imported;
    cfg.channel.imported1.push_back(
        localchan::channel_from_json(load_json_file(o.channel_file1)));
    cfg.channel.imported2.push_back(localchan::channel_from_json(
        load_json_file(o.channel_file2.empty() ? o.channel_file1 : o.channel_file2)));
    cfg.d1 = cfg.channel.imported1.front().dim();
    cfg.d2 = cfg.channel.imported2.front().dim();
  }
  return cfg;
}

void export_channel_pools(const localchan::ExperimentConfig& cfg, const std::string& path) {
  const localchan::CertifiedChannels pools = localchan::certified_channels(cfg);
  json side1 = json::array(), side2 = json::array();
  for (std::size_t i = 0; i < pools.side1.size(); ++i) {
    json entry = localchan::channel_to_json(pools.side1[i]);
    entry["epsilon"] = pools.eps1[i];
    side1.push_back(std::move(entry));
  }
  for (std::size_t i = 0; i < pools.side2.size(); ++i) {
    json entry = localchan::channel_to_json(pools.side2[i]);
    entry["epsilon"] = pools.eps2[i];
    side2.push_back(std::move(entry));
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file '" + path + "'");
  f << json{{"side1", std::move(side1)}, {"side2", std::move(side2)}}.dump(2) << '\n';
}

void emit(const json& j, const Options& o) {
  if (o.format == "csv") {
    // Flat key,value rows for scalar outputs.
    for (auto it = j.begin(); it != j.end(); ++it)
      std::cout << it.key() << ',' << it.value().dump() << '\n';
  } else {
    std::cout << j.dump(2) << '\n';
  }
  if (!o.out.empty()) {
    std::ofstream f(o.out);
    if (!f) throw std::runtime_error("cannot open output file '" + o.out + "'");
    f << j.dump(2) << '\n';
  }
}

void dump_reports(const std::vector<BoundReport>& reports, const Options& o) {
  if (o.out.empty()) return;
  std::ofstream f(o.out);
  if (!f) throw std::runtime_error("cannot open output file '" + o.out + "'");
  if (o.format == "csv") {
    f << localchan::report_csv_header() << '\n';
    for (std::size_t i = 0; i < reports.size(); ++i)
      f << localchan::report_csv_row(static_cast<int>(i), reports[i]) << '\n';
  } else {
    for (const auto& r : reports) f << localchan::report_to_json(r).dump() << '\n';
  }
}

json summary_to_json(const localchan::SweepSummary& s) {
  return json{{"trials", s.trials},
              {"separable_violations", s.separable_violations},
              {"entangled_violations", s.entangled_violations},
              {"max_distance", s.max_distance},
              {"max_separable_ratio", s.max_separable_ratio},
              {"max_entangled_ratio", s.max_entangled_ratio}};
}

bool any_proven_violation(const std::vector<BoundReport>& reports) {
  for (const auto& r : reports)
    if (localchan::proven_bound_violation(r)) return true;
  return false;
}

int run_verify_bounds(const Options& o) {
  const localchan::ExperimentConfig cfg = make_config(o);
  if (!o.export_channels.empty()) export_channel_pools(cfg, o.export_channels);
  const std::vector<BoundReport> sep = localchan::separable_sweep(cfg);
  const std::vector<BoundReport> uni = localchan::universal_sweep(cfg);

  json j{{"separable_sweep", summary_to_json(localchan::summarize(sep))},
         {"universal_sweep", summary_to_json(localchan::summarize(uni))}};
  if (o.d1 == 2 && o.d2 == 2 && cfg.channel.kind == localchan::ChannelKind::contraction) {
    json arrays = json::array();
    for (int pairs = 1; pairs <= 3; ++pairs) {
      const auto r = localchan::bell_array_example(pairs, o.epsilon);
      arrays.push_back(json{{"channels", r.channels},
                            {"measured", r.measured},
                            {"separable_bound", r.separable_bound},
                            {"universal_bound", r.universal_bound},
                            {"violates_separable", r.violates_separable}});
    }
    j["bell_array_examples"] = std::move(arrays);
  }

  std::vector<BoundReport> all = sep;
  all.insert(all.end(), uni.begin(), uni.end());
  dump_reports(all, o);
  std::cout << j.dump(2) << '\n';
  return any_proven_violation(all) ? 2 : 0;
}

int run_bell_example(const Options& o) {
  const auto res = localchan::bell_example(o.epsilon);
  json j = localchan::report_to_json(res.report);
  j["exact_closed_form"] = res.exact_closed_form;
  j["first_order"] = res.first_order;
  emit(j, o);
  return localchan::proven_bound_violation(res.report) ? 2 : 0;
}

int run_ghz_decay(const Options& o) {
  const auto res = localchan::ghz_decay(o.n, o.epsilon);
  emit(json{{"n", o.n},
            {"epsilon", o.epsilon},
            {"exact", res.exact},
            {"closed_form", res.closed_form},
            {"first_order", res.first_order}},
       o);
  return 0;
}

int run_saturate(const Options& o) {
  const auto res = localchan::saturation_experiment(o.d1, o.d2, o.p, o.epsilon);
  json j = localchan::report_to_json(res.report);
  j["predicted_first_order"] = res.predicted;
  emit(j, o);
  return localchan::proven_bound_violation(res.report) ? 2 : 0;
}

int run_witness(const Options& o) {
  std::ifstream f(o.input);
  if (!f) throw std::runtime_error("cannot open input file '" + o.input + "'");
  json parsed;
  f >> parsed;
  const localchan::ImportedState imported = localchan::state_from_json(parsed);
  if (imported.state.dim() != 4)
    throw std::runtime_error("witness evaluation needs a two-qubit (4x4) state");

  const double fval = localchan::witness_value(imported.state);
  const double conc = localchan::concurrence(imported.state);

  // Distance-based detection: the calibrated contraction pair versus the
  // separable bound at the requested epsilon.
  const double k = localchan::contraction_k_for_epsilon(2, o.epsilon, 2.0);
  const localchan::QuantumChannel ch = localchan::depolarizing_contraction(2, k);
  const std::vector<int> dims{2, 2};
  localchan::ComplexMatrix out = localchan::apply_local(ch, imported.state.matrix(), dims, 0);
  out = localchan::apply_local(ch, out, dims, 1);
  const double measured = localchan::schatten_norm(out - imported.state.matrix(), 2.0);
  const bool violates =
      measured > localchan::separable_bound_hs(2, 2, o.epsilon) + localchan::kViolationSlack;

  emit(json{{"F", fval}, {"concurrence", conc}, {"violates_separable_bound", violates}}, o);
  return 0;
}

int run_search(const Options& o) {
  const localchan::ExperimentConfig cfg = make_config(o);
  const auto space = o.space == "separable" ? localchan::SearchSpace::separable_pure
                                            : localchan::SearchSpace::entangled_pure;
  if (!o.export_channels.empty()) {
    localchan::ExperimentConfig one = cfg;
    one.channel.pool_size = 1;
    export_channel_pools(one, o.export_channels);
  }
  const auto res = localchan::violation_search(cfg, space);

  // best state exported in the interchange format so it can be re-imported
  const auto best = localchan::DensityOperator::pure(res.best_state);
  json j{{"report", localchan::report_to_json(res.best)},
         {"schmidt_rank", res.schmidt_rank},
         {"budget_exhausted", res.budget_exhausted},
         {"best_state", localchan::state_to_json(best, {cfg.d1, cfg.d2})}};
  if (res.concurrence_value >= 0.0) j["concurrence"] = res.concurrence_value;
  emit(j, o);
  return localchan::proven_bound_violation(res.best) ? 2 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"bounds on the action of products of epsilon-bounded local channels"};
  app.require_subcommand(1);
  Options o;

  auto add_common = [&](CLI::App* cmd, bool with_dims, bool with_trials) {
    if (with_dims) {
      cmd->add_option("--d1", o.d1, "first subsystem dimension")->check(CLI::Range(2, 64));
      cmd->add_option("--d2", o.d2, "second subsystem dimension")->check(CLI::Range(2, 64));
    }
    cmd->add_option("--p", o.p, "norm order (>= 1)");
    cmd->add_option("--epsilon", o.epsilon, "channel distance bound");
    cmd->add_option("--seed", o.seed, "base seed for reproducible sampling");
    if (with_trials) {
      cmd->add_option("--trials", o.trials, "number of trials")->check(CLI::PositiveNumber);
      cmd->add_option("--channel", o.channel, "channel kind")
          ->check(CLI::IsMember({"contraction", "dephasing", "random"}));
      cmd->add_option("--env-dim", o.env_dim, "environment dimension for random channels")
          ->check(CLI::Range(1, 16));
      cmd->add_option("--channel-file", o.channel_file1,
                      "load the side-1 channel from a JSON file");
      cmd->add_option("--channel-file2", o.channel_file2,
                      "load the side-2 channel from a JSON file (defaults to side 1)");
      cmd->add_option("--export-channels", o.export_channels,
                      "write the certified channel pools to this file");
    }
    cmd->add_option("--out", o.out, "write full output to this file");
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"json", "csv"}));
  };

  auto* verify = app.add_subcommand(
      "verify-bounds", "sweep random states through bounded channels and check every bound");
  add_common(verify, true, true);

  auto* bell = app.add_subcommand("bell-example",
                                  "calibrated contraction pair acting on the singlet");
  add_common(bell, false, false);

  auto* ghz = app.add_subcommand("ghz-decay", "GHZ state under per-qubit dephasing");
  ghz->add_option("--n", o.n, "number of qubits")->check(CLI::Range(1, 12));
  add_common(ghz, false, false);

  auto* saturate = app.add_subcommand(
      "saturate", "contraction pair on |00><00|: saturation of the separable bounds");
  add_common(saturate, true, false);

  auto* witness = app.add_subcommand("witness", "witness value and concurrence of a state");
  witness->add_option("--input", o.input, "state file (JSON matrix with dims)")->required();
  add_common(witness, false, false);

  auto* search = app.add_subcommand("search",
                                    "maximize the measured distance over input states");
  search->add_option("--space", o.space, "search space")
      ->check(CLI::IsMember({"entangled", "separable"}));
  add_common(search, true, true);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (app.got_subcommand(verify)) return run_verify_bounds(o);
    if (app.got_subcommand(bell)) return run_bell_example(o);
    if (app.got_subcommand(ghz)) return run_ghz_decay(o);
    if (app.got_subcommand(saturate)) return run_saturate(o);
    if (app.got_subcommand(witness)) return run_witness(o);
    if (app.got_subcommand(search)) return run_search(o);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}
