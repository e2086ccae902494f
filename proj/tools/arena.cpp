// arena: command-line front end for atomic bottleneck routing games.
//
//   arena generate fig2 --k 5 --out fig2.inst
//   arena dynamics fig2.inst --model exp --schedule rr --out trace.csv
//   arena analyze fig2.inst --model linear --out report.txt
//   arena verify-paper --out results/

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "arena/arena.hpp"
#include "battery.hpp"

namespace {

namespace fs = std::filesystem;
using namespace arena;

enum Exit : int {
  kOk = 0,
  kInvalid = 2,
  kWriteFailed = 3,
  kNotConverged = 4,
  kTooLarge = 5,
  kNoEquilibrium = 6,
  kVerifyFailed = 7,
};

int exit_code_for(Errc c) {
  switch (c) {
    case Errc::io: return kWriteFailed;
    case Errc::non_convergence: return kNotConverged;
    case Errc::instance_too_large: return kTooLarge;
    case Errc::no_equilibrium: return kNoEquilibrium;
    default: return kInvalid;
  }
}

struct GenerateArgs {
  std::string out;
  std::string routing_out;
  std::size_t k = 3;
  RandomSpec random;
  ChainSpec chain;
};

struct DynamicsArgs {
  std::string instance;
  std::string model = "exp";
  std::string schedule = "rr";
  std::optional<std::uint64_t> max_steps;
  std::string start;
  std::string out = "trace.csv";
  std::string summary;
};

struct AnalyzeArgs {
  std::string instance;
  std::string model = "exp";
  std::uint64_t cap = kDefaultProfileCap;
  std::string alpha = "10";
  std::string out;
};

struct VerifyArgs {
  std::string out = "verify";
  std::vector<std::string> faults;
};

int write_generated(const GeneratedInstance& gen, const GenerateArgs& args) {
  io::write_atomic(args.out, io::format_instance(gen));
  std::cout << "wrote " << args.out << " (" << gen.game.graph().node_count() << " nodes, "
            << gen.game.edge_count() << " edges, " << gen.game.player_count() << " players)\n";
  if (gen.intended) {
    const std::string sidecar = args.routing_out.empty() ? args.out + ".routing" : args.routing_out;
    io::write_atomic(sidecar, io::format_routing(*gen.intended));
    std::cout << "wrote " << sidecar << "\n";
  }
  return kOk;
}

int run_dynamics(const DynamicsArgs& args) {
  const io::LoadedInstance loaded = io::load_instance(args.instance);
  const GameInstance& game = loaded.game;
  const CostModel model = CostModel::parse(args.model);
  const Schedule schedule = Schedule::parse(args.schedule);
  const Routing start =
      args.start.empty() ? all_first(game) : io::parse_routing(io::read_file(args.start));
  check_routing(game, start);
  const std::uint64_t budget = args.max_steps.value_or(default_max_steps(game, start, model));
  const std::string summary_path = args.summary.empty() ? args.out + ".summary" : args.summary;

  DynamicsTrace trace;
  try {
    trace = run_best_response(game, start, model, schedule, budget);
  } catch (const NonConvergence& e) {
    trace = e.trace();
  }
  const io::DynamicsSummary summary = io::summarize(game, trace, model, schedule, budget);
  io::write_atomic(args.out, io::format_trace(trace));
  io::write_atomic(summary_path, io::format_summary(summary));
  std::cout << io::format_summary(summary);
  return trace.converged ? kOk : kNotConverged;
}

int run_analyze(const AnalyzeArgs& args) {
  const io::LoadedInstance loaded = io::load_instance(args.instance);
  const GameInstance& game = loaded.game;
  const CostModel model = CostModel::parse(args.model);
  const Rational alpha = parse_rational(args.alpha);
  const AnalysisReport report = analyze(game, model, args.cap);
  std::optional<io::BoundSection> bound;
  if (model.is_exponential()) bound = io::BoundSection{alpha, poa_bound_check(game, report, alpha)};
  const std::string text = io::format_report(report, bound);
  if (!args.out.empty()) io::write_atomic(args.out, text);
  std::cout << text;
  return kOk;
}

int run_verify(const VerifyArgs& args) {
  acceptance::BatteryOptions opts;
  opts.faults.insert(args.faults.begin(), args.faults.end());
  const acceptance::BatteryResult result = acceptance::run_full_battery(opts);
  std::error_code ec;
  fs::create_directories(args.out, ec);
  if (ec) throw Error(Errc::io, "cannot create " + args.out);
  const std::string manifest = result.manifest();
  io::write_atomic(fs::path(args.out) / "manifest.txt", manifest);
  std::cout << manifest;
  if (result.all_pass()) return kOk;
  std::cerr << "failed criteria:";
  for (int id : result.failed()) std::cerr << " " << id;
  std::cerr << "\n";
  return kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Atomic bottleneck routing games: generate, run dynamics, analyze equilibria"};
  app.allow_config_extras(CLI::config_extras_mode::error);
  app.set_config("--config", "", "Read options from a TOML/INI file (unknown keys rejected)");
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a generated instance file");
  generate->require_subcommand(1);
  auto add_outputs = [&](CLI::App* sub) {
    sub->add_option("--out", gen.out, "Instance file to write")->required();
    sub->add_option("--routing-out", gen.routing_out,
                    "Sidecar for the intended routing (default: OUT.routing)");
  };
  auto* g_fig2 = generate->add_subcommand("fig2", "Linear-cost family with PoA >= k");
  g_fig2->add_option("--k", gen.k, "Number of players (>= 2)")->required();
  add_outputs(g_fig2);
  auto* g_multi = generate->add_subcommand("multi-nash", "Certified multiple-Nash witness");
  add_outputs(g_multi);
  auto* g_random = generate->add_subcommand("random", "Seeded random instance");
  g_random->add_option("--nodes", gen.random.nodes)->capture_default_str();
  g_random->add_option("--edges", gen.random.edges)->capture_default_str();
  g_random->add_option("--players", gen.random.players)->capture_default_str();
  g_random->add_option("--max-len", gen.random.max_len)->capture_default_str();
  g_random->add_option("--seed", gen.random.seed)->capture_default_str();
  g_random->add_option("--cap", gen.random.profile_cap, "Profile-count cap")
      ->envname("ARENA_CAP")
      ->capture_default_str();
  add_outputs(g_random);
  auto* g_chain = generate->add_subcommand("chain", "Expansion-chain instance (experimental)");
  g_chain->add_option("--c-hat", gen.chain.c_hat, "Root-edge congestion")->required();
  g_chain->add_option("--l-star", gen.chain.l_star, "Optimal path length, power of two")
      ->required();
  add_outputs(g_chain);

  DynamicsArgs dyn;
  auto* dynamics = app.add_subcommand("dynamics", "Run best-response dynamics");
  dynamics->add_option("instance", dyn.instance, "Instance file")->required();
  dynamics->add_option("--model", dyn.model, "exp | max | linear | poly:d")->capture_default_str();
  dynamics->add_option("--schedule", dyn.schedule, "rr | gain | random:SEED")
      ->capture_default_str();
  dynamics->add_option("--max-steps", dyn.max_steps, "Move budget (default depends on model)");
  dynamics->add_option("--start", dyn.start, "Routing file to start from (default: all 0)");
  dynamics->add_option("--out", dyn.out, "Trace CSV")->capture_default_str();
  dynamics->add_option("--summary", dyn.summary, "Summary file (default: OUT.summary)");

  AnalyzeArgs ana;
  auto* analyze_cmd = app.add_subcommand("analyze", "Exhaustive equilibrium analysis");
  analyze_cmd->add_option("instance", ana.instance, "Instance file")->required();
  analyze_cmd->add_option("--model", ana.model, "exp | max | linear | poly:d")
      ->capture_default_str();
  analyze_cmd->add_option("--cap", ana.cap, "Profile-count cap")
      ->envname("ARENA_CAP")
      ->capture_default_str();
  analyze_cmd->add_option("--alpha", ana.alpha, "Constant for the PoA bound check, P/Q")
      ->capture_default_str();
  analyze_cmd->add_option("--out", ana.out, "Report file (also printed)");

  VerifyArgs ver;
  auto* verify = app.add_subcommand("verify-paper", "Run the acceptance battery");
  verify->add_option("--out", ver.out, "Directory for manifest.txt")->capture_default_str();
  verify->add_option("--inject-fault", ver.faults, "Corrupt a generator (multi-nash | fig2)")
      ->check(CLI::IsMember({"multi-nash", "fig2"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInvalid;
  }

  try {
    if (generate->parsed()) {
      const GeneratorSpec spec = g_fig2->parsed()    ? GeneratorSpec{Fig2Spec{gen.k}}
                                 : g_multi->parsed() ? GeneratorSpec{MultiNashSpec{}}
                                 : g_random->parsed() ? GeneratorSpec{gen.random}
                                                      : GeneratorSpec{gen.chain};
      const GeneratedInstance out = arena::generate(spec);
      return write_generated(out, gen);
    }
    if (dynamics->parsed()) return run_dynamics(dyn);
    if (analyze_cmd->parsed()) return run_analyze(ana);
    if (verify->parsed()) return run_verify(ver);
  } catch (const Error& e) {
    std::cerr << "arena: " << e.what() << "\n";
    return exit_code_for(e.code());
  }
  return kInvalid;
}
