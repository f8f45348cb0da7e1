// Command-line front end: generate networks, rank nodes, trace single runs,
// execute experiment grids, and aggregate record files into report CSVs.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seedsim.hpp"

namespace {

using namespace seedsim;

// Opens path for writing, with "-" meaning stdout.
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw InputError("cannot open output file: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

void write_edge_list(std::ostream& out, const Graph& g) {
  for (NodeId u = 0; u < g.node_count(); ++u) {
    for (NodeId v : g.neighbors(u)) {
      if (u < v) out << u << ' ' << v << '\n';
    }
  }
}

struct GenerateArgs {
  std::size_t n = 0;
  std::size_t nei = 1;
  double rewire_p = 0.0;
  std::size_t m = 1;
  double power = 1.0;
  std::uint64_t seed = 0;
  std::string out;
};

void cmd_generate(const GenerateArgs& args, bool is_ws) {
  Rng rng = StreamKey(args.seed).rng();
  Graph g = is_ws ? generate_ws({.n = args.n, .nei = args.nei, .rewire_p = args.rewire_p}, rng)
                  : generate_ba({.n = args.n, .m = args.m, .power = args.power}, rng);
  {
    OutputTarget out(args.out);
    write_edge_list(out.stream(), g);
  }
  if (args.out != "-") {
    std::ofstream meta(args.out + ".meta");
    if (!meta) throw InputError("cannot open output file: " + args.out + ".meta");
    meta << "generator=" << (is_ws ? "ws" : "ba") << '\n';
    meta << "n=" << args.n << '\n';
    if (is_ws) {
      meta << "nei=" << args.nei << '\n';
      meta << "p=" << format_double(args.rewire_p) << '\n';
    } else {
      meta << "m=" << args.m << '\n';
      meta << "power=" << format_double(args.power) << '\n';
    }
    meta << "seed=" << args.seed << '\n';
    meta << "nodes=" << g.node_count() << '\n';
    meta << "edges=" << g.edge_count() << '\n';
  }
}

struct RankArgs {
  std::string network;
  std::string strategy;
  std::uint64_t seed = 0;
  std::string out = "-";
};

void cmd_rank(const RankArgs& args) {
  LoadedGraph loaded = load_edge_list_file(args.network);
  RankStrategy strategy = rank_strategy_from_string(args.strategy);
  Rng rng = StreamKey(args.seed).rng();
  Ranking ranking = rank_nodes(loaded.graph, strategy, &rng);

  OutputTarget out(args.out);
  out.stream() << "node,strategy,score,rank\n";
  for (std::size_t pos = 0; pos < ranking.order.size(); ++pos) {
    NodeId v = ranking.order[pos];
    const double score = ranking.scores.empty()
                             ? std::numeric_limits<double>::quiet_NaN()
                             : ranking.scores[v];
    out.stream() << loaded.labels[v] << ',' << to_string(strategy) << ',' << format_double(score)
                 << ',' << pos + 1 << '\n';
  }
}

struct SimulateArgs {
  std::string network;
  std::string strategy;
  std::string mode;
  double pp = 0.1;
  double sp = 0.0;
  std::size_t seeds = 0;  // raw budget, overrides sp when given
  std::uint64_t seed = 0;
  std::string out = "-";
};

void cmd_simulate(const SimulateArgs& args) {
  if (args.sp == 0.0 && args.seeds == 0) throw InputError("simulate needs --sp or --seeds");
  LoadedGraph loaded = load_edge_list_file(args.network);
  const Graph& g = loaded.graph;
  RankStrategy strategy = rank_strategy_from_string(args.strategy);
  SeedingMode mode = seeding_mode_from_string(args.mode);
  SeedBudget budget = args.seeds > 0 ? SeedBudget::from_count(args.seeds)
                                     : SeedBudget::from_fraction(g.node_count(), args.sp);

  Rng rng = StreamKey(args.seed).rng();
  Ranking ranking = rank_nodes(g, strategy, &rng);
  RunResult run = run_strategy(g, ranking, mode, budget, args.pp, rng);

  OutputTarget out(args.out);
  out.stream() << "stage,natural_count,seeded_count,cumulative_active,buffer_credit\n";
  for (const StageRecord& rec : run.log) {
    out.stream() << rec.stage << ',' << rec.natural_count << ',' << rec.seeded_count << ','
                 << rec.cumulative_active << ',' << rec.buffer_credit << '\n';
  }
  out.stream() << "# nodes=" << run.node_count << '\n';
  out.stream() << "# budget=" << budget.budget << '\n';
  out.stream() << "# seeds_used=" << run.seeds_used.size() << '\n';
  out.stream() << "# coverage_total=" << format_double(run.coverage_total()) << '\n';
  out.stream() << "# coverage_natural=" << format_double(run.coverage_natural()) << '\n';
  out.stream() << "# duration=" << run.duration() << '\n';
  out.stream() << "# peak_stage=" << run.peak_stage() << '\n';
}

struct GridArgs {
  std::string config;
  std::string out;
  unsigned threads = 0;
  bool uncoupled = false;
};

void cmd_grid(const GridArgs& args) {
  GridConfig cfg = load_grid_config_file(args.config);
  if (args.uncoupled) cfg.coupled = false;
  GridResult result = run_grid(cfg, args.threads);
  for (const std::string& err : result.network_errors) {
    std::cerr << "warning: skipped network " << err << '\n';
  }
  if (result.records.empty() && !result.network_errors.empty()) {
    throw InputError("no network in the config could be resolved");
  }
  OutputTarget out(args.out);
  write_records_csv(out.stream(), result.records);
}

struct ReportArgs {
  std::string records;
  std::string out_dir;
  std::string group_by = "mode";
};

std::vector<std::string> split_fields(const std::string& list) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string::npos) comma = list.size();
    if (comma > start) fields.emplace_back(list.substr(start, comma - start));
    start = comma + 1;
  }
  return fields;
}

void cmd_report(const ReportArgs& args) {
  std::ifstream in(args.records);
  if (!in) throw InputError("cannot open records file: " + args.records);
  std::vector<PairRecord> records = read_records_csv(in);

  std::vector<SummaryRow> rows = summarize(records, split_fields(args.group_by));

  std::filesystem::create_directories(args.out_dir);
  auto open = [&](const char* name) {
    std::ofstream out(std::filesystem::path(args.out_dir) / name);
    if (!out) throw InputError(std::string("cannot open output file: ") + name);
    return out;
  };
  {
    auto out = open("summary.csv");
    write_summary_csv(out, rows);
  }
  {
    auto out = open("scatter.csv");
    write_scatter_csv(out, records);
  }
  {
    auto out = open("durations.csv");
    write_durations_csv(out, records);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Seeding-schedule simulator for independent-cascade spreading"};
  app.require_subcommand(1);

  GenerateArgs gen_args;
  auto* generate = app.add_subcommand("generate", "Generate a synthetic network edge list");
  generate->require_subcommand(1);
  auto* gen_ws = generate->add_subcommand("ws", "Watts-Strogatz small world");
  gen_ws->add_option("--n", gen_args.n, "number of nodes")->required();
  gen_ws->add_option("--nei", gen_args.nei, "lattice neighbors per side (degree 2*nei)");
  gen_ws->add_option("--p", gen_args.rewire_p, "rewiring probability");
  auto* gen_ba = generate->add_subcommand("ba", "Barabasi-Albert preferential attachment");
  gen_ba->add_option("--n", gen_args.n, "number of nodes")->required();
  gen_ba->add_option("--m", gen_args.m, "edges added per node");
  gen_ba->add_option("--power", gen_args.power, "preferential attachment exponent");
  for (auto* sub : {gen_ws, gen_ba}) {
    sub->add_option("--seed", gen_args.seed, "generation seed");
    sub->add_option("--out", gen_args.out, "output edge-list path ('-' for stdout)")->required();
  }

  RankArgs rank_args;
  auto* rank = app.add_subcommand("rank", "Rank nodes of a network for seeding");
  rank->add_option("--network", rank_args.network, "edge-list file")->required();
  rank->add_option("--strategy", rank_args.strategy,
                   "random|degree|degree2|closeness|clustering|pagerank")
      ->required();
  rank->add_option("--seed", rank_args.seed, "seed for the random strategy");
  rank->add_option("--out", rank_args.out, "output CSV path ('-' for stdout)");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Trace one seeding run stage by stage");
  simulate->add_option("--network", sim_args.network, "edge-list file")->required();
  simulate->add_option("--strategy", sim_args.strategy, "ranking strategy")->required();
  simulate->add_option("--mode", sim_args.mode, "ss|sq|rsq|bsq")->required();
  simulate->add_option("--pp", sim_args.pp, "propagation probability")->required();
  auto* sp_opt = simulate->add_option("--sp", sim_args.sp, "seed budget as node fraction");
  simulate->add_option("--seeds", sim_args.seeds, "seed budget as a raw count")->excludes(sp_opt);
  simulate->add_option("--seed", sim_args.seed, "run seed");
  simulate->add_option("--out", sim_args.out, "output CSV path ('-' for stdout)");

  GridArgs grid_args;
  auto* grid = app.add_subcommand("grid", "Run a replicated experiment grid");
  grid->add_option("--config", grid_args.config, "JSON grid config")->required();
  grid->add_option("--out", grid_args.out, "records CSV path ('-' for stdout)")->required();
  grid->add_option("--threads", grid_args.threads, "worker threads (0 = all cores)");
  grid->add_flag("--uncoupled", grid_args.uncoupled,
                 "draw propagation coins independently per run instead of sharing a sample");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "Aggregate a records CSV into report tables");
  report->add_option("--records", report_args.records, "records CSV from 'grid'")->required();
  report->add_option("--out-dir", report_args.out_dir, "directory for the report CSVs")
      ->required();
  report->add_option("--group-by", report_args.group_by,
                     "comma-separated key fields (network,strategy,mode,pp,sp)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (gen_ws->parsed()) cmd_generate(gen_args, true);
    else if (gen_ba->parsed()) cmd_generate(gen_args, false);
    else if (rank->parsed()) cmd_rank(rank_args);
    else if (simulate->parsed()) cmd_simulate(sim_args);
    else if (grid->parsed()) cmd_grid(grid_args);
    else if (report->parsed()) cmd_report(report_args);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
