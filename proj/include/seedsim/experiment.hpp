#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "seedsim/centrality.hpp"
#include "seedsim/csv.hpp"
#include "seedsim/detail/parallel.hpp"
#include "seedsim/diffusion.hpp"
#include "seedsim/errors.hpp"
#include "seedsim/generators.hpp"
#include "seedsim/graph.hpp"
#include "seedsim/metrics.hpp"
#include "seedsim/rng.hpp"
#include "seedsim/seeding.hpp"

namespace seedsim {

// One network of a grid: either generated from parameters or loaded from an
// edge-list file. The name keys the network in records and random streams.
struct NetworkSpec {
  enum class Kind { Ws, Ba, File };
  Kind kind = Kind::Ba;
  std::string name;
  WsParams ws;
  BaParams ba;
  std::string path;
};

inline std::string default_network_name(const NetworkSpec& spec) {
  switch (spec.kind) {
    case NetworkSpec::Kind::Ws:
      return "ws_n" + std::to_string(spec.ws.n) + "_k" + std::to_string(spec.ws.nei) + "_p" +
             format_double(spec.ws.rewire_p);
    case NetworkSpec::Kind::Ba:
      return "ba_n" + std::to_string(spec.ba.n) + "_m" + std::to_string(spec.ba.m) +
             (spec.ba.power == 1.0 ? std::string() : "_pow" + format_double(spec.ba.power));
    case NetworkSpec::Kind::File:
      return std::filesystem::path(spec.path).stem().string();
  }
  return "network";
}

struct GridConfig {
  std::vector<NetworkSpec> networks;
  std::vector<RankStrategy> strategies;
  std::vector<SeedingMode> modes;  // sequential modes; ss is the built-in reference
  std::vector<double> pp_values;
  std::vector<double> sp_values;
  std::size_t replications = 100;
  std::uint64_t master_seed = 0;
  bool coupled = true;
};

inline void validate_grid_config(const GridConfig& cfg) {
  if (cfg.networks.empty()) throw InputError("config: networks list is empty");
  if (cfg.strategies.empty()) throw InputError("config: strategies list is empty");
  if (cfg.modes.empty()) throw InputError("config: modes list is empty");
  if (cfg.pp_values.empty()) throw InputError("config: pp_values list is empty");
  if (cfg.sp_values.empty()) throw InputError("config: sp_values list is empty");
  if (cfg.replications == 0) throw InputError("config: replications must be at least 1");
  for (SeedingMode m : cfg.modes) {
    if (!is_sequential(m)) {
      throw InputError("config: modes must be sequential; every record already carries its"
                       " single-stage reference");
    }
  }
  for (double pp : cfg.pp_values) {
    if (!(pp >= 0.0 && pp <= 1.0)) throw InputError("config: pp values must lie in [0, 1]");
  }
  for (double sp : cfg.sp_values) {
    if (!(sp > 0.0 && sp <= 1.0)) throw InputError("config: sp values must lie in (0, 1]");
  }
  std::vector<std::string> names;
  for (const NetworkSpec& spec : cfg.networks) {
    if (spec.name.find_first_of(",|=") != std::string::npos) {
      throw InputError("config: network name '" + spec.name + "' contains ',', '|' or '='");
    }
    names.push_back(spec.name);
  }
  std::sort(names.begin(), names.end());
  if (std::adjacent_find(names.begin(), names.end()) != names.end()) {
    throw InputError("config: network names must be unique");
  }
}

inline GridConfig load_grid_config(std::istream& in) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }

  GridConfig cfg;
  try {
    cfg.master_seed = j.value("master_seed", std::uint64_t{0});
    cfg.replications = j.value("replications", std::size_t{100});
    cfg.coupled = j.value("coupled", true);
    for (const auto& jn : j.at("networks")) {
      NetworkSpec spec;
      const std::string type = jn.at("type").get<std::string>();
      if (type == "ws") {
        spec.kind = NetworkSpec::Kind::Ws;
        spec.ws.n = jn.at("n").get<std::size_t>();
        spec.ws.nei = jn.value("nei", std::size_t{1});
        spec.ws.rewire_p = jn.value("p", 0.0);
      } else if (type == "ba") {
        spec.kind = NetworkSpec::Kind::Ba;
        spec.ba.n = jn.at("n").get<std::size_t>();
        spec.ba.m = jn.value("m", std::size_t{1});
        spec.ba.power = jn.value("power", 1.0);
      } else if (type == "file") {
        spec.kind = NetworkSpec::Kind::File;
        spec.path = jn.at("path").get<std::string>();
      } else {
        throw InputError("config: unknown network type '" + type + "'");
      }
      spec.name = jn.value("name", default_network_name(spec));
      cfg.networks.push_back(std::move(spec));
    }
    for (const auto& js : j.at("strategies")) {
      cfg.strategies.push_back(rank_strategy_from_string(js.get<std::string>()));
    }
    for (const auto& jm : j.at("modes")) {
      cfg.modes.push_back(seeding_mode_from_string(jm.get<std::string>()));
    }
    for (const auto& jp : j.at("pp_values")) cfg.pp_values.push_back(jp.get<double>());
    for (const auto& js : j.at("sp_values")) cfg.sp_values.push_back(js.get<double>());
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("config: ") + e.what());
  }

  validate_grid_config(cfg);
  return cfg;
}

inline GridConfig load_grid_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file: " + path);
  return load_grid_config(in);
}

// One paired observation: a sequential run and its single-stage reference,
// executed under identical conditions.
struct PairRecord {
  std::string network;
  RankStrategy strategy = RankStrategy::Degree;
  SeedingMode mode = SeedingMode::Sq;
  double pp = 0.0;
  double sp = 0.0;
  std::size_t replication = 0;
  double coverage_ss = 0.0;
  double coverage_seq = 0.0;
  std::size_t duration_ss = 0;
  std::size_t duration_seq = 0;
  double coverage_ref = 0.0;  // nan when coverage_ss is 0
  double duration_ref = 0.0;  // nan when duration_ss is 0
  double seeds_saved = 0.0;
};

// Fraction of the single-stage seed set (the top-budget ranked nodes) that
// the sequential run activated naturally instead of spending a seed on.
inline double seeds_saved_fraction(const Ranking& ranking, std::size_t budget,
                                   const RunResult& seq) {
  std::vector<std::uint8_t> was_seeded(seq.final_active.size(), 0);
  for (const auto& [stage, node] : seq.seeds_used) was_seeded[node] = 1;
  std::size_t saved = 0;
  for (std::size_t i = 0; i < budget; ++i) {
    NodeId v = ranking.order[i];
    if (seq.final_active[v] && !was_seeded[v]) ++saved;
  }
  return budget ? static_cast<double>(saved) / static_cast<double>(budget) : 0.0;
}

namespace detail {

inline PairRecord make_pair_record(const Ranking& ranking, SeedingMode mode,
                                   const SeedBudget& budget, double pp, const RunResult& ss,
                                   const RunResult& seq) {
  PairRecord rec;
  rec.mode = mode;
  rec.pp = pp;
  rec.sp = budget.sp;
  rec.coverage_ss = ss.coverage_total();
  rec.coverage_seq = seq.coverage_total();
  rec.duration_ss = ss.duration();
  rec.duration_seq = seq.duration();
  rec.coverage_ref = coverage_ref(rec.coverage_seq, rec.coverage_ss);
  rec.duration_ref = duration_ref(static_cast<double>(rec.duration_seq),
                                  static_cast<double>(rec.duration_ss));
  rec.seeds_saved = seeds_saved_fraction(ranking, budget.budget, seq);
  return rec;
}

}  // namespace detail

// Draws one live-edge sample and runs the single-stage reference and the
// sequential mode on it with the same ranking and budget, so the pair differs
// only in schedule.
inline PairRecord coupled_pair(const Graph& g, const Ranking& ranking, SeedingMode mode,
                               const SeedBudget& budget, double pp, Rng& rng) {
  if (!is_sequential(mode)) throw InputError("coupled_pair: mode must be sequential");
  LiveEdgeSample sample = sample_live_edges(g, pp, rng);
  RunResult ss = run_strategy(g, ranking, SeedingMode::SS, budget, sample);
  RunResult seq = run_strategy(g, ranking, mode, budget, sample);
  return detail::make_pair_record(ranking, mode, budget, pp, ss, seq);
}

// Sensitivity variant: the two runs draw their propagation coins
// independently from the given stream instead of sharing a sample.
inline PairRecord uncoupled_pair(const Graph& g, const Ranking& ranking, SeedingMode mode,
                                 const SeedBudget& budget, double pp, Rng& rng) {
  if (!is_sequential(mode)) throw InputError("uncoupled_pair: mode must be sequential");
  RunResult ss = run_strategy(g, ranking, SeedingMode::SS, budget, pp, rng);
  RunResult seq = run_strategy(g, ranking, mode, budget, pp, rng);
  return detail::make_pair_record(ranking, mode, budget, pp, ss, seq);
}

struct GridResult {
  std::vector<PairRecord> records;
  std::vector<std::string> network_errors;  // "name: reason", config order
};

// Runs the full Cartesian product of cells x replications. Every record gets
// its own random stream keyed by (master seed, cell key, replication), so the
// output is identical for any worker count and any execution order. Networks
// that fail to resolve are reported and skipped; the grid continues.
inline GridResult run_grid(const GridConfig& cfg, unsigned threads = 0) {
  validate_grid_config(cfg);
  GridResult result;

  struct ResolvedNetwork {
    const NetworkSpec* spec;
    Graph graph;
  };
  std::vector<ResolvedNetwork> networks;
  for (const NetworkSpec& spec : cfg.networks) {
    try {
      Graph g;
      if (spec.kind == NetworkSpec::Kind::File) {
        g = load_edge_list_file(spec.path).graph;
      } else {
        StreamKey key(cfg.master_seed);
        key.add("network");
        key.add(spec.name);
        Rng rng = key.rng();
        g = spec.kind == NetworkSpec::Kind::Ws ? generate_ws(spec.ws, rng)
                                               : generate_ba(spec.ba, rng);
      }
      networks.push_back(ResolvedNetwork{&spec, std::move(g)});
    } catch (const std::exception& e) {
      result.network_errors.push_back(spec.name + ": " + e.what());
    }
  }

  // Deterministic rankings are fixed per network and shared by all cells.
  std::vector<std::vector<Ranking>> rankings(networks.size());
  for (std::size_t ni = 0; ni < networks.size(); ++ni) {
    rankings[ni].resize(cfg.strategies.size());
    for (std::size_t si = 0; si < cfg.strategies.size(); ++si) {
      if (cfg.strategies[si] != RankStrategy::Random) {
        rankings[ni][si] = rank_nodes(networks[ni].graph, cfg.strategies[si]);
      }
    }
  }

  const std::size_t per_network = cfg.strategies.size() * cfg.modes.size() *
                                  cfg.pp_values.size() * cfg.sp_values.size() * cfg.replications;
  result.records.resize(networks.size() * per_network);

  detail::parallel_for_index(result.records.size(), threads, [&](std::size_t idx) {
    std::size_t rest = idx;
    const std::size_t rep = rest % cfg.replications;
    rest /= cfg.replications;
    const std::size_t qi = rest % cfg.sp_values.size();
    rest /= cfg.sp_values.size();
    const std::size_t pi = rest % cfg.pp_values.size();
    rest /= cfg.pp_values.size();
    const std::size_t mi = rest % cfg.modes.size();
    rest /= cfg.modes.size();
    const std::size_t si = rest % cfg.strategies.size();
    const std::size_t ni = rest / cfg.strategies.size();

    const ResolvedNetwork& net = networks[ni];
    const RankStrategy strategy = cfg.strategies[si];
    const SeedingMode mode = cfg.modes[mi];
    const double pp = cfg.pp_values[pi];
    const double sp = cfg.sp_values[qi];

    StreamKey key(cfg.master_seed);
    key.add("record");
    key.add(net.spec->name);
    key.add(to_string(strategy));
    key.add(to_string(mode));
    key.add(pp);
    key.add(sp);
    key.add(static_cast<std::uint64_t>(rep));
    Rng rng = key.rng();

    Ranking random_ranking;
    const Ranking* ranking = &rankings[ni][si];
    if (strategy == RankStrategy::Random) {
      random_ranking = rank_nodes(net.graph, RankStrategy::Random, &rng);
      ranking = &random_ranking;
    }

    const SeedBudget budget = SeedBudget::from_fraction(net.graph.node_count(), sp);
    PairRecord rec = cfg.coupled ? coupled_pair(net.graph, *ranking, mode, budget, pp, rng)
                                 : uncoupled_pair(net.graph, *ranking, mode, budget, pp, rng);
    rec.network = net.spec->name;
    rec.strategy = strategy;
    rec.replication = rep;
    result.records[idx] = std::move(rec);
  });

  return result;
}

inline constexpr const char* kRecordsCsvHeader =
    "network,strategy,mode,pp,sp,replication,coverage_ss,coverage_seq,"
    "duration_ss,duration_seq,coverage_ref,duration_ref,seeds_saved";

inline void write_records_csv(std::ostream& out, const std::vector<PairRecord>& records) {
  out << kRecordsCsvHeader << '\n';
  for (const PairRecord& r : records) {
    out << r.network << ',' << to_string(r.strategy) << ',' << to_string(r.mode) << ','
        << format_double(r.pp) << ',' << format_double(r.sp) << ',' << r.replication << ','
        << format_double(r.coverage_ss) << ',' << format_double(r.coverage_seq) << ','
        << r.duration_ss << ',' << r.duration_seq << ',' << format_double(r.coverage_ref) << ','
        << format_double(r.duration_ref) << ',' << format_double(r.seeds_saved) << '\n';
  }
}

inline std::vector<PairRecord> read_records_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 1;
  if (!std::getline(in, line) || line != kRecordsCsvHeader) {
    throw ParseError(1, "records file does not start with the expected header");
  }
  std::vector<PairRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 13) {
      throw ParseError(line_no, "expected 13 fields, found " + std::to_string(fields.size()));
    }
    PairRecord r;
    r.network = std::string(fields[0]);
    try {
      r.strategy = rank_strategy_from_string(std::string(fields[1]));
      r.mode = seeding_mode_from_string(std::string(fields[2]));
    } catch (const InputError& e) {
      throw ParseError(line_no, e.what());
    }
    r.pp = parse_double(fields[3], line_no);
    r.sp = parse_double(fields[4], line_no);
    r.replication = parse_count(fields[5], line_no);
    r.coverage_ss = parse_double(fields[6], line_no);
    r.coverage_seq = parse_double(fields[7], line_no);
    r.duration_ss = parse_count(fields[8], line_no);
    r.duration_seq = parse_count(fields[9], line_no);
    r.coverage_ref = parse_double(fields[10], line_no);
    r.duration_ref = parse_double(fields[11], line_no);
    r.seeds_saved = parse_double(fields[12], line_no);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace seedsim
