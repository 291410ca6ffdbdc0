// Command-line front end: generate networks, run diffusion, draw samples,
// measure characteristics and drive full experiment sweeps.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "diffsample/diffsample.hpp"

namespace ds = diffsample;

namespace {

struct GenerateOptions {
  std::string preset;
  std::string model;
  std::vector<double> matrix;
  unsigned levels = 13;
  std::uint64_t edges = 0;
  double forward = 0.0;
  double backward = 0.0;
  unsigned ambassadors = 1;
  std::uint64_t nodes = 0;
  std::uint64_t start_cycle = 1;
  std::uint64_t seed = 1;
  std::string out;
};

int run_generate(const GenerateOptions& opt) {
  ds::Rng rng(opt.seed);
  ds::Graph graph;
  if (!opt.preset.empty()) {
    const ds::NetworkPreset* preset = ds::find_preset(opt.preset);
    if (!preset) throw ds::ParseError("unknown preset: " + opt.preset);
    graph = ds::generate_preset(*preset, rng);
  } else if (opt.model == "kronecker") {
    ds::KroneckerParams params;
    if (opt.matrix.size() != 4)
      throw std::invalid_argument("--matrix needs four comma-separated entries");
    std::copy(opt.matrix.begin(), opt.matrix.end(), params.initiator.begin());
    params.levels = opt.levels;
    params.target_edges = opt.edges;
    graph = ds::kronecker_generate(params, rng);
  } else if (opt.model == "forest-fire") {
    ds::ForestFireParams params;
    params.forward_prob = opt.forward;
    params.backward_ratio = opt.backward;
    params.ambassadors = opt.ambassadors;
    params.target_nodes = static_cast<ds::NodeId>(opt.nodes);
    params.start_cycle = opt.start_cycle;
    graph = ds::forest_fire_generate(params, rng);
  } else if (opt.model == "uniform") {
    graph = ds::uniform_random_graph(static_cast<ds::NodeId>(opt.nodes), opt.edges, rng);
  } else {
    throw std::invalid_argument("choose --preset or --model");
  }
  ds::write_edge_list_file(opt.out, graph);
  ds::GraphStats stats = ds::graph_stats(graph);
  std::cout << "nodes=" << stats.nodes << " edges=" << stats.edges
            << " densification="
            << (stats.densification ? ds::format_fixed(*stats.densification, 4)
                                    : std::string("undefined"))
            << " out=" << opt.out << '\n';
  return 0;
}

struct DiffuseOptions {
  std::string graph_path;
  bool undirected = false;
  double beta = 0.0;
  double delta = 0.5;
  std::uint64_t max_cascades = 0;
  bool allow_partial = false;
  std::uint64_t seed = 1;
  std::string out_cascades;
  std::string out_diffusion;
};

int run_diffuse(const DiffuseOptions& opt) {
  ds::EdgeListLoad load = ds::load_edge_list_file(opt.graph_path, !opt.undirected);
  ds::DiffusionConfig cfg;
  cfg.transmission_probability = opt.beta;
  cfg.target_coverage = opt.delta;
  cfg.max_cascades = opt.max_cascades;
  cfg.allow_partial = opt.allow_partial;
  ds::Rng rng(opt.seed);
  ds::DiffusionNetwork dn = ds::build_diffusion_network(load.graph, cfg, rng);
  ds::write_cascades_file(opt.out_cascades, dn.cascades());
  if (!opt.out_diffusion.empty())
    ds::write_edge_list_file(opt.out_diffusion, dn.diffusion_graph());
  std::cout << "cascades=" << dn.cascades().size()
            << " diffusion_edges=" << dn.diffusion_edges().size()
            << " coverage=" << ds::format_fixed(dn.coverage())
            << (dn.shortfall() ? " flag=partial_coverage" : "") << '\n';
  return 0;
}

struct SampleOptions {
  std::string graph_path;
  std::string cascades_path;
  std::string approach = "dbs";
  std::string technique = "bfs";
  double mu = 1.0;
  std::uint64_t seed = 1;
  double restart = 0.15;
  std::uint64_t stall = 0;
  std::string out;
};

int run_sample(const SampleOptions& opt) {
  ds::EdgeListLoad load = ds::load_edge_list_file(opt.graph_path);
  ds::DiffusionNetwork dn =
      ds::DiffusionNetwork::from_cascades(load.graph, ds::read_cascades_file(opt.cascades_path));

  ds::SampleSpec spec;
  auto approach = ds::parse_approach(opt.approach);
  auto technique = ds::parse_technique(opt.technique);
  if (!approach) throw std::invalid_argument("unknown approach: " + opt.approach);
  if (!technique) throw std::invalid_argument("unknown technique: " + opt.technique);
  spec.approach = *approach;
  spec.technique = *technique;
  spec.rate = opt.mu;
  spec.rng_seed = opt.seed;
  spec.restart_probability = opt.restart;
  spec.stall_limit = opt.stall;

  ds::Rng rng(spec.rng_seed);
  ds::SampledNetwork sample = spec.approach == ds::Approach::dbs
                                  ? ds::sample_dbs(dn, spec, rng)
                                  : ds::sample_sbs(load.graph, dn, spec, rng);

  {
    std::ofstream out(opt.out);
    if (!out) throw ds::Error("cannot write sample: " + opt.out);
    out << "# nodes=" << load.graph.node_count() << '\n';
    std::vector<ds::Edge> sorted(sample.edges.begin(), sample.edges.end());
    std::sort(sorted.begin(), sorted.end());
    for (const ds::Edge& e : sorted) out << e.src << ' ' << e.dst << '\n';
  }
  {
    std::ofstream meta(opt.out + ".meta");
    if (!meta) throw ds::Error("cannot write sample metadata: " + opt.out + ".meta");
    ds::write_sample_metadata(meta, sample);
  }
  std::cout << "edges=" << sample.edges.size() << " budget=" << sample.budget
            << " budget_used=" << sample.budget_used
            << " origin=" << ds::to_string(sample.origin)
            << (sample.exhausted ? " flag=exhausted" : "") << '\n';
  return 0;
}

struct MeasureOptions {
  std::string graph_path;
  std::string cascades_path;
  std::string sample_path;
  std::string characteristic = "seed";
};

int run_measure(const MeasureOptions& opt) {
  ds::EdgeListLoad load = ds::load_edge_list_file(opt.graph_path);
  ds::DiffusionNetwork dn =
      ds::DiffusionNetwork::from_cascades(load.graph, ds::read_cascades_file(opt.cascades_path));
  auto characteristic = ds::parse_characteristic(opt.characteristic);
  if (!characteristic)
    throw std::invalid_argument("unknown characteristic: " + opt.characteristic);

  ds::EdgeListLoad sample_load = ds::load_edge_list_file(opt.sample_path);
  ds::SampledNetwork sample;
  for (const ds::Edge& e : sample_load.graph.edges()) sample.edges.push_back(e);
  for (ds::NodeId u = 0; u < sample_load.graph.node_count(); ++u)
    if (sample_load.graph.out_degree(u) + sample_load.graph.in_degree(u) > 0)
      sample.nodes.push_back(u);
  sample.explored_nodes = sample.nodes;

  std::ifstream meta_stream(opt.sample_path + ".meta");
  if (meta_stream) {
    ds::SampleMetadata meta = ds::read_sample_metadata(meta_stream);
    sample.spec.approach = meta.approach;
    sample.spec.technique = meta.technique;
    sample.spec.rate = meta.rate;
    sample.origin = meta.origin;
    sample.budget = meta.budget;
    sample.budget_used = meta.budget_used;
  }

  ds::CharacteristicResult result = ds::evaluate(dn, sample, *characteristic);
  std::cout << "characteristic=" << ds::to_string(result.characteristic)
            << " reference=" << ds::format_fixed(result.reference_value)
            << " sample=" << ds::format_fixed(result.sample_value) << " lambda="
            << (result.undefined ? std::string("nan") : ds::format_fixed(result.lambda));
  if (result.undefined) std::cout << " flag=" << result.flag;
  std::cout << '\n';
  return 0;
}

struct ExperimentOptions {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
  std::optional<unsigned> workers;
};

int run_experiment_cmd(const ExperimentOptions& opt) {
  ds::ExperimentConfig cfg = ds::load_experiment_config(opt.config_path);
  if (opt.seed) cfg.master_seed = *opt.seed;      // CLI wins over config
  if (opt.out_dir) cfg.out_dir = *opt.out_dir;
  if (opt.workers) cfg.workers = *opt.workers;

  ds::AccuracyReport report = ds::run_experiment(cfg);
  ds::write_experiment_outputs(report, cfg.out_dir);
  ds::write_range_summary(std::cout, ds::range_summary(report));
  std::cout << "rows=" << report.rows.size() << " out_dir=" << cfg.out_dir << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"diffusion network sampling laboratory"};
  app.require_subcommand(1);

  GenerateOptions generate_opt;
  CLI::App* generate = app.add_subcommand("generate", "generate a synthetic network");
  generate->add_option("--preset", generate_opt.preset, "built-in network preset");
  generate->add_option("--model", generate_opt.model, "kronecker|forest-fire|uniform");
  generate->add_option("--matrix", generate_opt.matrix, "2x2 initiator, row-major")->delimiter(',');
  generate->add_option("--levels", generate_opt.levels, "kronecker levels (2^k nodes)");
  generate->add_option("--edges", generate_opt.edges, "target edge count");
  generate->add_option("--forward", generate_opt.forward, "forest-fire forward probability");
  generate->add_option("--backward", generate_opt.backward, "forest-fire backward ratio");
  generate->add_option("--ambassadors", generate_opt.ambassadors, "forest-fire ambassadors");
  generate->add_option("--nodes", generate_opt.nodes, "target node count");
  generate->add_option("--start-cycle", generate_opt.start_cycle, "forest-fire start cycle size");
  generate->add_option("--seed", generate_opt.seed, "rng seed");
  generate->add_option("--out", generate_opt.out, "output edge-list file")->required();

  DiffuseOptions diffuse_opt;
  CLI::App* diffuse = app.add_subcommand("diffuse", "propagate cascades over a network");
  diffuse->add_option("--graph", diffuse_opt.graph_path, "edge-list file")->required();
  diffuse->add_flag("--undirected", diffuse_opt.undirected, "ingest each line in both directions");
  diffuse->add_option("--beta", diffuse_opt.beta, "transmission probability")->required();
  diffuse->add_option("--delta", diffuse_opt.delta, "target edge coverage");
  diffuse->add_option("--max-cascades", diffuse_opt.max_cascades, "cascade attempt cap (0=auto)");
  diffuse->add_flag("--allow-partial", diffuse_opt.allow_partial, "accept coverage shortfall");
  diffuse->add_option("--seed", diffuse_opt.seed, "rng seed");
  diffuse->add_option("--out-cascades", diffuse_opt.out_cascades, "cascade file")->required();
  diffuse->add_option("--out-diffusion", diffuse_opt.out_diffusion, "diffusion-network edge list");

  SampleOptions sample_opt;
  CLI::App* sample = app.add_subcommand("sample", "draw one sample");
  sample->add_option("--graph", sample_opt.graph_path, "edge-list file")->required();
  sample->add_option("--cascades", sample_opt.cascades_path, "cascade file")->required();
  sample->add_option("--approach", sample_opt.approach, "sbs|dbs")->required();
  sample->add_option("--technique", sample_opt.technique, "bfs|rw")->required();
  sample->add_option("--mu", sample_opt.mu, "sampling rate in (0,1]")->required();
  sample->add_option("--seed", sample_opt.seed, "rng seed");
  sample->add_option("--restart", sample_opt.restart, "rw restart probability");
  sample->add_option("--stall", sample_opt.stall, "rw stall limit (0=auto)");
  sample->add_option("--out", sample_opt.out, "sample edge list (metadata in .meta)")->required();

  MeasureOptions measure_opt;
  CLI::App* measure = app.add_subcommand("measure", "evaluate one characteristic");
  measure->add_option("--graph", measure_opt.graph_path, "edge-list file")->required();
  measure->add_option("--cascades", measure_opt.cascades_path, "cascade file")->required();
  measure->add_option("--sample", measure_opt.sample_path, "sample edge list")->required();
  measure->add_option("--characteristic", measure_opt.characteristic,
                      "seed|link-attendance|depth")->required();

  ExperimentOptions experiment_opt;
  std::uint64_t experiment_seed = 0;
  std::string experiment_out;
  unsigned experiment_workers = 0;
  CLI::App* experiment = app.add_subcommand("experiment", "run a configured sweep");
  experiment->add_option("--config", experiment_opt.config_path, "config file")->required();
  CLI::Option* seed_opt = experiment->add_option("--seed", experiment_seed, "master seed override");
  CLI::Option* out_opt = experiment->add_option("--out", experiment_out, "output directory override");
  CLI::Option* workers_opt = experiment->add_option("--workers", experiment_workers, "worker threads");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;  // usage errors exit 1, help exits 0
  }

  try {
    if (app.got_subcommand(generate)) return run_generate(generate_opt);
    if (app.got_subcommand(diffuse)) return run_diffuse(diffuse_opt);
    if (app.got_subcommand(sample)) return run_sample(sample_opt);
    if (app.got_subcommand(measure)) return run_measure(measure_opt);
    if (app.got_subcommand(experiment)) {
      if (*seed_opt) experiment_opt.seed = experiment_seed;
      if (*out_opt) experiment_opt.out_dir = experiment_out;
      if (*workers_opt) experiment_opt.workers = experiment_workers;
      return run_experiment_cmd(experiment_opt);
    }
  } catch (const ds::CoverageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 1;
}
