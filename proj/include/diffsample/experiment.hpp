#pragma once

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <istream>
#include <limits>
#include <map>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "diffsample/characteristics.hpp"
#include "diffsample/diffusion.hpp"
#include "diffsample/edge_list.hpp"
#include "diffsample/errors.hpp"
#include "diffsample/generators.hpp"
#include "diffsample/graph.hpp"
#include "diffsample/rng.hpp"
#include "diffsample/sampling.hpp"

namespace diffsample {

inline std::string format_fixed(double value, int digits = 6) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.*f", digits, value);
  return buffer;
}

struct NetworkSource {
  enum class Kind { preset, kronecker, forest_fire, uniform, file };
  Kind kind = Kind::preset;
  std::string preset = "core-periphery";
  KroneckerParams kronecker;
  ForestFireParams forest_fire;
  NodeId uniform_nodes = 0;
  std::size_t uniform_edges = 0;
  std::string path;
  bool file_directed = true;
};

inline std::vector<double> default_sampling_rates() {
  std::vector<double> rates;
  for (int i = 1; i <= 10; ++i) rates.push_back(i / 10.0);
  return rates;
}

struct ExperimentConfig {
  std::string network_name;  // row label; defaults from the source
  NetworkSource source;
  double transmission_probability = std::numeric_limits<double>::quiet_NaN();
  double target_coverage = 0.5;
  std::size_t max_cascades = 0;
  bool allow_partial_coverage = false;
  std::vector<double> rates = default_sampling_rates();
  std::vector<Approach> approaches{Approach::sbs, Approach::dbs};
  std::vector<Technique> techniques{Technique::bfs, Technique::rw};
  std::vector<Characteristic> characteristics{
      Characteristic::seed, Characteristic::link_attendance, Characteristic::depth};
  unsigned repetitions = 30;
  std::uint64_t master_seed = 1;
  bool fresh_diffusion_per_rep = true;
  SampleAverage sample_side_average = SampleAverage::reference_elements;
  bool sbs_nodes_include_explored = false;
  double rw_restart = 0.15;
  unsigned workers = 0;  // 0 = hardware concurrency
  std::string out_dir = "out";

  void validate() const {
    if (repetitions < 1) throw std::invalid_argument("ExperimentConfig: repetitions must be >= 1");
    if (rates.empty()) throw std::invalid_argument("ExperimentConfig: empty sampling-rate sweep");
    for (std::size_t i = 0; i < rates.size(); ++i) {
      if (!(rates[i] > 0.0 && rates[i] <= 1.0))
        throw std::invalid_argument("ExperimentConfig: sampling rates must be in (0,1]");
      if (i > 0 && !(rates[i] > rates[i - 1]))
        throw std::invalid_argument("ExperimentConfig: sampling rates must be strictly increasing");
    }
    if (approaches.empty() || techniques.empty() || characteristics.empty())
      throw std::invalid_argument("ExperimentConfig: approaches, techniques and characteristics must be nonempty");
  }
};

struct AccuracyRow {
  std::string network;
  Approach approach = Approach::sbs;
  Technique technique = Technique::bfs;
  Characteristic characteristic = Characteristic::seed;
  double mu = 0.0;
  unsigned run = 0;
  double lambda = 0.0;
  bool undefined = false;
  std::size_t budget = 0;  // crawl budget (pre-extraction for SBS)
  std::string flags;       // extra semicolon-joined tokens
};

struct AccuracyReport {
  std::vector<AccuracyRow> rows;

  void merge(AccuracyReport&& other) {
    rows.insert(rows.end(), std::make_move_iterator(other.rows.begin()),
                std::make_move_iterator(other.rows.end()));
  }
};

namespace detail {

enum : std::uint64_t { salt_network = 1, salt_diffusion = 2, salt_cell = 3 };

inline void parallel_for(std::size_t count, unsigned workers,
                         const std::function<void(std::size_t)>& body) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, count));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (failure) std::rethrow_exception(failure);
}

inline std::string join_flags(std::initializer_list<std::string_view> tokens) {
  std::string out;
  for (std::string_view t : tokens) {
    if (t.empty()) continue;
    if (!out.empty()) out += ';';
    out += t;
  }
  return out;
}

}  // namespace detail

struct ResolvedNetwork {
  std::string name;
  Graph graph;
  double default_transmission = std::numeric_limits<double>::quiet_NaN();
};

inline ResolvedNetwork resolve_network(const NetworkSource& source,
                                       std::uint64_t master_seed) {
  Rng rng(derive_seed(master_seed, {detail::salt_network}));
  switch (source.kind) {
    case NetworkSource::Kind::preset: {
      const NetworkPreset* preset = find_preset(source.preset);
      if (!preset) throw ParseError("unknown network preset: " + source.preset);
      return {std::string(preset->name), generate_preset(*preset, rng),
              preset->transmission_probability};
    }
    case NetworkSource::Kind::kronecker:
      return {"kronecker", kronecker_generate(source.kronecker, rng), {}};
    case NetworkSource::Kind::forest_fire:
      return {"forest-fire", forest_fire_generate(source.forest_fire, rng), {}};
    case NetworkSource::Kind::uniform:
      return {"uniform", uniform_random_graph(source.uniform_nodes, source.uniform_edges, rng), {}};
    case NetworkSource::Kind::file:
    default: {
      EdgeListLoad load = load_edge_list_file(source.path, source.file_directed);
      std::string name = std::filesystem::path(source.path).stem().string();
      return {name.empty() ? "network" : name, std::move(load.graph), {}};
    }
  }
}

// Runs the full sweep over one pre-built network. Each repetition gets its
// own diffusion network (configurable); every (approach, technique, rate,
// repetition) cell gets an RNG stream derived from the master seed and its
// indices, so results are independent of scheduling and worker count.
inline AccuracyReport run_experiment(const ExperimentConfig& cfg, const Graph& network) {
  cfg.validate();
  const double transmission = cfg.transmission_probability;
  if (std::isnan(transmission))
    throw std::invalid_argument("run_experiment: transmission probability not set");
  const std::string network_name = cfg.network_name.empty() ? "network" : cfg.network_name;

  DiffusionConfig diffusion_cfg;
  diffusion_cfg.transmission_probability = transmission;
  diffusion_cfg.target_coverage = cfg.target_coverage;
  diffusion_cfg.max_cascades = cfg.max_cascades;
  diffusion_cfg.allow_partial = cfg.allow_partial_coverage;

  const std::size_t diffusion_count = cfg.fresh_diffusion_per_rep ? cfg.repetitions : 1;
  std::vector<DiffusionNetwork> diffusion(diffusion_count);
  detail::parallel_for(diffusion_count, cfg.workers, [&](std::size_t r) {
    Rng rng(derive_seed(cfg.master_seed, {detail::salt_diffusion, r}));
    diffusion[r] = build_diffusion_network(network, diffusion_cfg, rng);
  });
  std::vector<CharacteristicEvaluator> evaluators;
  evaluators.reserve(diffusion_count);
  for (const DiffusionNetwork& dn : diffusion) evaluators.emplace_back(dn);

  const std::size_t cells = cfg.approaches.size() * cfg.techniques.size() *
                            cfg.rates.size() * cfg.repetitions;
  AccuracyReport report;
  report.rows.resize(cells * cfg.characteristics.size());
  EvalOptions eval_options{cfg.sample_side_average, cfg.sbs_nodes_include_explored};

  detail::parallel_for(cells, cfg.workers, [&](std::size_t cell) {
    std::size_t rest = cell;
    const unsigned rep = static_cast<unsigned>(rest % cfg.repetitions);
    rest /= cfg.repetitions;
    const std::size_t rate_index = rest % cfg.rates.size();
    rest /= cfg.rates.size();
    const std::size_t technique_index = rest % cfg.techniques.size();
    const std::size_t approach_index = rest / cfg.techniques.size();

    const Approach approach = cfg.approaches[approach_index];
    const Technique technique = cfg.techniques[technique_index];
    const double rate = cfg.rates[rate_index];
    const std::size_t dn_index = cfg.fresh_diffusion_per_rep ? rep : 0;
    const DiffusionNetwork& dn = diffusion[dn_index];

    SampleSpec spec;
    spec.approach = approach;
    spec.technique = technique;
    spec.rate = rate;
    spec.restart_probability = cfg.rw_restart;
    spec.rng_seed = derive_seed(
        cfg.master_seed,
        {detail::salt_cell, approach_index, technique_index, rate_index, rep});
    Rng rng(spec.rng_seed);

    std::optional<SampledNetwork> sample;
    std::string_view sample_error;
    if (dn.diffusion_edges().empty()) {
      sample_error = "empty_diffusion_network";
    } else {
      try {
        sample = approach == Approach::dbs ? sample_dbs(dn, spec, rng)
                                           : sample_sbs(network, dn, spec, rng);
      } catch (const std::domain_error&) {
        sample_error = "sampling_error";  // e.g. the budget rounds to zero
      }
    }

    for (std::size_t ci = 0; ci < cfg.characteristics.size(); ++ci) {
      AccuracyRow row;
      row.network = network_name;
      row.approach = approach;
      row.technique = technique;
      row.characteristic = cfg.characteristics[ci];
      row.mu = rate;
      row.run = rep;
      if (sample) {
        CharacteristicResult result =
            evaluators[dn_index].evaluate(*sample, cfg.characteristics[ci], eval_options);
        row.lambda = result.lambda;
        row.undefined = result.undefined;
        row.budget = sample->budget;
        row.flags = detail::join_flags(
            {result.flag, sample->exhausted ? "exhausted" : "",
             dn.shortfall() ? "partial_coverage" : ""});
      } else {
        row.lambda = std::numeric_limits<double>::quiet_NaN();
        row.undefined = true;
        row.budget = 0;
        row.flags = detail::join_flags(
            {sample_error, dn.shortfall() ? "partial_coverage" : ""});
      }
      report.rows[cell * cfg.characteristics.size() + ci] = std::move(row);
    }
  });
  return report;
}

inline AccuracyReport run_experiment(const ExperimentConfig& cfg) {
  ResolvedNetwork resolved = resolve_network(cfg.source, cfg.master_seed);
  ExperimentConfig effective = cfg;
  if (effective.network_name.empty()) effective.network_name = resolved.name;
  if (std::isnan(effective.transmission_probability))
    effective.transmission_probability = resolved.default_transmission;
  return run_experiment(effective, resolved.graph);
}

// --- CSV ---------------------------------------------------------------------

inline void emit_csv(const AccuracyReport& report, std::ostream& out) {
  std::vector<const AccuracyRow*> ordered;
  ordered.reserve(report.rows.size());
  for (const AccuracyRow& row : report.rows) ordered.push_back(&row);
  std::sort(ordered.begin(), ordered.end(), [](const AccuracyRow* a, const AccuracyRow* b) {
    auto key = [](const AccuracyRow& r) {
      return std::make_tuple(std::string_view(r.network), to_string(r.approach),
                             to_string(r.technique), to_string(r.characteristic),
                             r.mu, r.run);
    };
    return key(*a) < key(*b);
  });

  out << "network,approach,technique,characteristic,mu,run,lambda,flags\n";
  for (const AccuracyRow* row : ordered) {
    out << row->network << ',' << to_string(row->approach) << ','
        << to_string(row->technique) << ',' << to_string(row->characteristic) << ','
        << format_fixed(row->mu) << ',' << row->run << ','
        << (row->undefined ? "nan" : format_fixed(row->lambda)) << ','
        << "budget:" << row->budget;
    if (!row->flags.empty()) out << ';' << row->flags;
    out << '\n';
  }
}

// --- plot data ---------------------------------------------------------------

// One block per (approach, technique, characteristic): lines of
// "mu mean_lambda stderr n" over the defined rows, blank-line separated.
inline void emit_plot_data(const AccuracyReport& report, std::ostream& out) {
  std::map<std::string, std::map<double, std::vector<double>>> series;
  for (const AccuracyRow& row : report.rows) {
    if (row.undefined) continue;
    std::string key = row.network + " approach=" + std::string(to_string(row.approach)) +
                      " technique=" + std::string(to_string(row.technique)) +
                      " characteristic=" + std::string(to_string(row.characteristic));
    series[key][row.mu].push_back(row.lambda);
  }
  bool first = true;
  for (const auto& [key, by_rate] : series) {
    if (!first) out << '\n';
    first = false;
    out << "# network=" << key << '\n';
    out << "# mu mean_lambda stderr n\n";
    for (const auto& [rate, values] : by_rate) {
      double sum = 0.0;
      for (double v : values) sum += v;
      double mean = sum / static_cast<double>(values.size());
      double stderr_value = 0.0;
      if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - mean) * (v - mean);
        stderr_value = std::sqrt(ss / static_cast<double>(values.size() - 1)) /
                       std::sqrt(static_cast<double>(values.size()));
      }
      out << format_fixed(rate) << ' ' << format_fixed(mean) << ' '
          << format_fixed(stderr_value) << ' ' << values.size() << '\n';
    }
  }
}

// --- range summary -----------------------------------------------------------

struct RangeSummary {
  struct Bucket {
    Bucket(std::string_view bucket_name, double lo, double hi)
        : name(bucket_name), mu_min(lo), mu_max(hi) {}
    std::string_view name;
    double mu_min;  // exclusive
    double mu_max;  // inclusive
    std::size_t defined_rows = 0;
    std::optional<double> mean_by_approach_technique[2][2];  // [approach][technique]
    std::optional<double> mean_by_approach[2];
    std::optional<double> mean_by_technique[2];
    std::optional<double> dbs_minus_sbs;
    std::optional<double> rw_minus_bfs;
  };
  std::array<Bucket, 3> buckets{Bucket{"low", 0.0, 0.3}, Bucket{"medium", 0.3, 0.6},
                                Bucket{"high", 0.6, 1.0}};
};

inline std::size_t range_bucket_index(double mu) {
  constexpr double eps = 1e-9;
  if (mu <= 0.3 + eps) return 0;
  if (mu <= 0.6 + eps) return 1;
  return 2;
}

// Mean accuracy per sampling-rate range per (approach, technique), over all
// networks and characteristics in the report, plus approach and technique
// mean differences per range. Undefined rows are excluded from the means.
inline RangeSummary range_summary(const AccuracyReport& report) {
  if (report.rows.empty()) throw std::invalid_argument("range_summary: empty report");
  double sum[3][2][2] = {};
  std::size_t count[3][2][2] = {};
  for (const AccuracyRow& row : report.rows) {
    if (row.undefined) continue;
    std::size_t b = range_bucket_index(row.mu);
    std::size_t a = row.approach == Approach::sbs ? 0 : 1;
    std::size_t t = row.technique == Technique::bfs ? 0 : 1;
    sum[b][a][t] += row.lambda;
    ++count[b][a][t];
  }
  RangeSummary summary;
  for (std::size_t b = 0; b < 3; ++b) {
    auto& bucket = summary.buckets[b];
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t t = 0; t < 2; ++t) {
        bucket.defined_rows += count[b][a][t];
        if (count[b][a][t])
          bucket.mean_by_approach_technique[a][t] =
              sum[b][a][t] / static_cast<double>(count[b][a][t]);
      }
    for (std::size_t a = 0; a < 2; ++a) {
      double s = sum[b][a][0] + sum[b][a][1];
      std::size_t c = count[b][a][0] + count[b][a][1];
      if (c) bucket.mean_by_approach[a] = s / static_cast<double>(c);
    }
    for (std::size_t t = 0; t < 2; ++t) {
      double s = sum[b][0][t] + sum[b][1][t];
      std::size_t c = count[b][0][t] + count[b][1][t];
      if (c) bucket.mean_by_technique[t] = s / static_cast<double>(c);
    }
    if (bucket.mean_by_approach[0] && bucket.mean_by_approach[1])
      bucket.dbs_minus_sbs = *bucket.mean_by_approach[1] - *bucket.mean_by_approach[0];
    if (bucket.mean_by_technique[0] && bucket.mean_by_technique[1])
      bucket.rw_minus_bfs = *bucket.mean_by_technique[1] - *bucket.mean_by_technique[0];
  }
  return summary;
}

inline void write_range_summary(std::ostream& out, const RangeSummary& summary) {
  constexpr std::string_view approach_names[2] = {"SBS", "DBS"};
  constexpr std::string_view technique_names[2] = {"BFS", "RW"};
  for (const auto& bucket : summary.buckets) {
    out << "range=" << bucket.name << " mu_min=" << format_fixed(bucket.mu_min)
        << " mu_max=" << format_fixed(bucket.mu_max)
        << " rows=" << bucket.defined_rows;
    if (bucket.defined_rows == 0) out << " flag=empty";
    out << '\n';
    for (std::size_t a = 0; a < 2; ++a)
      for (std::size_t t = 0; t < 2; ++t)
        if (bucket.mean_by_approach_technique[a][t])
          out << "range=" << bucket.name << " approach=" << approach_names[a]
              << " technique=" << technique_names[t] << " mean_lambda="
              << format_fixed(*bucket.mean_by_approach_technique[a][t]) << '\n';
    if (bucket.dbs_minus_sbs)
      out << "range=" << bucket.name
          << " dbs_minus_sbs=" << format_fixed(*bucket.dbs_minus_sbs) << '\n';
    if (bucket.rw_minus_bfs)
      out << "range=" << bucket.name
          << " rw_minus_bfs=" << format_fixed(*bucket.rw_minus_bfs) << '\n';
  }
}

inline void write_experiment_outputs(const AccuracyReport& report,
                                     const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  auto open = [&](const char* file) {
    std::ofstream out(std::filesystem::path(out_dir) / file);
    if (!out) throw Error(std::string("cannot write output file: ") + file);
    return out;
  };
  {
    auto out = open("results.csv");
    emit_csv(report, out);
  }
  {
    auto out = open("plot_data.txt");
    emit_plot_data(report, out);
  }
  {
    auto out = open("range_summary.txt");
    write_range_summary(out, range_summary(report));
  }
}

// --- config files ------------------------------------------------------------

// Plain-text key=value configuration with [section] headers. '#' starts a
// comment. Every key mirrors a CLI flag; unknown keys are errors.
inline ExperimentConfig parse_experiment_config(std::istream& in) {
  ExperimentConfig cfg;
  std::string line;
  std::string section;
  std::size_t line_no = 0;

  auto parse_double = [&](const std::string& value) {
    try {
      std::size_t used = 0;
      double v = std::stod(value, &used);
      if (used != value.size()) throw std::invalid_argument(value);
      return v;
    } catch (const std::exception&) {
      throw ParseError("bad number: " + value, line_no);
    }
  };
  auto parse_u64 = [&](const std::string& value) {
    std::uint64_t v = 0;
    if (!detail::parse_u64(value, v)) throw ParseError("bad integer: " + value, line_no);
    return v;
  };
  auto parse_bool = [&](const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ParseError("bad boolean: " + value, line_no);
  };
  auto split_list = [](const std::string& value) {
    std::vector<std::string> parts;
    std::string item;
    std::istringstream stream(value);
    while (std::getline(stream, item, ','))
      if (auto t = detail::trim(item); !t.empty()) parts.emplace_back(t);
    return parts;
  };

  while (std::getline(in, line)) {
    ++line_no;
    std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError("unterminated section header", line_no);
      section = std::string(detail::trim(body.substr(1, body.size() - 2)));
      continue;
    }
    auto eq = body.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key=value", line_no);
    std::string key(detail::trim(body.substr(0, eq)));
    std::string value(detail::trim(body.substr(eq + 1)));

    if (section == "network") {
      if (key == "name") {
        cfg.network_name = value;
      } else if (key == "preset") {
        cfg.source.kind = NetworkSource::Kind::preset;
        cfg.source.preset = value;
      } else if (key == "file") {
        cfg.source.kind = NetworkSource::Kind::file;
        cfg.source.path = value;
      } else if (key == "directed") {
        cfg.source.file_directed = parse_bool(value);
      } else if (key == "model") {
        if (value == "kronecker") cfg.source.kind = NetworkSource::Kind::kronecker;
        else if (value == "forest-fire") cfg.source.kind = NetworkSource::Kind::forest_fire;
        else if (value == "uniform") cfg.source.kind = NetworkSource::Kind::uniform;
        else throw ParseError("unknown model: " + value, line_no);
      } else if (key == "matrix") {
        auto parts = split_list(value);
        if (parts.size() != 4) throw ParseError("matrix needs four entries", line_no);
        for (int i = 0; i < 4; ++i) cfg.source.kronecker.initiator[i] = parse_double(parts[i]);
      } else if (key == "levels") {
        cfg.source.kronecker.levels = static_cast<unsigned>(parse_u64(value));
      } else if (key == "edges") {
        cfg.source.kronecker.target_edges = parse_u64(value);
        cfg.source.uniform_edges = cfg.source.kronecker.target_edges;
      } else if (key == "nodes") {
        cfg.source.forest_fire.target_nodes = static_cast<NodeId>(parse_u64(value));
        cfg.source.uniform_nodes = cfg.source.forest_fire.target_nodes;
      } else if (key == "forward") {
        cfg.source.forest_fire.forward_prob = parse_double(value);
      } else if (key == "backward") {
        cfg.source.forest_fire.backward_ratio = parse_double(value);
      } else if (key == "ambassadors") {
        cfg.source.forest_fire.ambassadors = static_cast<unsigned>(parse_u64(value));
      } else if (key == "start_cycle") {
        cfg.source.forest_fire.start_cycle = parse_u64(value);
      } else {
        throw ParseError("unknown key network." + key, line_no);
      }
    } else if (section == "diffusion") {
      if (key == "beta") cfg.transmission_probability = parse_double(value);
      else if (key == "delta") cfg.target_coverage = parse_double(value);
      else if (key == "max_cascades") cfg.max_cascades = parse_u64(value);
      else if (key == "allow_partial") cfg.allow_partial_coverage = parse_bool(value);
      else throw ParseError("unknown key diffusion." + key, line_no);
    } else if (section == "sampling") {
      if (key == "mu") {
        cfg.rates.clear();
        for (const std::string& part : split_list(value)) cfg.rates.push_back(parse_double(part));
      } else if (key == "approaches") {
        cfg.approaches.clear();
        for (const std::string& part : split_list(value)) {
          auto a = parse_approach(part);
          if (!a) throw ParseError("unknown approach: " + part, line_no);
          cfg.approaches.push_back(*a);
        }
      } else if (key == "techniques") {
        cfg.techniques.clear();
        for (const std::string& part : split_list(value)) {
          auto t = parse_technique(part);
          if (!t) throw ParseError("unknown technique: " + part, line_no);
          cfg.techniques.push_back(*t);
        }
      } else if (key == "rw_restart") {
        cfg.rw_restart = parse_double(value);
      } else if (key == "sample_side_average") {
        if (value == "reference") cfg.sample_side_average = SampleAverage::reference_elements;
        else if (value == "sample") cfg.sample_side_average = SampleAverage::sample_elements;
        else throw ParseError("unknown sample_side_average: " + value, line_no);
      } else if (key == "sbs_nodes_include_explored") {
        cfg.sbs_nodes_include_explored = parse_bool(value);
      } else {
        throw ParseError("unknown key sampling." + key, line_no);
      }
    } else if (section == "experiment") {
      if (key == "characteristics") {
        cfg.characteristics.clear();
        for (const std::string& part : split_list(value)) {
          auto c = parse_characteristic(part);
          if (!c) throw ParseError("unknown characteristic: " + part, line_no);
          cfg.characteristics.push_back(*c);
        }
      } else if (key == "repetitions") {
        cfg.repetitions = static_cast<unsigned>(parse_u64(value));
      } else if (key == "master_seed") {
        cfg.master_seed = parse_u64(value);
      } else if (key == "workers") {
        cfg.workers = static_cast<unsigned>(parse_u64(value));
      } else if (key == "out_dir") {
        cfg.out_dir = value;
      } else if (key == "fresh_diffusion_per_rep") {
        cfg.fresh_diffusion_per_rep = parse_bool(value);
      } else {
        throw ParseError("unknown key experiment." + key, line_no);
      }
    } else {
      throw ParseError("key outside a known section: " + key, line_no);
    }
  }
  return cfg;
}

inline ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config: " + path);
  return parse_experiment_config(in);
}

}  // namespace diffsample
