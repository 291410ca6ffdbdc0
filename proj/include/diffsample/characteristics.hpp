#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "diffsample/diffusion.hpp"
#include "diffsample/errors.hpp"
#include "diffsample/graph.hpp"
#include "diffsample/sampling.hpp"

namespace diffsample {

enum class Characteristic { seed, link_attendance, depth };

inline std::string_view to_string(Characteristic c) {
  switch (c) {
    case Characteristic::seed: return "seed";
    case Characteristic::link_attendance: return "link_attendance";
    default: return "depth";
  }
}

inline std::optional<Characteristic> parse_characteristic(std::string_view s) {
  if (s == "seed") return Characteristic::seed;
  if (s == "link_attendance" || s == "link-attendance")
    return Characteristic::link_attendance;
  if (s == "depth") return Characteristic::depth;
  return std::nullopt;
}

// Mean of a measurement function over an element set.
template <class Range, class F>
double average_measure(const Range& elements, F&& f) {
  std::size_t count = 0;
  double sum = 0.0;
  for (const auto& e : elements) {
    sum += static_cast<double>(f(e));
    ++count;
  }
  if (count == 0) throw UndefinedAverageError("average over an empty element set");
  return sum / static_cast<double>(count);
}

// Per-edge cascade membership: which cascades each diffusion edge appears in.
class AttendanceIndex {
 public:
  static AttendanceIndex build(std::span<const Cascade> cascades) {
    AttendanceIndex index;
    for (const Cascade& c : cascades)
      for (const Edge& e : c.infection_vector)
        index.map_[edge_key(e)].push_back(c.id);
    for (auto& [key, ids] : index.map_) std::sort(ids.begin(), ids.end());
    return index;
  }

  std::span<const std::uint32_t> cascades_of(Edge e) const {
    auto it = map_.find(edge_key(e));
    if (it == map_.end()) return {};
    return it->second;
  }

  std::size_t attendance(Edge e) const { return cascades_of(e).size(); }

  const std::unordered_map<std::uint64_t, std::vector<std::uint32_t>>& entries() const {
    return map_;
  }

 private:
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> map_;
};

// Fraction of the given nodes that seeded a cascade; true_seeds must be sorted.
inline double seed_measure(std::span<const NodeId> nodes,
                           std::span<const NodeId> true_seeds) {
  return average_measure(nodes, [&](NodeId u) {
    return std::binary_search(true_seeds.begin(), true_seeds.end(), u) ? 1.0 : 0.0;
  });
}

// Mean cascade attendance over the given edges; edges in no cascade count 0.
inline double link_attendance_measure(std::span<const Edge> edges,
                                      const AttendanceIndex& index) {
  return average_measure(edges, [&](const Edge& e) {
    return static_cast<double>(index.attendance(e));
  });
}

using EdgeKeySet = std::unordered_set<std::uint64_t>;

inline EdgeKeySet make_edge_key_set(std::span<const Edge> edges) {
  EdgeKeySet keys;
  keys.reserve(edges.size() * 2);
  for (const Edge& e : edges) keys.insert(edge_key(e));
  return keys;
}

// Mean cascade length. With a restriction set, each cascade contributes the
// number of its infection-vector edges inside the set, and cascades left with
// no edges are excluded from the average rather than counted as zero.
inline double depth_measure(std::span<const Cascade> cascades,
                            const EdgeKeySet* restricted_to = nullptr) {
  std::size_t count = 0;
  std::uint64_t total = 0;
  for (const Cascade& c : cascades) {
    std::size_t length = 0;
    if (restricted_to == nullptr) {
      length = c.infection_vector.size();
    } else {
      for (const Edge& e : c.infection_vector)
        if (restricted_to->contains(edge_key(e))) ++length;
    }
    if (length == 0) continue;
    total += length;
    ++count;
  }
  if (count == 0) throw UndefinedAverageError("no cascade survives the restriction");
  return static_cast<double>(total) / static_cast<double>(count);
}

// Accuracy of a sampled average against the reference average:
// 1 - |reference - sample| / reference. Unclamped, so over-representation
// can push it negative.
inline double accuracy(double reference_average, double sample_average) {
  if (!(reference_average > 0.0))
    throw std::domain_error("accuracy: reference average must be positive");
  return 1.0 - std::abs(reference_average - sample_average) / reference_average;
}

struct CharacteristicResult {
  Characteristic characteristic = Characteristic::seed;
  double reference_value = 0.0;
  double sample_value = 0.0;
  double lambda = 0.0;
  bool undefined = false;
  std::string_view flag;  // reason when undefined
};

// How the sample-side average of the node- and link-based characteristics is
// normalized.
//
// reference_elements keeps the diffusion network's element count as the
// denominator, so lambda reads as the share of the characteristic's mass the
// sample captured (the fraction of true seeds found, the attendance mass
// covered). This makes accuracy scale with how much of the diffusion
// structure a sample actually collects, which is the comparison the approach
// gap is about, and it is the default.
//
// sample_elements averages over the sample's own elements instead, measuring
// how well the sampled elements estimate the reference average regardless of
// sample size; over-representation can push lambda negative in this mode.
//
// The cascade-based depth characteristic is always the mean length of the
// cascades the sample observes (cascades with no sampled edge are excluded),
// since a cascade is either observed or not; normalizing its length sum by
// the full cascade count would collapse depth into the link-attendance mass
// ratio.
enum class SampleAverage { reference_elements, sample_elements };

struct EvalOptions {
  SampleAverage sample_average = SampleAverage::reference_elements;
  // Measure the seed characteristic over every crawled node, not just
  // endpoints of retained diffusion edges (SBS pre-extraction node set).
  bool seed_over_explored_nodes = false;
};

// Evaluates samples against one diffusion network. Reference averages and
// the attendance index are computed once at construction.
class CharacteristicEvaluator {
 public:
  explicit CharacteristicEvaluator(const DiffusionNetwork& dn)
      : dn_(&dn), attendance_(AttendanceIndex::build(dn.cascades())) {
    if (!dn.diffusion_nodes().empty())
      reference_seed_ = seed_measure(dn.diffusion_nodes(), dn.seed_nodes());
    if (!dn.diffusion_edges().empty())
      reference_attendance_ = link_attendance_measure(dn.diffusion_edges(), attendance_);
    if (!dn.cascades().empty()) reference_depth_ = depth_measure(dn.cascades());
  }

  const AttendanceIndex& attendance() const { return attendance_; }

  std::optional<double> reference_value(Characteristic c) const {
    switch (c) {
      case Characteristic::seed: return reference_seed_;
      case Characteristic::link_attendance: return reference_attendance_;
      default: return reference_depth_;
    }
  }

  CharacteristicResult evaluate(const SampledNetwork& sample, Characteristic c,
                                const EvalOptions& options = {}) const {
    CharacteristicResult result;
    result.characteristic = c;
    auto reference = reference_value(c);
    if (!reference) return undefined(result, "reference_empty");
    result.reference_value = *reference;
    if (!(*reference > 0.0)) return undefined(result, "reference_zero");

    const bool over_reference = options.sample_average == SampleAverage::reference_elements;
    switch (c) {
      case Characteristic::seed: {
        std::span<const NodeId> nodes =
            options.seed_over_explored_nodes ? std::span<const NodeId>(sample.explored_nodes)
                                             : std::span<const NodeId>(sample.nodes);
        if (nodes.empty()) return undefined(result, "empty_sample");
        if (over_reference) {
          std::size_t found = 0;
          for (NodeId u : nodes)
            if (std::binary_search(dn_->seed_nodes().begin(), dn_->seed_nodes().end(), u))
              ++found;
          result.sample_value =
              static_cast<double>(found) / static_cast<double>(dn_->diffusion_nodes().size());
        } else {
          result.sample_value = seed_measure(nodes, dn_->seed_nodes());
        }
        break;
      }
      case Characteristic::link_attendance: {
        if (sample.edges.empty()) return undefined(result, "empty_sample");
        if (over_reference) {
          std::uint64_t mass = 0;
          for (const Edge& e : sample.edges) mass += attendance_.attendance(e);
          result.sample_value =
              static_cast<double>(mass) / static_cast<double>(dn_->diffusion_edges().size());
        } else {
          result.sample_value = link_attendance_measure(sample.edges, attendance_);
        }
        break;
      }
      case Characteristic::depth: {
        EdgeKeySet keys = make_edge_key_set(sample.edges);
        std::size_t surviving = 0;
        for (const Cascade& cascade : dn_->cascades())
          for (const Edge& e : cascade.infection_vector)
            if (keys.contains(edge_key(e))) {
              ++surviving;
              break;
            }
        if (surviving == 0) return undefined(result, "empty_sample");
        result.sample_value = depth_measure(dn_->cascades(), &keys);
        break;
      }
    }
    result.lambda = accuracy(result.reference_value, result.sample_value);
    return result;
  }

 private:
  static CharacteristicResult undefined(CharacteristicResult result, std::string_view flag) {
    result.undefined = true;
    result.flag = flag;
    result.lambda = std::numeric_limits<double>::quiet_NaN();
    return result;
  }

  const DiffusionNetwork* dn_;
  AttendanceIndex attendance_;
  std::optional<double> reference_seed_;
  std::optional<double> reference_attendance_;
  std::optional<double> reference_depth_;
};

inline CharacteristicResult evaluate(const DiffusionNetwork& dn,
                                     const SampledNetwork& sample, Characteristic c,
                                     const EvalOptions& options = {}) {
  return CharacteristicEvaluator(dn).evaluate(sample, c, options);
}

}  // namespace diffsample
