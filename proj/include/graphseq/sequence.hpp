#pragma once

// Graph sequences over an index window: tower-backed, explicit lists, or
// seeded generator families.

#include <graphseq/generators.hpp>
#include <graphseq/graph.hpp>
#include <graphseq/parallel.hpp>
#include <graphseq/towers.hpp>

#include <json.hpp>

#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphseq {

class SequenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses "lo:hi" (inclusive) or a comma list "3,5,7,13".
inline std::vector<std::int64_t> parse_window(const std::string& text) {
  std::vector<std::int64_t> out;
  auto number = [&](const std::string& s) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != s.size()) throw SequenceError("bad window entry '" + s + "'");
    return v;
  };
  if (auto colon = text.find(':'); colon != std::string::npos) {
    const auto lo = number(text.substr(0, colon)), hi = number(text.substr(colon + 1));
    if (hi < lo) throw SequenceError("empty window '" + text + "'");
    for (auto n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(number(item));
  if (out.empty()) throw SequenceError("empty window");
  return out;
}

/// Generator families selectable by name. Parameters are read from a JSON
/// object (degree, girth, seed, max_degree, extra).
inline std::vector<std::string> generator_family_names() {
  return {"cycles", "paths", "complete", "stars", "edgeless", "random-tree", "random-regular",
          "random-connected"};
}

class GraphSequence {
 public:
  enum class Kind { Tower, Explicit, Generator };

  static GraphSequence from_tower(TowerSpec tower, std::vector<std::int64_t> window) {
    GraphSequence s;
    s.kind_ = Kind::Tower;
    s.family_ = tower.family_name;
    s.params_ = tower.params;
    s.window_ = std::move(window);
    s.tower_ = std::move(tower);
    return s;
  }

  static GraphSequence from_graphs(std::string name, std::vector<Graph> graphs,
                                   std::vector<std::int64_t> window = {}) {
    if (window.empty())
      for (std::size_t i = 0; i < graphs.size(); ++i) window.push_back(static_cast<std::int64_t>(i));
    if (window.size() != graphs.size()) throw SequenceError("window and graph list differ in length");
    GraphSequence s;
    s.kind_ = Kind::Explicit;
    s.family_ = std::move(name);
    s.window_ = std::move(window);
    s.explicit_ = std::move(graphs);
    return s;
  }

  static GraphSequence from_generator(const std::string& family, nlohmann::json params,
                                      std::vector<std::int64_t> window) {
    const auto names = generator_family_names();
    if (std::find(names.begin(), names.end(), family) == names.end())
      throw SequenceError("unknown generator family '" + family + "'");
    if (params.is_null()) params = nlohmann::json::object();
    GraphSequence s;
    s.kind_ = Kind::Generator;
    s.family_ = family;
    s.params_ = std::move(params);
    s.window_ = std::move(window);
    return s;
  }

  /// A preset tower name or a generator family name.
  static GraphSequence from_family(const std::string& family, nlohmann::json params,
                                   std::vector<std::int64_t> window) {
    const auto towers = preset_tower_names();
    if (std::find(towers.begin(), towers.end(), family) != towers.end()) {
      auto t = preset_tower(family);
      if (!params.is_null()) t.params = params;
      return from_tower(std::move(t), std::move(window));
    }
    return from_generator(family, std::move(params), std::move(window));
  }

  Kind kind() const { return kind_; }
  const std::string& family() const { return family_; }
  const std::vector<std::int64_t>& window() const { return window_; }
  std::size_t size() const { return window_.size(); }
  const std::optional<TowerSpec>& tower() const { return tower_; }

  /// Generates every graph (concurrently when jobs > 1) and checks the
  /// sequence conditions.
  void materialize(std::size_t jobs = 1) {
    if (window_.empty()) throw SequenceError("empty index window");
    if (materialized_) return;
    graphs_.assign(window_.size(), Graph{});
    if (kind_ == Kind::Tower) cayley_.assign(window_.size(), CayleyGraph{});
    parallel_for(jobs, window_.size(), [&](std::size_t i) {
      if (kind_ == Kind::Tower) {
        cayley_[i] = cayley_graph(*tower_, window_[i]);
        graphs_[i] = cayley_[i].graph;
      } else if (kind_ == Kind::Explicit) {
        graphs_[i] = explicit_[i];
      } else {
        graphs_[i] = generate(window_[i]);
      }
    });
    for (std::size_t i = 1; i < graphs_.size(); ++i)
      if (graphs_[i].vertex_count() <= graphs_[i - 1].vertex_count())
        throw SequenceError("vertex counts must strictly increase: n=" + std::to_string(window_[i - 1]) +
                            " has " + std::to_string(graphs_[i - 1].vertex_count()) + ", n=" +
                            std::to_string(window_[i]) + " has " +
                            std::to_string(graphs_[i].vertex_count()));
    degree_bound_ = 0;
    for (const auto& g : graphs_) degree_bound_ = std::max(degree_bound_, g.max_degree());
    if (params_.contains("degree_bound") && degree_bound_ > params_.at("degree_bound").get<std::uint32_t>())
      throw SequenceError("a graph exceeds the declared degree bound");
    materialized_ = true;
  }

  const Graph& graph(std::size_t i) const {
    require();
    return graphs_.at(i);
  }
  const std::vector<Graph>& graphs() const {
    require();
    return graphs_;
  }
  /// Cayley labels of tower-backed sequences; used as vertex coordinates.
  const CayleyGraph& cayley(std::size_t i) const {
    require();
    if (kind_ != Kind::Tower) throw SequenceError("sequence is not tower-backed");
    return cayley_.at(i);
  }
  std::uint32_t degree_bound() const {
    require();
    return degree_bound_;
  }

  nlohmann::json describe() const {
    const char* kind = kind_ == Kind::Tower ? "tower" : kind_ == Kind::Explicit ? "explicit" : "generator";
    nlohmann::json j{{"family", family_}, {"kind", kind}, {"window", window_}, {"params", params_}};
    if (tower_) j["tower"] = tower_to_json(*tower_);
    return j;
  }

 private:
  void require() const {
    if (!materialized_) throw SequenceError("sequence not materialized");
  }

  std::uint64_t seed_for(std::int64_t n) const {
    const auto base = params_.value("seed", std::uint64_t{1});
    return base * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(n);
  }

  Graph generate(std::int64_t n) const {
    if (n < 0) throw SequenceError("negative index");
    const auto size = static_cast<std::size_t>(n);
    if (family_ == "cycles") return cycle_graph(size);
    if (family_ == "paths") return path_graph(size);
    if (family_ == "complete") return complete_graph(size);
    if (family_ == "stars") return star_graph(size);
    if (family_ == "edgeless") return Graph::build(size, {});
    if (family_ == "random-tree") return random_tree(size, seed_for(n));
    if (family_ == "random-regular")
      return random_regular_girth(size, params_.value("degree", 3u), params_.value("girth", 3u), seed_for(n));
    if (family_ == "random-connected")
      return random_connected_graph(size, params_.value("max_degree", 4u), params_.value("extra", size / 4),
                                    seed_for(n));
    throw SequenceError("unknown generator family '" + family_ + "'");
  }

  Kind kind_ = Kind::Explicit;
  std::string family_;
  nlohmann::json params_ = nlohmann::json::object();
  std::vector<std::int64_t> window_;
  std::optional<TowerSpec> tower_;
  std::vector<Graph> explicit_;
  std::vector<Graph> graphs_;
  std::vector<CayleyGraph> cayley_;
  std::uint32_t degree_bound_ = 0;
  bool materialized_ = false;
};

}  // namespace graphseq
