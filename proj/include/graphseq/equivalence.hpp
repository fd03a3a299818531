#pragma once

#include <graphseq/graph.hpp>

#include <json.hpp>

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

namespace graphseq {

/// Constants certifying A ~ B on a common vertex set. forward bounds
/// d_B <= L * d_A (A-edges measured in B); backward bounds d_A <= L * d_B.
/// nullopt means unbounded.
struct EquivalenceWitness {
  std::optional<std::uint32_t> forward = 1;
  std::optional<std::uint32_t> backward = 1;
  std::vector<std::int64_t> verified_indices;

  bool finite() const { return forward.has_value() && backward.has_value(); }

  /// Uniform constants over several indices: per-direction maximum.
  void absorb(const EquivalenceWitness& other) {
    auto merge = [](std::optional<std::uint32_t>& mine, const std::optional<std::uint32_t>& theirs) {
      if (!mine || !theirs) {
        mine.reset();
        return;
      }
      mine = std::max(*mine, *theirs);
    };
    merge(forward, other.forward);
    merge(backward, other.backward);
    verified_indices.insert(verified_indices.end(), other.verified_indices.begin(),
                            other.verified_indices.end());
  }

  friend bool operator==(const EquivalenceWitness&, const EquivalenceWitness&) = default;
};

inline EquivalenceWitness certify_pair(const Graph& a, const Graph& b, std::int64_t index = 0) {
  return {domination_constant(b, a), domination_constant(a, b), {index}};
}

inline nlohmann::json constant_json(const std::optional<std::uint32_t>& c) {
  if (!c) return "unbounded";
  return *c;
}

inline nlohmann::json witness_json(const EquivalenceWitness& w) {
  return {{"L_forward", constant_json(w.forward)},
          {"L_backward", constant_json(w.backward)},
          {"verified_indices", w.verified_indices}};
}

}  // namespace graphseq
