#pragma once

#include <graphseq/cycles.hpp>
#include <graphseq/field.hpp>
#include <graphseq/graph.hpp>
#include <graphseq/rational.hpp>

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace graphseq {

/// Incremental row echelon form over edge coordinates. Rows are reduced on
/// their leading column only; rank never exceeds the saturation cap.
template <class Field>
class CycleAccumulator {
 public:
  using Coef = typename Field::value_type;
  using Row = SparseRow<Coef>;

  CycleAccumulator(Field field, std::size_t columns, std::size_t saturation_cap)
      : field_(std::move(field)), pivots_(columns), cap_(saturation_cap) {}

  /// Adds an integer chain; returns true when it enlarged the span.
  bool add(const std::vector<std::pair<EdgeId, int>>& chain) {
    Row row;
    row.reserve(chain.size());
    for (auto [e, c] : chain) {
      Coef v = field_.from_int(c);
      if (!field_.is_zero(v)) row.emplace_back(e, std::move(v));
    }
    return add_row(std::move(row));
  }

  bool add(const CycleVector& cycle) { return add(cycle.entries); }

  bool add_row(Row row) {
    if (saturated()) return false;
    field_.normalize(row);
    while (!row.empty()) {
      const auto lead = row.front().first;
      auto& pivot = pivots_[lead];
      if (!pivot) {
        pivot = std::move(row);
        ++rank_;
        return true;
      }
      field_.eliminate(row, *pivot);
    }
    return false;
  }

  std::size_t rank() const { return rank_; }
  std::size_t saturation_cap() const { return cap_; }
  bool saturated() const { return rank_ >= cap_; }

 private:
  Field field_;
  std::vector<std::optional<Row>> pivots_;
  std::size_t rank_ = 0;
  std::size_t cap_;
};

struct RankResult {
  std::size_t rank = 0;
  EnumerationStatus status = EnumerationStatus::Completed;
  std::size_t cycles_seen = 0;
  /// True when the rank reached the cyclomatic number and enumeration stopped.
  bool saturated = false;

  bool complete() const { return status != EnumerationStatus::TimedOut; }
};

namespace detail {

template <class Field>
RankResult short_cycle_rank(const Graph& g, std::uint32_t q, Field field, const Deadline& deadline) {
  const auto cap = cyclomatic_number(g);
  CycleAccumulator<Field> acc(std::move(field), g.edge_count(), cap);
  RankResult out;
  if (cap == 0) {
    out.saturated = true;
    return out;
  }
  out.status = enumerate_short_cycles(
      g, q,
      [&](const CycleVector& c) {
        ++out.cycles_seen;
        acc.add(c);
        if (deadline.expired()) return false;
        return !acc.saturated();
      },
      deadline);
  out.rank = acc.rank();
  out.saturated = acc.saturated();
  if (out.status == EnumerationStatus::StoppedByVisitor && !out.saturated)
    out.status = EnumerationStatus::TimedOut;
  return out;
}

template <class Field>
std::size_t chain_rank(const Graph& g, const std::vector<std::vector<std::pair<EdgeId, int>>>& chains,
                       Field field) {
  CycleAccumulator<Field> acc(std::move(field), g.edge_count(), cyclomatic_number(g));
  for (const auto& chain : chains) {
    acc.add(chain);
    if (acc.saturated()) break;
  }
  return acc.rank();
}

}  // namespace detail

/// dim over `field` of the span of all cycles of length <= q.
inline RankResult cycle_rank_detail(const Graph& g, std::uint32_t q, const FieldSpec& field,
                                    const Deadline& deadline = {}) {
  if (field.kind == FieldSpec::Kind::Rationals)
    return detail::short_cycle_rank(g, q, FractionFreeRationals{}, deadline);
  return detail::short_cycle_rank(g, q, PrimeField{field.p}, deadline);
}

inline std::size_t cycle_rank(const Graph& g, std::uint32_t q, const FieldSpec& field) {
  return cycle_rank_detail(g, q, field).rank;
}

/// Rank of arbitrary integer cycle chains (e.g. relator lifts).
inline std::size_t chain_rank(const Graph& g,
                              const std::vector<std::vector<std::pair<EdgeId, int>>>& chains,
                              const FieldSpec& field) {
  if (field.kind == FieldSpec::Kind::Rationals)
    return detail::chain_rank(g, chains, FractionFreeRationals{});
  return detail::chain_rank(g, chains, PrimeField{field.p});
}

/// (|E| - rank) / |V| - 1 for a known rank.
inline Rational s_q_from_rank(const Graph& g, std::size_t rank) {
  return Rational(BigInt(g.edge_count() - rank), BigInt(g.vertex_count())) - 1;
}

inline Rational s_q(const Graph& g, std::uint32_t q, const FieldSpec& field) {
  if (g.vertex_count() == 0) throw GraphError("s_q: graph has no vertices");
  return s_q_from_rank(g, cycle_rank(g, q, field));
}

}  // namespace graphseq
