#pragma once

#include <graphseq/rational.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace graphseq {

inline bool is_prime(std::uint64_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// Either the rationals or a prime field F_p.
struct FieldSpec {
  enum class Kind { Rationals, PrimeField };
  Kind kind = Kind::Rationals;
  std::uint32_t p = 0;

  static FieldSpec rationals() { return {}; }
  static FieldSpec prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    return {Kind::PrimeField, p};
  }

  /// "Q" or "F<p>", e.g. "F2".
  static FieldSpec parse(const std::string& s) {
    if (s == "Q" || s == "q") return rationals();
    if (s.size() > 1 && (s[0] == 'F' || s[0] == 'f')) {
      std::size_t used = 0;
      unsigned long v = 0;
      try {
        v = std::stoul(s.substr(1), &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == s.size() - 1 && v < (1UL << 31)) return prime(static_cast<std::uint32_t>(v));
    }
    throw std::invalid_argument("unknown field '" + s + "' (expected Q or F<prime>)");
  }

  std::string name() const { return kind == Kind::Rationals ? "Q" : "F" + std::to_string(p); }

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

template <class Coef>
using SparseRow = std::vector<std::pair<std::uint32_t, Coef>>;

namespace detail {

// out = alpha * row - beta * pivot, dropping zeros; both inputs sorted by column.
template <class F, class Coef>
SparseRow<Coef> combine(const F& field, const SparseRow<Coef>& row, const Coef& alpha,
                        const SparseRow<Coef>& pivot, const Coef& beta) {
  SparseRow<Coef> out;
  out.reserve(row.size() + pivot.size());
  std::size_t i = 0, j = 0;
  while (i < row.size() || j < pivot.size()) {
    if (j == pivot.size() || (i < row.size() && row[i].first < pivot[j].first)) {
      out.emplace_back(row[i].first, field.mul(alpha, row[i].second));
      ++i;
    } else if (i == row.size() || pivot[j].first < row[i].first) {
      out.emplace_back(pivot[j].first, field.neg(field.mul(beta, pivot[j].second)));
      ++j;
    } else {
      Coef c = field.sub(field.mul(alpha, row[i].second), field.mul(beta, pivot[j].second));
      if (!field.is_zero(c)) out.emplace_back(row[i].first, std::move(c));
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace detail

/// Arithmetic in F_p; pivots are kept monic.
struct PrimeField {
  using value_type = std::uint32_t;
  std::uint32_t p;

  value_type from_int(long long v) const {
    long long r = v % static_cast<long long>(p);
    return static_cast<value_type>(r < 0 ? r + p : r);
  }
  bool is_zero(value_type a) const { return a == 0; }
  value_type mul(value_type a, value_type b) const {
    return static_cast<value_type>(static_cast<std::uint64_t>(a) * b % p);
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + p - b; }
  value_type neg(value_type a) const { return a == 0 ? 0 : p - a; }
  value_type inverse(value_type a) const {
    // a^(p-2)
    std::uint64_t result = 1, base = a, e = p - 2;
    while (e) {
      if (e & 1) result = result * base % p;
      base = base * base % p;
      e >>= 1;
    }
    return static_cast<value_type>(result);
  }

  void normalize(SparseRow<value_type>& row) const {
    if (row.empty() || row.front().second == 1) return;
    const auto inv = inverse(row.front().second);
    for (auto& [col, c] : row) c = mul(c, inv);
  }

  void eliminate(SparseRow<value_type>& row, const SparseRow<value_type>& pivot) const {
    row = detail::combine(*this, row, value_type{1}, pivot, row.front().second);
    normalize(row);
  }
};

/// Fraction-free arithmetic over Z standing in for Q: rows are scaled
/// integer vectors with unit content and positive leading entry.
struct FractionFreeRationals {
  using value_type = BigInt;

  value_type from_int(long long v) const { return value_type(v); }
  bool is_zero(const value_type& a) const { return a.is_zero(); }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type neg(const value_type& a) const { return -a; }

  void normalize(SparseRow<value_type>& row) const {
    if (row.empty()) return;
    value_type g = 0;
    for (const auto& [col, c] : row) {
      g = boost::multiprecision::gcd(g, c);
      if (g == 1) break;
    }
    const bool flip = row.front().second < 0;
    if (g == 1 && !flip) return;
    for (auto& [col, c] : row) {
      if (g != 1) c /= g;
      if (flip) c = -c;
    }
  }

  void eliminate(SparseRow<value_type>& row, const SparseRow<value_type>& pivot) const {
    const value_type alpha = pivot.front().second;
    const value_type beta = row.front().second;
    if (alpha == 1) {
      row = detail::combine(*this, row, alpha, pivot, beta);
    } else {
      const value_type g = boost::multiprecision::gcd(alpha, beta);
      row = detail::combine(*this, row, value_type(alpha / g), pivot, value_type(beta / g));
    }
    normalize(row);
  }
};

}  // namespace graphseq
