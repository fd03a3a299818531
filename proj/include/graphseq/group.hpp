#pragma once

// Concrete finite quotients: integer vectors mod n under addition, and
// square integer matrices mod n under multiplication.

#include <algorithm>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace graphseq {

using Element = std::vector<std::int64_t>;

class GroupError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class QuotientKind { Abelian, Matrix };

class QuotientGroup {
 public:
  /// `dim` is the vector length (Abelian) or the matrix size (Matrix).
  QuotientGroup(QuotientKind kind, std::size_t dim, std::int64_t modulus)
      : kind_(kind), dim_(dim), modulus_(modulus) {
    if (modulus < 1) throw GroupError("modulus must be >= 1");
    if (dim == 0) throw GroupError("dimension must be >= 1");
  }

  QuotientKind kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  std::int64_t modulus() const { return modulus_; }
  std::size_t element_size() const { return kind_ == QuotientKind::Abelian ? dim_ : dim_ * dim_; }

  Element identity() const {
    Element e(element_size(), 0);
    if (kind_ == QuotientKind::Matrix)
      for (std::size_t i = 0; i < dim_; ++i) e[i * dim_ + i] = 1;
    return reduce(std::move(e));
  }

  Element reduce(Element e) const {
    if (e.size() != element_size())
      throw GroupError("element has " + std::to_string(e.size()) + " entries, expected " +
                       std::to_string(element_size()));
    for (auto& x : e) {
      x %= modulus_;
      if (x < 0) x += modulus_;
    }
    return e;
  }

  Element multiply(const Element& a, const Element& b) const {
    Element out(element_size(), 0);
    if (kind_ == QuotientKind::Abelian) {
      for (std::size_t i = 0; i < dim_; ++i) out[i] = (a[i] + b[i]) % modulus_;
      return out;
    }
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        const auto aik = a[i * dim_ + k];
        if (aik == 0) continue;
        for (std::size_t j = 0; j < dim_; ++j)
          out[i * dim_ + j] = (out[i * dim_ + j] + aik * b[k * dim_ + j]) % modulus_;
      }
    return out;
  }

  /// Inverse by negation (Abelian) or as g^(order-1); throws when g has no
  /// finite order below `cap` (not invertible mod n).
  Element inverse(const Element& g, std::size_t cap = 1'000'000) const {
    if (kind_ == QuotientKind::Abelian) {
      Element out(g);
      for (auto& x : out) x = (modulus_ - x) % modulus_;
      return out;
    }
    const Element id = identity();
    Element prev = id, power = g;
    for (std::size_t k = 1; k <= cap; ++k) {
      if (power == id) return prev;
      prev = power;
      power = multiply(power, g);
    }
    throw GroupError("generator is not invertible modulo " + std::to_string(modulus_));
  }

 private:
  QuotientKind kind_;
  std::size_t dim_;
  std::int64_t modulus_;
};

/// A letter is a generator index with exponent +1 or -1.
struct Letter {
  std::size_t generator;
  int sign;
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Parses "a b a^-1 b^-1" (tokens separated by spaces or '*', optional
/// integer exponents) against the given generator labels.
inline Word parse_word(const std::string& text, const std::vector<std::string>& labels) {
  std::string cleaned = text;
  std::replace(cleaned.begin(), cleaned.end(), '*', ' ');
  std::istringstream in(cleaned);
  std::string token;
  Word word;
  while (in >> token) {
    std::string label = token;
    long exponent = 1;
    if (auto caret = token.find('^'); caret != std::string::npos) {
      label = token.substr(0, caret);
      const std::string exp_text = token.substr(caret + 1);
      std::size_t used = 0;
      try {
        exponent = std::stol(exp_text, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != exp_text.size() || exp_text.empty())
        throw GroupError("bad exponent in word token '" + token + "'");
    }
    auto it = std::find(labels.begin(), labels.end(), label);
    if (it == labels.end()) throw GroupError("unknown generator '" + label + "' in word '" + text + "'");
    const auto index = static_cast<std::size_t>(it - labels.begin());
    for (long i = 0; i < std::labs(exponent); ++i) word.push_back({index, exponent < 0 ? -1 : 1});
  }
  return word;
}

inline std::string format_word(const Word& word, const std::vector<std::string>& labels) {
  std::string out;
  for (const auto& l : word) {
    if (!out.empty()) out += ' ';
    out += labels[l.generator];
    if (l.sign < 0) out += "^-1";
  }
  return out;
}

}  // namespace graphseq
