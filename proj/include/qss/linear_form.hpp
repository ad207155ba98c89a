#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qss/rational.hpp"

namespace qss {

enum class Relation { kGreaterEqual, kEqual };

inline const char* to_string(Relation r) { return r == Relation::kEqual ? "=" : ">="; }

/// Sparse linear form over variable indices with exact coefficients.
/// Terms are sorted by variable and never hold a zero coefficient.
class LinearForm {
 public:
  using Term = std::pair<std::uint32_t, Rational>;

  LinearForm() = default;

  LinearForm& add(std::uint32_t var, const Rational& coef) {
    if (coef == 0) return *this;
    auto it = std::lower_bound(terms_.begin(), terms_.end(), var,
                               [](const Term& t, std::uint32_t v) { return t.first < v; });
    if (it != terms_.end() && it->first == var) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    } else {
      terms_.insert(it, Term{var, coef});
    }
    return *this;
  }

  LinearForm& operator+=(const LinearForm& other) {
    for (const auto& [v, c] : other.terms_) add(v, c);
    return *this;
  }

  LinearForm& operator-=(const LinearForm& other) {
    for (const auto& [v, c] : other.terms_) add(v, -c);
    return *this;
  }

  LinearForm scaled(const Rational& factor) const {
    LinearForm out;
    if (factor == 0) return out;
    out.terms_ = terms_;
    for (auto& t : out.terms_) t.second *= factor;
    return out;
  }

  friend LinearForm operator+(LinearForm a, const LinearForm& b) { return a += b; }
  friend LinearForm operator-(LinearForm a, const LinearForm& b) { return a -= b; }

  std::span<const Term> terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  Rational coefficient(std::uint32_t var) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), var,
                               [](const Term& t, std::uint32_t v) { return t.first < v; });
    return (it != terms_.end() && it->first == var) ? it->second : Rational(0);
  }

  /// Largest variable index plus one (0 for the zero form).
  std::uint32_t extent() const { return terms_.empty() ? 0 : terms_.back().first + 1; }

  Rational evaluate(std::span<const Rational> point) const {
    Rational sum = 0;
    for (const auto& [v, c] : terms_) {
      if (v >= point.size()) throw std::out_of_range("point too short for linear form");
      sum += c * point[v];
    }
    return sum;
  }

  /// Adds factor * form into a dense accumulator.
  void accumulate(std::vector<Rational>& dense, const Rational& factor) const {
    for (const auto& [v, c] : terms_) {
      if (v >= dense.size()) dense.resize(v + 1);
      dense[v] += factor * c;
    }
  }

  static LinearForm from_dense(std::span<const Rational> dense) {
    LinearForm out;
    for (std::uint32_t v = 0; v < dense.size(); ++v) {
      if (dense[v] != 0) out.terms_.emplace_back(v, dense[v]);
    }
    return out;
  }

  bool operator==(const LinearForm& other) const { return terms_ == other.terms_; }

 private:
  std::vector<Term> terms_;
};

}  // namespace qss
