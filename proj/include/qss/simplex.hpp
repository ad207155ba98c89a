#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qss/linear_form.hpp"
#include "qss/rational.hpp"

namespace qss {

struct LPRow {
  LinearForm form;
  Relation relation = Relation::kGreaterEqual;
  Rational rhs;
  std::string id;
};

/// minimize objective . x  subject to  form_i . x (>= | =) rhs_i, x free.
/// Sign restrictions must be written out as explicit rows.
struct LPProblem {
  std::size_t num_vars = 0;
  LinearForm objective;
  std::vector<LPRow> rows;
};

enum class LPStatus { kOptimal, kInfeasible, kUnbounded };

inline const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::kOptimal: return "optimal";
    case LPStatus::kInfeasible: return "infeasible";
    case LPStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

struct LPSolution {
  LPStatus status = LPStatus::kInfeasible;
  Rational value;
  /// Optimal point; for an unbounded problem, some feasible point.
  std::vector<Rational> primal;
  /// One multiplier per row: >= 0 on inequality rows, free on equalities.
  std::vector<Rational> duals;
  std::size_t pivots = 0;
};

/// Multipliers certifying objective >= claimed_bound by a combination of rows.
struct LPCertificate {
  Rational claimed_bound;
  std::vector<std::pair<std::string, Rational>> entries;
};

namespace detail {

// Two-phase revised simplex with Bland's rule applied to the Lagrangian dual
//
//   maximize  b . y   subject to  A^T y = c,  y >= 0,
//
// one column per inequality row and two (+/-) per equality row. The basis
// inverse is held fraction-free as an integer adjugate M over a positive
// common denominator D (Bareiss-style updates with exact division), so
// pricing and ratio tests need integer arithmetic only. Simplex multipliers
// of this dual are the primal point.
class DualSimplex {
 public:
  struct Column {
    std::vector<std::pair<std::uint32_t, Integer>> entries;  // row-sign applied
    Integer cost;
    Rational scale;          // original multiplier = scale * y / rhs_scale
    std::size_t source = 0;  // LP row
    int sign = 1;
  };

  DualSimplex(const LPProblem& p, bool zero_objective) : m_(p.num_vars) {
    for (const auto& row : p.rows) {
      if (row.form.extent() > m_) throw std::invalid_argument("LP row references unknown variable");
    }
    if (p.objective.extent() > m_) throw std::invalid_argument("LP objective references unknown variable");

    // Right-hand side c, scaled to integers and made nonnegative row-wise.
    std::vector<Rational> c(m_);
    if (!zero_objective) {
      for (const auto& [v, coef] : p.objective.terms()) c[v] = coef;
    }
    Integer lcm_den = 1;
    for (const auto& x : c) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), x.get_den_mpz_t());
    rhs_scale_ = Rational(lcm_den);
    row_sign_.assign(m_, 1);
    rhs_.resize(m_);
    for (std::size_t v = 0; v < m_; ++v) {
      Rational scaled = c[v] * rhs_scale_;
      rhs_[v] = scaled.get_num();
      if (rhs_[v] < 0) {
        row_sign_[v] = -1;
        rhs_[v] = -rhs_[v];
      }
    }

    for (std::size_t i = 0; i < p.rows.size(); ++i) {
      const auto& row = p.rows[i];
      Integer den = row.rhs.get_den();
      for (const auto& [v, coef] : row.form.terms()) {
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), coef.get_den_mpz_t());
      }
      const Rational scale(den);
      Column col;
      col.source = i;
      col.scale = scale;
      Rational cost = row.rhs * scale;
      col.cost = cost.get_num();
      for (const auto& [v, coef] : row.form.terms()) {
        Rational s = coef * scale;
        Integer e = s.get_num();
        if (row_sign_[v] < 0) e = -e;
        col.entries.emplace_back(v, std::move(e));
      }
      columns_.push_back(col);
      if (row.relation == Relation::kEqual) {
        for (auto& e : col.entries) e.second = -e.second;
        col.cost = -col.cost;
        col.sign = -1;
        columns_.push_back(std::move(col));
      }
    }
  }

  enum class Outcome { kOptimal, kInfeasible, kUnbounded };

  Outcome run() {
    const std::size_t n = columns_.size();
    basis_.resize(m_);
    is_basic_.assign(n + m_, false);
    for (std::size_t r = 0; r < m_; ++r) {
      basis_[r] = n + r;
      is_basic_[n + r] = true;
    }
    inverse_.assign(m_ * m_, Integer(0));
    for (std::size_t r = 0; r < m_; ++r) inverse_[r * m_ + r] = 1;
    denom_ = 1;
    values_ = rhs_;

    phase_ = 1;
    iterate();  // phase 1 is bounded below by zero
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= n && values_[r] != 0) return Outcome::kInfeasible;
    }
    drive_out_artificials();
    phase_ = 2;
    return iterate() ? Outcome::kOptimal : Outcome::kUnbounded;
  }

  std::size_t pivots() const { return pivots_; }

  // Multipliers of the original LP rows at the current basis.
  std::vector<Rational> row_duals(std::size_t num_rows) const {
    std::vector<Rational> duals(num_rows);
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] >= columns_.size()) continue;
      const Column& col = columns_[basis_[r]];
      Rational y(values_[r], denom_);
      y.canonicalize();
      y *= col.scale;
      y /= rhs_scale_;
      if (col.sign < 0) y = -y;
      duals[col.source] += y;
    }
    return duals;
  }

  // Simplex multipliers with the row signs undone: the primal point.
  std::vector<Rational> primal() const {
    std::vector<Rational> x(m_);
    for (std::size_t v = 0; v < m_; ++v) {
      Rational val(prices_[v], denom_);
      val.canonicalize();
      x[v] = row_sign_[v] < 0 ? Rational(-val) : val;
    }
    return x;
  }

 private:
  Integer cost_of(std::size_t j) const {
    if (j >= columns_.size()) return phase_ == 1 ? Integer(-1) : Integer(0);
    return phase_ == 1 ? Integer(0) : columns_[j].cost;
  }

  void compute_prices() {
    prices_.assign(m_, Integer(0));
    for (std::size_t r = 0; r < m_; ++r) {
      const Integer cb = cost_of(basis_[r]);
      if (cb == 0) continue;
      const Integer* row = &inverse_[r * m_];
      for (std::size_t k = 0; k < m_; ++k) {
        if (row[k] != 0) mpz_addmul(prices_[k].get_mpz_t(), cb.get_mpz_t(), row[k].get_mpz_t());
      }
    }
  }

  // Reduced cost times D; positive means the column improves the objective.
  void reduced_cost(std::size_t j, Integer& out) const {
    out = cost_of(j) * denom_;
    for (const auto& [v, e] : columns_[j].entries) {
      mpz_submul(out.get_mpz_t(), e.get_mpz_t(), prices_[v].get_mpz_t());
    }
  }

  // U = M a_j; the true column of B^{-1} A is U / D.
  void ftran(std::size_t j, std::vector<Integer>& u) const {
    u.assign(m_, Integer(0));
    for (const auto& [v, e] : columns_[j].entries) {
      for (std::size_t r = 0; r < m_; ++r) {
        const Integer& mv = inverse_[r * m_ + v];
        if (mv != 0) mpz_addmul(u[r].get_mpz_t(), mv.get_mpz_t(), e.get_mpz_t());
      }
    }
  }

  void pivot(std::size_t r, std::size_t entering, const std::vector<Integer>& u) {
    const Integer pivot_value = u[r];
    const Integer* prow = &inverse_[r * m_];
    Integer tmp;
    for (std::size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      const bool ui_zero = (u[i] == 0);
      Integer* row = &inverse_[i * m_];
      for (std::size_t k = 0; k < m_; ++k) {
        if (ui_zero) {
          if (row[k] == 0) continue;
          mpz_mul(tmp.get_mpz_t(), row[k].get_mpz_t(), pivot_value.get_mpz_t());
        } else {
          if (row[k] == 0 && prow[k] == 0) continue;
          mpz_mul(tmp.get_mpz_t(), row[k].get_mpz_t(), pivot_value.get_mpz_t());
          mpz_submul(tmp.get_mpz_t(), u[i].get_mpz_t(), prow[k].get_mpz_t());
        }
        mpz_divexact(row[k].get_mpz_t(), tmp.get_mpz_t(), denom_.get_mpz_t());
      }
      mpz_mul(tmp.get_mpz_t(), values_[i].get_mpz_t(), pivot_value.get_mpz_t());
      if (!ui_zero) mpz_submul(tmp.get_mpz_t(), u[i].get_mpz_t(), values_[r].get_mpz_t());
      mpz_divexact(values_[i].get_mpz_t(), tmp.get_mpz_t(), denom_.get_mpz_t());
    }
    denom_ = pivot_value;
    if (denom_ < 0) {
      denom_ = -denom_;
      for (auto& x : inverse_) x = -x;
      for (auto& x : values_) x = -x;
    }
    is_basic_[basis_[r]] = false;
    basis_[r] = entering;
    is_basic_[entering] = true;
    ++pivots_;
  }

  // Returns false when the phase objective is unbounded.
  bool iterate() {
    const std::size_t n = columns_.size();
    std::vector<Integer> u;
    Integer d, lhs, rhs;
    while (true) {
      compute_prices();
      std::size_t entering = n;
      for (std::size_t j = 0; j < n; ++j) {
        if (is_basic_[j]) continue;
        reduced_cost(j, d);
        if (d > 0) {
          entering = j;
          break;
        }
      }
      if (entering == n) return true;

      ftran(entering, u);
      std::size_t leave = m_;
      for (std::size_t r = 0; r < m_; ++r) {
        if (u[r] <= 0) continue;
        if (leave == m_) {
          leave = r;
          continue;
        }
        // values_[r]/u[r] vs values_[leave]/u[leave], both denominators positive
        lhs = values_[r] * u[leave];
        rhs = values_[leave] * u[r];
        if (lhs < rhs || (lhs == rhs && basis_[r] < basis_[leave])) leave = r;
      }
      if (leave == m_) return false;
      pivot(leave, entering, u);
    }
  }

  // Degenerate pivots replacing zero-level artificials; rows with no
  // structural support are redundant and keep their artificial.
  void drive_out_artificials() {
    const std::size_t n = columns_.size();
    std::vector<Integer> u;
    Integer acc;
    for (std::size_t r = 0; r < m_; ++r) {
      if (basis_[r] < n) continue;
      const Integer* row = &inverse_[r * m_];
      for (std::size_t j = 0; j < n; ++j) {
        if (is_basic_[j]) continue;
        acc = 0;
        for (const auto& [v, e] : columns_[j].entries) {
          mpz_addmul(acc.get_mpz_t(), row[v].get_mpz_t(), e.get_mpz_t());
        }
        if (acc != 0) {
          ftran(j, u);
          pivot(r, j, u);
          break;
        }
      }
    }
  }

  std::size_t m_;
  std::vector<Column> columns_;
  std::vector<Integer> rhs_;
  std::vector<int> row_sign_;
  Rational rhs_scale_;

  std::vector<std::size_t> basis_;
  std::vector<bool> is_basic_;
  std::vector<Integer> inverse_;  // row-major m x m
  Integer denom_;
  std::vector<Integer> values_;
  std::vector<Integer> prices_;
  int phase_ = 1;
  std::size_t pivots_ = 0;
};

inline bool satisfies(const LPRow& row, std::span<const Rational> x) {
  const Rational lhs = row.form.evaluate(x);
  return row.relation == Relation::kEqual ? lhs == row.rhs : lhs >= row.rhs;
}

}  // namespace detail

/// Exact optimum by two-phase simplex with Bland's rule. An optimal answer
/// is re-checked before it is returned: the primal satisfies every row, the
/// multipliers respect their signs, reproduce the objective exactly, and
/// close the duality gap. Throws std::logic_error if that check fails.
inline LPSolution solve(const LPProblem& p) {
  LPSolution sol;
  detail::DualSimplex dual(p, false);
  const auto outcome = dual.run();
  sol.pivots = dual.pivots();

  if (outcome == detail::DualSimplex::Outcome::kUnbounded) {
    sol.status = LPStatus::kInfeasible;
    return sol;
  }
  if (outcome == detail::DualSimplex::Outcome::kInfeasible) {
    // No multipliers reproduce the objective: either the rows are
    // inconsistent or the objective is unbounded. Decide with c = 0.
    detail::DualSimplex feasibility(p, true);
    const auto f = feasibility.run();
    sol.pivots += feasibility.pivots();
    if (f == detail::DualSimplex::Outcome::kUnbounded) {
      sol.status = LPStatus::kInfeasible;
    } else {
      sol.status = LPStatus::kUnbounded;
      sol.primal = feasibility.primal();
    }
    return sol;
  }

  sol.status = LPStatus::kOptimal;
  sol.primal = dual.primal();
  sol.duals = dual.row_duals(p.rows.size());
  sol.value = p.objective.evaluate(sol.primal);

  std::vector<Rational> combined(p.num_vars);
  Rational dual_value = 0;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    const auto& row = p.rows[i];
    if (!detail::satisfies(row, sol.primal)) {
      throw std::logic_error("simplex: primal violates row " + row.id);
    }
    if (row.relation == Relation::kGreaterEqual && sol.duals[i] < 0) {
      throw std::logic_error("simplex: negative multiplier on row " + row.id);
    }
    if (sol.duals[i] == 0) continue;
    row.form.accumulate(combined, sol.duals[i]);
    dual_value += sol.duals[i] * row.rhs;
  }
  if (LinearForm::from_dense(combined) != p.objective) {
    throw std::logic_error("simplex: multipliers do not reproduce the objective");
  }
  if (dual_value != sol.value) throw std::logic_error("simplex: nonzero duality gap");
  return sol;
}

/// Nonzero multipliers of an optimal solution, keyed by row id.
inline LPCertificate extract_certificate(const LPProblem& p, const LPSolution& s) {
  if (s.status != LPStatus::kOptimal) {
    throw std::invalid_argument("certificate requires an optimal solution");
  }
  LPCertificate cert;
  cert.claimed_bound = s.value;
  for (std::size_t i = 0; i < p.rows.size(); ++i) {
    if (s.duals[i] != 0) cert.entries.emplace_back(p.rows[i].id, s.duals[i]);
  }
  return cert;
}

}  // namespace qss
