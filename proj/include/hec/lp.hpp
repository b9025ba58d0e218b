#pragma once

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hec/rational.hpp"

namespace hec {

enum class Relation { LE, EQ, GE };
enum class LpStatus { Optimal, Infeasible, Unbounded };

// Linear program in the form
//   min c^T v   s.t.  rows (<=, =, >=),  0 <= v_j <= upper_j (upper optional).
// All data exact rationals.
struct LpProblem {
  std::vector<std::string> var_names;
  std::vector<Rational> objective;
  std::vector<std::optional<Rational>> upper;
  struct Row {
    std::vector<std::pair<int, Rational>> terms;
    Relation rel;
    Rational rhs;
    std::string name;
  };
  std::vector<Row> rows;

  int add_var(std::string name, std::optional<Rational> ub = std::nullopt) {
    var_names.push_back(std::move(name));
    objective.emplace_back(0);
    upper.push_back(std::move(ub));
    return static_cast<int>(var_names.size()) - 1;
  }

  void set_objective(int var, Rational coeff) { objective.at(var) = std::move(coeff); }

  void add_row(std::vector<std::pair<int, Rational>> terms, Relation rel, Rational rhs,
               std::string name = "") {
    for (const auto& [v, c] : terms)
      if (v < 0 || v >= num_vars()) throw std::invalid_argument("row references unknown variable");
    rows.push_back({std::move(terms), rel, std::move(rhs), std::move(name)});
  }

  int num_vars() const { return static_cast<int>(var_names.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }
};

struct LpSolution {
  LpStatus status = LpStatus::Infeasible;
  std::vector<Rational> primal;  // per variable
  std::vector<Rational> dual;    // per row
  Rational objective;
};

namespace detail {

// Full-tableau two-phase primal simplex with upper-bounded variables and
// Bland's anti-cycling rule (lowest eligible index enters; among tying
// ratio-test rows the lowest basic index leaves). Single-use object.
class SimplexTableau {
 public:
  explicit SimplexTableau(const LpProblem& p) : p_(p) { build(); }

  LpSolution solve() {
    LpSolution out;
    // Phase 1: minimize the artificial total.
    if (!artificials_.empty()) {
      std::vector<Rational> c1(ncols_, Rational(0));
      for (int a : artificials_) c1[a] = 1;
      if (iterate(c1, /*bar_artificials=*/false) == StepResult::Unbounded)
        throw std::logic_error("phase 1 cannot be unbounded");
      Rational art_total = 0;
      auto xb = basic_values();
      for (int k = 0; k < m_; ++k)
        if (is_artificial_[basis_[k]]) art_total += xb[k];
      if (art_total != 0) {
        out.status = LpStatus::Infeasible;
        return out;
      }
      drive_out_artificials();
    }
    // Phase 2.
    std::vector<Rational> c2(ncols_, Rational(0));
    for (int j = 0; j < p_.num_vars(); ++j) c2[j] = p_.objective[j];
    if (iterate(c2, /*bar_artificials=*/true) == StepResult::Unbounded) {
      out.status = LpStatus::Unbounded;
      return out;
    }

    out.status = LpStatus::Optimal;
    out.primal.assign(p_.num_vars(), Rational(0));
    auto xb = basic_values();
    for (int j = 0; j < p_.num_vars(); ++j)
      if (status_[j] == VarStatus::Upper) out.primal[j] = *ub_[j];
    for (int k = 0; k < m_; ++k)
      if (basis_[k] < p_.num_vars()) out.primal[basis_[k]] = xb[k];

    out.objective = 0;
    for (int j = 0; j < p_.num_vars(); ++j) out.objective += p_.objective[j] * out.primal[j];

    // Duals: y = c_B B^{-1}; the tableau column of each row's initial unit
    // variable is the matching column of B^{-1}.
    out.dual.assign(m_, Rational(0));
    for (int i = 0; i < m_; ++i) {
      Rational y = 0;
      for (int k = 0; k < m_; ++k) {
        const Rational& cb = c2[basis_[k]];
        if (cb != 0) y += cb * tab_[k][init_col_[i]];
      }
      out.dual[i] = flipped_[i] ? -y : y;
    }
    return out;
  }

 private:
  enum class VarStatus { Basic, Lower, Upper };
  enum class StepResult { Optimal, Unbounded };

  void build() {
    m_ = p_.num_rows();
    const int n = p_.num_vars();

    // Normalized rows: rhs >= 0 (flip sign and relation where needed).
    std::vector<std::vector<Rational>> A(m_, std::vector<Rational>(n, Rational(0)));
    std::vector<Rational> b(m_);
    std::vector<Relation> rel(m_);
    flipped_.assign(m_, false);
    for (int i = 0; i < m_; ++i) {
      for (const auto& [v, c] : p_.rows[i].terms) A[i][v] += c;
      b[i] = p_.rows[i].rhs;
      rel[i] = p_.rows[i].rel;
      if (b[i] < 0) {
        for (auto& c : A[i]) c = -c;
        b[i] = -b[i];
        if (rel[i] == Relation::LE) rel[i] = Relation::GE;
        else if (rel[i] == Relation::GE) rel[i] = Relation::LE;
        flipped_[i] = true;
      }
    }

    // Column layout: structural, then per-row slack/surplus, then artificials.
    ncols_ = n;
    std::vector<int> slack_col(m_, -1);
    for (int i = 0; i < m_; ++i)
      if (rel[i] != Relation::EQ) slack_col[i] = ncols_++;
    std::vector<int> art_col(m_, -1);
    for (int i = 0; i < m_; ++i)
      if (rel[i] != Relation::LE) art_col[i] = ncols_++;

    tab_.assign(m_, std::vector<Rational>(ncols_ + 1, Rational(0)));
    ub_.assign(ncols_, std::nullopt);
    is_artificial_.assign(ncols_, false);
    for (int j = 0; j < n; ++j) ub_[j] = p_.upper[j];
    for (int i = 0; i < m_; ++i) {
      for (int j = 0; j < n; ++j) tab_[i][j] = A[i][j];
      tab_[i][ncols_] = b[i];
      if (slack_col[i] >= 0) tab_[i][slack_col[i]] = rel[i] == Relation::LE ? 1 : -1;
      if (art_col[i] >= 0) {
        tab_[i][art_col[i]] = 1;
        is_artificial_[art_col[i]] = true;
        artificials_.push_back(art_col[i]);
      }
    }

    basis_.resize(m_);
    init_col_.resize(m_);
    status_.assign(ncols_, VarStatus::Lower);
    for (int i = 0; i < m_; ++i) {
      init_col_[i] = art_col[i] >= 0 ? art_col[i] : slack_col[i];
      basis_[i] = init_col_[i];
      status_[basis_[i]] = VarStatus::Basic;
    }
  }

  std::vector<Rational> basic_values() const {
    std::vector<Rational> xb(m_);
    for (int k = 0; k < m_; ++k) xb[k] = tab_[k][ncols_];
    for (int j = 0; j < ncols_; ++j) {
      if (status_[j] != VarStatus::Upper) continue;
      for (int k = 0; k < m_; ++k)
        if (tab_[k][j] != 0) xb[k] -= tab_[k][j] * *ub_[j];
    }
    return xb;
  }

  StepResult iterate(const std::vector<Rational>& cost, bool bar_artificials) {
    while (true) {
      // Reduced costs; Bland entering choice.
      std::vector<Rational> cb(m_);
      for (int k = 0; k < m_; ++k) cb[k] = cost[basis_[k]];
      int enter = -1;
      Rational d_enter;
      for (int j = 0; j < ncols_ && enter < 0; ++j) {
        if (status_[j] == VarStatus::Basic) continue;
        if (bar_artificials && is_artificial_[j]) continue;
        if (ub_[j] && *ub_[j] == 0) continue;  // fixed at zero
        Rational d = cost[j];
        for (int k = 0; k < m_; ++k)
          if (cb[k] != 0 && tab_[k][j] != 0) d -= cb[k] * tab_[k][j];
        if ((status_[j] == VarStatus::Lower && d < 0) ||
            (status_[j] == VarStatus::Upper && d > 0)) {
          enter = j;
          d_enter = d;
        }
      }
      if (enter < 0) return StepResult::Optimal;

      const int dir = status_[enter] == VarStatus::Lower ? 1 : -1;
      auto xb = basic_values();

      // Ratio test: entering may hit its own opposite bound, or drive a
      // basic variable to one of its bounds.
      bool flip_limit = ub_[enter].has_value();
      Rational best = flip_limit ? *ub_[enter] : Rational(0);
      int leave_row = -1;
      bool leave_at_upper = false;
      for (int k = 0; k < m_; ++k) {
        const Rational coef = dir * tab_[k][enter];
        Rational cand;
        bool at_upper;
        if (coef > 0) {
          cand = xb[k] / coef;
          at_upper = false;
        } else if (coef < 0 && ub_[basis_[k]]) {
          cand = (*ub_[basis_[k]] - xb[k]) / -coef;
          at_upper = true;
        } else {
          continue;
        }
        bool better;
        if (leave_row < 0 && !flip_limit) better = true;
        else if (cand < best) better = true;
        else if (cand == best && leave_row >= 0 && basis_[k] < basis_[leave_row]) better = true;
        else if (cand == best && leave_row < 0) better = true;  // row pivot over flip
        else better = false;
        if (better) {
          best = cand;
          leave_row = k;
          leave_at_upper = at_upper;
          flip_limit = false;
        }
      }

      if (leave_row < 0) {
        if (!flip_limit) return StepResult::Unbounded;
        status_[enter] = dir == 1 ? VarStatus::Upper : VarStatus::Lower;
        continue;
      }
      pivot(leave_row, enter, leave_at_upper);
    }
  }

  void pivot(int row, int col, bool leave_at_upper) {
    status_[basis_[row]] = leave_at_upper ? VarStatus::Upper : VarStatus::Lower;
    basis_[row] = col;
    status_[col] = VarStatus::Basic;
    const Rational piv = tab_[row][col];
    for (auto& v : tab_[row]) v /= piv;
    for (int k = 0; k < m_; ++k) {
      if (k == row || tab_[k][col] == 0) continue;
      const Rational factor = tab_[k][col];
      for (int j = 0; j <= ncols_; ++j)
        if (tab_[row][j] != 0) tab_[k][j] -= factor * tab_[row][j];
    }
  }

  // After phase 1, pivot zero-level artificials out of the basis where a
  // nonzero non-artificial coefficient exists; all-zero rows are redundant
  // and keep their artificial pinned at zero.
  void drive_out_artificials() {
    for (int k = 0; k < m_; ++k) {
      if (!is_artificial_[basis_[k]]) continue;
      for (int j = 0; j < ncols_; ++j) {
        if (is_artificial_[j] || status_[j] == VarStatus::Basic) continue;
        if (tab_[k][j] != 0) {
          pivot(k, j, false);
          break;
        }
      }
    }
  }

  const LpProblem& p_;
  int m_ = 0, ncols_ = 0;
  std::vector<std::vector<Rational>> tab_;
  std::vector<int> basis_, init_col_, artificials_;
  std::vector<std::optional<Rational>> ub_;
  std::vector<bool> is_artificial_;
  std::vector<bool> flipped_;
  std::vector<VarStatus> status_;
};

}  // namespace detail

inline LpSolution simplex_solve(const LpProblem& p) { return detail::SimplexTableau(p).solve(); }

// Independent optimality certificate check (KKT conditions in exact
// arithmetic), deliberately free of any pivoting machinery:
//   * primal feasibility of every row and bound,
//   * dual sign conditions (y <= 0 on <=, y >= 0 on >=) with row
//     complementary slackness,
//   * reduced-cost conditions per variable bound status.
// Empty result certifies optimality of (primal, dual).
inline std::vector<std::string> check_certificate(const LpProblem& p, const LpSolution& sol) {
  std::vector<std::string> out;
  if (sol.status != LpStatus::Optimal) {
    out.push_back("certificate applies to optimal solutions only");
    return out;
  }
  if (static_cast<int>(sol.primal.size()) != p.num_vars() ||
      static_cast<int>(sol.dual.size()) != p.num_rows()) {
    out.push_back("certificate has wrong dimensions");
    return out;
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    if (sol.primal[j] < 0)
      out.push_back("primal bound violated: " + p.var_names[j] + " < 0");
    if (p.upper[j] && sol.primal[j] > *p.upper[j])
      out.push_back("primal bound violated: " + p.var_names[j] + " above upper bound");
  }
  for (int i = 0; i < p.num_rows(); ++i) {
    Rational lhs = 0;
    for (const auto& [v, c] : p.rows[i].terms) lhs += c * sol.primal[v];
    const Rational slack = p.rows[i].rhs - lhs;
    const Relation rel = p.rows[i].rel;
    if ((rel == Relation::LE && slack < 0) || (rel == Relation::GE && slack > 0) ||
        (rel == Relation::EQ && slack != 0))
      out.push_back("primal row violated: " + p.rows[i].name);
    if (rel == Relation::LE && sol.dual[i] > 0)
      out.push_back("dual sign violated on <= row: " + p.rows[i].name);
    if (rel == Relation::GE && sol.dual[i] < 0)
      out.push_back("dual sign violated on >= row: " + p.rows[i].name);
    if (rel != Relation::EQ && sol.dual[i] != 0 && slack != 0)
      out.push_back("complementary slackness violated on row: " + p.rows[i].name);
  }
  // Reduced costs d_j = c_j - y^T A_j.
  std::vector<Rational> d(p.num_vars());
  for (int j = 0; j < p.num_vars(); ++j) d[j] = p.objective[j];
  for (int i = 0; i < p.num_rows(); ++i) {
    if (sol.dual[i] == 0) continue;
    for (const auto& [v, c] : p.rows[i].terms) d[v] -= sol.dual[i] * c;
  }
  for (int j = 0; j < p.num_vars(); ++j) {
    const bool at_lower = sol.primal[j] == 0;
    const bool at_upper = p.upper[j] && sol.primal[j] == *p.upper[j];
    if (!at_lower && !at_upper && d[j] != 0)
      out.push_back("reduced cost nonzero for interior variable " + p.var_names[j]);
    else if (at_lower && !at_upper && d[j] < 0)
      out.push_back("negative reduced cost at lower bound: " + p.var_names[j]);
    else if (at_upper && !at_lower && d[j] > 0)
      out.push_back("positive reduced cost at upper bound: " + p.var_names[j]);
  }
  return out;
}

// Human-readable LP text dump for cross-checking with external tools.
inline std::string dump_lp(const LpProblem& p) {
  std::ostringstream os;
  os << "minimize\n ";
  for (int j = 0; j < p.num_vars(); ++j)
    if (p.objective[j] != 0) os << " + " << to_string(p.objective[j]) << ' ' << p.var_names[j];
  os << "\nsubject to\n";
  for (const auto& row : p.rows) {
    os << ' ' << (row.name.empty() ? "c" : row.name) << ':';
    for (const auto& [v, c] : row.terms) os << " + " << to_string(c) << ' ' << p.var_names[v];
    os << (row.rel == Relation::LE ? " <= " : row.rel == Relation::GE ? " >= " : " = ")
       << to_string(row.rhs) << '\n';
  }
  os << "bounds\n";
  for (int j = 0; j < p.num_vars(); ++j) {
    os << " 0 <= " << p.var_names[j];
    if (p.upper[j]) os << " <= " << to_string(*p.upper[j]);
    os << '\n';
  }
  return os.str();
}

}  // namespace hec
