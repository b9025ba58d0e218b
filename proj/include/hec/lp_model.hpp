#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include "hec/instance.hpp"
#include "hec/lp.hpp"
#include "hec/rational.hpp"
#include "hec/solution.hpp"

namespace hec {

// Variable layout shared by the relaxation and the auxiliary program:
// w, r, then y_jh row-major, then (x_j1, x_j2) per job. The per-edge and
// per-hyperedge caps live as variable upper bounds.
struct LpVarMap {
  int n, m;
  int w() const { return 0; }
  int r() const { return 1; }
  int y(int j, int h) const { return 2 + j * m + h; }
  int x(int j, int ell) const { return 2 + n * m + 2 * j + ell; }
};

namespace detail {

inline LpVarMap add_structural_vars(const Instance& inst, LpProblem& p) {
  const LpVarMap vm{inst.num_jobs(), inst.num_machines()};
  p.add_var("w");
  p.add_var("r");
  for (int j = 0; j < vm.n; ++j)
    for (int h = 0; h < vm.m; ++h)
      p.add_var("y[" + inst.jobs[j] + "," + inst.machine_id(h) + "]", Rational(inst.b[j][h]));
  for (int j = 0; j < vm.n; ++j)
    for (int ell = 0; ell < 2; ++ell)
      p.add_var("x[" + inst.jobs[j] + ",G" + std::to_string(ell + 1) + "]",
                Rational(inst.a[j][ell]));
  return vm;
}

// The ten constraint families (2)-(11); (5) and (9) are carried by the
// variable bounds installed above.
inline void add_core_rows(const Instance& inst, LpProblem& p, const LpVarMap& vm) {
  const long long d1 = delta(inst, 1), d2 = delta(inst, 2);
  for (int h = 0; h < vm.m; ++h) {
    const bool g1 = inst.in_group1(h);
    long long bsum = 0;
    std::vector<std::pair<int, Rational>> load;
    for (int j = 0; j < vm.n; ++j) {
      load.emplace_back(vm.y(j, h), Rational(1));
      bsum += inst.b[j][h];
    }
    auto lower = load;
    lower.emplace_back(vm.r(), Rational(-1));
    p.add_row(std::move(lower), Relation::GE, Rational(bsum - (g1 ? d2 : d1)),
              std::string(g1 ? "B2L:" : "B3L:") + inst.machine_id(h));
    load.emplace_back(vm.w(), Rational(-1));
    p.add_row(std::move(load), Relation::LE, Rational(0),
              std::string(g1 ? "B2U:" : "B3U:") + inst.machine_id(h));
  }
  for (int j = 0; j < vm.n; ++j) {
    std::vector<std::pair<int, Rational>> terms;
    for (int h = 0; h < vm.m; ++h) terms.emplace_back(vm.y(j, h), Rational(1));
    terms.emplace_back(vm.w(), Rational(-1));
    p.add_row(std::move(terms), Relation::LE, Rational(0), "B4:" + inst.jobs[j]);
  }
  for (int ell = 0; ell < 2; ++ell) {
    std::vector<std::pair<int, Rational>> terms;
    for (int j = 0; j < vm.n; ++j) terms.emplace_back(vm.x(j, ell), Rational(1));
    terms.emplace_back(vm.r(), Rational(-1));
    p.add_row(std::move(terms), Relation::EQ, Rational(0), ell == 0 ? "B6" : "B7");
  }
  for (int j = 0; j < vm.n; ++j)
    p.add_row({{vm.x(j, 0), Rational(1)}, {vm.x(j, 1), Rational(1)}, {vm.r(), Rational(-1)}},
              Relation::LE, Rational(0), "B8:" + inst.jobs[j]);
  // (10)/(11) rearranged onto the variables:
  //   -sum_{h in G1} y_jh - x_j2 + r <= D2 - a_j2 - sum_{h in G1} b_jh
  for (int j = 0; j < vm.n; ++j) {
    for (int ell = 0; ell < 2; ++ell) {
      const bool own_g1 = ell == 0;  // edges of the opposite group appear
      long long bsum = 0;
      std::vector<std::pair<int, Rational>> terms;
      for (int h = 0; h < vm.m; ++h) {
        if (inst.in_group1(h) != own_g1) continue;
        terms.emplace_back(vm.y(j, h), Rational(-1));
        bsum += inst.b[j][h];
      }
      terms.emplace_back(vm.x(j, 1 - ell), Rational(-1));
      terms.emplace_back(vm.r(), Rational(1));
      const long long d_own = ell == 0 ? d2 : d1;
      const long long a_opp = inst.a[j][1 - ell];
      p.add_row(std::move(terms), Relation::LE, Rational(d_own - a_opp - bsum),
                std::string(ell == 0 ? "B10:" : "B11:") + inst.jobs[j]);
    }
  }
}

}  // namespace detail

// LP-relaxation of the coloring program: min (w - r) over (2)-(11).
inline LpProblem build_relaxation(const Instance& inst) {
  if (!validate_instance(inst).empty())
    throw std::invalid_argument("build_relaxation requires a valid instance");
  LpProblem p;
  const LpVarMap vm = detail::add_structural_vars(inst, p);
  p.set_objective(vm.w(), Rational(1));
  p.set_objective(vm.r(), Rational(-1));
  detail::add_core_rows(inst, p, vm);
  return p;
}

// Auxiliary program: min r subject to (2)-(11) plus
// w - r = ceil(w* - r*) and r >= floor(r*).
inline LpProblem build_aux(const Instance& inst, const Rational& wstar, const Rational& rstar) {
  LpProblem p;
  const LpVarMap vm = detail::add_structural_vars(inst, p);
  p.set_objective(vm.r(), Rational(1));
  p.add_row({{vm.w(), Rational(1)}, {vm.r(), Rational(-1)}}, Relation::EQ,
            Rational(ceil_int(wstar - rstar)), "B20");
  p.add_row({{vm.r(), Rational(1)}}, Relation::GE, Rational(floor_int(rstar)), "RLB");
  detail::add_core_rows(inst, p, vm);
  return p;
}

inline HypergraphSolution solution_from_lp(const Instance& inst, const LpSolution& lp) {
  const LpVarMap vm{inst.num_jobs(), inst.num_machines()};
  HypergraphSolution sol;
  sol.w = lp.primal[vm.w()];
  sol.r = lp.primal[vm.r()];
  sol.y.assign(vm.n, std::vector<Rational>(vm.m));
  sol.x.assign(vm.n, std::vector<Rational>(2));
  for (int j = 0; j < vm.n; ++j) {
    for (int h = 0; h < vm.m; ++h) sol.y[j][h] = lp.primal[vm.y(j, h)];
    for (int ell = 0; ell < 2; ++ell) sol.x[j][ell] = lp.primal[vm.x(j, ell)];
  }
  sol.integral = sol.all_entries_integral();
  return sol;
}

// Fractional chromatic index: Delta(G1) + Delta(G2) + LP.
inline Rational chromatic_fractional(const Instance& inst) {
  if (inst.group1.empty() || inst.group2.empty())
    throw std::invalid_argument("chromatic_fractional requires both groups non-empty");
  LpSolution lp = simplex_solve(build_relaxation(inst));
  if (lp.status != LpStatus::Optimal)
    throw std::logic_error("relaxation must be feasible and bounded");
  return Rational(delta(inst, 1) + delta(inst, 2)) + lp.objective;
}

// Exact chromatic number when a group is empty: the hyperedges of the
// remaining group stack on top of a Koenig coloring of the plain bipartite
// multigraph, giving Delta + max degree.
inline long long chromatic_closed_form(const Instance& inst) {
  if (!inst.group1.empty() && !inst.group2.empty())
    throw std::invalid_argument("closed form applies only when a group is empty");
  long long d = 0;
  if (!inst.group1.empty()) d += delta(inst, 1);
  if (!inst.group2.empty()) d += delta(inst, 2);
  long long maxdeg = 0;
  for (int j = 0; j < inst.num_jobs(); ++j) {
    long long s = 0;
    for (long long v : inst.b[j]) s += v;
    maxdeg = std::max(maxdeg, s);
  }
  for (int h = 0; h < inst.num_machines(); ++h) {
    long long s = 0;
    for (int j = 0; j < inst.num_jobs(); ++j) s += inst.b[j][h];
    maxdeg = std::max(maxdeg, s);
  }
  return d + maxdeg;
}

}  // namespace hec
