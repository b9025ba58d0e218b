#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hec/flow.hpp"
#include "hec/instance.hpp"
#include "hec/lp_model.hpp"
#include "hec/rational.hpp"
#include "hec/rounding.hpp"
#include "hec/solution.hpp"

namespace hec {

// Search bounds for the exhaustive integral solver.
struct OracleCaps {
  int max_jobs = 4;
  int max_machines = 4;
  long long max_multiplicity = 2;
  long long max_space = 2'000'000;  // (min Delta + 1) * prod (a_j1+1)(a_j2+1)
};

struct CapsExceeded : std::runtime_error {
  explicit CapsExceeded(const std::string& what) : std::runtime_error(what) {}
};

struct BruteForceResult {
  long long value = 0;  // min (w - r)
  HypergraphSolution witness;
};

// Exhaustive minimum of (w - r) over all integral feasible assignments,
// independent of the simplex and rounding paths: enumerate r and the x
// grids, then binary-search the minimal w on the (monotone) y-system
// feasibility.
inline BruteForceResult brute_force_ilp(const Instance& inst, const OracleCaps& caps = {}) {
  if (auto bad = validate_instance(inst); !bad.empty())
    throw std::invalid_argument("invalid instance: " + bad.front());
  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  if (n > caps.max_jobs) throw CapsExceeded("too many jobs for the oracle");
  if (m > caps.max_machines) throw CapsExceeded("too many machines for the oracle");
  long long btot = 0;
  for (int j = 0; j < n; ++j) {
    for (long long v : inst.b[j]) {
      if (v > caps.max_multiplicity) throw CapsExceeded("b entry above oracle cap");
      btot += v;
    }
    for (long long v : inst.a[j])
      if (v > caps.max_multiplicity) throw CapsExceeded("a entry above oracle cap");
  }
  const long long d1 = delta(inst, 1), d2 = delta(inst, 2);
  const long long rmax = std::min(d1, d2);
  long long space = rmax + 1;
  for (int j = 0; j < n; ++j) {
    space *= (inst.a[j][0] + 1) * (inst.a[j][1] + 1);
    if (space > caps.max_space) throw CapsExceeded("oracle search space above cap");
  }

  BruteForceResult best;
  bool found = false;
  std::vector<std::vector<long long>> x(n, std::vector<long long>(2, 0));
  std::vector<std::vector<long long>> y;

  for (long long r = 0; r <= rmax; ++r) {
    long long s1 = 0, s2 = 0;
    // DFS over the x grid with running group sums.
    auto enumerate = [&](auto&& self, int j) -> void {
      if (s1 > r || s2 > r) return;
      if (j == n) {
        if (s1 != r || s2 != r) return;
        // Minimal w by binary search; w = btot + r is always feasible.
        long long lo = 0, hi = btot + r;
        if (!detail::y_system_feasible(inst, r, x, hi)) return;  // cannot happen
        while (lo < hi) {
          long long mid = lo + (hi - lo) / 2;
          if (detail::y_system_feasible(inst, r, x, mid)) hi = mid;
          else lo = mid + 1;
        }
        if (!found || lo - r < best.value) {
          detail::y_system_feasible(inst, r, x, lo, &y);
          found = true;
          best.value = lo - r;
          best.witness.r = r;
          best.witness.w = lo;
          best.witness.y.assign(n, std::vector<Rational>(m));
          best.witness.x.assign(n, std::vector<Rational>(2));
          for (int jj = 0; jj < n; ++jj) {
            for (int h = 0; h < m; ++h) best.witness.y[jj][h] = y[jj][h];
            for (int ell = 0; ell < 2; ++ell) best.witness.x[jj][ell] = x[jj][ell];
          }
          best.witness.integral = true;
        }
        return;
      }
      for (long long v1 = 0; v1 <= inst.a[j][0]; ++v1) {
        if (s1 + v1 > r) break;
        for (long long v2 = 0; v2 <= inst.a[j][1]; ++v2) {
          if (s2 + v2 > r || v1 + v2 > r) break;
          x[j][0] = v1;
          x[j][1] = v2;
          s1 += v1;
          s2 += v2;
          self(self, j + 1);
          s1 -= v1;
          s2 -= v2;
        }
      }
      x[j][0] = x[j][1] = 0;
    };
    enumerate(enumerate, 0);
  }
  if (!found) throw std::logic_error("oracle found no feasible assignment; r=0, x=0 always is");
  return best;
}

struct OracleReport {
  long long ilp = 0;
  Rational lp;
  long long pipeline = 0;
  bool agree = false;
  HypergraphSolution witness;
};

// Runs all three routes to the optimum and cross-checks them, including
// the prior-art sandwich ceil(LP) <= ILP <= ceil(LP) + 1.
inline OracleReport check_conjecture(const Instance& inst, const OracleCaps& caps = {}) {
  OracleReport rep;
  BruteForceResult bf = brute_force_ilp(inst, caps);
  rep.ilp = bf.value;
  rep.witness = bf.witness;

  PipelineResult pipe = solve_pipeline(inst);
  rep.lp = pipe.lp_value;
  rep.pipeline = to_ll(num(pipe.integral.w - pipe.integral.r));

  const long long lp_ceil = to_ll(ceil_int(rep.lp));
  if (rep.ilp < lp_ceil || rep.ilp > lp_ceil + 1)
    throw std::logic_error("oracle value escapes the [ceil(LP), ceil(LP)+1] sandwich");
  rep.agree = rep.ilp == lp_ceil && rep.pipeline == lp_ceil;
  return rep;
}

inline nlohmann::json to_json(const OracleReport& rep) {
  return nlohmann::json{{"ilp", rep.ilp},
                        {"lp", to_string(rep.lp)},
                        {"pipeline", rep.pipeline},
                        {"agree", rep.agree}};
}

}  // namespace hec
