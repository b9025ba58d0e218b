// Acceptance gate: one pass/fail line per criterion. Exit 0 iff all pass.

#include <cstdio>
#include <exception>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "hec/coloring.hpp"
#include "hec/flow.hpp"
#include "hec/instance.hpp"
#include "hec/lp.hpp"
#include "hec/lp_model.hpp"
#include "hec/oracle.hpp"
#include "hec/rounding.hpp"
#include "hec/solution.hpp"

using namespace hec;

namespace {

int failures = 0;

void report(int number, const std::string& what, bool ok, const std::string& detail = "") {
  std::printf("%s [%d] %s%s%s\n", ok ? "PASS" : "FAIL", number, what.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  if (!ok) ++failures;
}

Instance random_instance(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 7919);
  const int m = 2 + int(rng() % 5);            // 2..6 machines
  const int m1 = 1 + int(rng() % (m - 1));     // both groups non-empty
  const int n = m + int(rng() % (8 - m + 1));  // m..8 jobs
  return generate_random(seed, n, m1, m - m1, 4, 4);
}

Instance random_tiny(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 104729);
  const int m = 2 + int(rng() % 3);            // 2..4
  const int m1 = 1 + int(rng() % (m - 1));
  const int n = m + int(rng() % (4 - m + 1));  // m..4
  return generate_random(seed, n, m1, m - m1, 2, 2);
}

Instance random_one_group(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 31337);
  Instance inst;
  const int m = 1 + int(rng() % 4);
  const int n = 1 + int(rng() % 5);
  const bool use_g1 = rng() % 2 == 0;
  for (int h = 0; h < m; ++h)
    (use_g1 ? inst.group1 : inst.group2).push_back("M" + std::to_string(h + 1));
  for (int j = 0; j < n; ++j) inst.jobs.push_back("J" + std::to_string(j + 1));
  inst.b.assign(n, std::vector<long long>(m, 0));
  inst.a.assign(n, std::vector<long long>(2, 0));
  for (int j = 0; j < n; ++j) {
    for (int h = 0; h < m; ++h) inst.b[j][h] = rng() % 4;
    inst.a[j][use_g1 ? 0 : 1] = rng() % 3;
  }
  return inst;
}

FlowNetwork random_network(std::uint64_t seed) {
  std::mt19937_64 rng(seed * 6151);
  FlowNetwork net;
  const int nodes = 2 + int(rng() % 7);
  for (int v = 0; v < nodes; ++v) net.add_node();
  const int arcs = 1 + int(rng() % 16);
  for (int i = 0; i < arcs; ++i) {
    const int u = int(rng() % nodes), v = int(rng() % nodes);
    const long long lo = rng() % 4;
    const long long hi = lo + rng() % 5;
    net.add_arc(u, v, lo, hi);
  }
  return net;
}

}  // namespace

int main() {
  // Shared artifacts across criteria.
  std::vector<Instance> batch;
  std::vector<PipelineResult> pipes;
  bool c1 = true, c3 = true, c4 = true, c6 = true, c9 = true;
  std::string c1_note, c4_note, c6_note, c9_note;

  // [1] 200 seeded instances: integral pipeline output, exactly feasible,
  //     objective gap equal to the exact LP ceiling.
  try {
    for (std::uint64_t seed = 1; seed <= 200 && c1; ++seed) {
      batch.push_back(random_instance(seed));
      pipes.push_back(solve_pipeline(batch.back()));
      const PipelineResult& p = pipes.back();
      if (!p.integral.integral || !p.integral.all_entries_integral() ||
          !validate_solution(batch.back(), p.integral).empty() ||
          p.integral.w - p.integral.r != Rational(ceil_int(p.lp_value))) {
        c1 = false;
        c1_note = "seed " + std::to_string(seed);
      }
    }
  } catch (const std::exception& e) {
    c1 = false;
    c1_note = e.what();
  }
  report(1, "pipeline: 200 random instances, integral + feasible + gap = ceil(LP)", c1, c1_note);

  // [2] 50 tiny instances against the exhaustive oracle.
  bool c2 = true;
  std::string c2_note;
  std::vector<OracleReport> tiny_reports;
  try {
    for (std::uint64_t seed = 1; seed <= 50 && c2; ++seed) {
      Instance inst = random_tiny(seed);
      tiny_reports.push_back(check_conjecture(inst));
      if (!tiny_reports.back().agree ||
          !validate_solution(inst, tiny_reports.back().witness).empty()) {
        c2 = false;
        c2_note = "seed " + std::to_string(seed);
      }
    }
  } catch (const std::exception& e) {
    c2 = false;
    c2_note = e.what();
  }
  report(2, "oracle: 50 tiny instances, brute force = pipeline = ceil(LP)", c2, c2_note);

  // [3] r integral at the auxiliary optimum in every pipeline run above.
  for (const PipelineResult& p : pipes)
    if (!is_integer(p.aux_optimum.r)) c3 = false;
  report(3, "min-r program: integral r at the optimum in all runs", c3 && c1 && c2);

  // [4] coloring assembly: verified classes, total = Delta1 + Delta2 + ceil(LP).
  try {
    for (size_t i = 0; i < pipes.size() && c4; ++i) {
      Coloring col = assemble_coloring(batch[i], pipes[i].integral);
      const Rational want = Rational(delta(batch[i], 1) + delta(batch[i], 2)) +
                            Rational(ceil_int(pipes[i].lp_value));
      if (!verify_coloring(batch[i], col).empty() || col.total() != want) {
        c4 = false;
        c4_note = "instance " + std::to_string(i + 1);
      }
    }
  } catch (const std::exception& e) {
    c4 = false;
    c4_note = e.what();
  }
  report(4, "colorings verified with chi' classes on every criterion-1 instance", c4 && c1,
         c4_note);

  // [5] fractional column decomposition of 50 saturated min-r optima.
  bool c5 = true;
  std::string c5_note;
  try {
    for (size_t i = 0; i < 50 && i < pipes.size() && c5; ++i) {
      auto [ext, extsol, rec] = saturate(batch[i], pipes[i].aux_optimum);
      const Rational w = extsol.w;
      const int n = ext.num_jobs(), m = ext.num_machines();
      std::set<int> tight;
      for (int j = 0; j < n; ++j) {
        Rational load = 0;
        for (int h = 0; h < m; ++h) load += extsol.y[j][h];
        if (load == w) tight.insert(j);
      }
      auto cols = decompose_fractional(ext, extsol.y, w, tight);
      Rational total = 0;
      std::vector<std::vector<Rational>> rebuilt(n, std::vector<Rational>(m, Rational(0)));
      for (const auto& c : cols) {
        total += c.multiplicity;
        std::set<int> jobs_in;
        for (const auto& [j, h] : c.edges) {
          rebuilt[j][h] += c.multiplicity;
          jobs_in.insert(j);
        }
        for (int j : tight)
          if (!jobs_in.count(j)) c5 = false;
      }
      if (total != w || rebuilt != extsol.y ||
          cols.size() > static_cast<size_t>(n) * m + n) c5 = false;
      if (!c5) c5_note = "instance " + std::to_string(i + 1);
    }
  } catch (const std::exception& e) {
    c5 = false;
    c5_note = e.what();
  }
  report(5, "column decomposition: exact reconstruction, total w, tight jobs covered", c5 && c1,
         c5_note);

  // [6] independent optimality certificates for every simplex solve above.
  try {
    for (size_t i = 0; i < pipes.size() && c6; ++i)
      if (!check_certificate(pipes[i].relaxation, pipes[i].relaxation_sol).empty() ||
          !check_certificate(pipes[i].aux, pipes[i].aux_sol).empty()) {
        c6 = false;
        c6_note = "instance " + std::to_string(i + 1);
      }
  } catch (const std::exception& e) {
    c6 = false;
    c6_note = e.what();
  }
  report(6, "KKT certificates on all 400 exact LP solves", c6 && c1, c6_note);

  // [7] 500 random bounded-arc networks: a flow or a Hoffman cut, verified.
  bool c7 = true;
  std::string c7_note;
  try {
    for (std::uint64_t seed = 1; seed <= 500 && c7; ++seed) {
      FlowNetwork net = random_network(seed);
      CirculationResult res = feasible_circulation(net);
      const bool ok = res.feasible ? check_circulation(net, res.flow)
                                   : check_cut_certificate(net, res.cut);
      if (!ok) {
        c7 = false;
        c7_note = "seed " + std::to_string(seed);
      }
    }
  } catch (const std::exception& e) {
    c7 = false;
    c7_note = e.what();
  }
  report(7, "circulations: 500 random networks, flow or cut certificate checks out", c7, c7_note);

  // [8] closed form for one empty group matches a constructed, verified coloring.
  bool c8 = true;
  std::string c8_note;
  try {
    for (std::uint64_t seed = 1; seed <= 20 && c8; ++seed) {
      Instance inst = random_one_group(seed);
      const int n = inst.num_jobs(), m = inst.num_machines();
      long long maxdeg = 0;
      for (int j = 0; j < n; ++j) {
        long long s = 0;
        for (long long v : inst.b[j]) s += v;
        maxdeg = std::max(maxdeg, s);
      }
      for (int h = 0; h < m; ++h) {
        long long s = 0;
        for (int j = 0; j < n; ++j) s += inst.b[j][h];
        maxdeg = std::max(maxdeg, s);
      }
      Coloring col;
      for (const MatchClass& mc : edge_color_bipartite(n, m, inst.b, maxdeg)) {
        ColorClass cls;
        cls.part = 'd';
        cls.multiplicity = mc.multiplicity;
        for (const auto& [j, h] : mc.edges) cls.edges.push_back({inst.jobs[j], inst.machine_id(h)});
        col.classes.push_back(std::move(cls));
      }
      const int ell = inst.group2.empty() ? 0 : 1;
      for (int j = 0; j < n; ++j)
        if (inst.a[j][ell] > 0) {
          ColorClass cls;
          cls.part = ell == 0 ? 'a' : 'c';
          cls.multiplicity = inst.a[j][ell];
          cls.hyperedges.push_back({ell + 1, inst.jobs[j]});
          col.classes.push_back(std::move(cls));
        }
      if (!verify_coloring(inst, col).empty() ||
          col.total() != Rational(chromatic_closed_form(inst)) ||
          chromatic_number(inst) != chromatic_closed_form(inst)) {
        c8 = false;
        c8_note = "seed " + std::to_string(seed);
      }
    }
  } catch (const std::exception& e) {
    c8 = false;
    c8_note = e.what();
  }
  report(8, "empty-group closed form realized by an explicit verified coloring", c8, c8_note);

  // [9] every fractional min-r optimum lies in the projected system.
  try {
    for (size_t i = 0; i < pipes.size() && c9; ++i) {
      const HypergraphSolution& s = pipes[i].aux_optimum;
      if (!q_violations(batch[i], s.y, s.r, s.w).empty()) {
        c9 = false;
        c9_note = "instance " + std::to_string(i + 1);
      }
    }
  } catch (const std::exception& e) {
    c9 = false;
    c9_note = e.what();
  }
  report(9, "projection membership of all fractional min-r optima", c9 && c1, c9_note);

  return failures == 0 ? 0 : 1;
}
