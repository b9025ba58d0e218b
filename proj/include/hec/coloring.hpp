#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hec/flow.hpp"
#include "hec/instance.hpp"
#include "hec/lp_model.hpp"
#include "hec/rational.hpp"
#include "hec/rounding.hpp"
#include "hec/solution.hpp"

namespace hec {

// One color class: a matching that may contain at most one hyperedge per
// group. A hyperedge (ell, j) occupies every machine of group ell.
struct ColorClass {
  std::vector<std::pair<std::string, std::string>> edges;  // (job, machine)
  std::vector<std::pair<int, std::string>> hyperedges;     // (group 1|2, job)
  Rational multiplicity;
  char part = 'd';  // 'a' | 'b' | 'c' | 'd'
};

struct Coloring {
  std::vector<ColorClass> classes;

  Rational part_total(char part) const {
    Rational t = 0;
    for (const auto& c : classes)
      if (c.part == part) t += c.multiplicity;
    return t;
  }

  Rational total() const {
    Rational t = 0;
    for (const auto& c : classes) t += c.multiplicity;
    return t;
  }
};

// --- constructive Koenig edge coloring of a bipartite multigraph ---

struct MatchClass {
  std::vector<std::pair<int, int>> edges;  // (left, right)
  long long multiplicity = 0;
};

namespace detail {

// Matching on the positive-residual subgraph that covers every mandatory
// vertex and has maximum cardinality; empty optional when none exists.
template <typename MultOf>
inline std::vector<std::pair<int, int>> cover_matching(int nl, int nr, MultOf positive,
                                                       const std::vector<char>& must_l,
                                                       const std::vector<char>& must_r) {
  FlowNetwork net;
  const int S = net.add_node("S");
  const int T = net.add_node("T");
  std::vector<int> ln(nl), rn(nr);
  for (int i = 0; i < nl; ++i) ln[i] = net.add_node();
  for (int k = 0; k < nr; ++k) rn[k] = net.add_node();
  for (int i = 0; i < nl; ++i) net.add_arc(S, ln[i], must_l[i] ? 1 : 0, 1);
  std::vector<std::pair<std::pair<int, int>, int>> edge_arcs;
  for (int i = 0; i < nl; ++i)
    for (int k = 0; k < nr; ++k)
      if (positive(i, k)) edge_arcs.push_back({{i, k}, net.add_arc(ln[i], rn[k], 0, 1)});
  for (int k = 0; k < nr; ++k) net.add_arc(rn[k], T, must_r[k] ? 1 : 0, 1);

  CirculationResult res = max_flow_with_bounds(net, S, T);
  if (!res.feasible)
    throw std::logic_error("no matching covers all mandatory vertices; degree bound breached");
  std::vector<std::pair<int, int>> matched;
  for (const auto& [edge, arc] : edge_arcs)
    if (res.flow.value[arc] == 1) matched.push_back(edge);
  return matched;
}

}  // namespace detail

// Decomposes an integral bipartite multigraph (multiplicities mult[left][right],
// max degree <= colors) into matchings whose multiplicities total exactly
// `colors`. Every vertex of degree equal to the remaining color budget is
// covered by every subsequent matching, which keeps the decomposition exact.
inline std::vector<MatchClass> edge_color_bipartite(int nl, int nr,
                                                    std::vector<std::vector<long long>> mult,
                                                    long long colors) {
  std::vector<long long> degl(nl, 0), degr(nr, 0);
  for (int i = 0; i < nl; ++i)
    for (int k = 0; k < nr; ++k) {
      if (mult[i][k] < 0) throw std::invalid_argument("negative multiplicity");
      degl[i] += mult[i][k];
      degr[k] += mult[i][k];
    }
  for (long long d : degl)
    if (d > colors) throw std::invalid_argument("left degree exceeds color budget");
  for (long long d : degr)
    if (d > colors) throw std::invalid_argument("right degree exceeds color budget");

  std::vector<MatchClass> classes;
  long long remaining = colors;
  const int step_cap = nl * nr + nl + nr + 4;
  for (int step = 0; step < step_cap; ++step) {
    bool any = false;
    for (int i = 0; i < nl && !any; ++i)
      for (int k = 0; k < nr; ++k)
        if (mult[i][k] > 0) {
          any = true;
          break;
        }
    if (!any) break;

    std::vector<char> full_l(nl), full_r(nr);
    for (int i = 0; i < nl; ++i) full_l[i] = degl[i] == remaining;
    for (int k = 0; k < nr; ++k) full_r[k] = degr[k] == remaining;
    auto matched = detail::cover_matching(
        nl, nr, [&](int i, int k) { return mult[i][k] > 0; }, full_l, full_r);

    long long t = remaining;
    std::vector<char> in_l(nl, 0), in_r(nr, 0);
    for (auto [i, k] : matched) {
      t = std::min(t, mult[i][k]);
      in_l[i] = in_r[k] = 1;
    }
    for (int i = 0; i < nl; ++i)
      if (!in_l[i]) t = std::min(t, remaining - degl[i]);
    for (int k = 0; k < nr; ++k)
      if (!in_r[k]) t = std::min(t, remaining - degr[k]);
    if (t <= 0) throw std::logic_error("stalled matching extraction");

    MatchClass cls;
    cls.edges = matched;
    cls.multiplicity = t;
    for (auto [i, k] : matched) {
      mult[i][k] -= t;
      degl[i] -= t;
      degr[k] -= t;
    }
    remaining -= t;
    classes.push_back(std::move(cls));
  }
  for (int i = 0; i < nl; ++i)
    for (int k = 0; k < nr; ++k)
      if (mult[i][k] != 0) throw std::logic_error("extraction left residual multiplicity");
  if (remaining > 0) classes.push_back({{}, remaining});  // idle colors
  return classes;
}

// --- fractional column decomposition of part (d) ---

// A column: a matching covering every machine, with rational multiplicity.
struct Column {
  std::vector<std::pair<int, int>> edges;  // (job, machine) indices
  Rational multiplicity;
};

// Splits a machine-saturated fractional y (every machine load exactly w,
// job loads <= w) into columns with total multiplicity w; jobs at full load
// are matched in every column. Reconstruction of y is exact.
inline std::vector<Column> decompose_fractional(const Instance& inst,
                                                std::vector<std::vector<Rational>> y,
                                                const Rational& w,
                                                const std::set<int>& tight_jobs) {
  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  std::vector<Rational> job_load(n, Rational(0));
  for (int j = 0; j < n; ++j)
    for (int h = 0; h < m; ++h) job_load[j] += y[j][h];
  for (int h = 0; h < m; ++h) {
    Rational load = 0;
    for (int j = 0; j < n; ++j) load += y[j][h];
    if (load != w) throw std::invalid_argument("machine not saturated: " + inst.machine_id(h));
  }
  for (int j = 0; j < n; ++j) {
    if (job_load[j] > w) throw std::invalid_argument("job load above w: " + inst.jobs[j]);
    if ((job_load[j] == w) != (tight_jobs.count(j) > 0))
      throw std::invalid_argument("tight job set does not match loads");
  }

  std::vector<Column> columns;
  Rational w_rem = w;
  const int step_cap = n * m + n + 4;
  for (int step = 0; step < step_cap && w_rem > 0; ++step) {
    std::vector<char> must_m(m, 1), must_j(n, 0);
    for (int j = 0; j < n; ++j) must_j[j] = job_load[j] == w_rem;
    // left side: machines (all mandatory), right side: jobs
    auto matched = detail::cover_matching(
        m, n, [&](int h, int j) { return y[j][h] > 0; }, must_m, must_j);

    Rational eps = w_rem;
    std::vector<char> in_j(n, 0);
    Column col;
    for (auto [h, j] : matched) {
      eps = std::min(eps, y[j][h]);
      in_j[j] = 1;
      col.edges.emplace_back(j, h);
    }
    for (int j = 0; j < n; ++j)
      if (!in_j[j]) eps = std::min(eps, Rational(w_rem - job_load[j]));
    if (eps <= 0) throw std::logic_error("stalled column extraction");

    col.multiplicity = eps;
    for (auto [j, h] : col.edges) {
      y[j][h] -= eps;
      job_load[j] -= eps;
    }
    w_rem -= eps;
    columns.push_back(std::move(col));
  }
  if (w_rem != 0) throw std::logic_error("column extraction did not exhaust w");
  return columns;
}

// --- four-part assembly and verification ---

namespace detail {

// Translates Koenig classes into color classes. left_hyper[i] >= 0 marks
// left vertex i as the gamma supernode of that group; left_machine[i]
// otherwise names the machine column.
inline void emit_classes(const Instance& inst, const std::vector<MatchClass>& kc, char part,
                         const std::vector<int>& left_hyper,
                         const std::vector<int>& left_machine, Coloring& out) {
  for (const auto& cls : kc) {
    ColorClass cc;
    cc.part = part;
    cc.multiplicity = cls.multiplicity;
    for (auto [i, j] : cls.edges) {
      if (left_hyper[i] > 0)
        cc.hyperedges.emplace_back(left_hyper[i], inst.jobs[j]);
      else
        cc.edges.emplace_back(inst.jobs[j], inst.machine_id(left_machine[i]));
    }
    std::sort(cc.edges.begin(), cc.edges.end());
    std::sort(cc.hyperedges.begin(), cc.hyperedges.end());
    out.classes.push_back(std::move(cc));
  }
}

}  // namespace detail

// Builds the optimal coloring from an integral feasible solution as four
// bipartite coloring subproblems with budgets
// (Delta1 - r, r, Delta2 - r, w); the degree bounds of the feasibility
// constraints make each subproblem colorable within its budget.
inline Coloring assemble_coloring(const Instance& inst, const HypergraphSolution& sol) {
  if (!sol.integral || !sol.all_entries_integral())
    throw std::invalid_argument("assemble_coloring needs an integral solution");
  if (auto bad = validate_solution(inst, sol); !bad.empty())
    throw std::invalid_argument("infeasible solution: " + bad.front());

  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  const long long d1 = delta(inst, 1), d2 = delta(inst, 2);
  const long long r = to_ll(num(sol.r)), w = to_ll(num(sol.w));
  auto yi = [&](int j, int h) { return to_ll(num(sol.y[j][h])); };
  auto xi = [&](int j, int ell) { return to_ll(num(sol.x[j][ell])); };

  Coloring out;

  // part (d): plain edges, budget w
  {
    std::vector<std::vector<long long>> mult(m, std::vector<long long>(n));
    std::vector<int> hyper(m, 0), mach(m);
    for (int h = 0; h < m; ++h) {
      mach[h] = h;
      for (int j = 0; j < n; ++j) mult[h][j] = yi(j, h);
    }
    detail::emit_classes(inst, edge_color_bipartite(m, n, mult, w), 'd', hyper, mach, out);
  }
  // part (b): paired hyperedges, budget r
  {
    std::vector<std::vector<long long>> mult(2, std::vector<long long>(n));
    for (int j = 0; j < n; ++j) {
      mult[0][j] = xi(j, 0);
      mult[1][j] = xi(j, 1);
    }
    detail::emit_classes(inst, edge_color_bipartite(2, n, mult, r), 'b', {1, 2}, {-1, -1}, out);
  }
  // parts (a) and (c): one gamma supernode plus the opposite group's machines
  for (int ell = 0; ell < 2; ++ell) {
    const long long budget = (ell == 0 ? d1 : d2) - r;
    std::vector<int> hyper{ell + 1}, mach{-1};
    std::vector<std::vector<long long>> mult;
    mult.emplace_back(n);
    for (int j = 0; j < n; ++j) mult[0][j] = inst.a[j][ell] - xi(j, ell);
    for (int h = 0; h < m; ++h) {
      if (inst.in_group1(h) == (ell == 0)) continue;  // opposite group only
      hyper.push_back(0);
      mach.push_back(h);
      mult.emplace_back(n);
      for (int j = 0; j < n; ++j) mult.back()[j] = inst.b[j][h] - yi(j, h);
    }
    detail::emit_classes(inst,
                         edge_color_bipartite(static_cast<int>(mult.size()), n, mult, budget),
                         ell == 0 ? 'a' : 'c', hyper, mach, out);
  }
  return out;
}

// Full coloring validity check; empty result certifies the coloring.
inline std::vector<std::string> verify_coloring(const Instance& inst, const Coloring& col) {
  std::vector<std::string> out;
  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  std::map<std::string, int> job_ix, mach_ix;
  for (int j = 0; j < n; ++j) job_ix[inst.jobs[j]] = j;
  for (int h = 0; h < m; ++h) mach_ix[inst.machine_id(h)] = h;

  std::vector<std::vector<Rational>> edge_total(n, std::vector<Rational>(m, Rational(0)));
  std::vector<std::vector<Rational>> hyper_total(n, std::vector<Rational>(2, Rational(0)));

  int idx = 0;
  for (const auto& cls : col.classes) {
    const std::string where = "class " + std::to_string(idx++);
    if (cls.multiplicity <= 0) out.push_back(where + ": non-positive multiplicity");
    if (std::string("abcd").find(cls.part) == std::string::npos)
      out.push_back(where + ": unknown part tag");
    std::set<int> used_machines, used_jobs, used_groups;
    for (const auto& [g, job] : cls.hyperedges) {
      if ((g != 1 && g != 2) || !job_ix.count(job)) {
        out.push_back(where + ": malformed hyperedge");
        continue;
      }
      if (!used_groups.insert(g).second) out.push_back(where + ": group used twice");
      if (!used_jobs.insert(job_ix[job]).second) out.push_back(where + ": job used twice");
      hyper_total[job_ix[job]][g - 1] += cls.multiplicity;
    }
    for (const auto& [job, mach] : cls.edges) {
      if (!job_ix.count(job) || !mach_ix.count(mach)) {
        out.push_back(where + ": malformed edge");
        continue;
      }
      const int h = mach_ix[mach];
      const int g = inst.in_group1(h) ? 1 : 2;
      if (used_groups.count(g))
        out.push_back(where + ": machine " + mach + " occupied by a hyperedge");
      if (!used_machines.insert(h).second) out.push_back(where + ": machine used twice");
      if (!used_jobs.insert(job_ix[job]).second) out.push_back(where + ": job used twice");
      edge_total[job_ix[job]][h] += cls.multiplicity;
    }
  }

  for (int j = 0; j < n; ++j) {
    for (int h = 0; h < m; ++h)
      if (edge_total[j][h] != inst.b[j][h])
        out.push_back("edge multiplicity total mismatch at (" + inst.jobs[j] + "," +
                      inst.machine_id(h) + ")");
    for (int ell = 0; ell < 2; ++ell)
      if (hyper_total[j][ell] != inst.a[j][ell])
        out.push_back("hyperedge multiplicity total mismatch at (" + inst.jobs[j] + ",G" +
                      std::to_string(ell + 1) + ")");
  }

  const Rational r = col.part_total('b'), w = col.part_total('d');
  if (col.part_total('a') != Rational(delta(inst, 1)) - r)
    out.push_back("part (a) total differs from Delta(G1) - r");
  if (col.part_total('c') != Rational(delta(inst, 2)) - r)
    out.push_back("part (c) total differs from Delta(G2) - r");
  if (col.total() != Rational(delta(inst, 1) + delta(inst, 2)) - r + w)
    out.push_back("class total differs from Delta(G1) + Delta(G2) - r + w");
  return out;
}

// Removes dummy-job assignments introduced by saturation; class count and
// multiplicities are preserved.
inline Coloring desaturate(const Coloring& col, const SaturationRecord& rec) {
  Coloring out = col;
  for (auto& cls : out.classes) {
    for (const auto& [g, job] : cls.hyperedges)
      if (rec.is_dummy(job))
        throw std::invalid_argument("dummy job carries a hyperedge: " + job);
    std::erase_if(cls.edges, [&](const auto& e) { return rec.is_dummy(e.first); });
  }
  return out;
}

// Exact chromatic number via the integral pipeline (closed form when a
// group is empty).
inline long long chromatic_number(const Instance& inst) {
  if (inst.group1.empty() || inst.group2.empty()) return chromatic_closed_form(inst);
  PipelineResult res = solve_pipeline(inst);
  return delta(inst, 1) + delta(inst, 2) +
         to_ll(num(res.integral.w - res.integral.r));
}

// --- serialization ---

inline nlohmann::json to_json(const Coloring& col) {
  nlohmann::json classes = nlohmann::json::array();
  for (const auto& cls : col.classes) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& [job, mach] : cls.edges) edges.push_back({job, mach});
    nlohmann::json hyper = nlohmann::json::array();
    for (const auto& [g, job] : cls.hyperedges) hyper.push_back({g, job});
    classes.push_back({{"part", std::string(1, cls.part)},
                       {"multiplicity", to_string(cls.multiplicity)},
                       {"edges", std::move(edges)},
                       {"hyperedges", std::move(hyper)}});
  }
  return nlohmann::json{{"classes", std::move(classes)}};
}

inline Coloring coloring_from_json(const nlohmann::json& doc) {
  if (!doc.contains("classes"))
    throw std::invalid_argument("coloring document: missing field 'classes'");
  Coloring col;
  try {
    for (const auto& c : doc.at("classes")) {
      ColorClass cc;
      const std::string part = c.at("part").get<std::string>();
      if (part.size() != 1) throw std::invalid_argument("coloring document: bad part tag");
      cc.part = part[0];
      cc.multiplicity = parse_rational(c.at("multiplicity").get<std::string>());
      for (const auto& e : c.at("edges"))
        cc.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
      for (const auto& h : c.at("hyperedges"))
        cc.hyperedges.emplace_back(h.at(0).get<int>(), h.at(1).get<std::string>());
      col.classes.push_back(std::move(cc));
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("coloring document: ") + e.what());
  }
  return col;
}

inline std::string serialize_coloring(const Coloring& col) { return to_json(col).dump(2); }

inline Coloring parse_coloring(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("coloring document: ") + e.what());
  }
  return coloring_from_json(doc);
}

}  // namespace hec
