#pragma once

#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "hec/instance.hpp"
#include "hec/rational.hpp"

namespace hec {

// An assignment (y, x, r, w), fractional or integral. y is the part-(d)
// load per (job, machine), x the part-(b) load per (job, group).
struct HypergraphSolution {
  std::vector<std::vector<Rational>> y;  // jobs x machines
  std::vector<std::vector<Rational>> x;  // jobs x 2
  Rational r;
  Rational w;
  bool integral = false;

  bool all_entries_integral() const {
    if (!is_integer(r) || !is_integer(w)) return false;
    for (const auto& row : y)
      for (const auto& v : row)
        if (!is_integer(v)) return false;
    for (const auto& row : x)
      for (const auto& v : row)
        if (!is_integer(v)) return false;
    return true;
  }
};

namespace detail {
inline Rational row_sum(const std::vector<Rational>& row, int from, int to) {
  Rational s = 0;
  for (int i = from; i < to; ++i) s += row[i];
  return s;
}
}  // namespace detail

// Checks the constraint families (2)-(11) exactly. Returns one diagnostic
// per violated constraint, labeled B2..B11 with the offending index.
inline std::vector<std::string> validate_solution(const Instance& inst,
                                                  const HypergraphSolution& sol) {
  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  if (static_cast<int>(sol.y.size()) != n || static_cast<int>(sol.x.size()) != n)
    throw std::invalid_argument("solution dimensions do not match instance");
  for (int j = 0; j < n; ++j)
    if (static_cast<int>(sol.y[j].size()) != m || sol.x[j].size() != 2)
      throw std::invalid_argument("solution dimensions do not match instance");

  std::vector<std::string> out;
  const Rational d1 = delta(inst, 1), d2 = delta(inst, 2);
  const Rational &r = sol.r, &w = sol.w;

  // (2),(3): machine load window
  for (int h = 0; h < m; ++h) {
    Rational load = 0, bsum = 0;
    for (int j = 0; j < n; ++j) {
      load += sol.y[j][h];
      bsum += inst.b[j][h];
    }
    const bool g1 = inst.in_group1(h);
    const char* label = g1 ? "B2" : "B3";
    const Rational lower = bsum - ((g1 ? d2 : d1) - r);
    if (load < lower)
      out.push_back(std::string(label) + " lower violated at machine " + inst.machine_id(h));
    if (load > w)
      out.push_back(std::string(label) + " upper violated at machine " + inst.machine_id(h));
  }
  // (4): job load in part (d)
  for (int j = 0; j < n; ++j)
    if (detail::row_sum(sol.y[j], 0, m) > w)
      out.push_back("B4 violated at job " + inst.jobs[j]);
  // (5): per-edge bounds
  for (int j = 0; j < n; ++j)
    for (int h = 0; h < m; ++h)
      if (sol.y[j][h] < 0 || sol.y[j][h] > inst.b[j][h])
        out.push_back("B5 violated at (" + inst.jobs[j] + "," + inst.machine_id(h) + ")");
  // (6),(7): group totals in part (b)
  for (int ell = 0; ell < 2; ++ell) {
    Rational s = 0;
    for (int j = 0; j < n; ++j) s += sol.x[j][ell];
    if (s != r) out.push_back(std::string(ell == 0 ? "B6" : "B7") + " violated: sum != r");
  }
  // (8),(9)
  for (int j = 0; j < n; ++j) {
    if (sol.x[j][0] + sol.x[j][1] > r)
      out.push_back("B8 violated at job " + inst.jobs[j]);
    for (int ell = 0; ell < 2; ++ell)
      if (sol.x[j][ell] < 0 || sol.x[j][ell] > inst.a[j][ell])
        out.push_back("B9 violated at (" + inst.jobs[j] + ",G" + std::to_string(ell + 1) + ")");
  }
  // (10),(11): part (a)/(c) degree bounds
  for (int j = 0; j < n; ++j) {
    Rational res1 = 0, res2 = 0;  // residual b - y per group
    for (int h = 0; h < m; ++h)
      (inst.in_group1(h) ? res1 : res2) += Rational(inst.b[j][h]) - sol.y[j][h];
    if (res1 + inst.a[j][1] - sol.x[j][1] > d2 - r)
      out.push_back("B10 violated at job " + inst.jobs[j]);
    if (res2 + inst.a[j][0] - sol.x[j][0] > d1 - r)
      out.push_back("B11 violated at job " + inst.jobs[j]);
  }

  if (sol.integral && !sol.all_entries_integral())
    out.push_back("integral flag set but solution has fractional entries");
  return out;
}

// Record of dummy jobs added by the machine saturation transform.
struct SaturationRecord {
  // (dummy job id, machine id, multiplicity)
  std::vector<std::tuple<std::string, std::string, long long>> added_jobs;
  int original_job_count = 0;

  bool is_dummy(const std::string& job_id) const {
    for (const auto& [id, mach, mult] : added_jobs)
      if (id == job_id) return true;
    return false;
  }
};

// Machine saturation: adds one dummy job per slack machine so that the lower
// and upper bounds of the machine-load window coincide everywhere, i.e.
// every machine carries exactly w in part (d). Requires integral w - r so
// dummy multiplicities are integral.
inline std::tuple<Instance, HypergraphSolution, SaturationRecord> saturate(
    const Instance& inst, const HypergraphSolution& sol) {
  if (!is_integer(sol.w - sol.r))
    throw std::invalid_argument("saturate requires integral w - r");

  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  Instance ext = inst;
  HypergraphSolution extsol = sol;
  SaturationRecord rec;
  rec.original_job_count = n;

  const Rational d1 = delta(inst, 1), d2 = delta(inst, 2);
  for (int h = 0; h < m; ++h) {
    Rational bsum = 0, load = 0;
    for (int j = 0; j < n; ++j) {
      bsum += inst.b[j][h];
      load += sol.y[j][h];
    }
    const Rational opp = inst.in_group1(h) ? d2 : d1;
    const Rational mult = sol.w - bsum + (opp - sol.r);
    if (mult == 0) continue;
    if (mult < 0 || !is_integer(mult))
      throw std::invalid_argument("saturate: infeasible input solution at machine " +
                                  inst.machine_id(h));
    std::string id = "sat:" + inst.machine_id(h);
    ext.jobs.push_back(id);
    ext.b.emplace_back(m, 0);
    ext.b.back()[h] = to_ll(num(mult));
    ext.a.push_back({0, 0});
    extsol.y.emplace_back(m, Rational(0));
    extsol.y.back()[h] = sol.w - load;
    extsol.x.push_back({Rational(0), Rational(0)});
    rec.added_jobs.emplace_back(id, inst.machine_id(h), to_ll(num(mult)));
  }
  return {std::move(ext), std::move(extsol), std::move(rec)};
}

// --- serialization ---

inline nlohmann::json to_json(const HypergraphSolution& sol) {
  auto mat = [](const std::vector<std::vector<Rational>>& rows) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& row : rows) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& v : row) r.push_back(to_string(v));
      out.push_back(std::move(r));
    }
    return out;
  };
  return nlohmann::json{{"r", to_string(sol.r)},
                        {"w", to_string(sol.w)},
                        {"x", mat(sol.x)},
                        {"y", mat(sol.y)},
                        {"integral", sol.integral}};
}

inline HypergraphSolution solution_from_json(const nlohmann::json& doc) {
  for (const char* key : {"r", "w", "x", "y", "integral"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("solution document: missing field '") + key + "'");
  HypergraphSolution sol;
  try {
    sol.r = parse_rational(doc.at("r").get<std::string>());
    sol.w = parse_rational(doc.at("w").get<std::string>());
    auto mat = [](const nlohmann::json& rows) {
      std::vector<std::vector<Rational>> out;
      for (const auto& row : rows) {
        out.emplace_back();
        for (const auto& v : row) out.back().push_back(parse_rational(v.get<std::string>()));
      }
      return out;
    };
    sol.x = mat(doc.at("x"));
    sol.y = mat(doc.at("y"));
    sol.integral = doc.at("integral").get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("solution document: ") + e.what());
  }
  return sol;
}

inline std::string serialize_solution(const HypergraphSolution& sol) {
  return to_json(sol).dump(2);
}

inline HypergraphSolution parse_solution(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("solution document: ") + e.what());
  }
  return solution_from_json(doc);
}

}  // namespace hec
