#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hec/rational.hpp"

namespace hec {

// A two-hypervertex hypergraph instance. Machines are split into two groups;
// b holds edge multiplicities per (job, machine) with machines in
// group1 ++ group2 order, and a holds hyperedge multiplicities per
// (job, group). Immutable by convention after construction.
struct Instance {
  std::vector<std::string> group1;
  std::vector<std::string> group2;
  std::vector<std::string> jobs;
  std::vector<std::vector<long long>> b;  // jobs x machines
  std::vector<std::vector<long long>> a;  // jobs x 2

  int num_jobs() const { return static_cast<int>(jobs.size()); }
  int num_machines() const { return static_cast<int>(group1.size() + group2.size()); }
  int g1_size() const { return static_cast<int>(group1.size()); }
  int g2_size() const { return static_cast<int>(group2.size()); }

  // true when machine index h (in group1 ++ group2 order) belongs to group1
  bool in_group1(int h) const { return h < g1_size(); }

  const std::string& machine_id(int h) const {
    return h < g1_size() ? group1[h] : group2[h - g1_size()];
  }
};

// Sum of hyperedge multiplicities of one group: Delta(G_ell).
inline long long delta(const Instance& inst, int ell) {
  if (ell != 1 && ell != 2) throw std::invalid_argument("group index must be 1 or 2");
  long long d = 0;
  for (const auto& row : inst.a) d += row[ell - 1];
  return d;
}

// Returns diagnostics, one string per violated invariant; empty means valid.
inline std::vector<std::string> validate_instance(const Instance& inst) {
  std::vector<std::string> out;
  const int n = inst.num_jobs();
  const int m = inst.num_machines();
  if (m < 1) out.push_back("machine count must be at least 1");

  std::set<std::string> seen;
  for (const auto& id : inst.group1)
    if (!seen.insert(id).second) out.push_back("duplicate machine id '" + id + "'");
  for (const auto& id : inst.group2) {
    if (std::find(inst.group1.begin(), inst.group1.end(), id) != inst.group1.end())
      out.push_back("groups not disjoint: machine '" + id + "' in both");
    else if (!seen.insert(id).second)
      out.push_back("duplicate machine id '" + id + "'");
  }
  seen.clear();
  for (const auto& id : inst.jobs)
    if (!seen.insert(id).second) out.push_back("duplicate job id '" + id + "'");

  if (static_cast<int>(inst.b.size()) != n)
    out.push_back("b must have one row per job");
  if (static_cast<int>(inst.a.size()) != n)
    out.push_back("a must have one row per job");
  for (int j = 0; j < static_cast<int>(inst.b.size()); ++j) {
    if (static_cast<int>(inst.b[j].size()) != m) {
      out.push_back("b row for job '" + inst.jobs[j] + "' must have one entry per machine");
      continue;
    }
    for (int h = 0; h < m; ++h)
      if (inst.b[j][h] < 0)
        out.push_back("negative b entry at (" + inst.jobs[j] + "," + inst.machine_id(h) + ")");
  }
  for (int j = 0; j < static_cast<int>(inst.a.size()); ++j) {
    if (inst.a[j].size() != 2) {
      out.push_back("a row for job '" + inst.jobs[j] + "' must have exactly 2 entries");
      continue;
    }
    for (int ell = 0; ell < 2; ++ell)
      if (inst.a[j][ell] < 0)
        out.push_back("negative a entry at (" + inst.jobs[j] + ",G" + std::to_string(ell + 1) + ")");
  }
  return out;
}

// Seed-deterministic random instance. Own bounded draw (rng() % k) so the
// output does not depend on the standard library's distribution details.
inline Instance generate_random(std::uint64_t seed, int n, int m1, int m2,
                                long long bmax, long long amax) {
  if (m1 < 1 || m2 < 1) throw std::invalid_argument("both groups must be non-empty");
  if (n < m1 + m2) throw std::invalid_argument("need n >= m1 + m2");
  if (bmax < 0 || amax < 0) throw std::invalid_argument("multiplicity caps must be >= 0");

  std::mt19937_64 rng(seed);
  auto draw = [&rng](long long hi) -> long long {
    return hi == 0 ? 0 : static_cast<long long>(rng() % static_cast<std::uint64_t>(hi + 1));
  };

  Instance inst;
  for (int h = 0; h < m1 + m2; ++h) {
    std::string id = "M" + std::to_string(h + 1);
    (h < m1 ? inst.group1 : inst.group2).push_back(id);
  }
  for (int j = 0; j < n; ++j) inst.jobs.push_back("J" + std::to_string(j + 1));
  inst.b.assign(n, std::vector<long long>(m1 + m2, 0));
  inst.a.assign(n, std::vector<long long>(2, 0));
  for (int j = 0; j < n; ++j) {
    for (int h = 0; h < m1 + m2; ++h) inst.b[j][h] = draw(bmax);
    inst.a[j][0] = draw(amax);
    inst.a[j][1] = draw(amax);
  }
  return inst;
}

// --- serialization ---

inline nlohmann::json to_json(const Instance& inst) {
  return nlohmann::json{{"jobs", inst.jobs},
                        {"group1", inst.group1},
                        {"group2", inst.group2},
                        {"b", inst.b},
                        {"a", inst.a}};
}

inline Instance instance_from_json(const nlohmann::json& doc) {
  Instance inst;
  for (const char* key : {"jobs", "group1", "group2", "b", "a"})
    if (!doc.contains(key))
      throw std::invalid_argument(std::string("instance document: missing field '") + key + "'");
  try {
    doc.at("jobs").get_to(inst.jobs);
    doc.at("group1").get_to(inst.group1);
    doc.at("group2").get_to(inst.group2);
    doc.at("b").get_to(inst.b);
    doc.at("a").get_to(inst.a);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance document: ") + e.what());
  }
  return inst;
}

inline std::string serialize_instance(const Instance& inst) { return to_json(inst).dump(2); }

inline Instance parse_instance(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("instance document: ") + e.what());
  }
  return instance_from_json(doc);
}

}  // namespace hec
