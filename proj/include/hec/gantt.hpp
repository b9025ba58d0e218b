#pragma once

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hec/coloring.hpp"
#include "hec/instance.hpp"
#include "hec/rational.hpp"

namespace hec {

// Static text Gantt chart: one row per machine (group 1 rows first), one
// column per unit time slot, classes laid out in part order (a),(b),(c),(d)
// with an integral-multiplicity class occupying that many slots. Plain edges
// print the job id; a hyperedge prints "*job" across every row of its group.
inline std::string render_gantt(const Instance& inst, const Coloring& col) {
  if (auto bad = verify_coloring(inst, col); !bad.empty())
    throw std::invalid_argument("invalid coloring: " + bad.front());

  const int m = inst.num_machines();
  std::map<std::string, int> mach_ix;
  for (int h = 0; h < m; ++h) mach_ix[inst.machine_id(h)] = h;

  // Stable part order keeps the layout deterministic for any class order.
  std::vector<const ColorClass*> ordered;
  for (char part : {'a', 'b', 'c', 'd'})
    for (const auto& cls : col.classes)
      if (cls.part == part) ordered.push_back(&cls);

  std::vector<std::vector<std::string>> cells(m);  // per machine, per slot
  for (const ColorClass* cls : ordered) {
    if (!is_integer(cls->multiplicity))
      throw std::invalid_argument("chart requires integral class multiplicities, got " +
                                  to_string(cls->multiplicity));
    const long long reps = to_ll(num(cls->multiplicity));
    std::vector<std::string> slot(m, ".");
    for (const auto& [g, job] : cls->hyperedges)
      for (int h = 0; h < m; ++h)
        if (inst.in_group1(h) == (g == 1)) slot[h] = "*" + job;
    for (const auto& [job, mach] : cls->edges) slot[mach_ix[mach]] = job;
    for (long long t = 0; t < reps; ++t)
      for (int h = 0; h < m; ++h) cells[h].push_back(slot[h]);
  }

  std::size_t name_w = 0, cell_w = 1;
  for (int h = 0; h < m; ++h) {
    name_w = std::max(name_w, inst.machine_id(h).size());
    for (const auto& c : cells[h]) cell_w = std::max(cell_w, c.size());
  }

  std::ostringstream os;
  for (int h = 0; h < m; ++h) {
    const std::string& id = inst.machine_id(h);
    os << id << std::string(name_w - id.size(), ' ') << " |";
    for (const auto& c : cells[h]) os << ' ' << c << std::string(cell_w - c.size(), ' ');
    os << '\n';
  }
  return os.str();
}

}  // namespace hec
