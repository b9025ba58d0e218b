// Command-line front end: generate, solve, color, conjecture-check, and
// Gantt export for two-hypervertex hypergraph edge coloring instances.
//
// Exit codes: 0 success; 1 I/O failure; 2 invalid input or oracle caps;
// 3 internal invariant breach (a step a theorem guarantees has failed).

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hec/coloring.hpp"
#include "hec/gantt.hpp"
#include "hec/instance.hpp"
#include "hec/lp_model.hpp"
#include "hec/oracle.hpp"
#include "hec/rounding.hpp"
#include "hec/solution.hpp"

namespace {

struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  if (!out) throw IoError("write failure on '" + path + "'");
}

hec::Instance load_instance(const std::string& path) {
  hec::Instance inst = hec::parse_instance(read_file(path));
  if (auto bad = hec::validate_instance(inst); !bad.empty())
    throw std::invalid_argument("invalid instance '" + path + "': " + bad.front());
  return inst;
}

hec::OracleCaps parse_caps(const std::string& spec) {
  hec::OracleCaps caps;
  if (spec.empty()) return caps;
  std::istringstream is(spec);
  std::string tok;
  std::vector<long long> vals;
  while (std::getline(is, tok, ',')) vals.push_back(std::stoll(tok));
  if (vals.empty() || vals.size() > 4)
    throw std::invalid_argument("--caps wants jobs,machines,mult[,space]");
  caps.max_jobs = static_cast<int>(vals[0]);
  if (vals.size() > 1) caps.max_machines = static_cast<int>(vals[1]);
  if (vals.size() > 2) caps.max_multiplicity = vals[2];
  if (vals.size() > 3) caps.max_space = vals[3];
  return caps;
}

std::string summary_line(const hec::Instance& inst, const hec::PipelineResult& res) {
  using namespace hec;
  const long long base = delta(inst, 1) + delta(inst, 2);
  const long long chi = base + to_ll(num(res.integral.w - res.integral.r));
  std::ostringstream os;
  os << "chi=" << chi << " chi_f=" << to_string(Rational(base) + res.lp_value)
     << " r=" << to_string(res.integral.r) << " w=" << to_string(res.integral.w);
  return os.str();
}

int run(int argc, char** argv) {
  CLI::App app{"exact edge coloring of two-hypervertex hypergraphs"};
  app.require_subcommand(1);

  // gen
  std::uint64_t seed = 1;
  int n = 4, m1 = 2, m2 = 2;
  long long bmax = 2, amax = 2;
  std::string out_path, in_path, format = "doc", caps_spec;
  int batch = 0;

  auto* gen = app.add_subcommand("gen", "write a seed-deterministic random instance");
  gen->add_option("--seed", seed, "RNG seed");
  gen->add_option("--n", n, "number of jobs (>= m1 + m2)");
  gen->add_option("--m1", m1, "machines in group 1");
  gen->add_option("--m2", m2, "machines in group 2");
  gen->add_option("--bmax", bmax, "max edge multiplicity");
  gen->add_option("--amax", amax, "max hyperedge multiplicity");
  gen->add_option("--out", out_path, "output instance file")->required();

  auto* solve = app.add_subcommand("solve", "compute the chromatic number and an optimal assignment");
  solve->add_option("input", in_path, "instance file")->required();
  solve->add_option("--out", out_path, "output solution file");

  auto* color = app.add_subcommand("color", "emit a verified optimal coloring");
  color->add_option("input", in_path, "instance file")->required();
  color->add_option("--out", out_path, "output coloring file");
  color->add_option("--format", format, "doc (default) or text")
      ->check(CLI::IsMember({"doc", "text"}));

  auto* check = app.add_subcommand("check", "cross-check brute force, simplex, and the pipeline");
  check->add_option("input", in_path, "instance file (omit with --batch)");
  check->add_option("--batch", batch, "check this many random instances instead");
  check->add_option("--seed", seed, "first seed of the batch");
  check->add_option("--n", n, "jobs per batch instance");
  check->add_option("--m1", m1, "group-1 machines per batch instance");
  check->add_option("--m2", m2, "group-2 machines per batch instance");
  check->add_option("--bmax", bmax, "max edge multiplicity in the batch");
  check->add_option("--amax", amax, "max hyperedge multiplicity in the batch");
  check->add_option("--caps", caps_spec, "oracle caps as jobs,machines,mult[,space]");

  auto* gantt = app.add_subcommand("export-gantt", "render a coloring as a text Gantt chart");
  gantt->add_option("instance", in_path, "instance file")->required();
  std::string coloring_path;
  gantt->add_option("coloring", coloring_path, "coloring file")->required();
  gantt->add_option("--out", out_path, "output chart file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  using namespace hec;
  if (gen->parsed()) {
    Instance inst = generate_random(seed, n, m1, m2, bmax, amax);
    write_file(out_path, serialize_instance(inst) + "\n");
    return 0;
  }

  if (solve->parsed()) {
    Instance inst = load_instance(in_path);
    if (inst.group1.empty() || inst.group2.empty()) {
      std::cout << "chi=" << chromatic_closed_form(inst)
                << " closed-form (one machine group is empty)\n";
      return 0;
    }
    PipelineResult res = solve_pipeline(inst);
    std::cout << summary_line(inst, res) << '\n';
    if (!out_path.empty()) write_file(out_path, serialize_solution(res.integral) + "\n");
    return 0;
  }

  if (color->parsed()) {
    Instance inst = load_instance(in_path);
    PipelineResult res = solve_pipeline(inst);
    Coloring col = assemble_coloring(inst, res.integral);
    if (auto bad = verify_coloring(inst, col); !bad.empty())
      throw std::logic_error("coloring failed verification: " + bad.front());
    std::cout << summary_line(inst, res) << '\n';
    const std::string body =
        format == "text" ? render_gantt(inst, col) : serialize_coloring(col) + "\n";
    if (!out_path.empty()) write_file(out_path, body);
    else std::cout << body;
    return 0;
  }

  if (check->parsed()) {
    const OracleCaps caps = parse_caps(caps_spec);
    std::vector<Instance> insts;
    if (batch > 0) {
      for (int i = 0; i < batch; ++i)
        insts.push_back(generate_random(seed + static_cast<std::uint64_t>(i), n, m1, m2,
                                        bmax, amax));
    } else {
      if (in_path.empty())
        throw std::invalid_argument("check needs an instance file or --batch");
      insts.push_back(load_instance(in_path));
    }
    bool all_agree = true;
    for (std::size_t i = 0; i < insts.size(); ++i) {
      OracleReport rep = check_conjecture(insts[i], caps);
      std::cout << to_json(rep).dump() << '\n';
      if (Rational(rep.ilp) > rep.lp)
        std::cerr << "note: instance " << i << " has ILP strictly above LP\n";
      all_agree = all_agree && rep.agree;
    }
    if (!all_agree) throw std::logic_error("disagreement between solver routes");
    return 0;
  }

  // export-gantt
  Instance inst = load_instance(in_path);
  Coloring col = parse_coloring(read_file(coloring_path));
  std::string chart;
  try {
    chart = render_gantt(inst, col);
  } catch (const std::logic_error& e) {
    throw std::invalid_argument(e.what());  // bad document, not an internal breach
  }
  if (!out_path.empty()) write_file(out_path, chart);
  else std::cout << chart;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const hec::CapsExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const hec::TheoremViolation& e) {
    std::cerr << "invariant breach: " << e.what() << '\n';
    return 3;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "invariant breach: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
