#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hec {

// Sentinel for an uncapacitated arc.
inline constexpr long long kFlowInf = std::numeric_limits<long long>::max() / 4;

// Directed network with integral lower and upper bounds per arc.
// Immutable after build by convention; solvers keep their own state.
struct FlowNetwork {
  struct Arc {
    int tail, head;
    long long lower, upper;
  };

  std::vector<std::string> node_names;
  std::vector<Arc> arcs;

  int add_node(std::string name = "") {
    node_names.push_back(std::move(name));
    return static_cast<int>(node_names.size()) - 1;
  }

  int add_arc(int tail, int head, long long lower, long long upper) {
    if (tail < 0 || head < 0 || tail >= num_nodes() || head >= num_nodes())
      throw std::invalid_argument("arc endpoint out of range");
    if (lower < 0 || upper < lower)
      throw std::invalid_argument("arc bounds must satisfy 0 <= lower <= upper");
    if (lower >= kFlowInf || (upper != kFlowInf && upper >= kFlowInf))
      throw std::invalid_argument("arc bound exceeds supported magnitude");
    arcs.push_back({tail, head, lower, upper});
    return static_cast<int>(arcs.size()) - 1;
  }

  int num_nodes() const { return static_cast<int>(node_names.size()); }
  int num_arcs() const { return static_cast<int>(arcs.size()); }

  // Edge-list dump for differential testing: "tail head lower upper".
  std::string dump() const {
    std::ostringstream os;
    for (const auto& a : arcs)
      os << a.tail << ' ' << a.head << ' ' << a.lower << ' '
         << (a.upper == kFlowInf ? std::string("inf") : std::to_string(a.upper)) << '\n';
    return os.str();
  }
};

// Arc-indexed integral flow values.
struct Flow {
  std::vector<long long> value;
};

struct CirculationResult {
  bool feasible = false;
  Flow flow;
  // On infeasibility: node subset A with sum of upper bounds leaving A
  // strictly below sum of lower bounds entering A (Hoffman certificate).
  std::vector<int> cut;
};

namespace detail {

// Plain shortest-augmenting-path max flow on a residual edge list.
class ResidualGraph {
 public:
  explicit ResidualGraph(int n) : head_(n, -1) {}

  // Adds edge with capacity cap and its reverse with capacity 0.
  int add_edge(int from, int to, long long cap) {
    int id = static_cast<int>(to_.size());
    to_.push_back(to);
    cap_.push_back(cap);
    next_.push_back(head_[from]);
    head_[from] = id;
    to_.push_back(from);
    cap_.push_back(0);
    next_.push_back(head_[to]);
    head_[to] = id + 1;
    return id;
  }

  void bump(int edge, long long amount) { cap_[edge] += amount; }
  long long residual(int edge) const { return cap_[edge]; }
  // Flow pushed through edge id equals the reverse edge's capacity.
  long long flow(int edge) const { return cap_[edge ^ 1]; }

  long long max_flow(int s, int t) {
    long long total = 0;
    while (true) {
      long long pushed = augment(s, t);
      if (pushed == 0) break;
      total += pushed;
    }
    return total;
  }

  // One BFS augmentation along a shortest path; returns amount pushed.
  long long augment(int s, int t) {
    std::vector<int> pred_edge(head_.size(), -1);
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty() && !seen[t]) {
      int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = next_[e]) {
        if (cap_[e] <= 0 || seen[to_[e]]) continue;
        seen[to_[e]] = 1;
        pred_edge[to_[e]] = e;
        q.push(to_[e]);
      }
    }
    if (!seen[t]) return 0;
    long long bottleneck = kFlowInf;
    for (int v = t; v != s;) {
      int e = pred_edge[v];
      bottleneck = std::min(bottleneck, cap_[e]);
      v = to_[e ^ 1];
    }
    for (int v = t; v != s;) {
      int e = pred_edge[v];
      cap_[e] -= bottleneck;
      cap_[e ^ 1] += bottleneck;
      v = to_[e ^ 1];
    }
    return bottleneck;
  }

  std::vector<char> reachable(int s) const {
    std::vector<char> seen(head_.size(), 0);
    std::queue<int> q;
    q.push(s);
    seen[s] = 1;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e = head_[u]; e != -1; e = next_[e])
        if (cap_[e] > 0 && !seen[to_[e]]) {
          seen[to_[e]] = 1;
          q.push(to_[e]);
        }
    }
    return seen;
  }

 private:
  std::vector<int> head_;
  std::vector<int> to_, next_;
  std::vector<long long> cap_;
};

}  // namespace detail

// Integral feasible circulation via the standard lower-bound elimination
// transform followed by max flow between the excess and deficit super-nodes.
// The network must be a pure circulation problem: any desired source/sink
// pair needs an explicit closure arc.
inline CirculationResult feasible_circulation(const FlowNetwork& net) {
  const int n = net.num_nodes();
  const int S = n, T = n + 1;
  detail::ResidualGraph g(n + 2);

  std::vector<long long> excess(n, 0);
  std::vector<int> arc_edge(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) {
    const auto& a = net.arcs[i];
    long long cap = a.upper == kFlowInf ? kFlowInf : a.upper - a.lower;
    arc_edge[i] = g.add_edge(a.tail, a.head, cap);
    excess[a.head] += a.lower;
    excess[a.tail] -= a.lower;
  }
  long long need = 0;
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      g.add_edge(S, v, excess[v]);
      need += excess[v];
    } else if (excess[v] < 0) {
      g.add_edge(v, T, -excess[v]);
    }
  }

  CirculationResult res;
  if (g.max_flow(S, T) == need) {
    res.feasible = true;
    res.flow.value.resize(net.num_arcs());
    for (int i = 0; i < net.num_arcs(); ++i)
      res.flow.value[i] = net.arcs[i].lower + g.flow(arc_edge[i]);
    return res;
  }
  auto seen = g.reachable(S);
  for (int v = 0; v < n; ++v)
    if (seen[v]) res.cut.push_back(v);
  return res;
}

// Independent validation of an infeasibility certificate: the total upper
// bound leaving the cut must fall strictly below the total lower bound
// entering it, so no circulation can exist.
inline bool check_cut_certificate(const FlowNetwork& net, const std::vector<int>& cut) {
  std::vector<char> in(net.num_nodes(), 0);
  for (int v : cut) in[v] = 1;
  long long upper_out = 0, lower_in = 0;
  for (const auto& a : net.arcs) {
    if (in[a.tail] && !in[a.head]) {
      if (a.upper == kFlowInf) return false;
      upper_out += a.upper;
    } else if (!in[a.tail] && in[a.head]) {
      lower_in += a.lower;
    }
  }
  return upper_out < lower_in;
}

// Checks bounds and conservation of a flow (every node conserved).
inline bool check_circulation(const FlowNetwork& net, const Flow& f) {
  if (static_cast<int>(f.value.size()) != net.num_arcs()) return false;
  std::vector<long long> bal(net.num_nodes(), 0);
  for (int i = 0; i < net.num_arcs(); ++i) {
    const auto& a = net.arcs[i];
    if (f.value[i] < a.lower || (a.upper != kFlowInf && f.value[i] > a.upper)) return false;
    bal[a.tail] -= f.value[i];
    bal[a.head] += f.value[i];
  }
  for (long long b : bal)
    if (b != 0) return false;
  return true;
}

// Maximum s->t flow on a network with all lower bounds zero.
inline std::pair<Flow, long long> max_flow(const FlowNetwork& net, int s, int t) {
  detail::ResidualGraph g(net.num_nodes());
  std::vector<int> arc_edge(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) {
    const auto& a = net.arcs[i];
    if (a.lower != 0) throw std::invalid_argument("max_flow requires zero lower bounds");
    arc_edge[i] = g.add_edge(a.tail, a.head, a.upper);
  }
  long long value = g.max_flow(s, t);
  Flow f;
  f.value.resize(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) f.value[i] = g.flow(arc_edge[i]);
  return {std::move(f), value};
}

// Maximum s->t flow respecting lower bounds: feasibility via circulation
// with a temporary closure arc, then augmentation through it. Infeasibility
// is reported the same way as feasible_circulation.
inline CirculationResult max_flow_with_bounds(FlowNetwork net, int s, int t) {
  int closure = net.add_arc(t, s, 0, kFlowInf);
  const int n = net.num_nodes();
  const int S = n, T = n + 1;
  detail::ResidualGraph g(n + 2);

  std::vector<long long> excess(n, 0);
  std::vector<int> arc_edge(net.num_arcs());
  for (int i = 0; i < net.num_arcs(); ++i) {
    const auto& a = net.arcs[i];
    long long cap = a.upper == kFlowInf ? kFlowInf : a.upper - a.lower;
    arc_edge[i] = g.add_edge(a.tail, a.head, cap);
    excess[a.head] += a.lower;
    excess[a.tail] -= a.lower;
  }
  long long need = 0;
  for (int v = 0; v < n; ++v) {
    if (excess[v] > 0) {
      g.add_edge(S, v, excess[v]);
      need += excess[v];
    } else if (excess[v] < 0) {
      g.add_edge(v, T, -excess[v]);
    }
  }

  CirculationResult res;
  if (g.max_flow(S, T) != need) {
    auto seen = g.reachable(S);
    for (int v = 0; v < n; ++v)
      if (seen[v]) res.cut.push_back(v);
    return res;
  }
  // Feasible. Remove the closure arc from the residual, then augment along
  // s->t paths; the real arcs end up carrying a maximum s->t flow.
  g.bump(arc_edge[closure], -g.residual(arc_edge[closure]));
  g.bump(arc_edge[closure] ^ 1, -g.residual(arc_edge[closure] ^ 1));
  g.max_flow(s, t);
  res.feasible = true;
  res.flow.value.resize(net.num_arcs() - 1);
  for (int i = 0; i + 1 < net.num_arcs(); ++i)
    res.flow.value[i] = net.arcs[i].lower + g.flow(arc_edge[i]);
  return res;
}

}  // namespace hec
