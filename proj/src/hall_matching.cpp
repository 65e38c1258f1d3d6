#include "momext/hall_matching.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace momext {

namespace {

// Dinic with exact big-integer capacities. Deterministic: arcs are added and
// scanned in index order.
class MaxFlow {
 public:
  explicit MaxFlow(std::size_t nodes) : graph_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, BigInt cap) {
    graph_[from].push_back({to, graph_[to].size(), std::move(cap)});
    graph_[to].push_back({from, graph_[from].size() - 1, BigInt(0)});
    return graph_[from].size() - 1;
  }

  BigInt run(std::size_t source, std::size_t sink) {
    BigInt total = 0;
    while (bfs(source, sink)) {
      iter_.assign(graph_.size(), 0);
      for (;;) {
        BigInt pushed = dfs(source, sink, BigInt(-1));
        if (pushed == 0) break;
        total += pushed;
      }
    }
    return total;
  }

  // flow pushed through an arc = residual capacity of its reverse arc
  const BigInt& flow_on(std::size_t from, std::size_t arc_id) const {
    const Arc& arc = graph_[from][arc_id];
    return graph_[arc.to][arc.rev].cap;
  }

  std::vector<bool> reachable_from(std::size_t source) const {
    std::vector<bool> seen(graph_.size(), false);
    std::queue<std::size_t> queue;
    seen[source] = true;
    queue.push(source);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (const Arc& arc : graph_[u]) {
        if (arc.cap > 0 && !seen[arc.to]) {
          seen[arc.to] = true;
          queue.push(arc.to);
        }
      }
    }
    return seen;
  }

 private:
  struct Arc {
    std::size_t to;
    std::size_t rev;
    BigInt cap;
  };

  bool bfs(std::size_t source, std::size_t sink) {
    level_.assign(graph_.size(), -1);
    std::queue<std::size_t> queue;
    level_[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      std::size_t u = queue.front();
      queue.pop();
      for (const Arc& arc : graph_[u]) {
        if (arc.cap > 0 && level_[arc.to] < 0) {
          level_[arc.to] = level_[u] + 1;
          queue.push(arc.to);
        }
      }
    }
    return level_[sink] >= 0;
  }

  // limit < 0 means unbounded
  BigInt dfs(std::size_t u, std::size_t sink, BigInt limit) {
    if (u == sink) return limit;
    for (std::size_t& i = iter_[u]; i < graph_[u].size(); ++i) {
      Arc& arc = graph_[u][i];
      if (arc.cap <= 0 || level_[arc.to] != level_[u] + 1) continue;
      BigInt next_limit = (limit < 0 || arc.cap < limit) ? arc.cap : limit;
      BigInt pushed = dfs(arc.to, sink, next_limit);
      if (pushed > 0) {
        arc.cap -= pushed;
        graph_[arc.to][arc.rev].cap += pushed;
        return pushed;
      }
    }
    return 0;
  }

  std::vector<std::vector<Arc>> graph_;
  std::vector<int> level_;
  std::vector<std::size_t> iter_;
};

BigInt lcm_of_denominators(const BipartiteInstance& inst) {
  BigInt l = 1;
  for (const Rational& r : inst.demand) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
  for (const Rational& r : inst.supply) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), r.get_den().get_mpz_t());
  return l;
}

BigInt scaled(const Rational& r, const BigInt& scale) {
  Rational v = r * Rational(scale);
  v.canonicalize();
  if (v.get_den() != 1) throw std::logic_error("weight scaling did not clear the denominator");
  return v.get_num();
}

struct FlowResult {
  MaxFlow flow;
  BigInt scale;
  BigInt total_demand;
  BigInt value;
  // arc ids: source arcs are (0, i); n->p arc ids per n
  std::vector<std::vector<std::size_t>> np_arc_ids;
  bool saturated() const { return value == total_demand; }
};

FlowResult solve_flow(const BipartiteInstance& inst) {
  const std::size_t n_count = inst.n_index.size();
  const std::size_t p_count = inst.p_index.size();
  const std::size_t source = 0;
  const std::size_t sink = 1 + n_count + p_count;

  const BigInt scale = lcm_of_denominators(inst);
  BigInt total_demand = 0;
  std::vector<BigInt> demand_scaled(n_count), supply_scaled(p_count);
  for (std::size_t i = 0; i < n_count; ++i) {
    demand_scaled[i] = scaled(inst.demand[i], scale);
    total_demand += demand_scaled[i];
  }
  for (std::size_t j = 0; j < p_count; ++j) supply_scaled[j] = scaled(inst.supply[j], scale);

  FlowResult result{MaxFlow(sink + 1), scale, total_demand, BigInt(0), {}};
  result.np_arc_ids.resize(n_count);
  for (std::size_t i = 0; i < n_count; ++i) result.flow.add_arc(source, 1 + i, demand_scaled[i]);
  for (std::size_t i = 0; i < n_count; ++i)
    for (std::size_t j : inst.neighbors[i])
      result.np_arc_ids[i].push_back(result.flow.add_arc(1 + i, 1 + n_count + j, total_demand));
  for (std::size_t j = 0; j < p_count; ++j)
    result.flow.add_arc(1 + n_count + j, sink, supply_scaled[j]);

  result.value = result.flow.run(source, sink);
  return result;
}

Rational subset_deficit(const BipartiteInstance& inst, const std::vector<std::size_t>& subset) {
  Rational demand = 0;
  std::vector<bool> neighbor(inst.p_index.size(), false);
  for (std::size_t i : subset) {
    demand += inst.demand[i];
    for (std::size_t j : inst.neighbors[i]) neighbor[j] = true;
  }
  Rational supply = 0;
  for (std::size_t j = 0; j < inst.p_index.size(); ++j)
    if (neighbor[j]) supply += inst.supply[j];
  return demand - supply;
}

}  // namespace

BipartiteInstance BipartiteInstance::from_table(const WeightTable& table,
                                                const PartitionPoset& poset) {
  BipartiteInstance inst;
  inst.d = table.d();
  inst.q = table.q();
  inst.n_index = table.n_indices();
  inst.p_index = table.p_indices();
  inst.demand.reserve(inst.n_index.size());
  inst.supply.reserve(inst.p_index.size());
  for (std::size_t idx : inst.n_index) inst.demand.push_back(-table.row(idx).omega);
  for (std::size_t idx : inst.p_index) inst.supply.push_back(table.row(idx).omega);
  inst.neighbors.resize(inst.n_index.size());
  for (std::size_t i = 0; i < inst.n_index.size(); ++i)
    for (std::size_t j = 0; j < inst.p_index.size(); ++j)
      if (poset.leq(inst.n_index[i], inst.p_index[j])) inst.neighbors[i].push_back(j);

  Rational demand_total(0), supply_total(0);
  for (const Rational& v : inst.demand) demand_total += v;
  for (const Rational& v : inst.supply) supply_total += v;
  if (demand_total != supply_total)
    throw std::logic_error("bipartite instance sides carry unequal total weight");
  for (const auto& adjacency : inst.neighbors)
    if (adjacency.empty())
      throw std::logic_error("demand vertex with no dominance neighbor");
  return inst;
}

HallVerdict check_hall_subsets(const BipartiteInstance& inst, int cap) {
  const std::size_t n_count = inst.n_index.size();
  if (n_count > static_cast<std::size_t>(cap)) {
    HallVerdict verdict;
    verdict.kind = HallVerdict::Kind::aborted_too_large;
    return verdict;
  }

  // suffix demand totals for the pruning bound
  std::vector<Rational> suffix_demand(n_count + 1, Rational(0));
  for (std::size_t i = n_count; i > 0; --i)
    suffix_demand[i - 1] = suffix_demand[i] + inst.demand[i - 1];

  std::vector<std::size_t> current;
  std::vector<bool> covered(inst.p_index.size(), false);
  std::vector<std::size_t> added_stack;
  Rational demand = 0, supply = 0;
  HallVerdict verdict;

  // DFS in which the branch including n_i is explored first, so the first
  // violating subset found is deterministic across runs.
  auto visit = [&](auto&& self, std::size_t idx) -> bool {
    if (!current.empty() && demand > supply) {
      verdict.kind = HallVerdict::Kind::violated;
      verdict.violating_n = current;
      verdict.deficit = demand - supply;
      return true;
    }
    if (idx == n_count) return false;
    // every superset built from the remaining vertices keeps this slack
    if (supply - demand >= suffix_demand[idx]) return false;

    // include idx
    current.push_back(idx);
    const std::size_t added_before = added_stack.size();
    demand += inst.demand[idx];
    for (std::size_t j : inst.neighbors[idx]) {
      if (!covered[j]) {
        covered[j] = true;
        supply += inst.supply[j];
        added_stack.push_back(j);
      }
    }
    if (self(self, idx + 1)) return true;
    while (added_stack.size() > added_before) {
      std::size_t j = added_stack.back();
      added_stack.pop_back();
      covered[j] = false;
      supply -= inst.supply[j];
    }
    demand -= inst.demand[idx];
    current.pop_back();

    // exclude idx
    return self(self, idx + 1);
  };
  visit(visit, 0);
  return verdict;
}

HallVerdict check_hall_flow(const BipartiteInstance& inst) {
  FlowResult result = solve_flow(inst);
  HallVerdict verdict;
  if (result.saturated()) return verdict;

  verdict.kind = HallVerdict::Kind::violated;
  const std::vector<bool> reachable = result.flow.reachable_from(0);
  for (std::size_t i = 0; i < inst.n_index.size(); ++i)
    if (reachable[1 + i]) verdict.violating_n.push_back(i);
  verdict.deficit = subset_deficit(inst, verdict.violating_n);
  return verdict;
}

MatchingCertificate construct_certificate(const BipartiteInstance& inst, const WeightTable& table,
                                          const PartitionPoset& poset) {
  FlowResult result = solve_flow(inst);
  if (!result.saturated())
    throw std::invalid_argument("construct_certificate called on an infeasible instance");

  MatchingCertificate cert;
  cert.d = inst.d;
  cert.q = inst.q;
  cert.a = table.a();
  cert.partitions = poset.elements();
  cert.omega.reserve(table.rows().size());
  for (const WeightRow& row : table.rows()) cert.omega.push_back(row.omega);
  cert.n_indices = table.n_indices();
  cert.p_indices = table.p_indices();
  cert.table_digest = table.digest();

  for (std::size_t i = 0; i < inst.n_index.size(); ++i) {
    for (std::size_t k = 0; k < inst.neighbors[i].size(); ++k) {
      const BigInt& pushed = result.flow.flow_on(1 + i, result.np_arc_ids[i][k]);
      if (pushed == 0) continue;
      Rational value(pushed, result.scale);
      value.canonicalize();
      cert.tau.push_back({inst.n_index[i], inst.p_index[inst.neighbors[i][k]], std::move(value)});
    }
  }
  std::sort(cert.tau.begin(), cert.tau.end(), [](const TauEntry& x, const TauEntry& y) {
    return x.n != y.n ? x.n < y.n : x.p < y.p;
  });
  return cert;
}

bool verify_certificate(const MatchingCertificate& cert, const WeightTable& table,
                        std::string* reason) {
  auto fail = [&](const std::string& why) {
    if (reason) *reason = why;
    return false;
  };
  if (cert.d != table.d() || cert.q != table.q())
    throw std::invalid_argument("certificate and weight table refer to different (d,q)");
  if (cert.table_digest != 0 && cert.table_digest != table.digest())
    return fail("table digest mismatch");
  if (cert.partitions.size() != table.rows().size()) return fail("partition list size mismatch");

  std::vector<bool> in_n(table.rows().size(), false), in_p(table.rows().size(), false);
  for (std::size_t idx : cert.n_indices) {
    if (idx >= table.rows().size()) return fail("N index out of range");
    in_n[idx] = true;
  }
  for (std::size_t idx : cert.p_indices) {
    if (idx >= table.rows().size()) return fail("P index out of range");
    in_p[idx] = true;
  }

  std::vector<Rational> row_sum(table.rows().size(), Rational(0));
  std::vector<Rational> col_sum(table.rows().size(), Rational(0));
  for (const TauEntry& entry : cert.tau) {
    if (entry.n >= cert.partitions.size() || entry.p >= cert.partitions.size())
      return fail("tau index out of range");
    if (sgn(entry.value) < 0)
      return fail("negative tau at (" + cert.partitions[entry.n].str() + ", " +
                  cert.partitions[entry.p].str() + ")");
    if (!in_n[entry.n] || !in_p[entry.p]) return fail("tau entry outside N x P");
    if (!dominance_leq(cert.partitions[entry.n], cert.partitions[entry.p]))
      return fail("tau supported on incomparable pair (" + cert.partitions[entry.n].str() + ", " +
                  cert.partitions[entry.p].str() + ")");
    row_sum[entry.n] += entry.value;
    col_sum[entry.p] += entry.value;
  }
  for (std::size_t idx : cert.n_indices)
    if (row_sum[idx] != -table.row(idx).omega)
      return fail("row sum mismatch at n = " + cert.partitions[idx].str());
  for (std::size_t idx : cert.p_indices)
    if (col_sum[idx] != table.row(idx).omega)
      return fail("column sum mismatch at p = " + cert.partitions[idx].str());
  return true;
}

}  // namespace momext
