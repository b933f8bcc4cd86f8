#include "polyinv/solvability.hpp"

#include "polyinv/scc.hpp"

#include <algorithm>
#include <queue>

namespace polyinv {

DepGraph build_dep_graph(const PolyMap& g) {
  DepGraph dg;
  dg.nvars = g.nvars();
  dg.edges.resize(dg.nvars);
  for (std::size_t i = 0; i < dg.nvars; ++i) {
    std::vector<int> occurrence(dg.nvars, 0);  // 0 none, 1 linear only, 2 nonlinear
    for (const auto& [m, c] : g.images[i].terms) {
      bool plain_var = m.degree() == 1;
      for (std::size_t j = 0; j < dg.nvars; ++j) {
        if (m.exps[j] == 0) continue;
        int kind = plain_var ? 1 : 2;
        occurrence[j] = std::max(occurrence[j], kind);
      }
    }
    for (std::size_t j = 0; j < dg.nvars; ++j)
      if (occurrence[j] != 0)
        dg.edges[i].push_back({j, occurrence[j] == 1 ? DepKind::Linear : DepKind::Nonlinear});
  }
  return dg;
}

namespace {

// Shortest path from -> to inside one component (BFS over component edges).
std::vector<std::size_t> path_within(const DepGraph& dg, const std::vector<std::size_t>& comp,
                                     std::size_t from, std::size_t to) {
  std::vector<bool> in_comp(dg.nvars, false);
  for (std::size_t v : comp) in_comp[v] = true;
  std::vector<std::size_t> prev(dg.nvars, static_cast<std::size_t>(-1));
  std::vector<bool> seen(dg.nvars, false);
  std::queue<std::size_t> q;
  q.push(from);
  seen[from] = true;
  while (!q.empty()) {
    std::size_t v = q.front();
    q.pop();
    if (v == to) break;
    for (const auto& [w, kind] : dg.edges[v]) {
      (void)kind;
      if (!in_comp[w] || seen[w]) continue;
      seen[w] = true;
      prev[w] = v;
      q.push(w);
    }
  }
  std::vector<std::size_t> path{to};
  while (path.back() != from) path.push_back(prev[path.back()]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace

SolvablePartition check_solvable(const PolyMap& g, const std::vector<std::string>& names) {
  DepGraph dg = build_dep_graph(g);
  std::vector<std::vector<std::size_t>> adj(dg.nvars);
  for (std::size_t i = 0; i < dg.nvars; ++i)
    for (const auto& [j, kind] : dg.edges[i]) {
      (void)kind;
      adj[i].push_back(j);
    }
  auto comps = strongly_connected_components(adj);

  std::vector<std::size_t> comp_of(dg.nvars, 0);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (std::size_t v : comps[c]) comp_of[v] = c;

  for (std::size_t i = 0; i < dg.nvars; ++i) {
    for (const auto& [j, kind] : dg.edges[i]) {
      if (kind != DepKind::Nonlinear || comp_of[i] != comp_of[j]) continue;
      // Nonlinear self-influence: close the cycle j ->* i -> j.
      std::vector<std::size_t> cycle = path_within(dg, comps[comp_of[i]], j, i);
      cycle.push_back(j);
      std::string what = "not solvable: variable dependence cycle ";
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (k) what += " -> ";
        what += names.at(cycle[k]);
      }
      what += " passes through a nonlinear term";
      throw NotSolvableError(std::move(what), std::move(cycle));
    }
  }

  SolvablePartition part;
  part.blocks = std::move(comps);
  return part;
}

}  // namespace polyinv
