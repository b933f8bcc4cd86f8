#include "polyinv/scc.hpp"

#include <algorithm>

namespace polyinv {

namespace {

constexpr std::size_t kUnvisited = static_cast<std::size_t>(-1);

struct TarjanState {
  const std::vector<std::vector<std::size_t>>& adj;
  std::vector<std::size_t> index, low;
  std::vector<bool> on_stack;
  std::vector<std::size_t> stack;
  std::size_t counter = 0;
  std::vector<std::vector<std::size_t>> components;
};

// Iterative Tarjan; recursion would overflow on long dependency chains.
void visit(TarjanState& s, std::size_t root) {
  struct Frame {
    std::size_t v;
    std::size_t edge = 0;
  };
  std::vector<Frame> frames{{root}};
  s.index[root] = s.low[root] = s.counter++;
  s.stack.push_back(root);
  s.on_stack[root] = true;

  while (!frames.empty()) {
    Frame& f = frames.back();
    if (f.edge < s.adj[f.v].size()) {
      std::size_t w = s.adj[f.v][f.edge++];
      if (s.index[w] == kUnvisited) {
        s.index[w] = s.low[w] = s.counter++;
        s.stack.push_back(w);
        s.on_stack[w] = true;
        frames.push_back({w});
      } else if (s.on_stack[w]) {
        s.low[f.v] = std::min(s.low[f.v], s.index[w]);
      }
    } else {
      if (s.low[f.v] == s.index[f.v]) {
        std::vector<std::size_t> comp;
        while (true) {
          std::size_t w = s.stack.back();
          s.stack.pop_back();
          s.on_stack[w] = false;
          comp.push_back(w);
          if (w == f.v) break;
        }
        std::sort(comp.begin(), comp.end());
        s.components.push_back(std::move(comp));
      }
      std::size_t v = f.v;
      frames.pop_back();
      if (!frames.empty()) s.low[frames.back().v] = std::min(s.low[frames.back().v], s.low[v]);
    }
  }
}

}  // namespace

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adj) {
  TarjanState s{adj,
                std::vector<std::size_t>(adj.size(), kUnvisited),
                std::vector<std::size_t>(adj.size(), 0),
                std::vector<bool>(adj.size(), false),
                {},
                0,
                {}};
  for (std::size_t v = 0; v < adj.size(); ++v)
    if (s.index[v] == kUnvisited) visit(s, v);
  return s.components;
}

}  // namespace polyinv
