// Solvability gate: a simultaneous polynomial map is solvable when its
// variables split into ordered blocks such that each block's images are linear
// in the block's own variables plus an arbitrary polynomial in earlier blocks.
// Equivalently: no dependency cycle passes through a nonlinear dependence.
#pragma once

#include "polyinv/polyalg.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace polyinv {

enum class DepKind { Linear, Nonlinear };

struct DepGraph {
  std::size_t nvars = 0;
  // edges[i] holds (j, kind): the image of variable i depends on variable j.
  // The dependence is Linear only if every occurrence of j in the image is a
  // plain degree-1 term c*j.
  std::vector<std::vector<std::pair<std::size_t, DepKind>>> edges;
};

DepGraph build_dep_graph(const PolyMap& g);

// Variable blocks in dependency order: blocks[0] depends on nothing outside
// itself, each later block only on earlier ones; indices inside a block sorted.
struct SolvablePartition {
  std::vector<std::vector<std::size_t>> blocks;
};

struct NotSolvableError : std::runtime_error {
  // A dependency cycle through a nonlinear edge, as variable indices
  // cycle[0] -> cycle[1] -> ... -> cycle.back() == cycle[0].
  std::vector<std::size_t> cycle;
  NotSolvableError(std::string what, std::vector<std::size_t> cycle)
      : std::runtime_error(std::move(what)), cycle(std::move(cycle)) {}
};

// Returns the block partition or throws NotSolvableError with a witness cycle.
SolvablePartition check_solvable(const PolyMap& g, const std::vector<std::string>& names);

}  // namespace polyinv
