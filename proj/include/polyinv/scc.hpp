// Tarjan strongly connected components over adjacency lists. Components are
// emitted in dependency order: every component a node points into appears
// before the component of that node.
#pragma once

#include <cstddef>
#include <vector>

namespace polyinv {

std::vector<std::vector<std::size_t>> strongly_connected_components(
    const std::vector<std::vector<std::size_t>>& adj);

}  // namespace polyinv
