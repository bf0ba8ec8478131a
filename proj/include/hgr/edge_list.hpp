#pragma once

#include <filesystem>
#include <iosfwd>

#include "hgr/graph.hpp"

namespace hgr {

// Edge-list text format: a header line "n m", then m lines "u v" with
// 0-based ids and u < v. Writers emit edges in lexicographic order.

Graph read_edge_list(std::istream& in);
Graph read_edge_list(const std::filesystem::path& path);

void write_edge_list(std::ostream& out, const Graph& g);
void write_edge_list(const std::filesystem::path& path, const Graph& g);

}  // namespace hgr
