#include "hgr/edge_list.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <string>

#include "hgr/errors.hpp"

namespace hgr {

namespace {

bool next_data_line(std::istream& in, std::string& line, std::size_t& line_no) {
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    return true;
  }
  return false;
}

std::string at(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

}  // namespace

Graph read_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  if (!next_data_line(in, line, line_no)) throw FormatError("missing header line \"n m\"");
  long long n = -1, m = -1;
  {
    std::istringstream header(line);
    std::string extra;
    if (!(header >> n >> m) || n < 0 || m < 0 || (header >> extra)) {
      throw FormatError(at(line_no) + "malformed header \"" + line + "\"");
    }
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  std::set<Edge> seen;
  for (long long i = 0; i < m; ++i) {
    if (!next_data_line(in, line, line_no)) {
      throw FormatError("expected " + std::to_string(m) + " edges, found " + std::to_string(i));
    }
    std::istringstream row(line);
    long long u = -1, v = -1;
    std::string extra;
    if (!(row >> u >> v) || (row >> extra)) throw FormatError(at(line_no) + "malformed edge \"" + line + "\"");
    if (u < 0 || v < 0 || u >= n || v >= n) throw FormatError(at(line_no) + "vertex id out of range");
    if (u == v) throw FormatError(at(line_no) + "self-loop at " + std::to_string(u));
    if (u > v) throw FormatError(at(line_no) + "edge must be written with u < v");
    const Edge e{static_cast<Vertex>(u), static_cast<Vertex>(v)};
    if (!seen.insert(e).second) throw FormatError(at(line_no) + "duplicate edge");
    edges.push_back(e);
  }
  if (next_data_line(in, line, line_no)) throw FormatError(at(line_no) + "trailing data after edges");
  return Graph::from_edges(static_cast<std::size_t>(n), edges);
}

Graph read_edge_list(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string());
  return read_edge_list(in);
}

void write_edge_list(std::ostream& out, const Graph& g) {
  out << g.num_vertices() << ' ' << g.num_edges() << '\n';
  for (const Edge& e : g.edges()) out << e.u << ' ' << e.v << '\n';
}

void write_edge_list(const std::filesystem::path& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw FormatError("cannot write " + path.string());
  write_edge_list(out, g);
}

}  // namespace hgr
