#ifndef SSEIG_GRAPH_IO_HPP
#define SSEIG_GRAPH_IO_HPP

#include <string>
#include <utility>
#include <vector>

#include "sseig/graph.hpp"

namespace sseig {

enum class GraphFormat { auto_detect, edge_list, matrix_market };

// Edge list: whitespace-separated "u v w" lines with 0-based ids and '#'
// comments. Each line declares the symmetric weight of its unordered pair;
// repeated declarations are averaged and a mismatch warns (directed input).
// Matrix market: coordinate real, symmetric (one entry per pair) or general
// (full matrix semantics; W is replaced by (W + W^T)/2 with a warning when
// asymmetric, so a one-sided entry contributes half its weight).
Graph read_graph(const std::string& path, GraphFormat format = GraphFormat::auto_detect,
                 std::vector<std::string>* warnings = nullptr);

// Writes the canonical edge list, one "u v w" line per edge with 17
// significant digits, so read_graph round-trips weights bit-exact.
void write_graph(const std::string& path, const Graph& g);

// CSV "node,x1,...,xk" with 17 significant digits, plus a JSON sidecar
// (written verbatim) at the derived path; returns the sidecar path.
std::string write_vectors(const std::string& path, const Eigen::MatrixXd& vectors,
                          const std::string& metadata_json);

std::string vectors_sidecar_path(const std::string& csv_path);

// Rows of comma- or whitespace-separated coordinates; an optional single
// non-numeric header line is skipped.
Eigen::MatrixXd read_points_csv(const std::string& path);

// "node weight" lines with '#' comments.
std::vector<std::pair<Eigen::Index, double>> read_seed_file(const std::string& path);

}  // namespace sseig

#endif
