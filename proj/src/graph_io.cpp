#include "sseig/graph_io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "sseig/errors.hpp"

namespace sseig {

namespace {

std::string at_line(const std::string& path, std::size_t line) {
  return path + ":" + std::to_string(line);
}

bool blank_or_comment(const std::string& line, char comment) {
  for (char c : line) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == comment;
  }
  return true;
}

struct PairAccum {
  double sum = 0.0;
  int count = 0;
  double first = 0.0;
  bool mismatch = false;
};

Graph read_edge_list(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);

  std::map<std::pair<Eigen::Index, Eigen::Index>, PairAccum> pairs;
  Eigen::Index max_id = -1;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line, '#')) continue;
    std::istringstream ls(line);
    long long u, v;
    double w;
    if (!(ls >> u >> v >> w))
      throw io_error("parse error at " + at_line(path, lineno) + ": expected \"u v w\"");
    std::string rest;
    if (ls >> rest) throw io_error("trailing data at " + at_line(path, lineno));
    if (u < 0 || v < 0) throw io_error("negative node id at " + at_line(path, lineno));
    if (u == v) throw io_error("self-loop at " + at_line(path, lineno));
    if (w < 0.0 || !std::isfinite(w))
      throw io_error("negative or non-finite weight at " + at_line(path, lineno));
    std::pair<Eigen::Index, Eigen::Index> key{
        std::min<Eigen::Index>(u, v), std::max<Eigen::Index>(u, v)};
    PairAccum& acc = pairs[key];
    if (acc.count > 0 && acc.first != w) acc.mismatch = true;
    if (acc.count == 0) acc.first = w;
    acc.sum += w;
    ++acc.count;
    max_id = std::max<Eigen::Index>(max_id, std::max<Eigen::Index>(u, v));
  }
  if (max_id < 0) throw io_error("no edges in " + path);

  std::vector<Edge> edges;
  edges.reserve(pairs.size());
  bool averaged = false;
  for (const auto& [key, acc] : pairs) {
    double w = acc.sum / acc.count;
    if (acc.mismatch) averaged = true;
    if (w > 0.0) edges.push_back({key.first, key.second, w});
  }
  if (averaged && warnings)
    warnings->push_back("asymmetric duplicate edges in " + path +
                        ": weights symmetrized by averaging");
  return Graph::from_edges(max_id + 1, edges);
}

Graph read_matrix_market(const std::string& path, std::vector<std::string>* warnings) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);

  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw io_error("empty file " + path);
  ++lineno;
  std::istringstream hs(line);
  std::string banner, object, format, field, symmetry;
  hs >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" || format != "coordinate")
    throw io_error("unsupported matrix-market header at " + at_line(path, 1));
  if (field != "real" && field != "integer")
    throw io_error("unsupported matrix-market field '" + field + "' at " + at_line(path, 1));
  bool symmetric;
  if (symmetry == "symmetric")
    symmetric = true;
  else if (symmetry == "general")
    symmetric = false;
  else
    throw io_error("unsupported matrix-market symmetry '" + symmetry + "' at " + at_line(path, 1));

  long long rows = -1, cols = -1, nnz = -1;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line, '%')) continue;
    std::istringstream ss(line);
    if (!(ss >> rows >> cols >> nnz))
      throw io_error("bad size line at " + at_line(path, lineno));
    break;
  }
  if (rows < 0) throw io_error("missing size line in " + path);
  if (rows != cols)
    throw io_error("non-square matrix (" + std::to_string(rows) + "x" + std::to_string(cols) +
                   ") in " + path);

  std::map<std::pair<Eigen::Index, Eigen::Index>, double> entries;  // ordered (i,j)
  long long read = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line, '%')) continue;
    if (read == nnz) throw io_error("extra entry at " + at_line(path, lineno));
    std::istringstream ss(line);
    long long i, j;
    double w;
    if (!(ss >> i >> j >> w)) throw io_error("parse error at " + at_line(path, lineno));
    if (i < 1 || i > rows || j < 1 || j > rows)
      throw io_error("index out of range at " + at_line(path, lineno));
    if (i == j) throw io_error("self-loop (diagonal entry) at " + at_line(path, lineno));
    if (w < 0.0 || !std::isfinite(w))
      throw io_error("negative or non-finite weight at " + at_line(path, lineno));
    auto key = std::make_pair<Eigen::Index, Eigen::Index>(i - 1, j - 1);
    if (symmetric && key.first < key.second) std::swap(key.first, key.second);
    if (!entries.emplace(key, w).second)
      throw io_error("duplicate entry at " + at_line(path, lineno));
    ++read;
  }
  if (read != nnz)
    throw io_error("expected " + std::to_string(nnz) + " entries in " + path + ", found " +
                   std::to_string(read));

  std::vector<Edge> edges;
  bool asymmetric = false;
  if (symmetric) {
    for (const auto& [key, w] : entries)
      if (w > 0.0) edges.push_back({key.second, key.first, w});
  } else {
    std::map<std::pair<Eigen::Index, Eigen::Index>, double> sym;
    for (const auto& [key, w] : entries) {
      auto rev = std::make_pair(key.second, key.first);
      auto it = entries.find(rev);
      double wr = it == entries.end() ? 0.0 : it->second;
      if (wr != w) asymmetric = true;
      auto undirected = std::minmax(key.first, key.second);
      sym[{undirected.first, undirected.second}] = 0.5 * (w + wr);
    }
    for (const auto& [key, w] : sym)
      if (w > 0.0) edges.push_back({key.first, key.second, w});
  }
  if (asymmetric && warnings)
    warnings->push_back("directed matrix in " + path + ": symmetrized as (W + W^T)/2");
  return Graph::from_edges(rows, edges);
}

}  // namespace

Graph read_graph(const std::string& path, GraphFormat format, std::vector<std::string>* warnings) {
  if (format == GraphFormat::auto_detect) {
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".mtx") {
      format = GraphFormat::matrix_market;
    } else {
      std::ifstream probe(path);
      if (!probe) throw io_error("cannot open " + path);
      std::string first;
      std::getline(probe, first);
      format = first.rfind("%%MatrixMarket", 0) == 0 ? GraphFormat::matrix_market
                                                     : GraphFormat::edge_list;
    }
  }
  return format == GraphFormat::matrix_market ? read_matrix_market(path, warnings)
                                              : read_edge_list(path, warnings);
}

void write_graph(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << "# sseig edge list\n";
  out << "# nodes " << g.node_count() << " edges " << g.edge_count() << "\n";
  char buf[64];
  for (const Edge& e : g.canonical_edges()) {
    std::snprintf(buf, sizeof buf, "%.17g", e.w);
    out << e.u << " " << e.v << " " << buf << "\n";
  }
  if (!out) throw io_error("write failed for " + path);
}

std::string vectors_sidecar_path(const std::string& csv_path) {
  std::string base = csv_path;
  if (base.size() >= 4 && base.substr(base.size() - 4) == ".csv")
    base.resize(base.size() - 4);
  return base + ".meta.json";
}

std::string write_vectors(const std::string& path, const Eigen::MatrixXd& vectors,
                          const std::string& metadata_json) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path);
  out << "node";
  for (Eigen::Index j = 0; j < vectors.cols(); ++j) out << ",x" << j + 1;
  out << "\n";
  char buf[64];
  for (Eigen::Index i = 0; i < vectors.rows(); ++i) {
    out << i;
    for (Eigen::Index j = 0; j < vectors.cols(); ++j) {
      std::snprintf(buf, sizeof buf, "%.17g", vectors(i, j));
      out << "," << buf;
    }
    out << "\n";
  }
  if (!out) throw io_error("write failed for " + path);

  std::string side = vectors_sidecar_path(path);
  std::ofstream meta(side);
  if (!meta) throw io_error("cannot write " + side);
  meta << metadata_json << "\n";
  if (!meta) throw io_error("write failed for " + side);
  return side;
}

Eigen::MatrixXd read_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool header_allowed = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line, '#')) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    std::vector<double> row;
    double x;
    while (ss >> x) row.push_back(x);
    if (row.empty() || !ss.eof()) {
      if (header_allowed) {
        header_allowed = false;
        continue;
      }
      throw io_error("parse error at " + at_line(path, lineno));
    }
    header_allowed = false;
    if (!rows.empty() && row.size() != rows.front().size())
      throw io_error("inconsistent column count at " + at_line(path, lineno));
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw io_error("no points in " + path);
  Eigen::MatrixXd pts(static_cast<Eigen::Index>(rows.size()),
                      static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows.front().size(); ++j)
      pts(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
  return pts;
}

std::vector<std::pair<Eigen::Index, double>> read_seed_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path);
  std::vector<std::pair<Eigen::Index, double>> support;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (blank_or_comment(line, '#')) continue;
    std::istringstream ss(line);
    long long node;
    double w;
    if (!(ss >> node >> w))
      throw io_error("parse error at " + at_line(path, lineno) + ": expected \"node weight\"");
    std::string rest;
    if (ss >> rest) throw io_error("trailing data at " + at_line(path, lineno));
    support.emplace_back(node, w);
  }
  if (support.empty()) throw io_error("no seed entries in " + path);
  return support;
}

}  // namespace sseig
