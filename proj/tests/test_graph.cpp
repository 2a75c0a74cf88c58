#include <Eigen/Dense>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "sseig/errors.hpp"
#include "sseig/graph.hpp"
#include "sseig/graph_io.hpp"
#include "test_support.hpp"

using namespace sseig;

namespace {

Graph complete4() {
  std::vector<Edge> edges;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j) edges.push_back({i, j, 1.0});
  return Graph::from_edges(4, edges);
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  out << body;
}

}  // namespace

TEST_CASE("degrees, volume, and connectivity of a complete graph") {
  Graph g = complete4();
  CHECK(g.node_count() == 4);
  CHECK(g.edge_count() == 6);
  CHECK(g.degrees().isApproxToConstant(3.0));
  CHECK(g.volume() == doctest::Approx(12.0));
  CHECK(g.connected());
}

TEST_CASE("disconnected graphs are flagged") {
  Graph g = Graph::from_edges(4, {{0, 1, 1.0}, {2, 3, 1.0}});
  CHECK_FALSE(g.connected());
}

TEST_CASE("duplicate edge declarations accumulate") {
  Graph g = Graph::from_edges(2, {{0, 1, 1.0}, {1, 0, 0.5}});
  CHECK(g.degrees()[0] == doctest::Approx(1.5));
  CHECK(g.edge_count() == 1);
}

TEST_CASE("self-loops are rejected by default") {
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 0, 1.0}, {0, 1, 1.0}}),
                  invalid_argument);
  CHECK_THROWS_AS(Graph::from_edges(2, {{0, 1, -1.0}}), invalid_argument);
}

TEST_CASE("matvecs agree with dense arithmetic") {
  Graph g = testsup::erdos_renyi_connected(17, 0.3, 0.2, 1.4, 41);
  const Eigen::Index n = g.node_count();
  Eigen::MatrixXd a = Eigen::MatrixXd(g.adjacency());
  Eigen::MatrixXd d = g.degrees().asDiagonal();
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(n, -1.0, 2.0);

  CHECK((g.apply_adjacency(x) - a * x).norm() < 1e-12);
  CHECK((g.apply_laplacian(x) - (d - a) * x).norm() < 1e-12);
  Eigen::VectorXd ds = g.inv_sqrt_degrees();
  CHECK((g.apply_normalized_adjacency(x) -
         ds.asDiagonal() * a * (ds.asDiagonal() * x))
            .norm() < 1e-12);
}

TEST_CASE("the normalized adjacency of a complete graph has the known spectrum") {
  Graph g = complete4();
  // Eigenvalues are 1 (constant direction) and -1/3 (threefold).
  Eigen::VectorXd ones = Eigen::VectorXd::Ones(4);
  Eigen::VectorXd v0 = g.sqrt_degrees();
  CHECK((g.apply_normalized_adjacency(v0) - v0).norm() < 1e-12);
  Eigen::VectorXd w(4);
  w << 1.0, -1.0, 0.0, 0.0;
  Eigen::VectorXd dw = g.sqrt_degrees().cwiseProduct(w);
  CHECK((g.apply_normalized_adjacency(dw) + dw / 3.0).norm() < 1e-12);
}

TEST_CASE("degree inner product matches explicit sums") {
  Graph g = Graph::from_edges(3, {{0, 1, 2.0}, {1, 2, 1.0}});
  Eigen::VectorXd x(3), y(3);
  x << 1.0, 2.0, 3.0;
  y << -1.0, 0.5, 2.0;
  // degrees: 2, 3, 1
  CHECK(g.dot_d(x, y) == doctest::Approx(1 * 2 * -1 + 2 * 3 * 0.5 + 3 * 1 * 2));
  CHECK(g.norm_d(x) == doctest::Approx(std::sqrt(2.0 + 4 * 3.0 + 9.0)));
}

TEST_CASE("canonical edges and digest are stable and weight-sensitive") {
  Graph g1 = Graph::from_edges(3, {{1, 0, 1.0}, {2, 1, 0.5}});
  Graph g2 = Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 0.5}});
  CHECK(g1.digest() == g2.digest());
  Graph g3 = Graph::from_edges(3, {{0, 1, 1.0}, {1, 2, 0.5000001}});
  CHECK(g1.digest() != g3.digest());
  auto edges = g1.canonical_edges();
  REQUIRE(edges.size() == 2);
  CHECK(edges[0].u == 0);
  CHECK(edges[0].v == 1);
  CHECK(edges[1].u == 1);
  CHECK(edges[1].v == 2);
}

TEST_CASE("edge list round trip preserves the graph bit for bit") {
  Graph g = testsup::erdos_renyi_connected(23, 0.25, 0.1, 1.0, 7);
  const std::string path = "roundtrip_test.edges";
  write_graph(path, g);
  Graph back = read_graph(path);
  CHECK(back.digest() == g.digest());
  CHECK(back.node_count() == g.node_count());
  std::remove(path.c_str());
}

TEST_CASE("asymmetric duplicate edge lines are averaged with a warning") {
  const std::string path = "asym_test.edges";
  write_file(path, "0 1 2.0\n1 0 1.0\n1 2 1.0\n");
  std::vector<std::string> warnings;
  Graph g = read_graph(path, GraphFormat::auto_detect, &warnings);
  CHECK(g.degrees()[0] == doctest::Approx(1.5));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("averag") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("matrix market symmetric coordinate files parse") {
  const std::string path = "mm_sym_test.mtx";
  write_file(path,
             "%%MatrixMarket matrix coordinate real symmetric\n"
             "3 3 2\n"
             "2 1 1.0\n"
             "3 2 0.5\n");
  Graph g = read_graph(path);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.degrees()[1] == doctest::Approx(1.5));
  std::remove(path.c_str());
}

TEST_CASE("matrix market general matrices are symmetrized with a warning") {
  const std::string path = "mm_gen_test.mtx";
  write_file(path,
             "%%MatrixMarket matrix coordinate real general\n"
             "2 2 1\n"
             "1 2 1.0\n");
  std::vector<std::string> warnings;
  Graph g = read_graph(path, GraphFormat::auto_detect, &warnings);
  // One-sided entry contributes half its weight after (W + W^T)/2.
  CHECK(g.degrees()[0] == doctest::Approx(0.5));
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].find("symmetrized") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("unreadable and malformed graph files raise io errors") {
  CHECK_THROWS_AS(read_graph("no_such_file_anywhere.edges"), io_error);
  const std::string path = "garbage_test.edges";
  write_file(path, "0 1\n");
  CHECK_THROWS_AS(read_graph(path), io_error);
  write_file(path, "0 0 1.0\n");
  CHECK_THROWS_AS(read_graph(path), io_error);
  write_file(path, "0 1 -2.0\n");
  CHECK_THROWS_AS(read_graph(path), io_error);
  std::remove(path.c_str());
}
