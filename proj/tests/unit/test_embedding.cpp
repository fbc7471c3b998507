#include <doctest.h>

#include <cmath>

#include "drsc/embedding.hpp"
#include "drsc/error.hpp"
#include "drsc/graph.hpp"
#include "drsc/linalg.hpp"
#include "oracles.hpp"

using namespace drsc;

TEST_CASE("embed_sc scales eigenvectors by eigenvalues") {
  // Spectrum {1, 0.2}.
  const double c = 0.6, s = 0.8;
  Matrix l(2, 2);
  l(0, 0) = 1.0 * c * c + 0.2 * s * s;
  l(1, 1) = 1.0 * s * s + 0.2 * c * c;
  l(0, 1) = l(1, 0) = (1.0 - 0.2) * c * s;
  const SpectralEmbedding e = embed_sc(l, 1, 1);
  REQUIRE(e.X.cols() == 2);
  CHECK(e.values[0] == doctest::Approx(1.0));
  CHECK(e.values[1] == doctest::Approx(0.2));
  CHECK(norm2(e.X.column(0)) == doctest::Approx(1.0));
  CHECK(norm2(e.X.column(1)) == doctest::Approx(0.2));
  CHECK(embed_sc(l, 1, 0).X.cols() == 1);
  CHECK_THROWS_AS(embed_sc(l, 2, 1), Error);
}

TEST_CASE("karate embedding column norms") {
  const LabeledGraph k = karate_club();
  const RegularizedLaplacian l = multiple_laplacian(k.graph, default_taus(Method::DRSC, k.graph, 2));
  const SpectralEmbedding e = embed_sc(l, 2, 1);
  CHECK(e.X.rows() == 34);
  CHECK(e.X.cols() == 3);
  const Vector all = sym_eigenvalues(l.matrix);
  for (std::size_t j = 0; j < 3; ++j) CHECK(norm2(e.X.column(j)) == doctest::Approx(std::abs(all[j])));
}

TEST_CASE("row normalization") {
  const RowNormalized r = row_normalize(Matrix{{3, 4}, {0.6, 0.8}, {0, 0}});
  CHECK(r.X(0, 0) == doctest::Approx(0.6));
  CHECK(r.X(0, 1) == doctest::Approx(0.8));
  CHECK(r.X(1, 0) == doctest::Approx(0.6));
  CHECK(r.X(2, 0) == 0.0);
  CHECK(r.zero_rows == std::vector<std::size_t>{2});
}

TEST_CASE("ratio matrix") {
  const Matrix r = ratio_matrix(Matrix{{2, 4}, {1, 3}});
  CHECK(r.cols() == 1);
  CHECK(r(0, 0) == doctest::Approx(2.0));
  CHECK(r(1, 0) == doctest::Approx(3.0));
  const Matrix z = ratio_matrix(Matrix{{2, 0, 1}, {1, 0, 1}});
  CHECK(z(0, 0) == 0.0);
  CHECK(z(1, 0) == 0.0);
  CHECK_THROWS_WITH_AS(ratio_matrix(Matrix{{1, 1}, {0, 1}}), doctest::Contains("node 1"), DomainError);
}

TEST_CASE("karate DRSCORE ratios are finite") {
  const LabeledGraph k = karate_club();
  const RegularizedLaplacian l = multiple_laplacian(k.graph, default_taus(Method::DRSCORE, k.graph, 2));
  const Matrix r = ratio_matrix(embed_sc(l, 2, 1).X);
  CHECK(all_finite(r));
}

TEST_CASE("SLIM similarity") {
  const Matrix edge{{0, 1}, {1, 0}};
  const double taus[] = {0.0, 0.0};
  const RegularizedLaplacian l = multiple_laplacian(edge, taus);
  const double vs = std::exp(-0.25);
  const Matrix m = slim_similarity(l, 0.25);
  CHECK(m(0, 0) == 0.0);
  CHECK(m(0, 1) == doctest::Approx(vs / (1.0 - vs * vs)));

  const LabeledGraph k = karate_club();
  const RegularizedLaplacian lk = multiple_laplacian(k.graph, default_taus(Method::DRSLIM, k.graph, 2));
  CHECK(frobenius_norm(slim_similarity(lk, 30.0)) < 1e-10);
}

TEST_CASE("SLIM similarity matches the Neumann series on 20 random graphs") {
  Rng rng(21);
  int checked = 0;
  while (checked < 20) {
    const Graph g = oracle::random_graph(10, 0.4, rng);
    bool isolated = false;
    for (double r : g.adjacency().row_sums()) isolated = isolated || r == 0.0;
    if (isolated) continue;
    const double taus[] = {1.0, 0.5};
    const RegularizedLaplacian l = multiple_laplacian(g.adjacency(), taus);
    const double vs = std::exp(-0.25);
    Matrix b = l.matrix;
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = 0; j < 10; ++j) b(i, j) *= vs / l.regularized_degree[i];
    Matrix w = oracle::neumann(b, 200);
    Matrix ref = (w + w.transpose()) * 0.5;
    for (std::size_t i = 0; i < 10; ++i) ref(i, i) = 0.0;
    CHECK(max_abs(slim_similarity(l, 0.25) - ref) <= 1e-8);
    ++checked;
  }
}

TEST_CASE("method names") {
  CHECK(method_name(MethodSpec::dual(Family::SC)) == "DRSC");
  CHECK(method_name(MethodSpec::dual(Family::SCORE)) == "DRSCORE");
  CHECK(method_name(MethodSpec::multiple(Family::SLIM, 4)) == "4RSLIM");
  MethodSpec s = MethodSpec::dual(Family::SLIM);
  s.K0 = 1;
  CHECK(method_name(s) == "DRSLIM_K+1");
  for (const char* name : {"DRSC", "DRSC_K+2", "DRSCORE_K+2", "DRSLIM_K+1", "1RSC", "10RSC", "3RSLIM"})
    CHECK(method_name(parse_method(name)) == name);
  CHECK(method_name(parse_method("drsc")) == "DRSC");
  CHECK(parse_method("mrscore", 5).M == 5);
  CHECK(parse_method("MRSC", 2).M == 2);
  CHECK_THROWS_AS(parse_method("XRSC"), InvalidArgument);
  CHECK(default_K0(Family::SC) == 1);
  CHECK(default_K0(Family::SCORE) == 1);
  CHECK(default_K0(Family::SLIM) == 2);
}

TEST_CASE("method spec validation") {
  MethodSpec s = MethodSpec::dual(Family::SCORE);
  s.K0 = 0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = MethodSpec::dual(Family::SLIM);
  s.gamma = 0.0;
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
  s = MethodSpec::dual(Family::SC);
  s.schedule = RegularizerSchedule::explicit_values({1.0});
  CHECK_THROWS_AS(s.validate(), InvalidArgument);
}

TEST_CASE("karate defaults recover the factions") {
  const LabeledGraph k = karate_club();
  for (Family f : {Family::SC, Family::SCORE, Family::SLIM}) {
    const LabelVector l = run_method(k.graph, 2, MethodSpec::dual(f));
    CHECK(align_and_count(l, k.truth).mismatches == 0);
  }
  MethodSpec s = MethodSpec::dual(Family::SLIM);
  s.K0 = 1;
  CHECK(align_and_count(run_method(k.graph, 2, s), k.truth).mismatches == 0);
}

TEST_CASE("two cliques joined by an edge are split exactly") {
  const LabeledGraph g = oracle::two_cliques(10);
  for (Family f : {Family::SC, Family::SCORE, Family::SLIM})
    CHECK(align_and_count(run_method(g.graph, 2, MethodSpec::dual(f)), g.truth).mismatches == 0);
}

TEST_CASE("MRSC with M = 2 is DRSC") {
  const LabeledGraph k = karate_club();
  const MethodResult d = run_method_detailed(k.graph, 2, MethodSpec::dual(Family::SC));
  const MethodResult m = run_method_detailed(k.graph, 2, parse_method("MRSC", 2));
  CHECK(d.embedding.X == m.embedding.X);
  CHECK(d.labels == m.labels);
  CHECK(d.taus == m.taus);
}

TEST_CASE("run_method is deterministic") {
  const LabeledGraph k = karate_club();
  const MethodSpec s = MethodSpec::dual(Family::SLIM);
  CHECK(run_method(k.graph, 2, s) == run_method(k.graph, 2, s));
}

TEST_CASE("ideal pipeline on K = 1") {
  const Matrix omega(6, 6, 0.3);
  const LabelVector l = run_ideal(omega, 1, MethodSpec::dual(Family::SC));
  for (int v : l.labels) CHECK(v == 1);
}
