#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "sofic/cover.hpp"
#include "sofic/error.hpp"
#include "sofic/families.hpp"
#include "sofic/matrix.hpp"

using namespace sofic;

namespace {

IntMatrix fig1_matrix(const Cover& c) { return adjacency_matrix(c.graph); }

std::vector<mpz_class> diagonal(const IntMatrix& d) {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i) out.push_back(d(i, i));
  return out;
}

bool is_diagonal(const IntMatrix& d) {
  for (std::size_t i = 0; i < d.rows(); ++i)
    for (std::size_t j = 0; j < d.cols(); ++j)
      if (i != j && d(i, j) != 0) return false;
  return true;
}

mpz_class abs_det(const IntMatrix& m) { return abs(determinant(m)); }

}  // namespace

TEST_CASE("adjacency matrices") {
  auto c = left_fischer_cover(parse_list("aa\naaa\nb\n"));
  std::vector<std::size_t> order{*c.vertex_by_descriptor("ba"), *c.vertex_by_descriptor("aa"),
                                 *c.vertex_by_descriptor("ab")};
  auto a = fig1_matrix(c);
  IntMatrix expected{{1, 1, 0}, {0, 1, 1}, {1, 0, 0}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(a(order[i], order[j]) == expected(i, j));

  LabelledGraph one(std::vector<Symbol>{Symbol("a")});
  auto v = one.add_vertex("c");
  one.add_edge(v, v, Symbol("a"));
  CHECK(adjacency_matrix(one) == IntMatrix{{1}});

  std::map<Symbol, mpz_class> partial{{Symbol("a"), 2}};
  try {
    adjacency_matrix(c.graph, partial);
    FAIL("expected MissingWeight");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingWeight);
  }
}

TEST_CASE("weighted adjacency equals the fragmented cover") {
  auto l = parse_list("aa\naaa\nb\n");
  auto c = left_fischer_cover(l);
  std::map<Symbol, mpz_class> w{{Symbol("a"), 1}, {Symbol("b"), 3}};
  auto weighted = signed_bowen_franks(adjacency_matrix(c.graph, w));
  auto fragmented = signed_bowen_franks(adjacency_matrix(left_fischer_cover(fragment(l, Symbol("b"), 3)).graph));
  CHECK(weighted == fragmented);
}

TEST_CASE("Smith normal form examples") {
  CHECK(diagonal(smith_normal_form(IntMatrix{{2, 0}, {0, 4}}).D) == std::vector<mpz_class>{2, 4});
  CHECK(diagonal(smith_normal_form(IntMatrix{{0, -1, 0}, {0, 0, -1}, {-1, 0, 1}}).D) ==
        std::vector<mpz_class>{1, 1, 1});
  CHECK(diagonal(smith_normal_form(IntMatrix{{4, 2}, {2, 4}}).D) == std::vector<mpz_class>{2, 6});
  CHECK(diagonal(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).D) == std::vector<mpz_class>{0, 0});
}

TEST_CASE("Smith normal form property suite") {
  std::mt19937_64 rng(20240611);
  for (int t = 0; t < 200; ++t) {
    auto m = oracle::random_matrix(rng, 5, -9, 9);
    auto s = smith_normal_form(m);
    CHECK(s.D == s.U * m * s.V);
    CHECK(abs_det(s.U) == 1);
    CHECK(abs_det(s.V) == 1);
    CHECK(is_diagonal(s.D));
    auto d = diagonal(s.D);
    for (std::size_t i = 0; i + 1 < d.size(); ++i) {
      CHECK(d[i] >= 0);
      if (d[i] != 0) CHECK(d[i + 1] % d[i] == 0);
      else CHECK(d[i + 1] == 0);
    }
    mpz_class prod = 1;
    for (const auto& x : d) prod *= x;
    CHECK(prod == abs_det(m));
    if (t < 40) {
      // Invariant factors agree with the determinantal divisor oracle.
      auto f = oracle::invariant_factors(m);
      std::vector<mpz_class> nonzero;
      for (const auto& x : d)
        if (x != 0) nonzero.push_back(x);
      CHECK(nonzero == f);
    }
  }
}

TEST_CASE("Smith form is invariant under unimodular change of basis") {
  std::mt19937_64 rng(99);
  for (int t = 0; t < 50; ++t) {
    auto m = oracle::random_matrix(rng, 4, -5, 5);
    // Products of elementary matrices are unimodular.
    auto p = IntMatrix::identity(4), q = IntMatrix::identity(4);
    std::uniform_int_distribution<int> idx(0, 3), coef(-2, 2);
    for (int k = 0; k < 6; ++k) {
      auto e = IntMatrix::identity(4);
      int i = idx(rng), j = idx(rng);
      if (i != j) e(i, j) = coef(rng);
      p = p * e;
      auto f = IntMatrix::identity(4);
      i = idx(rng), j = idx(rng);
      if (i != j) f(i, j) = coef(rng);
      q = f * q;
    }
    CHECK(smith_normal_form(p * m * q).D == smith_normal_form(m).D);
  }
}

TEST_CASE("determinant") {
  CHECK(determinant(IntMatrix{{1, 5, 6}, {3, 2, 4}, {7, 8, 9}}) == 51);
  CHECK(determinant(IntMatrix{{1, 5, 6, -3, 92}, {3, 2, 4, -5, 13}, {7, 8, 9, -1, 0}, {8, 2, 1, 10, 41},
                              {3, 12, 92, -7, -4}}) == -3115014);
  CHECK(determinant(IntMatrix{{0, 1}, {1, 0}}) == -1);
}

TEST_CASE("signed Bowen-Franks classes") {
  auto c = left_fischer_cover(parse_list("aa\naaa\nb\n"));
  auto bf = signed_bowen_franks(adjacency_matrix(c.graph));
  CHECK(bf.to_string() == "sign=-1 torsion=[] free_rank=0 det=-1");
  CHECK(signed_bowen_franks(IntMatrix{{2}}).to_string() == "sign=-1 torsion=[] free_rank=0 det=-1");
  auto d = signed_bowen_franks(adjacency_matrix(left_fischer_cover(build_diag({4, 2})).graph));
  CHECK(d.sign == -1);
  CHECK(d.torsion == std::vector<mpz_class>{2});
  auto zero = signed_bowen_franks(IntMatrix{{1, 1}, {0, 1}});
  CHECK(zero.sign == 0);
  CHECK(zero.free_rank > 0);
}

TEST_CASE("Bowen-Franks invariance under permutation similarity") {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 30; ++t) {
    auto a = oracle::random_matrix(rng, 4, 0, 3);
    std::vector<std::size_t> perm{0, 1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), rng);
    IntMatrix b(4, 4);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) b(perm[i], perm[j]) = a(i, j);
    CHECK(signed_bowen_franks(a) == signed_bowen_franks(b));
  }
}

TEST_CASE("flow equivalence") {
  auto a = adjacency_matrix(left_fischer_cover(parse_list("aa\naaa\nb\n")).graph);
  CHECK(flow_equivalent(a, IntMatrix{{2}}) == FlowVerdict::Yes);
  CHECK(flow_equivalent(a, a) == FlowVerdict::Yes);
  auto d = adjacency_matrix(left_fischer_cover(build_diag({4, 2})).graph);
  CHECK(flow_equivalent(d, IntMatrix{{2}}) == FlowVerdict::No);
  CHECK(flow_equivalent(IntMatrix{{0, 1}, {1, 0}}, IntMatrix{{2}}) == FlowVerdict::TrivialGuard);
  try {
    flow_equivalent(IntMatrix{{1, 1}, {0, 1}}, IntMatrix{{2}});
    FAIL("expected NotIrreducible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIrreducible);
  }
  CHECK(to_string(FlowVerdict::TrivialGuard) == "trivial_guard");
}

TEST_CASE("entropy") {
  auto two = entropy(IntMatrix{{2}});
  CHECK(std::abs(two.value - std::log(2.0)) < 1e-12);
  auto golden = entropy(adjacency_matrix(left_fischer_cover(parse_list("a\nab\n")).graph));
  CHECK(std::abs(golden.value - std::log((1 + std::sqrt(5.0)) / 2)) < 1e-9);
  CHECK(golden.upper - golden.lower <= 1e-9);
  CHECK(golden.lower <= golden.value);
  CHECK(golden.value <= golden.upper);
  auto a = adjacency_matrix(left_fischer_cover(parse_list("aa\naaa\nb\n")).graph);
  auto e = entropy(a);
  // Dominant root of x^3 - 2x^2 + x - 1.
  double x = 1.75;
  for (int i = 0; i < 60; ++i) x -= (x * x * x - 2 * x * x + x - 1) / (3 * x * x - 4 * x + 1);
  CHECK(std::abs(e.value - std::log(x)) < 1e-9);
  CHECK(std::abs(entropy(a.transpose()).value - e.value) < 1e-9);

  try {
    entropy(IntMatrix{{1, -1}, {1, 1}});
    FAIL("expected NotNonnegative");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotNonnegative);
  }
  try {
    entropy(IntMatrix{{1, 1}, {0, 1}});
    FAIL("expected NotIrreducible");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::NotIrreducible);
  }
}
