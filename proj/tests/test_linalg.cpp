#include <doctest.h>

#include <random>

#include "loopmod/linalg.hpp"

using namespace loopmod;

namespace {

Matrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, int n, std::size_t forced_rank) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> power(0, n - 1);
  auto entry = [&] { return Cyc(coef(rng)) * Cyc::zeta(n, power(rng)); };
  Matrix left(rows, forced_rank);
  Matrix right(forced_rank, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < forced_rank; ++j) left(i, j) = entry();
  }
  for (std::size_t i = 0; i < forced_rank; ++i) {
    for (std::size_t j = 0; j < cols; ++j) right(i, j) = entry();
  }
  return left * right;
}

}  // namespace

TEST_CASE("identity matrix has full rank and empty kernel") {
  Matrix id = Matrix::identity(5);
  CHECK(rank(id) == 5);
  CHECK(kernel(id).empty());
  CHECK(det(id).is_one());
  CHECK(inverse(id) == id);
}

TEST_CASE("the singular 2x2 matrix over Q(i)") {
  Matrix m(2, 2);
  Cyc i = Cyc::zeta(4, 1);
  m(0, 0) = Cyc(1);
  m(0, 1) = i;
  m(1, 0) = i;
  m(1, 1) = Cyc(-1);
  CHECK(det(m).is_zero());
  CHECK(rank(m) == 1);
  CHECK_THROWS_AS(inverse(m), SingularMatrix);
  auto k = kernel(m);
  REQUIRE(k.size() == 1);
  CHECK(is_zero_vec(m * k[0]));
}

TEST_CASE("rank-nullity on random matrices") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> dim(1, 6);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = dim(rng);
    std::size_t c = dim(rng);
    std::size_t k = std::min({r, c, dim(rng)});
    int n = std::vector<int>{1, 3, 4, 8}[static_cast<std::size_t>(trial % 4)];
    Matrix m = random_matrix(rng, r, c, n, k);
    auto ker = kernel(m);
    CHECK(rank(m) + ker.size() == c);
    for (const auto& v : ker) CHECK(is_zero_vec(m * v));
  }
}

TEST_CASE("solve returns a solution modulo the kernel") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix a = random_matrix(rng, 4, 5, 12, 3);
    Vec x0(5);
    for (std::size_t i = 0; i < 5; ++i) x0[i] = Cyc(static_cast<long>(i) - 2) * Cyc::zeta(12, static_cast<long>(i));
    Vec b = a * x0;
    SolveResult s = solve(a, b);
    REQUIRE(s.consistent());
    CHECK(a * *s.solution == b);
    Vec diff = sub_vec(*s.solution, x0);
    EchelonBasis kb(5);
    for (const auto& v : s.kernel) kb.insert(v);
    CHECK(kb.contains(diff));
  }
  Matrix z(2, 2);
  z(0, 0) = Cyc(1);
  Vec b{Cyc(), Cyc(1)};
  CHECK_FALSE(solve(z, b).consistent());
}

TEST_CASE("inverse and determinant agree") {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 15; ++trial) {
    Matrix a = random_matrix(rng, 4, 4, 8, 4);
    if (det(a).is_zero()) continue;
    Matrix inv = inverse(a);
    CHECK((a * inv).is_identity());
    CHECK((inv * a).is_identity());
    CHECK(det(a) * det(inv) == Cyc(1));
  }
}

TEST_CASE("echelon basis coordinates reproduce vectors") {
  std::mt19937_64 rng(13);
  Matrix m = random_matrix(rng, 6, 4, 4, 3);
  EchelonBasis eb(6, true);
  for (std::size_t j = 0; j < 4; ++j) eb.insert(m.column(j));
  CHECK(eb.size() == 3);
  Vec target = add_vec(m.column(0), scale_vec(m.column(3), Cyc::zeta(4, 1)));
  auto coords = eb.coordinates(target);
  REQUIRE(coords.has_value());
  Vec rebuilt(6);
  for (std::size_t i = 0; i < eb.size(); ++i) axpy(rebuilt, (*coords)[i], eb.vectors()[i]);
  CHECK(rebuilt == target);
}
