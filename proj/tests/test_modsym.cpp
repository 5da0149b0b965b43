#include "doctest.h"
#include <set>
#include "ogg/modsym.hpp"

using namespace ogg;

namespace {

std::vector<std::int64_t> squarefree_levels(std::int64_t lo, std::int64_t hi) {
  std::vector<std::int64_t> out;
  for (std::int64_t N = lo; N <= hi; ++N)
    if (is_squarefree(N)) out.push_back(N);
  return out;
}

// Oracle: a_n of the elliptic curve y^2 + y = x^3 - x^2 by counting points
// over F_p and extending with the Hecke recurrences.
std::int64_t curve_11a_ap(std::int64_t p) {
  std::int64_t affine = 0;
  for (std::int64_t x = 0; x < p; ++x)
    for (std::int64_t y = 0; y < p; ++y)
      if (((y * y + y - x * x * x + x * x) % p + p) % p == 0) ++affine;
  return p + 1 - (affine + 1);
}

std::int64_t curve_11a_an(std::int64_t n) {
  std::int64_t a = 1;
  for (auto [p, e] : factor(n)) {
    const std::int64_t ap = curve_11a_ap(p);
    std::int64_t prev = 1, cur = ap;
    for (int k = 1; k < e; ++k) {
      const std::int64_t next = ap * cur - p * prev;
      prev = cur;
      cur = next;
    }
    a *= cur;
  }
  return a;
}

}  // namespace

TEST_CASE("P1 and Manin space sizes") {
  for (auto N : squarefree_levels(2, 60)) {
    ManinSpace ms = build_manin_space(N);
    CHECK(ms.p1.size() == gamma0_index(N));
    CHECK(ms.cuspidal_dimension() == 2 * genus_x0(N));
    CHECK(ms.dimension() == ms.cuspidal_dimension() + static_cast<Index>(divisors(N).size()) - 1);
  }
  CHECK(build_manin_space(11).p1.size() == 12);
  CHECK(build_manin_space(11).cuspidal_dimension() == 2);
  CHECK(build_manin_space(6).cuspidal_dimension() == 0);
  CHECK(build_manin_space(15).cuspidal_dimension() == 2);
  CHECK_THROWS_AS(build_manin_space(12), PreconditionError);
}

TEST_CASE("Merel matrices") {
  for (std::int64_t n : {1, 2, 5, 12, 37}) {
    const auto X = merel_matrices(n);
    std::set<std::array<std::int64_t, 4>> unique(X.begin(), X.end());
    CHECK(unique.size() == X.size());
    // brute-force enumeration over the bounded box a + d <= n + 1
    std::size_t count = 0;
    for (std::int64_t a = 1; a <= n; ++a)
      for (std::int64_t b = 0; b < a; ++b)
        for (std::int64_t d = 1; d <= n; ++d)
          for (std::int64_t c = 0; c < d; ++c)
            if (a * d - b * c == n) {
              ++count;
              CHECK(unique.count({a, b, c, d}) == 1);
            }
    CHECK(count == X.size());
  }
}

TEST_CASE("Hecke matrices at level 11") {
  ManinSpace ms = build_manin_space(11);
  CHECK(hecke_matrix(ms, 1).matrix == RatMatrix::Identity(2, 2));
  CHECK(charpoly(hecke_matrix(ms, 2).matrix) == IntPoly{4, 4, 1});
  CHECK(charpoly(hecke_matrix(ms, 11).matrix) == IntPoly{1, -2, 1});
  CHECK(cuspidal_charpoly_sqrt(ms, 2) == IntPoly{2, 1});
  CHECK(cuspidal_charpoly_sqrt(ms, 3) == IntPoly{1, 1});
  CHECK(cuspidal_charpoly_sqrt(build_manin_space(6), 5) == IntPoly{1});
}

TEST_CASE("level 15 Atkin-Lehner eigenvalues") {
  ManinSpace ms = build_manin_space(15);
  CHECK(cuspidal_charpoly_sqrt(ms, 3) == IntPoly{1, 1});
  CHECK(cuspidal_charpoly_sqrt(ms, 5) == IntPoly{-1, 1});
}

TEST_CASE("integral cusp form basis") {
  auto f11 = integral_cuspform_basis(11, 10);
  REQUIRE(f11.size() == 1);
  CHECK(f11[0][0] == 0);
  CHECK(f11[0][1] == 1);
  CHECK(f11[0][2] == -2);
  CHECK(f11[0][3] == -1);
  CHECK(f11[0][4] == 2);
  CHECK(f11[0][5] == 1);
  for (std::int64_t n = 1; n <= 10; ++n) CHECK(f11[0][n] == curve_11a_an(n));
  CHECK(integral_cuspform_basis(6, 10).empty());

  for (std::int64_t N : {23, 35, 37, 42, 57}) {
    auto forms = integral_cuspform_basis(N, 30);
    CHECK(static_cast<std::int64_t>(forms.size()) == genus_x0(N));
    Index last = -1;
    for (const auto& f : forms) {
      Index lead = 0;
      while (f[lead] == 0) ++lead;
      CHECK(lead > last);
      last = lead;
    }
  }
}

TEST_CASE("cusp form Hecke matrices agree with the action on q-expansions") {
  for (std::int64_t N : {11, 22, 35, 39, 46}) {
    ManinSpace ms = build_manin_space(N);
    const std::int64_t nmax = 12;
    const Index P = (sturm_bound(N) + 1) * nmax;
    CuspformBasis cb = cuspform_basis(ms, P, nmax);
    for (std::int64_t n = 1; n <= nmax; ++n)
      for (std::size_t i = 0; i < cb.forms.size(); ++i) {
        Series image = hecke_on_series(cb.forms[i], n, N);
        Series expected(image.precision());
        for (std::size_t j = 0; j < cb.forms.size(); ++j)
          expected = expected + Rational(cb.hecke[static_cast<std::size_t>(n)](static_cast<Index>(i), static_cast<Index>(j))) * cb.forms[j];
        CHECK(image == expected);
      }
  }
}

TEST_CASE("point counts") {
  CHECK(jacobian_point_count(11, 3) == 5);
  CHECK(jacobian_point_count(11, 7) == 10);
  CHECK_THROWS_AS(jacobian_point_count(11, 2), PreconditionError);
  CHECK_THROWS_AS(jacobian_point_count(11, 11), PreconditionError);
  CHECK_THROWS_AS(jacobian_point_count(11, 9), PreconditionError);
  CHECK(jacobian_point_count(6, 5) == 1);
}

TEST_CASE("Hecke matrices commute and cuspidal charpolys are squares") {
  for (auto N : squarefree_levels(2, 60)) {
    ManinSpace ms = build_manin_space(N);
    auto T = cuspidal_hecke_table(ms, 20);
    for (std::int64_t n = 1; n <= 12; ++n)
      for (std::int64_t m = n + 1; m <= 12; ++m)
        CHECK(T[static_cast<std::size_t>(n)] * T[static_cast<std::size_t>(m)] ==
              T[static_cast<std::size_t>(m)] * T[static_cast<std::size_t>(n)]);
    for (std::int64_t n = 1; n <= 20; ++n)
      CHECK_MESSAGE(poly_sqrt(charpoly(T[static_cast<std::size_t>(n)])).has_value(), "N=" << N << " n=" << n);
    for (auto q : primes_up_to(40))
      if ((2 * N) % q != 0) CHECK(jacobian_point_count(ms, q) > 0);
  }
}
