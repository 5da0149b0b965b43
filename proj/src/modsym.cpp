#include "ogg/modsym.hpp"

#include <algorithm>

namespace ogg {

namespace {

std::int64_t mod_n(std::int64_t a, std::int64_t N) {
  a %= N;
  return a < 0 ? a + N : a;
}

}  // namespace

P1List::P1List(std::int64_t N) : N_(N), table_(static_cast<std::size_t>(N * N), -1) {
  require(N >= 1, "P1: level must be positive");
  std::vector<std::int64_t> units;
  for (std::int64_t u = 1; u <= N; ++u)
    if (gcd(u, N) == 1) units.push_back(u % N);
  for (std::int64_t c = 0; c < N; ++c)
    for (std::int64_t d = 0; d < N; ++d) {
      if (gcd(gcd(c, d), N) != 1 || table_[static_cast<std::size_t>(c * N + d)] >= 0) continue;
      const int idx = static_cast<int>(reps_.size());
      reps_.emplace_back(c, d);  // first in lexicographic order, so canonical
      for (auto u : units) table_[static_cast<std::size_t>(((u * c) % N) * N + (u * d) % N)] = idx;
    }
}

Index P1List::index(std::int64_t c, std::int64_t d) const {
  return table_[static_cast<std::size_t>(mod_n(c, N_) * N_ + mod_n(d, N_))];
}

std::int64_t genus_x0(std::int64_t N) {
  require(is_squarefree(N), "genus: level must be square-free");
  const std::int64_t mu = gamma0_index(N);
  std::int64_t nu2 = 1, nu3 = 1;
  for (auto l : prime_divisors(N)) {
    // 1 + (-1/l) and 1 + (-3/l)
    nu2 *= (l == 2) ? 1 : (l % 4 == 1 ? 2 : 0);
    nu3 *= (l == 3) ? 1 : (l % 3 == 1 ? 2 : 0);
  }
  const std::int64_t cusps = static_cast<std::int64_t>(divisors(N).size());
  // g = 1 + mu/12 - nu2/4 - nu3/3 - cusps/2, computed over 12
  const std::int64_t twelve_g = 12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps;
  ensure(twelve_g % 12 == 0, "genus formula is not integral");
  return twelve_g / 12;
}

ManinSpace build_manin_space(std::int64_t N) {
  require(N > 1 && is_squarefree(N), "Manin symbols: need square-free N > 1");
  ManinSpace ms;
  ms.level = N;
  ms.p1 = P1List(N);
  const Index S = ms.p1.size();

  // x + x sigma = 0 and x + x tau + x tau^2 = 0
  std::vector<std::vector<Index>> relations;
  for (Index i = 0; i < S; ++i) {
    auto [c, d] = ms.p1[i];
    relations.push_back({i, ms.p1.index(d, -c)});
    relations.push_back({i, ms.p1.index(d, -c - d), ms.p1.index(-c - d, c)});
  }
  RatMatrix rel = RatMatrix::Zero(static_cast<Index>(relations.size()), S);
  for (std::size_t r = 0; r < relations.size(); ++r)
    for (Index j : relations[r]) rel(static_cast<Index>(r), j) += 1;
  const auto red = rref(rel);

  std::vector<Index> pivot_row(static_cast<std::size_t>(S), -1);
  for (Index r = 0; r < red.rank(); ++r) pivot_row[static_cast<std::size_t>(red.pivots[static_cast<std::size_t>(r)])] = r;
  std::vector<Index> generator_of(static_cast<std::size_t>(S), -1);
  for (Index j = 0; j < S; ++j)
    if (pivot_row[static_cast<std::size_t>(j)] < 0) {
      generator_of[static_cast<std::size_t>(j)] = static_cast<Index>(ms.generators.size());
      ms.generators.push_back(j);
    }
  const Index k = ms.dimension();
  ms.symbol_classes = RatMatrix::Zero(S, k);
  for (Index j = 0; j < S; ++j) {
    const Index g = generator_of[static_cast<std::size_t>(j)];
    if (g >= 0) {
      ms.symbol_classes(j, g) = 1;
      continue;
    }
    const Index r = pivot_row[static_cast<std::size_t>(j)];
    for (Index f = 0; f < k; ++f) ms.symbol_classes(j, f) = -red.R(r, ms.generators[static_cast<std::size_t>(f)]);
  }

  // boundary of (c : d) is [a/c] - [b/d]; for square-free N the class of a
  // cusp x/y depends only on gcd(y, N)
  const auto divs = divisors(N);
  auto cusp_of = [&](std::int64_t denominator) {
    const std::int64_t g = gcd(denominator, N);
    return static_cast<Index>(std::find(divs.begin(), divs.end(), g) - divs.begin());
  };
  ms.boundary = RatMatrix::Zero(k, static_cast<Index>(divs.size()));
  for (Index g = 0; g < k; ++g) {
    auto [c, d] = ms.p1[ms.generators[static_cast<std::size_t>(g)]];
    ms.boundary(g, cusp_of(c)) += 1;
    ms.boundary(g, cusp_of(d)) -= 1;
  }
  ms.cuspidal_basis = rational_left_kernel(ms.boundary);
  ensure(ms.cuspidal_dimension() == 2 * genus_x0(N), "cuspidal modular symbols have the wrong dimension");
  return ms;
}

std::vector<std::array<std::int64_t, 4>> merel_matrices(std::int64_t n) {
  require(n >= 1, "Merel matrices: n must be positive");
  std::vector<std::array<std::int64_t, 4>> out;
  // a + d <= n + 1 because ad - bc >= a + d - 1
  for (std::int64_t a = 1; a <= n; ++a)
    for (std::int64_t d = 1; a + d <= n + 1; ++d) {
      const std::int64_t m = a * d - n;  // = bc
      if (m < 0) continue;
      if (m == 0) {
        for (std::int64_t c = 0; c < d; ++c) out.push_back({a, 0, c, d});
        for (std::int64_t b = 1; b < a; ++b) out.push_back({a, b, 0, d});
        continue;
      }
      // b = m / c < a  <=>  c > m / a
      for (std::int64_t c = m / a + 1; c < d; ++c)
        if (m % c == 0) out.push_back({a, m / c, c, d});
    }
  return out;
}

namespace {

RatMatrix hecke_prime_on_quotient(const ManinSpace& ms, std::int64_t p) {
  const auto merel = merel_matrices(p);
  const Index k = ms.dimension(), S = ms.p1.size();
  RatMatrix A = RatMatrix::Zero(k, k);
  std::vector<std::int64_t> counts(static_cast<std::size_t>(S));
  for (Index g = 0; g < k; ++g) {
    std::fill(counts.begin(), counts.end(), 0);
    auto [u, v] = ms.p1[ms.generators[static_cast<std::size_t>(g)]];
    for (const auto& [a, b, c, d] : merel) {
      const Index i = ms.p1.index(u * a + v * c, u * b + v * d);
      if (i >= 0) ++counts[static_cast<std::size_t>(i)];
    }
    for (Index i = 0; i < S; ++i)
      if (counts[static_cast<std::size_t>(i)] != 0)
        A.row(g) += Rational(counts[static_cast<std::size_t>(i)]) * ms.symbol_classes.row(i);
  }
  return A;
}

RatMatrix restrict_to_cuspidal(const ManinSpace& ms, const RatMatrix& A) {
  if (ms.cuspidal_dimension() == 0) return RatMatrix(0, 0);
  auto Y = solve_left(ms.cuspidal_basis, RatMatrix(ms.cuspidal_basis * A));
  ensure(Y.has_value(), "Hecke operator does not preserve cuspidal symbols");
  return *Y;
}

// Fill table[1..nmax] from prime matrices.
template <class PrimeFn>
std::vector<RatMatrix> hecke_table(std::int64_t N, Index dim, std::int64_t nmax, PrimeFn prime_matrix) {
  std::vector<RatMatrix> T(static_cast<std::size_t>(std::max<std::int64_t>(nmax, 1) + 1));
  T[1] = RatMatrix::Identity(dim, dim);
  for (std::int64_t n = 2; n <= nmax; ++n) {
    const auto f = factor(n);
    const auto [p, e] = f.front();
    std::int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe *= p;
    const std::int64_t m = n / pe;
    if (m > 1) {
      T[static_cast<std::size_t>(n)] = T[static_cast<std::size_t>(pe)] * T[static_cast<std::size_t>(m)];
    } else if (e == 1) {
      T[static_cast<std::size_t>(n)] = prime_matrix(p);
    } else if (N % p == 0) {
      T[static_cast<std::size_t>(n)] = T[static_cast<std::size_t>(p)] * T[static_cast<std::size_t>(n / p)];
    } else {
      T[static_cast<std::size_t>(n)] = T[static_cast<std::size_t>(p)] * T[static_cast<std::size_t>(n / p)] -
                                       Rational(p) * T[static_cast<std::size_t>(n / (p * p))];
    }
  }
  return T;
}

}  // namespace

RatMatrix hecke_on_quotient(const ManinSpace& ms, std::int64_t n) {
  require(n >= 1, "Hecke index must be positive");
  return hecke_table(ms.level, ms.dimension(), n, [&](std::int64_t p) { return hecke_prime_on_quotient(ms, p); })
      [static_cast<std::size_t>(n)];
}

std::vector<RatMatrix> cuspidal_hecke_table(const ManinSpace& ms, std::int64_t nmax) {
  return hecke_table(ms.level, ms.cuspidal_dimension(), nmax, [&](std::int64_t p) {
    return restrict_to_cuspidal(ms, hecke_prime_on_quotient(ms, p));
  });
}

HeckeMatrix hecke_matrix(const ManinSpace& ms, std::int64_t n) {
  require(n >= 1, "Hecke index must be positive");
  return {n, cuspidal_hecke_table(ms, n)[static_cast<std::size_t>(n)]};
}

IntPoly cuspidal_charpoly_sqrt(const ManinSpace& ms, std::int64_t n) {
  auto P = poly_sqrt(charpoly(hecke_matrix(ms, n).matrix));
  ensure(P.has_value(), "cuspidal charpoly of T_" + std::to_string(n) + " is not a perfect square");
  return *P;
}

namespace {

struct ScaledLattice {
  Integer scale;
  Lattice lattice;
};

ScaledLattice scaled_span(const std::vector<RatMatrix>& gens, Index size) {
  Integer scale = 1;
  for (const auto& g : gens) scale = lcm(scale, common_denominator(g));
  IntMatrix rows(static_cast<Index>(gens.size()), size * size);
  for (std::size_t i = 0; i < gens.size(); ++i)
    rows.row(static_cast<Index>(i)) = flatten(to_integer(RatMatrix(Rational(scale) * gens[i])));
  return {scale, Lattice::span(rows)};
}

}  // namespace

CuspidalHeckeAlgebra CuspidalHeckeAlgebra::build(const ManinSpace& ms) {
  CuspidalHeckeAlgebra alg;
  const Index g2 = ms.cuspidal_dimension(), g = g2 / 2;
  alg.size_ = g2;
  alg.lattice_ = Lattice(g2 * g2);
  if (g == 0) return alg;
  const std::int64_t B = sturm_bound(ms.level);
  const auto table = cuspidal_hecke_table(ms, 2 * B);
  std::vector<RatMatrix> gens(table.begin() + 1, table.begin() + B + 1);
  std::int64_t next = B + 1;
  for (int round = 0;; ++round) {
    ensure(round < 64, "cuspidal Hecke algebra: closure did not stabilize");
    ScaledLattice sl = scaled_span(gens, g2);
    std::vector<RatMatrix> basis;
    for (Index i = 0; i < sl.lattice.rank(); ++i)
      basis.push_back(unflatten(RowVector<Rational>(sl.lattice.basis().row(i).cast<Rational>() / Rational(sl.scale)), g2));
    bool closed = true;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        RatMatrix prod = basis[i] * basis[j];
        RatMatrix scaled = Rational(sl.scale) * prod;
        if (is_integral(scaled) && sl.lattice.contains(IntVector(flatten(to_integer(scaled))))) continue;
        gens.push_back(prod);
        closed = false;
      }
    if (closed && static_cast<Index>(basis.size()) < g) {
      ensure(next <= 2 * B, "cuspidal Hecke algebra: rank deficient");
      gens.push_back(table[static_cast<std::size_t>(next++)]);
      closed = false;
    }
    if (!closed) continue;
    ensure(static_cast<Index>(basis.size()) == g, "cuspidal Hecke algebra has rank != genus");
    alg.basis_ = std::move(basis);
    alg.scale_ = sl.scale;
    alg.lattice_ = std::move(sl.lattice);
    return alg;
  }
}

IntVector CuspidalHeckeAlgebra::coordinates(const RatMatrix& t) const {
  require(t.rows() == size_ && t.cols() == size_, "Hecke algebra: wrong matrix size");
  RatMatrix scaled = Rational(scale_) * t;
  ensure(is_integral(scaled), "element is not in the cuspidal Hecke algebra");
  auto x = lattice_.coordinates(IntVector(flatten(to_integer(scaled))));
  ensure(x.has_value(), "element is not in the cuspidal Hecke algebra");
  return *x;
}

CuspformBasis cuspform_basis(const ManinSpace& ms, Index P, std::int64_t hecke_bound) {
  CuspformBasis out;
  out.level = ms.level;
  out.precision = P;
  const CuspidalHeckeAlgebra alg = CuspidalHeckeAlgebra::build(ms);
  const Index g = alg.rank();
  const Index P_eff = std::max<Index>(P, sturm_bound(ms.level));
  const auto table = cuspidal_hecke_table(ms, std::max<std::int64_t>(P_eff, hecke_bound));
  out.hecke.assign(static_cast<std::size_t>(std::max<std::int64_t>(hecke_bound, 0) + 1), IntMatrix(g, g));
  if (g == 0) return out;

  // the f_i dual to the basis t_i: a_n(f_i) = coordinate_i(T_n)
  IntMatrix C = IntMatrix::Zero(g, P_eff + 1);
  for (Index n = 1; n <= P_eff; ++n) C.col(n) = alg.coordinates(table[static_cast<std::size_t>(n)]).transpose();
  const HnfResult h = hnf(C);
  ensure(h.rank == g, "cusp form coefficients are dependent");
  for (Index i = 0; i < g; ++i) out.forms.emplace_back(Vector<Rational>(h.H.row(i).head(P + 1).transpose().cast<Rational>()));

  const RatMatrix W = to_rational(h.U), W_inv = inverse(W);
  for (std::int64_t n = 1; n <= hecke_bound; ++n) {
    RatMatrix D(g, g);
    for (Index k = 0; k < g; ++k) D.col(k) = alg.coordinates(RatMatrix(alg.basis()[static_cast<std::size_t>(k)] * table[static_cast<std::size_t>(n)])).transpose().cast<Rational>();
    out.hecke[static_cast<std::size_t>(n)] = to_integer(RatMatrix(W * D * W_inv));
  }
  return out;
}

std::vector<Series> integral_cuspform_basis(std::int64_t N, Index P) {
  return cuspform_basis(build_manin_space(N), P).forms;
}

Integer jacobian_point_count(const ManinSpace& ms, std::int64_t q) {
  require(is_prime(q), "point count: q must be prime");
  require((2 * ms.level) % q != 0, "point count: q must not divide 2N");
  const Integer count = evaluate(cuspidal_charpoly_sqrt(ms, q), Integer(q + 1));
  ensure(count > 0, "point count is not positive");
  return count;
}

Integer jacobian_point_count(std::int64_t N, std::int64_t q) { return jacobian_point_count(build_manin_space(N), q); }

}  // namespace ogg
