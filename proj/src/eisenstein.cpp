#include "ogg/eisenstein.hpp"

#include <algorithm>

namespace ogg {

RatMatrix EisensteinBasis::coefficient_matrix(Index P) const {
  RatMatrix A(static_cast<Index>(forms.size()), P + 1);
  for (std::size_t i = 0; i < forms.size(); ++i) A.row(static_cast<Index>(i)) = forms[i].second.row(0, P);
  return A;
}

std::vector<std::int64_t> eisenstein_indices(std::int64_t N) {
  require(is_squarefree(N), "Eisenstein series: level must be square-free");
  auto divs = divisors(N);
  divs.erase(divs.begin());
  return divs;
}

Integer ed_coefficient(std::int64_t N, std::int64_t d, std::int64_t n) {
  require(n >= 1, "ed_coefficient: n must be positive");
  Integer a = 1;
  for (auto [l, k] : factor(n)) {
    Integer lk = 1;
    for (int i = 0; i < k; ++i) lk *= l;
    if (d % l == 0) continue;            // U_l eigenvalue 1
    if (N % l == 0) a *= lk;             // U_l eigenvalue l
    else a *= (lk * l - 1) / (l - 1);    // sigma_1(l^k)
  }
  return a;
}

namespace {

void check_divisor(std::int64_t N, std::int64_t d) {
  require(is_squarefree(N), "level must be square-free");
  require(d > 1 && N % d == 0, "need d | N with d > 1");
}

}  // namespace

Series ed_series(std::int64_t N, std::int64_t d, Index precision) {
  check_divisor(N, d);
  Series e(precision);
  for (Index n = 1; n <= precision; ++n) e[n] = Rational(ed_coefficient(N, d, n));
  // a_0 from E_d = sum c_t f_t on coefficients 1..P'; P' >= N reaches
  // every a_t with t | N, where the f_t are independent
  const Index P = std::max<Index>(precision, N);
  const EisensteinBasis fb = f_basis(N, P);
  RatMatrix F(static_cast<Index>(fb.size()), P);
  for (std::size_t i = 0; i < fb.size(); ++i) F.row(static_cast<Index>(i)) = fb.forms[i].second.row(1, P);
  RatMatrix target(1, P);
  for (Index n = 1; n <= P; ++n) target(0, n - 1) = Rational(ed_coefficient(N, d, n));
  auto c = solve_left(F, target);
  ensure(c.has_value(), "E_d is not in the span of the f_t");
  Rational a0 = 0;
  for (std::size_t i = 0; i < fb.size(); ++i) a0 += (*c)(0, static_cast<Index>(i)) * fb.forms[i].second[0];
  e[0] = a0;
  return e;
}

EisensteinBasis f_basis(std::int64_t N, Index precision) {
  EisensteinBasis b{N, EisensteinBasis::Flavor::f_basis, {}};
  for (auto d : eisenstein_indices(N)) b.forms.emplace_back(d, fd_series(N, d, precision));
  return b;
}

EisensteinBasis e_basis(std::int64_t N, Index precision) {
  EisensteinBasis b{N, EisensteinBasis::Flavor::e_basis, {}};
  for (auto d : eisenstein_indices(N)) b.forms.emplace_back(d, ed_series(N, d, precision));
  return b;
}

EisLattice eis_integral_lattice(std::int64_t N) {
  const std::int64_t B = sturm_bound(N);
  const IntMatrix F = to_integer(f_basis(N, B).coefficient_matrix(B));
  EisLattice out{N, B, saturate(Lattice::span(F))};
  ensure(out.lattice.rank() == static_cast<Index>(eisenstein_indices(N).size()),
         "Eisenstein lattice has the wrong rank");
  return out;
}

Rational l_functional(std::int64_t d, const Series& f) {
  require(d >= 1, "l_d: d must be positive");
  require(f.precision() >= d, "l_d: insufficient precision");
  Rational acc = 0;
  for (auto t : divisors(d)) acc += Rational(mobius(d / t) * sigma1(d / t)) * f[t];
  return acc;
}

Factorization fd_basis_index(std::int64_t N) {
  const EisLattice E = eis_integral_lattice(N);
  const IntMatrix F = to_integer(f_basis(N, E.precision).coefficient_matrix(E.precision));
  return factor(lattice_index(E.lattice, Lattice::span(F)));
}

}  // namespace ogg
