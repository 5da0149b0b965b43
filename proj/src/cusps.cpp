#include "ogg/cusps.hpp"

#include <algorithm>

namespace ogg {

namespace {

std::size_t at(Index i) { return static_cast<std::size_t>(i); }

void check_level(std::int64_t N) { require(N > 1 && is_squarefree(N), "cusps: need square-free N > 1"); }

// L(d, c) = (N/24) gcd(c, d)^2 / (c d), so div(r) = r L.
RatMatrix ligozat_matrix(std::int64_t N) {
  const auto divs = divisors(N);
  const Index n = static_cast<Index>(divs.size());
  RatMatrix L(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) {
      const std::int64_t d = divs[at(i)], c = divs[at(j)], g = gcd(c, d);
      L(i, j) = Rational(N * g * g, 24 * c * d);
    }
  return L;
}

RatVector exponent_row(const EtaExponent& e) {
  RatVector r(static_cast<Index>(e.r.size()));
  for (std::size_t i = 0; i < e.r.size(); ++i) r(static_cast<Index>(i)) = e.r[i];
  return r;
}

// f_d = sum_t K(d, t) E_t
RatMatrix f_in_e_basis(std::int64_t N) {
  const Index B = sturm_bound(N);
  auto K = solve_left(e_basis(N, B).coefficient_matrix(B), f_basis(N, B).coefficient_matrix(B));
  ensure(K.has_value(), "f_d outside the span of the E_d");
  return *K;
}

std::vector<Rational> e_eigenvalues(std::int64_t N, std::int64_t n) {
  std::vector<Rational> a;
  for (auto d : eisenstein_indices(N)) a.emplace_back(ed_coefficient(N, d, n));
  return a;
}

Integer power(std::int64_t p, int e) {
  Integer x = 1;
  for (int i = 0; i < e; ++i) x *= p;
  return x;
}

// x mod Z_(p), as u / p^e with 0 <= u < p^e
Rational fractional_part_at(const Rational& x, std::int64_t p) {
  if (x == 0) return 0;
  const int v = valuation(x, p);
  if (v >= 0) return 0;
  const Integer pe = power(p, -v);
  return Rational(reduce_mod(Rational(x * Rational(pe)), pe)) / Rational(pe);
}

}  // namespace

Index CuspSet::index_of(std::int64_t c) const {
  auto it = std::find(denominators.begin(), denominators.end(), c);
  require(it != denominators.end(), "not a cusp denominator");
  return static_cast<Index>(it - denominators.begin());
}

CuspSet cusp_set(std::int64_t N) {
  check_level(N);
  CuspSet C;
  C.level = N;
  C.denominators = divisors(N);
  for (auto c : C.denominators) C.widths.push_back(N / c);
  return C;
}

Rational ligozat_order(const EtaExponent& e, std::int64_t c) {
  const CuspSet C = cusp_set(e.level);
  return eta_divisor(e)(C.index_of(c));
}

RatVector eta_divisor(const EtaExponent& e) {
  check_level(e.level);
  require(e.r.size() == divisors(e.level).size(), "eta exponent has the wrong length");
  return exponent_row(e) * ligozat_matrix(e.level);
}

IntVector hd_divisor(std::int64_t N, std::int64_t d) {
  const RatVector D = eta_divisor(EtaExponent::h(N, d));
  return to_integer(RatMatrix(D)).row(0);
}

bool ligozat_admissible(const EtaExponent& e) {
  const std::int64_t N = e.level;
  const auto divs = divisors(N);
  Integer sum = 0, sum_d = 0, sum_nd = 0;
  for (std::size_t i = 0; i < divs.size(); ++i) {
    sum += e.r[i];
    sum_d += Integer(divs[i]) * e.r[i];
    sum_nd += Integer(N / divs[i]) * e.r[i];
  }
  if (sum != 0 || sum_d % 24 != 0 || sum_nd % 24 != 0) return false;
  for (auto l : prime_divisors(N)) {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < divs.size(); ++i)
      if (divs[i] % l == 0) s += e.r[i];
    if (s % 2 != 0) return false;
  }
  return true;
}

UnitDivisorLattices unit_divisor_lattice(std::int64_t N) {
  check_level(N);
  const auto divs = divisors(N);
  const auto primes = prime_divisors(N);
  const Index n = static_cast<Index>(divs.size());
  const Index cols = 3 + static_cast<Index>(primes.size());

  // {r : r A_0 = 0, r A_j = 0 mod m_j}: project the integer left kernel
  // of [A ; diag(m)] to the r coordinates
  IntMatrix big = IntMatrix::Zero(n + cols - 1, cols);
  for (Index i = 0; i < n; ++i) {
    const std::int64_t d = divs[at(i)];
    big(i, 0) = 1;
    big(i, 1) = d;
    big(i, 2) = N / d;
    for (std::size_t j = 0; j < primes.size(); ++j) big(i, 3 + static_cast<Index>(j)) = d % primes[j] == 0 ? 1 : 0;
  }
  big(n, 1) = 24;
  big(n + 1, 2) = 24;
  for (std::size_t j = 0; j < primes.size(); ++j) big(n + 2 + static_cast<Index>(j), 3 + static_cast<Index>(j)) = 2;
  const IntMatrix kernel = left_kernel(big);
  const Lattice exponents = Lattice::span(IntMatrix(kernel.leftCols(n)));
  ensure(exponents.rank() == n - 1, "admissible eta exponents have the wrong rank");

  UnitDivisorLattices out;
  out.admissible = Lattice::span(to_integer(RatMatrix(to_rational(exponents.basis()) * ligozat_matrix(N))));
  IntMatrix hd(n - 1, n);
  for (Index i = 1; i < n; ++i) hd.row(i - 1) = hd_divisor(N, divs[at(i)]);
  out.hd_span = Lattice::span(hd);
  ensure(out.admissible.contains(out.hd_span), "div(h_d) outside the admissible divisor lattice");
  out.index = lattice_index(out.admissible, out.hd_span);
  return out;
}

RatVector degree_zero_coordinates(const RatVector& D) {
  ensure(D.sum() == 0, "divisor does not have degree zero");
  return D.head(D.cols() - 1);
}

CuspidalGroup cuspidal_group(std::int64_t N, std::int64_t p) {
  check_level(N);
  require(is_prime(p) && (6 * N) % p != 0, "cuspidal group: need a prime p not dividing 6N");
  const auto ds = eisenstein_indices(N);
  const Index k = static_cast<Index>(ds.size());
  IntMatrix A(k, k);
  for (Index i = 0; i < k; ++i) A.row(i) = hd_divisor(N, ds[at(i)]).head(k);

  CuspidalGroup C;
  C.level = N;
  C.p = p;
  const SmithResult s = smith(A);
  ensure(s.rank == k, "div(h_d) do not span Div^0 over Q");
  C.full = s.invariants;
  C.invariants = C.full.p_part(p);
  C.valuation = C.full.torsion_valuation(p);
  C.V = s.V;
  const IntMatrix V_inv = to_integer(inverse(to_rational(s.V)));
  for (Index i = 0; i < k; ++i) {
    const Integer d = s.D(i, i);
    C.diagonal.push_back(d);
    if (d % p != 0) continue;
    const Integer pa = power(p, valuation(d, p));
    IntVector g(k + 1);
    g.head(k) = Integer(d / pa) * V_inv.row(i);
    g(k) = -g.head(k).sum();
    C.generators.push_back(g);
    C.p_slots.push_back(i);
  }
  return C;
}

IntVector CuspidalGroup::coordinates(const RatVector& D) const {
  const RatVector y = degree_zero_coordinates(D) * to_rational(V);
  IntVector out(static_cast<Index>(p_slots.size()));
  for (std::size_t j = 0; j < p_slots.size(); ++j) {
    const Index i = p_slots[j];
    const Integer& d = diagonal[at(i)];
    const Integer pa = power(p, ogg::valuation(d, p));
    ensure(is_plocal_integral(y(i), p), "divisor is not p-integral");
    // Z/d -> Z/p^a: the p-part of x e_i is u (d / p^a) e_i
    out(static_cast<Index>(j)) = mod(Integer(reduce_mod(y(i), pa) * inverse_mod(Integer(d / pa), pa)), pa);
  }
  return out;
}

RatMatrix residue_matrix(std::int64_t N) {
  const auto ds = eisenstein_indices(N);
  const Index k = static_cast<Index>(ds.size());
  RatMatrix R(k, k + 1);
  for (Index i = 0; i < k; ++i) R.row(i) = hd_divisor(N, ds[at(i)]).cast<Rational>();
  return R;
}

RatMatrix residue_matrix_e(std::int64_t N) { return RatMatrix(inverse(f_in_e_basis(N)) * residue_matrix(N)); }

RatMatrix residue_on_basis(const JointBasis& M) {
  return RatMatrix(M.adapted.rightCols(M.eisenstein_rank) * residue_matrix_e(M.level));
}

RatMatrix transported_hecke_on_cusps(std::int64_t N, std::int64_t n) {
  require(n >= 1, "Hecke index must be positive");
  const RatMatrix RE = residue_matrix_e(N);
  const Index k = RE.rows();
  RatMatrix Q(k, k);
  for (Index i = 0; i < k; ++i) Q.row(i) = degree_zero_coordinates(RatVector(RE.row(i)));
  ensure(rank(Q) == k, "residue map is not injective on E_2(N)");
  const auto a = e_eigenvalues(N, n);
  RatMatrix D = RatMatrix::Zero(k, k);
  for (Index i = 0; i < k; ++i) D(i, i) = a[at(i)];
  return RatMatrix(inverse(Q) * D * Q);
}

LambdaResult lambda_and_cyclicity(const HeckeLevel& H, const CuspidalGroup& C) {
  const JointBasis& M = H.M;
  require(C.level == M.level, "lambda: level mismatch");
  LambdaResult out;
  const Index s = static_cast<Index>(C.generators.size()), m = M.rank();
  if (s == 0) return out;
  const std::int64_t p = C.p;

  // images of the basis of M in C_p, plus the relations p^{a_i} e_i
  const RatMatrix RM = residue_on_basis(M);
  IntMatrix rows = IntMatrix::Zero(m + s, s);
  for (Index j = 0; j < m; ++j) rows.row(j) = C.coordinates(RatVector(RM.row(j)));
  std::vector<Integer> orders;
  for (Index i = 0; i < s; ++i) {
    const Integer& d = C.diagonal[at(C.p_slots[at(i)])];
    orders.push_back(power(p, valuation(d, p)));
    rows(m + i, i) = orders.back();
  }

  // omega_j = a_1 of the cuspidal part of m_j; a_1(E_d) = 1
  const IntVector a1 = M.a1();
  RatVector omega(m);
  for (Index j = 0; j < m; ++j) omega(j) = Rational(a1(j)) - M.adapted.row(j).tail(M.eisenstein_rank).sum();

  std::vector<RatVector> lifts;
  for (Index i = 0; i < s; ++i) {
    IntVector target = IntVector::Zero(s);
    target(i) = 1;
    auto z = solve_integer_combination(rows, target);
    ensure(z.has_value(), "cuspidal group element has no preimage in M");
    lifts.push_back(z->head(m).cast<Rational>());
    out.values.push_back(fractional_part_at(Rational(lifts.back().dot(omega)), p));
  }

  // lambda o t for t in the Hecke basis, as vectors in (+) Z/p^{a_i}
  const Index r = H.Ttilde.rank();
  IntMatrix orbit = IntMatrix::Zero(r + s, s);
  for (Index t = 0; t < r; ++t) {
    const RatMatrix b = to_rational(H.Ttilde.basis()[at(t)]);
    for (Index i = 0; i < s; ++i) {
      const Rational v = Rational(orders[at(i)]) * fractional_part_at(Rational((lifts[at(i)] * b).dot(omega)), p);
      ensure(denominator(v) == 1, "lambda does not have the expected order");
      orbit(t, i) = numerator(v);
    }
  }
  for (Index i = 0; i < s; ++i) orbit(r + i, i) = orders[at(i)];
  const AbelianInvariants coker = snf(orbit);
  out.orbit_valuation = C.valuation - coker.torsion_valuation(p);
  out.cyclic = out.orbit_valuation == C.valuation;
  return out;
}

LambdaResult lambda_and_cyclicity(std::int64_t N, std::int64_t p) {
  return lambda_and_cyclicity(hecke_level(N), cuspidal_group(N, p));
}

}  // namespace ogg
