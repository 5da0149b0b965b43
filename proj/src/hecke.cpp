#include "ogg/hecke.hpp"

#include <algorithm>

namespace ogg {

namespace {

constexpr int kMaxClosureRounds = 32;

std::size_t at(std::int64_t n) { return static_cast<std::size_t>(n); }

IntVector unit_vector(Index n, Index i) {
  IntVector e = IntVector::Zero(n);
  e(i) = 1;
  return e;
}

IntMatrix stack_flattened(const std::vector<IntMatrix>& mats, Index cols) {
  IntMatrix rows(static_cast<Index>(mats.size()), cols);
  for (std::size_t i = 0; i < mats.size(); ++i) rows.row(static_cast<Index>(i)) = flatten(mats[i]);
  return rows;
}

IntVector integer_row(const Series& f, Index P) {
  IntVector v(P + 1);
  for (Index n = 0; n <= P; ++n) {
    ensure(denominator(f[n]) == 1, "expected an integral series");
    v(n) = numerator(f[n]);
  }
  return v;
}

}  // namespace

const IntMatrix& JointBasis::hecke_matrix(std::int64_t n) const {
  require(n >= 1 && n <= hecke_bound(), "JointBasis: Hecke index out of range");
  return hecke[at(n)];
}

IntVector JointBasis::a1() const {
  IntVector v(rank());
  for (Index j = 0; j < rank(); ++j) {
    const Rational& c = forms[static_cast<std::size_t>(j)][1];
    ensure(denominator(c) == 1, "basis form is not integral");
    v(j) = numerator(c);
  }
  return v;
}

std::int64_t default_hecke_bound(std::int64_t N) { return std::max<std::int64_t>({sturm_bound(N), N, 50}); }

JointBasis m_integral_basis(const ManinSpace& ms, Index P, std::int64_t hecke_bound) {
  const std::int64_t N = ms.level, B = sturm_bound(N);
  if (hecke_bound <= 0) hecke_bound = default_hecke_bound(N);
  hecke_bound = std::max<std::int64_t>({hecke_bound, B, N});
  const Index Pm = std::max<Index>(P, B);

  JointBasis M;
  M.level = N;
  M.precision = Pm;
  const CuspformBasis cb = cuspform_basis(ms, Pm, hecke_bound);
  const auto ds = eisenstein_indices(N);
  const Index g = static_cast<Index>(cb.forms.size()), k = static_cast<Index>(ds.size()), m = g + k;
  M.genus = g;
  M.eisenstein_rank = k;

  // adapted: cusp echelon forms and E_d; gens: cusp forms and f_d
  RatMatrix adapted(m, Pm + 1);
  IntMatrix gens(m, Pm + 1);
  for (Index i = 0; i < g; ++i) {
    adapted.row(i) = cb.forms[at(i)].row(0, Pm);
    gens.row(i) = integer_row(cb.forms[at(i)], Pm);
  }
  for (Index j = 0; j < k; ++j) {
    adapted.row(g + j) = ed_series(N, ds[at(j)], Pm).row(0, Pm);
    gens.row(g + j) = integer_row(fd_series(N, ds[at(j)], Pm), Pm);
  }
  // saturate at the Sturm bound, where truncation is injective, then
  // carry the basis to full precision through the generators
  const Lattice L = saturate(Lattice::span(IntMatrix(gens.leftCols(B + 1))));
  ensure(L.rank() == m, "M_2(N) lattice has the wrong rank");
  auto X = solve_left(to_rational(IntMatrix(gens.leftCols(B + 1))), to_rational(L.basis()));
  ensure(X.has_value(), "saturated basis outside the span of the generators");
  const IntMatrix basis = to_integer(RatMatrix(*X * to_rational(gens)));
  for (Index i = 0; i < m; ++i) M.forms.emplace_back(Vector<Rational>(basis.row(i).transpose().cast<Rational>()));

  auto A = solve_left(adapted, to_rational(basis));
  ensure(A.has_value(), "M_2(N) basis is not spanned by cusp forms and E_d");
  M.adapted = *A;
  const RatMatrix A_inv = inverse(M.adapted);

  M.hecke.assign(at(hecke_bound + 1), IntMatrix());
  for (std::int64_t n = 1; n <= hecke_bound; ++n) {
    RatMatrix D = RatMatrix::Zero(m, m);
    D.topLeftCorner(g, g) = to_rational(cb.hecke[at(n)]);
    for (Index j = 0; j < k; ++j) D(g + j, g + j) = Rational(ed_coefficient(N, ds[at(j)], n));
    M.hecke[at(n)] = to_integer(RatMatrix(M.adapted * D * A_inv));
  }

  auto sublattice = [&](Index lo, Index count) {
    IntMatrix coords(count, m);
    for (Index i = 0; i < count; ++i) {
      auto x = L.coordinates(IntVector(gens.row(lo + i).head(B + 1)));
      ensure(x.has_value(), "generator outside the saturated lattice");
      coords.row(i) = *x;
    }
    return count == 0 ? IntMatrix(0, m) : saturate(Lattice::span(coords)).basis();
  };
  M.cusp_sublattice = sublattice(0, g);
  M.eis_sublattice = sublattice(g, k);
  return M;
}

JointBasis m_integral_basis(std::int64_t N, Index P, std::int64_t hecke_bound) {
  return m_integral_basis(build_manin_space(N), P, hecke_bound);
}

IntMatrix restrict_to(const IntMatrix& t, const IntMatrix& sub) {
  if (sub.rows() == 0) return IntMatrix(0, 0);
  auto R = solve_left(to_rational(sub), to_rational(IntMatrix(sub * t)));
  ensure(R.has_value(), "sublattice is not stable under the operator");
  return to_integer(*R);
}

// -- MatrixAlgebra ------------------------------------------------------------

MatrixAlgebra MatrixAlgebra::generate(std::vector<IntMatrix> gens, Index matrix_size, Index target_rank,
                                      const std::vector<IntMatrix>& extra) {
  MatrixAlgebra A;
  A.size_ = matrix_size;
  const Index n2 = matrix_size * matrix_size;
  A.lattice_ = Lattice(n2);
  if (target_rank == 0) return A;

  std::size_t next_extra = 0;
  for (int round = 0;; ++round) {
    ensure(round < kMaxClosureRounds, "Hecke algebra: closure did not stabilize");
    Lattice L = Lattice::span(stack_flattened(gens, n2));
    std::vector<IntMatrix> basis;
    for (Index i = 0; i < L.rank(); ++i) basis.push_back(unflatten(IntVector(L.basis().row(i)), matrix_size));
    std::vector<IntMatrix> fresh;
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i; j < basis.size(); ++j) {
        IntMatrix prod = basis[i] * basis[j];
        if (!L.contains(IntVector(flatten(prod)))) fresh.push_back(std::move(prod));
      }
    gens = basis;
    if (!fresh.empty()) {
      gens.insert(gens.end(), fresh.begin(), fresh.end());
      continue;
    }
    if (L.rank() < target_rank) {
      ensure(next_extra < extra.size(), "Hecke algebra: rank deficient after all generators");
      gens.push_back(extra[next_extra++]);
      continue;
    }
    ensure(L.rank() == target_rank, "Hecke algebra has rank above the dimension");
    A.basis_ = std::move(basis);
    A.lattice_ = std::move(L);
    A.rounds_ = round;
    break;
  }

  const Index r = A.rank();
  A.structure_.assign(static_cast<std::size_t>(r), std::vector<IntVector>(static_cast<std::size_t>(r)));
  for (Index i = 0; i < r; ++i)
    for (Index j = i; j < r; ++j) {
      const IntMatrix prod = A.basis_[at(i)] * A.basis_[at(j)];
      ensure(prod == A.basis_[at(j)] * A.basis_[at(i)], "Hecke algebra is not commutative");
      auto c = A.coordinates(prod);
      ensure(c.has_value(), "Hecke algebra is not closed");
      A.structure_[at(i)][at(j)] = *c;
      A.structure_[at(j)][at(i)] = *c;
    }
  return A;
}

std::optional<IntVector> MatrixAlgebra::coordinates(const IntMatrix& t) const {
  require(t.rows() == size_ && t.cols() == size_, "MatrixAlgebra: wrong matrix size");
  if (rank() == 0) {
    if (t.isZero()) return IntVector(0);
    return std::nullopt;
  }
  return lattice_.coordinates(IntVector(flatten(t)));
}

IntMatrix MatrixAlgebra::element(const IntVector& c) const {
  require(c.cols() == rank(), "MatrixAlgebra: wrong coordinate length");
  IntMatrix t = IntMatrix::Zero(size_, size_);
  for (Index i = 0; i < rank(); ++i)
    if (c(i) != 0) t += c(i) * basis_[at(i)];
  return t;
}

IntVector MatrixAlgebra::product(const IntVector& a, const IntVector& b) const {
  require(a.cols() == rank() && b.cols() == rank(), "MatrixAlgebra: wrong coordinate length");
  IntVector c = IntVector::Zero(rank());
  for (Index i = 0; i < rank(); ++i) {
    if (a(i) == 0) continue;
    for (Index j = 0; j < rank(); ++j)
      if (b(j) != 0) c += (a(i) * b(j)) * structure_[at(i)][at(j)];
  }
  return c;
}

IntVector MatrixAlgebra::one() const {
  auto c = coordinates(IntMatrix::Identity(size_, size_));
  ensure(c.has_value(), "identity is not in the algebra");
  return *c;
}

MatrixAlgebra hecke_algebra(const JointBasis& M, Space space) {
  const std::int64_t N = M.level, B = sturm_bound(N);
  auto op = [&](std::int64_t n) {
    const IntMatrix& t = M.hecke_matrix(n);
    return space == Space::full ? t : restrict_to(t, M.cusp_sublattice);
  };
  std::vector<IntMatrix> gens, extra;
  for (std::int64_t n = 1; n <= B; ++n) gens.push_back(op(n));
  for (auto l : prime_divisors(N))
    if (l > B) gens.push_back(op(l));
  for (std::int64_t n = B + 1; n <= M.hecke_bound(); ++n) extra.push_back(op(n));
  const Index dim = space == Space::full ? M.rank() : M.genus;
  return MatrixAlgebra::generate(std::move(gens), dim, dim, extra);
}

// -- ideals -------------------------------------------------------------------

IdealLattice ideal_generated(const MatrixAlgebra& A, const std::vector<IntVector>& gens,
                             std::vector<std::string> tags) {
  const Index r = A.rank();
  IdealLattice out{Lattice(r), std::move(tags)};
  if (gens.empty() || r == 0) return out;
  IntMatrix rows(static_cast<Index>(gens.size()) * r, r);
  Index k = 0;
  for (const auto& g : gens)
    for (Index i = 0; i < r; ++i) rows.row(k++) = A.product(g, unit_vector(r, i));
  out.lattice = Lattice::span(rows);
  for (Index j = 0; j < out.lattice.rank(); ++j)
    for (Index i = 0; i < r; ++i)
      ensure(out.lattice.contains(A.product(IntVector(out.lattice.basis().row(j)), unit_vector(r, i))),
             "ideal is not closed under multiplication");
  return out;
}

IdealLattice eisenstein_ideal(const JointBasis& M, const MatrixAlgebra& Ttilde) {
  const Index r = Ttilde.rank(), k = M.eis_sublattice.rows(), m = M.rank();
  IntMatrix action(r, k * m);
  for (Index i = 0; i < r; ++i) action.row(i) = flatten(IntMatrix(M.eis_sublattice * Ttilde.basis()[at(i)]));
  const IntMatrix kernel = left_kernel(action);
  IdealLattice out{Lattice(r), {"annihilator of E_2(N, Z)"}};
  if (kernel.rows() > 0) out.lattice = Lattice::span(kernel);
  return out;
}

HeckeLevel hecke_level(std::int64_t N, std::int64_t hecke_bound) {
  HeckeLevel H;
  H.ms = build_manin_space(N);
  H.M = m_integral_basis(H.ms, 0, hecke_bound);
  H.Ttilde = hecke_algebra(H.M, Space::full);
  H.Itilde = eisenstein_ideal(H.M, H.Ttilde);

  const Index g = H.M.genus, k = H.M.eisenstein_rank;
  std::vector<IntMatrix> t_img, e_img, i_img;
  for (const auto& b : H.Ttilde.basis()) {
    t_img.push_back(restrict_to(b, H.M.cusp_sublattice));
    e_img.push_back(restrict_to(b, H.M.eis_sublattice));
  }
  for (Index j = 0; j < H.Itilde.rank(); ++j)
    i_img.push_back(restrict_to(H.Ttilde.element(IntVector(H.Itilde.lattice.basis().row(j))), H.M.cusp_sublattice));
  H.T = g == 0 ? Lattice(0) : Lattice::span(stack_flattened(t_img, g * g));
  H.I = g == 0 ? Lattice(0) : Lattice::span(stack_flattened(i_img, g * g));
  H.eis_image = Lattice::span(stack_flattened(e_img, k * k));
  ensure(H.T.rank() == g, "T has rank != genus");
  ensure(H.I.rank() == g, "I has rank != genus");
  ensure(H.eis_image.rank() == k, "T~ / I~ has the wrong rank");
  return H;
}

AbelianInvariants eisenstein_quotient(const HeckeLevel& H) {
  const Index r = H.Ttilde.rank();
  if (H.Itilde.rank() == 0) return snf(IntMatrix(0, r));
  return snf(H.Itilde.lattice.basis());
}

namespace {

void check_prime(std::int64_t N, std::int64_t p) {
  require(is_prime(p), "p must be prime");
  require((6 * N) % p != 0, "p must not divide 6N");
}

}  // namespace

int cuspidal_ideal_index(const HeckeLevel& H, std::int64_t p) {
  check_prime(H.M.level, p);
  if (H.M.genus == 0) return 0;
  return index_ppart(H.T, H.I, p);
}

int cuspidal_ideal_index(std::int64_t N, std::int64_t p) { return cuspidal_ideal_index(hecke_level(N), p); }

bool JReport::memberships_ok() const {
  return std::all_of(memberships.begin(), memberships.end(), [](const Membership& m) { return m.in_J && m.in_Itilde; });
}

JReport ideal_J(const HeckeLevel& H, std::int64_t p, std::int64_t qmax) {
  const std::int64_t N = H.M.level;
  check_prime(N, p);
  require(qmax >= 20, "ideal J: qmax must be at least 20");
  require(qmax <= H.M.hecke_bound(), "ideal J: qmax exceeds the computed Hecke range");
  const MatrixAlgebra& A = H.Ttilde;
  const Index m = H.M.rank();

  JReport rep;
  rep.p = p;
  rep.qmax = qmax;
  std::vector<IntVector> gens;
  std::vector<std::string> tags;
  for (auto q : primes_up_to(qmax)) {
    if ((6 * N * p) % q == 0) continue;
    auto c = A.coordinates(IntMatrix(H.M.hecke_matrix(q) - Integer(q + 1) * IntMatrix::Identity(m, m)));
    ensure(c.has_value(), "T_q is not in T~");
    gens.push_back(*c);
    tags.push_back("T_" + std::to_string(q) + " - " + std::to_string(q + 1));
    rep.primes.push_back(q);
  }
  rep.J = ideal_generated(A, gens, std::move(tags));

  const Lattice& It = H.Itilde.lattice;
  rep.contained = true;
  for (Index j = 0; j < rep.J.rank(); ++j) rep.contained = rep.contained && It.contains(IntVector(rep.J.lattice.basis().row(j)));
  ensure(rep.contained, "J is not contained in I~");
  if (rep.J.rank() == It.rank()) rep.index_ppart = It.rank() == 0 ? 0 : index_ppart(It, rep.J.lattice, p);

  const IntVector one = A.one();
  auto coords = [&](std::int64_t l) {
    auto c = A.coordinates(H.M.hecke_matrix(l));
    ensure(c.has_value(), "U_l is not in T~");
    return *c;
  };
  auto record = [&](std::string name, const IntVector& x) {
    rep.memberships.push_back({std::move(name), It.contains(x), A.rank() == 0 || contains_plocal(rep.J.lattice, x, p)});
  };
  IntVector prod = one;
  for (auto l : prime_divisors(N)) {
    const IntVector U = coords(l);
    const std::string ls = std::to_string(l);
    record("(U_" + ls + "-1)(U_" + ls + "-" + ls + ")", A.product(IntVector(U - one), IntVector(U - Integer(l) * one)));
    prod = A.product(prod, IntVector(U - one));
  }
  record("prod(U_l-1)", prod);
  return rep;
}

// -- presentation -------------------------------------------------------------

PresentationRing::PresentationRing(std::int64_t N) : level_(N), primes_(prime_divisors(N)) {
  require(N > 1 && is_squarefree(N), "presentation ring: need square-free N > 1");
  const unsigned top = (1u << primes_.size()) - 1;
  for (unsigned mask = 0; mask < top; ++mask) monomials_.push_back(mask);
}

std::pair<Integer, Index> PresentationRing::multiply(Index a, Index b) const {
  const unsigned top = (1u << primes_.size()) - 1;
  const unsigned ma = monomial(a), mb = monomial(b), mc = ma | mb;
  if (mc == top) return {Integer(0), -1};
  // x_i^2 = (l_i - 1) x_i
  Integer c = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if ((ma & mb) >> i & 1u) c *= primes_[i] - 1;
  return {c, static_cast<Index>(mc)};
}

std::string PresentationRing::name(Index k) const {
  const unsigned mask = monomial(k);
  if (mask == 0) return "1";
  std::string s;
  for (std::size_t i = 0; i < primes_.size(); ++i)
    if (mask >> i & 1u) s += (s.empty() ? "x" : "*x") + std::to_string(primes_[i]);
  return s;
}

PresentationReport presentation_check(const HeckeLevel& H, std::int64_t p) {
  const std::int64_t N = H.M.level;
  check_prime(N, p);
  const PresentationRing R(N);
  const Index m = H.M.rank(), k = H.M.eisenstein_rank;
  const IntMatrix id = IntMatrix::Identity(m, m);
  const auto& ls = R.primes();

  PresentationReport rep;
  rep.ring_rank = R.rank();
  rep.quotient_rank = H.eis_image.rank();

  auto on_E = [&](const IntMatrix& t) { return restrict_to(t, H.M.eis_sublattice); };
  std::vector<IntMatrix> x;  // U_l - 1 on M
  for (auto l : ls) x.push_back(H.M.hecke_matrix(l) - id);

  rep.relations_ok = true;
  IntMatrix top = id;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    const IntMatrix rel = x[i] * (x[i] + Integer(1 - ls[i]) * id);
    rep.relations_ok = rep.relations_ok && on_E(rel).isZero();
    top = top * x[i];
  }
  rep.relations_ok = rep.relations_ok && on_E(top).isZero();
  ensure(rep.relations_ok, "presentation relations fail in T~ / I~");

  std::vector<IntMatrix> img;
  for (Index a = 0; a < R.rank(); ++a) {
    IntMatrix t = id;
    for (std::size_t i = 0; i < ls.size(); ++i)
      if (R.monomial(a) >> i & 1u) t = t * x[i];
    img.push_back(on_E(t));
  }
  rep.multiplicative_ok = true;
  for (Index a = 0; a < R.rank(); ++a)
    for (Index b = a; b < R.rank(); ++b) {
      const auto [c, idx] = R.multiply(a, b);
      const IntMatrix expect = idx < 0 ? IntMatrix(IntMatrix::Zero(k, k)) : IntMatrix(c * img[at(idx)]);
      rep.multiplicative_ok = rep.multiplicative_ok && img[at(a)] * img[at(b)] == expect;
    }

  const Lattice image = Lattice::span(stack_flattened(img, k * k));
  ensure(H.eis_image.contains(image), "monomial images lie outside T~ / I~");
  if (image.rank() == rep.quotient_rank) {
    rep.cokernel_order = lattice_index(H.eis_image, image);
    rep.support_ok = support_within_6N(factor(rep.cokernel_order), N);
    rep.plocal_iso = rep.ring_rank == rep.quotient_rank && valuation(rep.cokernel_order, p) == 0;
  }
  return rep;
}

// -- X and the pairing ----------------------------------------------------------

AbelianInvariants x_group(const JointBasis& M) {
  IntMatrix rows(M.cusp_sublattice.rows() + M.eis_sublattice.rows(), M.rank());
  rows << M.cusp_sublattice, M.eis_sublattice;
  return snf(rows);
}

AbelianInvariants x_group(const HeckeLevel& H, std::int64_t p) {
  check_prime(H.M.level, p);
  return x_group(H.M).p_part(p);
}

Integer duality_gram_determinant(const HeckeLevel& H) {
  const Index r = H.Ttilde.rank(), m = H.M.rank();
  ensure(r == m, "Gram matrix is not square");
  const IntVector a1 = H.M.a1();
  IntMatrix G(r, m);
  for (Index i = 0; i < r; ++i) G.row(i) = (H.Ttilde.basis()[at(i)] * a1.transpose()).transpose();
  const Integer det = determinant(G);
  ensure(det != 0, "duality pairing is degenerate");
  return det;
}

Factorization duality_gram_check(const HeckeLevel& H) { return factor(Integer(abs(duality_gram_determinant(H)))); }

}  // namespace ogg
