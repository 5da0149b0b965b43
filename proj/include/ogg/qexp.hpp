#pragma once

// Truncated q-expansions with exact coefficients: eta quotients, the
// logarithmic derivative q u'/u, the series f_d and Hecke operators acting
// on coefficients.

#include "ogg/scalar.hpp"

#include <vector>

namespace ogg {

/// a_0 + a_1 q + ... + a_P q^P + O(q^{P+1}). Arithmetic between series of
/// different precision truncates to the smaller one; reading past the
/// precision throws.
template <class Scalar>
class BasicSeries {
 public:
  BasicSeries() : coeffs_(Vector<Scalar>::Zero(1)) {}
  explicit BasicSeries(Index precision) : coeffs_(Vector<Scalar>::Zero(precision + 1)) {
    require(precision >= 0, "Series: negative precision");
  }
  explicit BasicSeries(Vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    require(coeffs_.size() >= 1, "Series: needs at least the constant term");
  }

  Index precision() const { return coeffs_.size() - 1; }

  const Scalar& operator[](Index n) const {
    require(n >= 0 && n <= precision(), "Series: coefficient beyond precision");
    return coeffs_(n);
  }
  Scalar& operator[](Index n) {
    require(n >= 0 && n <= precision(), "Series: coefficient beyond precision");
    return coeffs_(n);
  }
  const Vector<Scalar>& coeffs() const { return coeffs_; }

  BasicSeries truncated(Index precision) const {
    require(precision <= this->precision(), "Series: cannot raise precision");
    return BasicSeries(Vector<Scalar>(coeffs_.head(precision + 1)));
  }

  /// Coefficients a_lo..a_hi as a row vector.
  RowVector<Scalar> row(Index lo, Index hi) const {
    require(hi <= precision(), "Series: coefficient beyond precision");
    return coeffs_.segment(lo, hi - lo + 1).transpose();
  }

  template <class Other>
  BasicSeries<Other> cast() const {
    return BasicSeries<Other>(Vector<Other>(coeffs_.template cast<Other>()));
  }

  friend BasicSeries operator+(const BasicSeries& a, const BasicSeries& b) {
    const Index P = std::min(a.precision(), b.precision());
    return BasicSeries(Vector<Scalar>(a.coeffs_.head(P + 1) + b.coeffs_.head(P + 1)));
  }
  friend BasicSeries operator-(const BasicSeries& a, const BasicSeries& b) {
    const Index P = std::min(a.precision(), b.precision());
    return BasicSeries(Vector<Scalar>(a.coeffs_.head(P + 1) - b.coeffs_.head(P + 1)));
  }
  friend BasicSeries operator*(const Scalar& c, const BasicSeries& a) {
    return BasicSeries(Vector<Scalar>(c * a.coeffs_));
  }
  friend BasicSeries operator*(const BasicSeries& a, const BasicSeries& b) {
    const Index P = std::min(a.precision(), b.precision());
    Vector<Scalar> c = Vector<Scalar>::Zero(P + 1);
    for (Index i = 0; i <= P; ++i) {
      if (a.coeffs_(i) == 0) continue;
      for (Index j = 0; i + j <= P; ++j) c(i + j) += a.coeffs_(i) * b.coeffs_(j);
    }
    return BasicSeries(std::move(c));
  }
  friend bool operator==(const BasicSeries& a, const BasicSeries& b) {
    return a.precision() == b.precision() && a.coeffs_ == b.coeffs_;
  }

 private:
  Vector<Scalar> coeffs_;
};

using Series = BasicSeries<Rational>;
using IntSeries = BasicSeries<Integer>;

/// Equality of the common truncation.
bool agree(const Series& a, const Series& b);

/// Exponents r_d of prod_{d | N} eta(d z)^{r_d}, indexed like divisors(N).
struct EtaExponent {
  std::int64_t level = 1;
  std::vector<std::int64_t> r;

  /// The weight-zero quotient (eta(dz)/eta(z))^{12N}.
  static EtaExponent h(std::int64_t N, std::int64_t d);
  static EtaExponent zero(std::int64_t N);

  std::int64_t exponent_of(std::int64_t d) const;
  std::int64_t weight_sum() const;      // sum r_d
  std::int64_t order_sum() const;       // sum d r_d
  EtaExponent operator+(const EtaExponent& other) const;
};

/// q^m * u(q) with u(0) = 1.
struct UnitExpansion {
  std::int64_t leading_exponent = 0;
  Series unit;

  friend UnitExpansion operator*(const UnitExpansion& a, const UnitExpansion& b) {
    return {a.leading_exponent + b.leading_exponent, a.unit * b.unit};
  }
};

/// ceil(mu / 6) with mu = [SL2(Z) : Gamma0(N)].
std::int64_t sturm_bound(std::int64_t N);
/// [SL2(Z) : Gamma0(N)] for square-free N.
std::int64_t gamma0_index(std::int64_t N);
/// (B + 1) * n_max with B the Sturm bound; n_max defaults to B.
std::int64_t working_precision(std::int64_t N, std::int64_t n_max = 0);

UnitExpansion eta_quotient(const EtaExponent& e, Index precision);

/// m + q u'(q)/u(q), to one less than the precision of u.
Series dlog(const UnitExpansion& x);

/// f_d := dlog of h_d, to the given precision.
Series fd_series(std::int64_t N, std::int64_t d, Index precision);

/// E_2 = 1 - 24 sum sigma_1(n) q^n.
Series e2_series(Index precision);
/// (N/2) (d E_2(q^d) - E_2(q)).
Series fd_closed_form(std::int64_t N, std::int64_t d, Index precision);

/// T_n (U_n when all prime factors of n divide N) on q-expansions of level
/// N: a_k(T_n f) = sum_{e | (k, n), (e, N) = 1} e a_{kn/e^2}(f). The result
/// has precision floor(P / n).
Series hecke_on_series(const Series& f, std::int64_t n, std::int64_t N);

}  // namespace ogg
