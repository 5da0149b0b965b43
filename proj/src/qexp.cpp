#include "ogg/qexp.hpp"

#include <algorithm>

namespace ogg {

bool agree(const Series& a, const Series& b) {
  const Index P = std::min(a.precision(), b.precision());
  return a.coeffs().head(P + 1) == b.coeffs().head(P + 1);
}

EtaExponent EtaExponent::zero(std::int64_t N) {
  require(is_squarefree(N), "eta quotient: level must be square-free");
  return {N, std::vector<std::int64_t>(divisors(N).size(), 0)};
}

EtaExponent EtaExponent::h(std::int64_t N, std::int64_t d) {
  require(N % d == 0 && d > 1, "h_d: need d | N with d > 1");
  EtaExponent e = zero(N);
  const auto divs = divisors(N);
  for (std::size_t i = 0; i < divs.size(); ++i) {
    if (divs[i] == d) e.r[i] += 12 * N;
    if (divs[i] == 1) e.r[i] -= 12 * N;
  }
  return e;
}

std::int64_t EtaExponent::exponent_of(std::int64_t d) const {
  const auto divs = divisors(level);
  for (std::size_t i = 0; i < divs.size(); ++i)
    if (divs[i] == d) return r[i];
  return 0;
}

std::int64_t EtaExponent::weight_sum() const {
  std::int64_t s = 0;
  for (auto x : r) s += x;
  return s;
}

std::int64_t EtaExponent::order_sum() const {
  const auto divs = divisors(level);
  std::int64_t s = 0;
  for (std::size_t i = 0; i < divs.size(); ++i) s += divs[i] * r[i];
  return s;
}

EtaExponent EtaExponent::operator+(const EtaExponent& other) const {
  require(level == other.level, "eta quotient: level mismatch");
  EtaExponent out = *this;
  for (std::size_t i = 0; i < r.size(); ++i) out.r[i] += other.r[i];
  return out;
}

std::int64_t gamma0_index(std::int64_t N) {
  require(is_squarefree(N), "level must be square-free");
  std::int64_t mu = 1;
  for (auto l : prime_divisors(N)) mu *= l + 1;
  return mu;
}

std::int64_t sturm_bound(std::int64_t N) { return (gamma0_index(N) + 5) / 6; }

std::int64_t working_precision(std::int64_t N, std::int64_t n_max) {
  const std::int64_t B = sturm_bound(N);
  return (B + 1) * (n_max > 0 ? n_max : B);
}

UnitExpansion eta_quotient(const EtaExponent& e, Index precision) {
  require(is_squarefree(e.level), "eta quotient: level must be square-free");
  require(e.r.size() == divisors(e.level).size(), "eta quotient: one exponent per divisor");
  require(e.weight_sum() == 0, "eta quotient: exponents must sum to zero");
  require(e.order_sum() % 24 == 0, "eta quotient: sum d r_d must be divisible by 24");
  const auto divs = divisors(e.level);
  // prod_{m >= 1} (1 - q^m)^{c_m} with c_m = sum_{d | m} r_d
  Vector<Integer> u = Vector<Integer>::Zero(precision + 1);
  u(0) = 1;
  for (Index m = 1; m <= precision; ++m) {
    std::int64_t c = 0;
    for (std::size_t i = 0; i < divs.size(); ++i)
      if (m % divs[i] == 0) c += e.r[i];
    if (c == 0) continue;
    // binomial series of (1 - x)^c, x = q^m
    Vector<Integer> b = Vector<Integer>::Zero(precision / m + 1);
    b(0) = 1;
    for (Index k = 0; k + 1 < b.size(); ++k) b(k + 1) = -b(k) * (Integer(c) - k) / (k + 1);
    Vector<Integer> next = Vector<Integer>::Zero(precision + 1);
    for (Index i = 0; i <= precision; ++i) {
      if (u(i) == 0) continue;
      for (Index k = 0; i + k * m <= precision; ++k) next(i + k * m) += u(i) * b(k);
    }
    u = std::move(next);
  }
  return {e.order_sum() / 24, Series(Vector<Rational>(u.cast<Rational>()))};
}

Series dlog(const UnitExpansion& x) {
  const Series& u = x.unit;
  const Index P = u.precision();
  require(P >= 1, "dlog: need precision at least 1");
  require(u[0] != 0, "dlog: unit part must be invertible");
  // v = q u' / u
  Vector<Rational> v = Vector<Rational>::Zero(P);
  for (Index n = 0; n < P; ++n) {
    Rational acc = Rational(n) * u[n];
    for (Index k = 1; k <= n; ++k) acc -= u[k] * v(n - k);
    v(n) = acc / u[0];
  }
  v(0) += x.leading_exponent;
  return Series(std::move(v));
}

Series fd_series(std::int64_t N, std::int64_t d, Index precision) {
  require(d > 1 && N % d == 0, "f_d: need d | N with d > 1");
  return dlog(eta_quotient(EtaExponent::h(N, d), precision + 1));
}

Series e2_series(Index precision) {
  Series e(precision);
  e[0] = 1;
  for (Index n = 1; n <= precision; ++n) e[n] = Rational(-24 * sigma1(n));
  return e;
}

Series fd_closed_form(std::int64_t N, std::int64_t d, Index precision) {
  require(d > 1 && N % d == 0, "f_d: need d | N with d > 1");
  const Series e2 = e2_series(precision);
  Series f(precision);
  for (Index n = 0; n <= precision; ++n) {
    Rational a = -e2[n];
    if (n % d == 0) a += Rational(d) * e2[n / d];
    f[n] = Rational(N, 2) * a;
  }
  return f;
}

Series hecke_on_series(const Series& f, std::int64_t n, std::int64_t N) {
  require(n >= 1, "Hecke index must be positive");
  const Index P = f.precision() / n;
  require(P >= 1, "Hecke image would have precision < 1");
  std::vector<std::int64_t> coprime_divs;
  for (auto e : divisors(n))
    if (gcd(e, N) == 1) coprime_divs.push_back(e);
  Series out(P);
  for (Index k = 0; k <= P; ++k) {
    Rational acc = 0;
    for (auto e : coprime_divs) {
      if (k % e != 0) continue;
      acc += Rational(e) * f[k * n / (e * e)];
    }
    out[k] = acc;
  }
  return out;
}

}  // namespace ogg
