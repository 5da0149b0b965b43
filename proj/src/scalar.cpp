#include "ogg/scalar.hpp"

#include <algorithm>
#include <numeric>

namespace ogg {

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound + 1), false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  require(n >= 1, "factor: expected a positive integer");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

Factorization factor(const Integer& value) {
  Integer n = abs(value);
  require(n != 0, "factor: zero has no factorization");
  Factorization out;
  for (Integer d = 2; d * d <= n; ++d) {
    int e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) out.emplace_back(d, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (auto [p, e] : factor(n)) out.push_back(p);
  return out;
}

std::vector<std::int64_t> divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t d = 1; d <= n; ++d)
    if (n % d == 0) out.push_back(d);
  return out;
}

bool is_squarefree(std::int64_t n) {
  if (n < 1) return false;
  for (auto [p, e] : factor(n))
    if (e > 1) return false;
  return true;
}

int mobius(std::int64_t n) {
  int sign = 1;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return 0;
    sign = -sign;
  }
  return sign;
}

std::int64_t sigma1(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    s += d;
    if (d * d != n) s += n / d;
  }
  return s;
}

std::int64_t gcd(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

int valuation(const Integer& n, std::int64_t p) {
  require(n != 0, "valuation of zero");
  Integer m = abs(n);
  int v = 0;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  return v;
}

int valuation(const Rational& x, std::int64_t p) {
  return valuation(numerator(x), p) - valuation(denominator(x), p);
}

bool is_plocal_integral(const Rational& x, std::int64_t p) { return denominator(x) % p != 0; }

Integer mod(const Integer& a, const Integer& m) {
  Integer r = a % m;
  if (r < 0) r += m;
  return r;
}

Integer inverse_mod(const Integer& a, const Integer& m) {
  if (m == 1) return 0;
  // extended Euclid on (a mod m, m)
  Integer r0 = mod(a, m), r1 = m, s0 = 1, s1 = 0;
  while (r1 != 0) {
    Integer q = r0 / r1;
    Integer t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  ensure(r0 == 1, "inverse_mod: not invertible");
  return mod(s0, m);
}

Integer reduce_mod(const Rational& x, const Integer& m) {
  return mod(numerator(x) * inverse_mod(denominator(x), m), m);
}

bool support_within_6N(const Factorization& f, std::int64_t N) {
  for (const auto& [q, e] : f) {
    if (q == 2 || q == 3) continue;
    if (q > N || N % q.convert_to<std::int64_t>() != 0) return false;
  }
  return true;
}

std::string to_string(const Rational& x) {
  if (denominator(x) == 1) return numerator(x).str();
  return numerator(x).str() + "/" + denominator(x).str();
}

std::string to_string(const Factorization& f) {
  if (f.empty()) return "1";
  std::string s;
  for (const auto& [q, e] : f) {
    if (!s.empty()) s += " * ";
    s += q.str();
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s;
}

}  // namespace ogg
