#pragma once

// Exact scalar types, dense matrix aliases and the small amount of
// elementary number theory shared by every module.

#include <boost/multiprecision/eigen.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ogg {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

using Index = Eigen::Index;

template <class Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <class Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;
using IntVector = RowVector<Integer>;
using RatVector = RowVector<Rational>;

/// A caller violated a documented precondition (bad level, bad prime, ...).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A mathematical invariant that must hold failed. Always an
/// implementation bug or a counterexample worth reporting.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

inline void ensure(bool ok, const std::string& what) {
  if (!ok) throw InvariantError(what);
}

// Prime factorization as (prime, exponent) pairs with increasing primes.
using Factorization = std::vector<std::pair<Integer, int>>;

bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);
Factorization factor(const Integer& n);
std::vector<std::int64_t> prime_divisors(std::int64_t n);
std::vector<std::int64_t> divisors(std::int64_t n);
bool is_squarefree(std::int64_t n);
int mobius(std::int64_t n);
std::int64_t sigma1(std::int64_t n);
std::int64_t gcd(std::int64_t a, std::int64_t b);

/// p-adic valuation of a nonzero integer.
int valuation(const Integer& n, std::int64_t p);
/// p-adic valuation of a nonzero rational.
int valuation(const Rational& x, std::int64_t p);
/// True if the reduced denominator of x is prime to p, i.e. x lies in Z_(p).
bool is_plocal_integral(const Rational& x, std::int64_t p);

/// Positive mod.
Integer mod(const Integer& a, const Integer& m);
/// Inverse of a modulo m; requires gcd(a, m) = 1.
Integer inverse_mod(const Integer& a, const Integer& m);
/// The residue class of a p-integral rational modulo m (m a power of p).
Integer reduce_mod(const Rational& x, const Integer& m);

/// Prime support of a factorization is contained in {2, 3} ∪ primes(N).
bool support_within_6N(const Factorization& f, std::int64_t N);

std::string to_string(const Rational& x);
std::string to_string(const Factorization& f);

}  // namespace ogg
