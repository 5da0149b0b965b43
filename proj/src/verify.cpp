#include "ogg/verify.hpp"

#include <algorithm>
#include <chrono>

namespace ogg {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(std::vector<std::pair<std::string, double>>* sink) : sink_(sink), start_(now()) {}

  void lap(const std::string& stage) {
    if (!sink_) return;
    const auto t = now();
    sink_->emplace_back(stage, std::chrono::duration<double>(t - start_).count());
    start_ = t;
  }

 private:
  static std::chrono::steady_clock::time_point now() { return std::chrono::steady_clock::now(); }
  std::vector<std::pair<std::string, double>>* sink_;
  std::chrono::steady_clock::time_point start_;
};

void check_level(std::int64_t N) {
  if (N < 2 || !is_squarefree(N)) throw PreconditionError("level must be square-free and > 1");
}

void check_prime(std::int64_t N, std::int64_t p) {
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  if ((6 * N) % p == 0) throw PreconditionError("p must not divide 6N");
}

bool ld_diagonal(std::int64_t N) {
  const auto ds = eisenstein_indices(N);
  for (auto s : ds) {
    const Series f = fd_series(N, s, N);
    for (auto d : ds)
      if (l_functional(d, f) != (d == s ? Rational(-12 * N * d) : Rational(0))) return false;
  }
  return true;
}

bool dlog_identity(std::int64_t N) {
  const Index P = working_precision(N);
  for (auto d : eisenstein_indices(N))
    if (!(fd_series(N, d, P) == fd_closed_form(N, d, P))) return false;
  return true;
}

bool residue_consistency(std::int64_t N) {
  for (auto d : eisenstein_indices(N)) {
    const IntVector D = hd_divisor(N, d);
    if (D.sum() != 0) return false;
    if (Rational(D(D.cols() - 1)) != fd_series(N, d, 1)[0]) return false;
  }
  return support_within_6N(factor(unit_divisor_lattice(N).index), N);
}

bool charpoly_squares(const ManinSpace& ms) {
  if (ms.cuspidal_basis.rows() == 0) return true;
  const auto table = cuspidal_hecke_table(ms, 20);
  for (std::size_t n = 1; n < table.size(); ++n)
    if (!poly_sqrt(charpoly(table[n]))) return false;
  return true;
}

bool quotient_shape(const HeckeLevel& H) {
  const AbelianInvariants Q = eisenstein_quotient(H);
  const auto r = static_cast<Index>(prime_divisors(H.M.level).size());
  return Q.free_rank() == (Index{1} << r) - 1 && support_within_6N(factor(Q.torsion_order()), H.M.level);
}

int ord(const Integer& n, std::int64_t p) { return n == 0 ? 0 : valuation(n, p); }

}  // namespace

bool VerificationReport::passed() const {
  return error.empty() && fd_basis_ok && ld_diagonal_ok && dlog_identity_ok && residue_consistency_ok &&
         J_equals_Itilde_ok && memberships_ok && presentation_ok && cyclicity_ok && charpoly_square_ok &&
         gram_support_ok && ogg_equality_ok && bound_consistent;
}

std::vector<std::int64_t> default_qset(std::int64_t N, std::int64_t p, std::size_t count) {
  std::vector<std::int64_t> out;
  for (std::int64_t q = 3; out.size() < count; q += 2)
    if (is_prime(q) && N % q != 0 && q != p) out.push_back(q);
  return out;
}

LevelContext level_context(std::int64_t N, const VerifyOptions& options) {
  check_level(N);
  LevelContext ctx;
  ctx.level = N;
  ctx.options = options;
  Stopwatch clock(options.timings ? &ctx.timings : nullptr);

  ctx.hecke = hecke_level(N, std::max(default_hecke_bound(N), options.qmax));
  clock.lap("hecke_algebra");
  ctx.fd_basis_ok = support_within_6N(fd_basis_index(N), N);
  ctx.ld_diagonal_ok = ld_diagonal(N);
  ctx.dlog_identity_ok = dlog_identity(N);
  clock.lap("eisenstein_checks");
  ctx.residue_consistency_ok = residue_consistency(N);
  clock.lap("residue_checks");
  ctx.charpoly_square_ok = charpoly_squares(ctx.hecke.ms);
  clock.lap("charpoly_squares");
  ctx.gram_support_ok = support_within_6N(duality_gram_check(ctx.hecke), N);
  ctx.quotient_ok = quotient_shape(ctx.hecke);
  clock.lap("gram_and_quotient");

  // one spare prime, since p itself is skipped
  for (auto q : default_qset(N, 0, options.qset_size + 1))
    ctx.point_counts.emplace_back(q, jacobian_point_count(ctx.hecke.ms, q));
  clock.lap("point_counts");
  return ctx;
}

int torsion_bound(std::int64_t N, std::int64_t p, const std::vector<std::int64_t>& qset) {
  check_level(N);
  if (!is_prime(p)) throw PreconditionError("p must be prime");
  if (qset.empty()) throw PreconditionError("torsion bound needs at least one prime");
  const ManinSpace ms = build_manin_space(N);
  int best = -1;
  for (auto q : qset) {
    if (!is_prime(q) || (2 * N) % q == 0 || q == p) throw PreconditionError("q must be a prime not dividing 2Np");
    const int v = ord(jacobian_point_count(ms, q), p);
    best = best < 0 ? v : std::min(best, v);
  }
  return best;
}

int torsion_bound(const LevelContext& ctx, std::int64_t p, const std::vector<std::int64_t>& qset) {
  if (qset.empty()) throw PreconditionError("torsion bound needs at least one prime");
  int best = -1;
  for (auto q : qset) {
    if (!is_prime(q) || (2 * ctx.level) % q == 0 || q == p)
      throw PreconditionError("q must be a prime not dividing 2Np");
    auto it = std::find_if(ctx.point_counts.begin(), ctx.point_counts.end(),
                           [q](const auto& e) { return e.first == q; });
    const Integer count = it != ctx.point_counts.end() ? it->second : jacobian_point_count(ctx.hecke.ms, q);
    const int v = ord(count, p);
    best = best < 0 ? v : std::min(best, v);
  }
  return best;
}

VerificationReport verify_ogg(const LevelContext& ctx, std::int64_t p) {
  const std::int64_t N = ctx.level;
  check_prime(N, p);
  VerificationReport r;
  r.level = N;
  r.p = p;
  r.qmax = ctx.options.qmax;
  r.fd_basis_ok = ctx.fd_basis_ok;
  r.ld_diagonal_ok = ctx.ld_diagonal_ok;
  r.dlog_identity_ok = ctx.dlog_identity_ok;
  r.residue_consistency_ok = ctx.residue_consistency_ok;
  r.charpoly_square_ok = ctx.charpoly_square_ok;
  r.gram_support_ok = ctx.gram_support_ok;
  if (ctx.options.timings)
    for (const auto& [stage, seconds] : ctx.timings) r.timings.emplace_back("level." + stage, seconds);
  Stopwatch clock(ctx.options.timings ? &r.timings : nullptr);

  try {
    const CuspidalGroup C = cuspidal_group(N, p);
    r.ord_C = C.valuation;
    clock.lap("cuspidal_group");
    r.ord_TI = cuspidal_ideal_index(ctx.hecke, p);
    clock.lap("index_TI");
    r.ord_X = x_group(ctx.hecke, p).torsion_valuation(p);
    clock.lap("x_group");
    const JReport J = ideal_J(ctx.hecke, p, ctx.options.qmax);
    r.J_equals_Itilde_ok = J.equals_ppart();
    r.memberships_ok = J.memberships_ok();
    clock.lap("ideal_J");
    r.presentation_ok = ctx.quotient_ok && presentation_check(ctx.hecke, p).ok();
    clock.lap("presentation");
    r.cyclicity_ok = lambda_and_cyclicity(ctx.hecke, C).cyclic;
    clock.lap("lambda");
    r.ogg_equality_ok = r.ord_C == r.ord_TI && r.ord_TI == r.ord_X;

    r.torsion_qset = default_qset(N, p, ctx.options.qset_size);
    r.torsion_bound = torsion_bound(ctx, p, r.torsion_qset);
    r.bound_consistent = r.ord_C <= r.torsion_bound;
    r.bound_tight = r.ord_C == r.torsion_bound;
    clock.lap("torsion_bound");
  } catch (const InvariantError& e) {
    r.error = e.what();
  }
  return r;
}

VerificationReport verify_ogg(std::int64_t N, std::int64_t p, const VerifyOptions& options) {
  check_level(N);
  check_prime(N, p);
  return verify_ogg(level_context(N, options), p);
}

std::vector<VerificationReport> batch(std::int64_t lo, std::int64_t hi, std::int64_t pmax,
                                      const VerifyOptions& options) {
  std::vector<VerificationReport> out;
  if (lo > hi || pmax < 5) return out;
  const auto primes = primes_up_to(pmax);
  for (std::int64_t N = std::max<std::int64_t>(lo, 2); N <= hi; ++N) {
    if (!is_squarefree(N)) continue;
    std::optional<LevelContext> ctx;
    std::string failure;
    try {
      ctx = level_context(N, options);
    } catch (const InvariantError& e) {
      failure = e.what();
    }
    for (auto p : primes) {
      if ((6 * N) % p == 0) continue;
      if (ctx) {
        out.push_back(verify_ogg(*ctx, p));
      } else {
        VerificationReport r;
        r.level = N;
        r.p = p;
        r.qmax = options.qmax;
        r.error = failure;
        out.push_back(std::move(r));
      }
    }
  }
  return out;
}

}  // namespace ogg
