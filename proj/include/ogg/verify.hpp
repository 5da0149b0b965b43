#pragma once

// The verification of ord_p |C| = ord_p [T : I] = ord_p |X| for one
// (N, p), together with every supporting identity, and batches of such runs.

#include "ogg/cusps.hpp"

#include <string>
#include <utility>
#include <vector>

namespace ogg {

struct VerifyOptions {
  std::int64_t qmax = 50;         // T_q - q - 1 with q <= qmax generate J
  std::size_t qset_size = 8;      // primes used for the torsion bound
  bool timings = false;
};

struct VerificationReport {
  std::int64_t level = 0;
  std::int64_t p = 0;
  std::int64_t qmax = 0;
  int ord_C = 0;
  int ord_TI = 0;
  int ord_X = 0;
  int torsion_bound = 0;
  std::vector<std::int64_t> torsion_qset;

  bool fd_basis_ok = false;
  bool ld_diagonal_ok = false;
  bool dlog_identity_ok = false;
  bool residue_consistency_ok = false;
  bool J_equals_Itilde_ok = false;
  bool memberships_ok = false;
  bool presentation_ok = false;
  bool cyclicity_ok = false;
  bool charpoly_square_ok = false;
  bool gram_support_ok = false;
  bool ogg_equality_ok = false;
  bool bound_tight = false;  // soft
  bool bound_consistent = false;

  /// Set when an invariant failed and the run was aborted.
  std::string error;
  /// (stage, seconds), filled only when requested.
  std::vector<std::pair<std::string, double>> timings;

  /// Every hard check passed (bound_tight is not one of them).
  bool passed() const;
};

/// Level-wide data and checks shared by every prime p.
struct LevelContext {
  std::int64_t level = 0;
  VerifyOptions options;
  HeckeLevel hecke;

  bool fd_basis_ok = false;
  bool ld_diagonal_ok = false;
  bool dlog_identity_ok = false;
  bool residue_consistency_ok = false;
  bool charpoly_square_ok = false;
  bool gram_support_ok = false;
  bool quotient_ok = false;  // rank 2^r - 1, torsion supported on 6N

  /// |J_0(N)(F_q)| for the first admissible q (q not dividing 2N).
  std::vector<std::pair<std::int64_t, Integer>> point_counts;
  std::vector<std::pair<std::string, double>> timings;
};

LevelContext level_context(std::int64_t N, const VerifyOptions& options = {});

/// The qset_size smallest primes not dividing 2Np.
std::vector<std::int64_t> default_qset(std::int64_t N, std::int64_t p, std::size_t count = 8);

/// min over q of ord_p |J_0(N)(F_q)|.
int torsion_bound(std::int64_t N, std::int64_t p, const std::vector<std::int64_t>& qset);
int torsion_bound(const LevelContext& ctx, std::int64_t p, const std::vector<std::int64_t>& qset);

VerificationReport verify_ogg(const LevelContext& ctx, std::int64_t p);
VerificationReport verify_ogg(std::int64_t N, std::int64_t p, const VerifyOptions& options = {});

/// Reports for square-free N in [lo, hi], N > 1, and primes p <= pmax with
/// p not dividing 6N, ordered by (N, p). Failures are recorded in reports.
std::vector<VerificationReport> batch(std::int64_t lo, std::int64_t hi, std::int64_t pmax,
                                      const VerifyOptions& options = {});

}  // namespace ogg
