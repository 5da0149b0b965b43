// Command-line front end: verify-ogg, batch, basis, cuspidal, ideal, cuspforms.

#include "ogg/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <limits>
#include <regex>
#include <sstream>

namespace {

using json = nlohmann::ordered_json;
using namespace ogg;

constexpr int kPass = 0;
constexpr int kCheckFailure = 1;
constexpr int kUsage = 2;

enum class Format { text, json, csv };

struct Config {
  std::int64_t level = 0;
  std::int64_t p = 0;
  std::string levels;
  std::int64_t pmax = 100;
  std::int64_t qmax = 50;
  std::size_t qset_size = 8;
  Index precision = 0;
  Format format = Format::text;
  std::string output;
  bool timings = false;

  VerifyOptions options() const { return {qmax, qset_size, timings}; }
};

json integer_json(const Integer& n) {
  if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
    return json(static_cast<std::int64_t>(n));
  return json(n.str());
}

json invariants_json(const AbelianInvariants& A) {
  json out = json::array();
  for (const auto& d : A.invariant_factors) out.push_back(integer_json(d));
  return out;
}

// torsion factors only
std::string invariants_text(const AbelianInvariants& A) {
  std::ostringstream s;
  s << '[';
  bool first = true;
  for (const auto& d : A.invariant_factors) {
    if (d == 0) continue;
    s << (first ? "" : ", ") << d;
    first = false;
  }
  s << ']';
  return s.str();
}

std::string vector_text(const IntVector& v) {
  std::ostringstream s;
  s << '(';
  for (Index i = 0; i < v.cols(); ++i) s << (i ? ", " : "") << v(i);
  s << ')';
  return s.str();
}

json vector_json(const IntVector& v) {
  json out = json::array();
  for (Index i = 0; i < v.cols(); ++i) out.push_back(integer_json(v(i)));
  return out;
}

std::vector<std::pair<std::string, bool>> flags(const VerificationReport& r) {
  return {{"fd_basis_ok", r.fd_basis_ok},
          {"ld_diagonal_ok", r.ld_diagonal_ok},
          {"dlog_identity_ok", r.dlog_identity_ok},
          {"residue_consistency_ok", r.residue_consistency_ok},
          {"J_equals_Itilde_ok", r.J_equals_Itilde_ok},
          {"memberships_ok", r.memberships_ok},
          {"presentation_ok", r.presentation_ok},
          {"cyclicity_ok", r.cyclicity_ok},
          {"charpoly_square_ok", r.charpoly_square_ok},
          {"gram_support_ok", r.gram_support_ok},
          {"ogg_equality_ok", r.ogg_equality_ok},
          {"bound_tight", r.bound_tight},
          {"bound_consistent", r.bound_consistent}};
}

json report_json(const VerificationReport& r, const Config& cfg) {
  json j;
  j["level"] = r.level;
  j["p"] = r.p;
  j["ord_p_C"] = r.ord_C;
  j["ord_p_TI"] = r.ord_TI;
  j["ord_p_X"] = r.ord_X;
  j["torsion_bound"] = r.torsion_bound;
  j["torsion_qset"] = r.torsion_qset;
  j["qmax"] = r.qmax;
  j["qset_size"] = cfg.qset_size;
  for (const auto& [name, value] : flags(r)) j[name] = value;
  j["passed"] = r.passed();
  j["error"] = r.error.empty() ? json(nullptr) : json(r.error);
  if (cfg.timings) {
    json t = json::object();
    for (const auto& [stage, seconds] : r.timings) t[stage] = seconds;
    j["timings"] = t;
  }
  return j;
}

void report_text(std::ostream& out, const VerificationReport& r, const Config& cfg) {
  out << "level " << r.level << ", p = " << r.p << '\n';
  out << "  ord_p|C| = " << r.ord_C << ", ord_p[T:I] = " << r.ord_TI << ", ord_p|X| = " << r.ord_X << '\n';
  out << "  torsion bound = " << r.torsion_bound << " (q in {";
  for (std::size_t i = 0; i < r.torsion_qset.size(); ++i) out << (i ? ", " : "") << r.torsion_qset[i];
  out << "}), qmax = " << r.qmax << '\n';
  for (const auto& [name, value] : flags(r)) out << "  " << name << ": " << (value ? "true" : "false") << '\n';
  if (!r.error.empty()) out << "  error: " << r.error << '\n';
  if (cfg.timings)
    for (const auto& [stage, seconds] : r.timings) out << "  time " << stage << ": " << seconds << " s\n";
  out << "  result: " << (r.passed() ? "PASS" : "FAIL") << '\n';
}

const char* kReportCsvHeader =
    "level,p,ord_p_C,ord_p_TI,ord_p_X,torsion_bound,qmax,fd_basis_ok,ld_diagonal_ok,dlog_identity_ok,"
    "residue_consistency_ok,J_equals_Itilde_ok,memberships_ok,presentation_ok,cyclicity_ok,"
    "charpoly_square_ok,gram_support_ok,ogg_equality_ok,bound_tight,bound_consistent,passed";

void report_csv(std::ostream& out, const VerificationReport& r) {
  out << r.level << ',' << r.p << ',' << r.ord_C << ',' << r.ord_TI << ',' << r.ord_X << ',' << r.torsion_bound
      << ',' << r.qmax;
  for (const auto& [name, value] : flags(r)) out << ',' << (value ? 1 : 0);
  out << ',' << (r.passed() ? 1 : 0) << '\n';
}

void series_csv(std::ostream& out, const std::string& name, const Series& f) {
  out << "# " << name << '\n';
  for (Index n = 0; n <= f.precision(); ++n)
    out << n << ',' << numerator(f[n]) << ',' << denominator(f[n]) << '\n';
}

json series_json(const Series& f) {
  json out = json::array();
  for (Index n = 0; n <= f.precision(); ++n) out.push_back(to_string(f[n]));
  return out;
}

std::string series_text(const Series& f) {
  std::ostringstream s;
  bool first = true;
  for (Index n = 0; n <= f.precision(); ++n) {
    if (f[n] == 0) continue;
    s << (first ? "" : " + ");
    if (n == 0 || (f[n] != 1 && f[n] != -1)) s << to_string(f[n]) << (n > 0 ? "*" : "");
    else if (f[n] == -1) s << '-';
    if (n > 0) s << 'q' << (n > 1 ? "^" + std::to_string(n) : "");
    first = false;
  }
  if (first) s << '0';
  s << " + O(q^" << f.precision() + 1 << ')';
  return s.str();
}

int run_verify(const Config& cfg, std::ostream& out) {
  const VerificationReport r = verify_ogg(cfg.level, cfg.p, cfg.options());
  switch (cfg.format) {
    case Format::json: out << report_json(r, cfg).dump(2) << '\n'; break;
    case Format::csv: out << kReportCsvHeader << '\n'; report_csv(out, r); break;
    case Format::text: report_text(out, r, cfg); break;
  }
  return r.passed() ? kPass : kCheckFailure;
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  static const std::regex pattern(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
  std::smatch m;
  if (!std::regex_match(s, m, pattern)) throw PreconditionError("levels must look like A..B");
  return {std::stoll(m[1]), std::stoll(m[2])};
}

int run_batch(const Config& cfg, std::ostream& out) {
  const auto [lo, hi] = parse_range(cfg.levels);
  const auto reports = batch(lo, hi, cfg.pmax, cfg.options());
  bool all = true;
  for (const auto& r : reports) all = all && r.passed();
  std::size_t tight = 0;
  for (const auto& r : reports) tight += r.bound_tight ? 1 : 0;
  switch (cfg.format) {
    case Format::json: {
      json j;
      j["levels"] = cfg.levels;
      j["pmax"] = cfg.pmax;
      j["qmax"] = cfg.qmax;
      j["qset_size"] = cfg.qset_size;
      j["pairs"] = reports.size();
      j["all_passed"] = all;
      j["bound_tight_count"] = tight;
      j["reports"] = json::array();
      for (const auto& r : reports) j["reports"].push_back(report_json(r, cfg));
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      out << kReportCsvHeader << '\n';
      for (const auto& r : reports) report_csv(out, r);
      break;
    case Format::text:
      for (const auto& r : reports) report_text(out, r, cfg);
      out << reports.size() << " pairs, " << (all ? "all passed" : "FAILURES") << ", bound tight for " << tight
          << '\n';
      break;
  }
  return all ? kPass : kCheckFailure;
}

int run_basis(const Config& cfg, std::ostream& out) {
  const std::int64_t N = cfg.level;
  if (N < 2 || !is_squarefree(N)) throw PreconditionError("level must be square-free and > 1");
  const Index P = cfg.precision > 0 ? cfg.precision : sturm_bound(N);
  const EisensteinBasis E = e_basis(N, P);
  const EisensteinBasis F = f_basis(N, P);
  const EisLattice L = eis_integral_lattice(N);
  const Factorization index = fd_basis_index(N);
  const bool ok = support_within_6N(index, N);

  switch (cfg.format) {
    case Format::json: {
      json j;
      j["level"] = N;
      j["precision"] = P;
      j["E"] = json::object();
      for (const auto& [d, f] : E.forms) j["E"][std::to_string(d)] = series_json(f);
      j["f"] = json::object();
      for (const auto& [d, f] : F.forms) j["f"][std::to_string(d)] = series_json(f);
      j["lattice_precision"] = L.precision;
      j["lattice_hnf"] = json::array();
      for (Index i = 0; i < L.lattice.rank(); ++i) j["lattice_hnf"].push_back(vector_json(L.lattice.basis().row(i)));
      j["fd_basis_index"] = to_string(index);
      j["fd_basis_index_supported_on_6N"] = ok;
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      for (const auto& [d, f] : E.forms) series_csv(out, "E_" + std::to_string(d), f);
      for (const auto& [d, f] : F.forms) series_csv(out, "f_" + std::to_string(d), f);
      break;
    case Format::text:
      out << "level " << N << ", precision " << P << '\n';
      for (const auto& [d, f] : E.forms) out << "E_" << d << " = " << series_text(f) << '\n';
      for (const auto& [d, f] : F.forms) out << "f_" << d << " = " << series_text(f) << '\n';
      out << "HNF of E_2(N, Z) in (a_0..a_" << L.precision << "):\n";
      for (Index i = 0; i < L.lattice.rank(); ++i) out << "  " << vector_text(L.lattice.basis().row(i)) << '\n';
      out << "fd_basis_index = " << to_string(index) << (ok ? "" : " (support not within 6N)") << '\n';
      break;
  }
  return ok ? kPass : kCheckFailure;
}

int run_cuspidal(const Config& cfg, std::ostream& out) {
  const HeckeLevel H = hecke_level(cfg.level);
  const CuspidalGroup C = cuspidal_group(cfg.level, cfg.p);
  const LambdaResult L = lambda_and_cyclicity(H, C);
  const CuspSet cusps = cusp_set(cfg.level);

  switch (cfg.format) {
    case Format::json: {
      json j;
      j["level"] = cfg.level;
      j["p"] = cfg.p;
      j["cusp_denominators"] = cusps.denominators;
      j["full_invariants"] = invariants_json(C.full);
      j["invariants"] = invariants_json(C.invariants);
      j["generators"] = json::array();
      for (const auto& g : C.generators) j["generators"].push_back(vector_json(g));
      j["lambda_values"] = json::array();
      j["lambda_denominators"] = json::array();
      for (const auto& v : L.values) {
        j["lambda_values"].push_back(to_string(v));
        j["lambda_denominators"].push_back(integer_json(denominator(v)));
      }
      j["orbit_valuation"] = L.orbit_valuation;
      j["cyclic"] = L.cyclic;
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv: throw PreconditionError("csv output is only available for series and reports");
    case Format::text:
      out << "level " << cfg.level << ", p = " << cfg.p << '\n';
      out << "cusps (denominators):";
      for (auto c : cusps.denominators) out << ' ' << c;
      out << '\n';
      out << "Div^0 / div(U) = " << invariants_text(C.full) << '\n';
      out << "p-part = " << invariants_text(C.invariants) << '\n';
      for (std::size_t i = 0; i < C.generators.size(); ++i)
        out << "  generator " << i << ": " << vector_text(C.generators[i]) << ", lambda = " << to_string(L.values[i])
            << '\n';
      out << "cyclic: " << (L.cyclic ? "true" : "false") << '\n';
      break;
  }
  return L.cyclic ? kPass : kCheckFailure;
}

int run_ideal(const Config& cfg, std::ostream& out) {
  if (!is_prime(cfg.p) || (6 * cfg.level) % cfg.p == 0) throw PreconditionError("p must be a prime not dividing 6N");
  const HeckeLevel H = hecke_level(cfg.level, std::max(default_hecke_bound(cfg.level), cfg.qmax));
  const AbelianInvariants Q = eisenstein_quotient(H);
  const int index = cuspidal_ideal_index(H, cfg.p);
  const JReport J = ideal_J(H, cfg.p, cfg.qmax);
  const bool ok = J.equals_ppart() && J.memberships_ok();

  switch (cfg.format) {
    case Format::json: {
      json j;
      j["level"] = cfg.level;
      j["p"] = cfg.p;
      j["qmax"] = cfg.qmax;
      j["rank_Ttilde"] = H.Ttilde.rank();
      j["rank_T"] = H.T.rank();
      j["rank_TtildeI"] = Q.free_rank();
      j["TtildeI_invariants"] = invariants_json(Q);
      j["index_TI_ppart"] = index;
      j["J_primes"] = J.primes;
      j["J_contained_in_Itilde"] = J.contained;
      j["index_Itilde_J_ppart"] = J.index_ppart ? json(*J.index_ppart) : json(nullptr);
      j["J_equals_Itilde_ppart"] = J.equals_ppart();
      j["memberships"] = json::array();
      for (const auto& m : J.memberships)
        j["memberships"].push_back({{"name", m.name}, {"in_Itilde", m.in_Itilde}, {"in_J_p", m.in_J}});
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv: throw PreconditionError("csv output is only available for series and reports");
    case Format::text:
      out << "level " << cfg.level << ", p = " << cfg.p << ", qmax = " << cfg.qmax << '\n';
      out << "rank T~ = " << H.Ttilde.rank() << ", rank T = " << H.T.rank() << '\n';
      out << "T~/I~ = Z^" << Q.free_rank() << " + " << invariants_text(Q) << '\n';
      out << "ord_p [T : I] = " << index << '\n';
      out << "J contained in I~: " << (J.contained ? "true" : "false") << '\n';
      out << "ord_p [I~ : J] = " << (J.index_ppart ? std::to_string(*J.index_ppart) : std::string("n/a")) << '\n';
      out << "J equals I~ at p: " << (J.equals_ppart() ? "true" : "false") << '\n';
      for (const auto& m : J.memberships)
        out << "  " << m.name << ": in I~ " << (m.in_Itilde ? "true" : "false") << ", in J_(p) "
            << (m.in_J ? "true" : "false") << '\n';
      break;
  }
  return ok ? kPass : kCheckFailure;
}

int run_cuspforms(const Config& cfg, std::ostream& out) {
  const std::int64_t N = cfg.level;
  if (N < 2 || !is_squarefree(N)) throw PreconditionError("level must be square-free and > 1");
  const Index P = cfg.precision > 0 ? cfg.precision : sturm_bound(N);
  const auto forms = integral_cuspform_basis(N, P);
  switch (cfg.format) {
    case Format::json: {
      json j;
      j["level"] = N;
      j["precision"] = P;
      j["forms"] = json::array();
      for (const auto& f : forms) j["forms"].push_back(series_json(f));
      out << j.dump(2) << '\n';
      break;
    }
    case Format::csv:
      for (std::size_t i = 0; i < forms.size(); ++i) series_csv(out, "g_" + std::to_string(i + 1), forms[i]);
      break;
    case Format::text:
      out << "level " << N << ", genus " << forms.size() << ", precision " << P << '\n';
      for (std::size_t i = 0; i < forms.size(); ++i) out << "g_" << i + 1 << " = " << series_text(forms[i]) << '\n';
      break;
  }
  return kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact verification of the generalized Ogg equality at square-free level"};
  app.require_subcommand(1);
  Config cfg;
  const std::map<std::string, Format> formats{{"text", Format::text}, {"json", Format::json}, {"csv", Format::csv}};

  auto common = [&](CLI::App* cmd) {
    cmd->add_option("--format", cfg.format, "text, json or csv")->transform(CLI::CheckedTransformer(formats));
    cmd->add_option("--output,-o", cfg.output, "write to this file instead of stdout");
  };
  auto level = [&](CLI::App* cmd) { cmd->add_option("--level,-N", cfg.level, "square-free level N > 1")->required(); };
  auto prime = [&](CLI::App* cmd) { cmd->add_option("--p,-p", cfg.p, "prime not dividing 6N")->required(); };
  auto qmax = [&](CLI::App* cmd) {
    cmd->add_option("--qmax", cfg.qmax, "largest q in the generators of J")->check(CLI::Range(20, 400));
  };
  auto verify_flags = [&](CLI::App* cmd) {
    qmax(cmd);
    cmd->add_option("--qset-size", cfg.qset_size, "number of primes in the torsion bound")->check(CLI::Range(1, 64));
    cmd->add_flag("--timings", cfg.timings, "include per-stage timings");
  };

  auto* verify = app.add_subcommand("verify-ogg", "full report for one (N, p)");
  level(verify), prime(verify), verify_flags(verify), common(verify);
  auto* batch_cmd = app.add_subcommand("batch", "reports for a range of levels");
  batch_cmd->add_option("--levels", cfg.levels, "inclusive range A..B")->required();
  batch_cmd->add_option("--pmax", cfg.pmax, "largest p")->check(CLI::PositiveNumber);
  verify_flags(batch_cmd), common(batch_cmd);
  auto* basis = app.add_subcommand("basis", "Eisenstein bases, their lattice and fd_basis_index");
  level(basis), common(basis);
  basis->add_option("--prec", cfg.precision, "q-expansion precision (default: Sturm bound)")->check(CLI::PositiveNumber);
  auto* cuspidal = app.add_subcommand("cuspidal", "cuspidal group, generators and lambda");
  level(cuspidal), prime(cuspidal), common(cuspidal);
  auto* ideal = app.add_subcommand("ideal", "Hecke algebra, Eisenstein ideal and J");
  level(ideal), prime(ideal), qmax(ideal), common(ideal);
  auto* cuspforms = app.add_subcommand("cuspforms", "integral basis of S_2(N, Z)");
  level(cuspforms), common(cuspforms);
  cuspforms->add_option("--prec", cfg.precision, "q-expansion precision (default: Sturm bound)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  std::ofstream file;
  if (!cfg.output.empty()) {
    file.open(cfg.output);
    if (!file) {
      std::cerr << "cannot open " << cfg.output << '\n';
      return kUsage;
    }
  }
  std::ostream& out = cfg.output.empty() ? std::cout : file;

  try {
    if (*verify) return run_verify(cfg, out);
    if (*batch_cmd) return run_batch(cfg, out);
    if (*basis) return run_basis(cfg, out);
    if (*cuspidal) return run_cuspidal(cfg, out);
    if (*ideal) return run_ideal(cfg, out);
    if (*cuspforms) return run_cuspforms(cfg, out);
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const InvariantError& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kCheckFailure;
  }
  return kUsage;
}
