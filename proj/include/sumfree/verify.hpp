#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "sumfree/fourier.hpp"
#include "sumfree/solve.hpp"

namespace sumfree {

inline constexpr const char* kSolverVersion = "sumfree-solver/1";

/// Exhaustive scan of all 2^(p^n) subsets; p^n <= 25.
SearchOutcome oracle_max_sum_free(const Space& s);

enum class LawId {
  cauchy_davenport,
  vosper,
  kneser,
  bdumm,
  lem42,
  lemABCD,
  lem5_classification,
  lem32_noncover,
  lem6_classification,
  prop21,
  prop22,
  prop23,
  prop24,
  sf_formulas,
};

enum class LawMode { exhaustive, random };
enum class Verdict { pass, counterexample, vacuous, unproved };

std::string to_string(LawId id);
std::string to_string(LawMode m);
std::string to_string(Verdict v);
LawId parse_law(const std::string& name);
LawMode parse_mode(const std::string& name);
const std::vector<LawId>& all_laws();

struct LawReport {
  LawId law = LawId::cauchy_davenport;
  std::uint32_t p = 0;
  std::uint32_t n = 0;
  LawMode mode = LawMode::random;
  std::uint64_t trials = 0;      // instances evaluated
  std::uint64_t applicable = 0;  // instances meeting the hypotheses
  Verdict verdict = Verdict::vacuous;
  std::uint64_t seed = 0;
  std::optional<nlohmann::json> certificate;
};

/// Process exit code for a verdict: 0 pass/vacuous, 2 counterexample, 3 unproved.
int exit_code(Verdict v);

/// Hypothesis and conclusion of one law on one instance.
struct LawEvaluation {
  bool applicable = false;
  bool holds = true;
};

/// Evaluates `law` on `instance` (pairs for the sumset laws, triples for
/// lem42/lemABCD, single sets otherwise). Throws WrongSpace or BadPrime when the
/// law does not live in the instance's space.
LawEvaluation evaluate_law(LawId law, const std::vector<GroupSet>& instance);

/// Instance number `trial` of the random generator for (law, s, seed).
std::vector<GroupSet> random_instance(LawId law, const Space& s, std::uint64_t seed, std::uint64_t trial);

/// Exhaustive mode enumerates the law's full instance universe and throws
/// ExhaustiveTooLarge beyond the caps: pairs of subsets of F_p with p <= 13 or
/// of groups of order <= 9; triples of groups of order <= 9; single subsets of
/// order <= 17 (p^n <= 64 for the constructive n >= 2 cuboid check); subsets
/// of F_p of size 2m-1 up to 2^22 of them; structured streams up to
/// 2^20 sets. sf_formulas checks the default table entries for the space.
LawReport check_law(LawId law, const Space& s, LawMode mode, std::uint64_t trials, std::uint64_t seed);

struct SfTableEntry {
  std::uint32_t p;
  std::uint32_t n;
  std::uint32_t k;
  std::size_t expected;
};

/// Closed-form values within reach of the exact search.
const std::vector<SfTableEntry>& default_sf_table();

LawReport check_sf_table(const std::vector<SfTableEntry>& entries, const Budget& budget = {});

/// True iff the certificate's instance still violates its law.
bool replay_certificate(const nlohmann::json& certificate);

nlohmann::json to_json(const LawReport& r);
nlohmann::json to_json(const Space& s, std::uint32_t k, const SearchOutcome& o);
/// Certificate for levels 0..k: {p, n, k, solver, levels: [level objects]}.
nlohmann::json hierarchy_to_json(const Space& s, const std::vector<SearchOutcome>& levels);

struct CertificateCheck {
  bool valid = false;
  std::string reason;
};

/// Re-verifies a level or hierarchy certificate without the solver: every
/// witness parses, is sum-free, has the claimed size and, for hierarchies with
/// complete witness lists, avoids every witness of the earlier levels.
CertificateCheck verify_certificate(const nlohmann::json& certificate);

/// CSV with header "index,re,im"; rows are dual elements in index order.
std::string spectrum_csv(const GroupSet& a);

}  // namespace sumfree
