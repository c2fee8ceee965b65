#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "regcoset/coset.hpp"
#include "regcoset/watson.hpp"

namespace regcoset {

struct LocalCertificate {
  std::uint64_t p = 0;
  bool represented = false;
};

struct GenusAnswer {
  bool represented = false;
  bool real = false;  // a >= 0
  std::vector<LocalCertificate> certificates;
};

GenusAnswer genus_represents(const Coset& c, const Integer& a);

enum class RegularityStatus { RegularUpToN, Irregular };

std::string to_string(RegularityStatus s);
RegularityStatus parse_status(const std::string& s);

struct RegularityVerdict {
  std::uint64_t bound = 0;
  RegularityStatus status = RegularityStatus::RegularUpToN;
  std::optional<std::uint64_t> witness;
  std::vector<LocalCertificate> witness_certificates;
  std::uint64_t genus_count = 0;   // |{a <= N : represented by the genus}|
  std::uint64_t global_count = 0;  // |{a <= N : represented by the coset}|

  bool operator==(const RegularityVerdict&) const = default;
};

inline bool operator==(const LocalCertificate& a, const LocalCertificate& b) {
  return a.p == b.p && a.represented == b.represented;
}

/// Compares the integers <= bound represented by the genus with those
/// represented by the coset itself. Requires a primitive positive coset.
RegularityVerdict check_regular(const Coset& c, std::uint64_t bound, int threads = 0);

/// Lexicographic order on (gram, shift).
bool coset_less(const Coset& a, const Coset& b);

struct CosetLess {
  bool operator()(const Coset& a, const Coset& b) const { return coset_less(a, b); }
};
using CosetSet = std::set<Coset, CosetLess>;

struct CensusRecord {
  Coset coset;  // canonical form
  Integer conductor;
  Rational discriminant;
  RegularityVerdict verdict;
  std::vector<WatsonStep> descent;
};

enum class CensusFamily { All, Diagonal, Gonal };

std::string to_string(CensusFamily f);
CensusFamily parse_family(const std::string& s);

struct CensusConfig {
  Integer conductor = 1;
  Rational disc_bound = 1;
  std::uint64_t bound = 10000;
  std::int64_t coeff_bound = 0;
  CensusFamily family = CensusFamily::All;
  int m = 3;  // polygonal order for the gonal family
};

/// Candidate cosets of the family, reduced to canonical form, deduplicated,
/// checked for regularity, and sorted by discriminant then canonical form.
/// Canonical forms listed in skip are left out.
std::vector<CensusRecord> census(const CensusConfig& config, const CosetSet& skip = {},
                                 int threads = 0);

struct IdentityRow {
  std::uint64_t n = 0;
  std::uint64_t r = 0;   // representations of n by the triangular form (1,1,3)
  std::uint64_t r1 = 0;  // x^2 + y^2 + 3z^2 = 8n + 5
  std::uint64_t r2 = 0;  // x^2 + y^2 + 12z^2 = 8n + 5
};

struct IdentityReport {
  std::vector<IdentityRow> rows;
  bool difference_holds = true;  // r = r1 - r2
  bool ratio_holds = true;       // r1 = 2 r2
};

IdentityReport verify_counting_identity(std::uint64_t n_max, int threads = 0);

}  // namespace regcoset

