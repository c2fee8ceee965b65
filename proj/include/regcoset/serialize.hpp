#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"
#include "regcoset/padic.hpp"
#include "regcoset/polygonal.hpp"
#include "regcoset/regularity.hpp"
#include "regcoset/watson.hpp"

namespace regcoset {

using Json = nlohmann::json;

inline constexpr const char* kToolName = "regcoset";
inline constexpr const char* kToolVersion = "0.1.0";

// Rationals travel as canonical "p/q" strings, counts and bounds as JSON
// integers. Readers throw ParseError.

Json to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json to_json(const Coset& c);
Coset coset_from_json(const Json& j);

Json to_json(const QuadPolynomial& f);

Json to_json(const NormIdeals& n);
Json to_json(const LocalClass& lc);
Json to_json(const JordanSplitting& s);

Json to_json(const WatsonStep& s);
WatsonStep watson_step_from_json(const Json& j);

Json to_json(const RegularityVerdict& v);
RegularityVerdict verdict_from_json(const Json& j);

Json to_json(const CensusRecord& r);
CensusRecord census_record_from_json(const Json& j);

Json to_json(const CensusConfig& c);
CensusConfig census_config_from_json(const Json& j);

Json to_json(const GonalForm& g);
GonalForm gonal_form_from_json(const Json& j);

/// One compact JSON object per line.
std::string dump_line(const Json& j);

/// Reads a coset file: a JSON object {"gram": ..., "shift": ...}.
Coset read_coset_file(const std::string& path);

struct CensusStream {
  CensusConfig config;
  std::string version;
  std::vector<CensusRecord> records;
};

std::string census_header(const CensusConfig& config);

/// Header line followed by one record per line.
void write_census(std::ostream& out, const CensusConfig& config,
                  const std::vector<CensusRecord>& records);

/// Errors name the offending line (1-based).
CensusStream read_census(std::istream& in);

}  // namespace regcoset
