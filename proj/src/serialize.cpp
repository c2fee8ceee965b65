#include "regcoset/serialize.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "regcoset/error.hpp"

namespace regcoset {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) bad("expected an object");
  auto it = j.find(key);
  if (it == j.end()) bad(std::string("missing field '") + key + "'");
  return *it;
}

std::uint64_t uint_from_json(const Json& j) {
  if (!j.is_number_unsigned()) bad("expected a non-negative integer, got " + j.dump());
  return j.get<std::uint64_t>();
}

std::int64_t int_from_json(const Json& j) {
  if (!j.is_number_integer()) bad("expected an integer, got " + j.dump());
  return j.get<std::int64_t>();
}

Integer integer_from_json(const Json& j) {
  const Rational q = rational_from_json(j);
  if (q.get_den() != 1) bad("expected an integer, got " + j.dump());
  return q.get_num();
}

Json vec_to_json(const Vec3& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(to_json(x));
  return out;
}

Vec3 vec_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) bad("expected 3 entries, got " + j.dump());
  Vec3 v;
  for (int i = 0; i < 3; ++i) v[i] = rational_from_json(j[i]);
  return v;
}

Json certificates_to_json(const std::vector<LocalCertificate>& certs) {
  Json out = Json::array();
  for (const auto& c : certs) out.push_back({{"p", c.p}, {"represented", c.represented}});
  return out;
}

std::vector<LocalCertificate> certificates_from_json(const Json& j) {
  if (!j.is_array()) bad("expected a certificate list");
  std::vector<LocalCertificate> out;
  for (const Json& c : j) {
    const Json& r = field(c, "represented");
    if (!r.is_boolean()) bad("expected a boolean");
    out.push_back({uint_from_json(field(c, "p")), r.get<bool>()});
  }
  return out;
}

}  // namespace

Json to_json(const Rational& q) { return format_rational(q); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) bad("expected a \"p/q\" string, got " + j.dump());
  try {
    return parse_rational(j.get<std::string>());
  } catch (const Error& e) {
    bad(e.what());
  }
}

Json to_json(const Coset& c) {
  Json gram = Json::array();
  for (const Vec3& row : c.gram) gram.push_back(vec_to_json(row));
  return {{"gram", gram}, {"shift", vec_to_json(c.shift)}};
}

Coset coset_from_json(const Json& j) {
  const Json& g = field(j, "gram");
  if (!g.is_array() || g.size() != 3) bad("gram must be 3x3");
  Coset c;
  for (int i = 0; i < 3; ++i) c.gram[i] = vec_from_json(g[i]);
  for (int i = 0; i < 3; ++i) {
    for (int k = i + 1; k < 3; ++k) {
      if (c.gram[i][k] != c.gram[k][i]) bad("gram is not symmetric");
    }
  }
  c.shift = j.contains("shift") ? vec_from_json(j["shift"]) : Vec3{0, 0, 0};
  return c;
}

Json to_json(const QuadPolynomial& f) {
  Json gram = Json::array(), linear = Json::array();
  for (const auto& row : f.gram) {
    Json r = Json::array();
    for (const Rational& x : row) r.push_back(to_json(x));
    gram.push_back(r);
  }
  for (const Rational& x : f.linear) linear.push_back(to_json(x));
  return {{"gram", gram}, {"linear", linear}, {"constant", to_json(f.constant)}};
}

Json to_json(const NormIdeals& n) {
  return {{"n", to_json(n.n_f)}, {"b", to_json(n.b_f)}, {"n0", to_json(n.n0_f)}};
}

Json to_json(const LocalClass& lc) {
  return {{"p", lc.p}, {"residue", lc.residue.get_str()}, {"exponent", lc.exponent}};
}

Json to_json(const JordanSplitting& s) {
  Json comps = Json::array();
  for (const auto& c : s.components) {
    Json gram = Json::array();
    for (const auto& row : c.gram) {
      Json r = Json::array();
      for (const Rational& x : row) r.push_back(to_json(x));
      gram.push_back(r);
    }
    comps.push_back({{"scale", c.scale}, {"rank", c.rank}, {"gram", gram}});
  }
  Json transform = Json::array();
  for (const Vec3& row : s.transform) transform.push_back(vec_to_json(row));
  return {{"p", s.p}, {"components", comps}, {"transform", transform}};
}

Json to_json(const WatsonStep& s) {
  return {{"p", s.p},
          {"i", s.i},
          {"j", s.j},
          {"t", s.t},
          {"input", to_json(s.input)},
          {"output", to_json(s.output)},
          {"output_reduced", to_json(s.output_reduced)}};
}

WatsonStep watson_step_from_json(const Json& j) {
  WatsonStep s;
  s.p = uint_from_json(field(j, "p"));
  s.i = static_cast<int>(int_from_json(field(j, "i")));
  s.j = uint_from_json(field(j, "j"));
  s.t = static_cast<int>(int_from_json(field(j, "t")));
  s.input = coset_from_json(field(j, "input"));
  s.output = coset_from_json(field(j, "output"));
  s.output_reduced = coset_from_json(field(j, "output_reduced"));
  return s;
}

Json to_json(const RegularityVerdict& v) {
  return {{"bound", v.bound},
          {"status", to_string(v.status)},
          {"witness", v.witness ? Json(*v.witness) : Json(nullptr)},
          {"witness_certificates", certificates_to_json(v.witness_certificates)},
          {"genus_count", v.genus_count},
          {"global_count", v.global_count}};
}

RegularityVerdict verdict_from_json(const Json& j) {
  RegularityVerdict v;
  v.bound = uint_from_json(field(j, "bound"));
  const Json& s = field(j, "status");
  if (!s.is_string()) bad("status must be a string");
  v.status = parse_status(s.get<std::string>());
  const Json& w = field(j, "witness");
  if (!w.is_null()) v.witness = uint_from_json(w);
  v.witness_certificates = certificates_from_json(field(j, "witness_certificates"));
  v.genus_count = uint_from_json(field(j, "genus_count"));
  v.global_count = uint_from_json(field(j, "global_count"));
  return v;
}

Json to_json(const CensusRecord& r) {
  Json descent = Json::array();
  for (const auto& s : r.descent) descent.push_back(to_json(s));
  return {{"coset", to_json(r.coset)},
          {"conductor", r.conductor.get_str()},
          {"discriminant", to_json(r.discriminant)},
          {"verdict", to_json(r.verdict)},
          {"descent", descent}};
}

CensusRecord census_record_from_json(const Json& j) {
  CensusRecord r;
  r.coset = coset_from_json(field(j, "coset"));
  r.conductor = integer_from_json(field(j, "conductor"));
  r.discriminant = rational_from_json(field(j, "discriminant"));
  r.verdict = verdict_from_json(field(j, "verdict"));
  const Json& d = field(j, "descent");
  if (!d.is_array()) bad("descent must be a list");
  for (const Json& s : d) r.descent.push_back(watson_step_from_json(s));
  return r;
}

Json to_json(const CensusConfig& c) {
  return {{"conductor", c.conductor.get_str()},
          {"disc_bound", to_json(c.disc_bound)},
          {"bound", c.bound},
          {"coeff_bound", c.coeff_bound},
          {"family", to_string(c.family)},
          {"m", c.m}};
}

CensusConfig census_config_from_json(const Json& j) {
  CensusConfig c;
  c.conductor = integer_from_json(field(j, "conductor"));
  c.disc_bound = rational_from_json(field(j, "disc_bound"));
  c.bound = uint_from_json(field(j, "bound"));
  c.coeff_bound = int_from_json(field(j, "coeff_bound"));
  const Json& f = field(j, "family");
  if (!f.is_string()) bad("family must be a string");
  c.family = parse_family(f.get<std::string>());
  c.m = static_cast<int>(int_from_json(field(j, "m")));
  return c;
}

Json to_json(const GonalForm& g) {
  Json coeffs = Json::array();
  for (const Integer& a : g.coeffs) coeffs.push_back(a.get_str());
  return {{"m", g.m}, {"coeffs", coeffs}};
}

GonalForm gonal_form_from_json(const Json& j) {
  GonalForm g;
  g.m = static_cast<int>(int_from_json(field(j, "m")));
  const Json& c = field(j, "coeffs");
  if (!c.is_array()) bad("coeffs must be a list");
  for (const Json& a : c) g.coeffs.push_back(integer_from_json(a));
  return g;
}

std::string dump_line(const Json& j) { return j.dump() + "\n"; }

Coset read_coset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path + ": " + e.what());
  }
  return coset_from_json(j);
}

std::string census_header(const CensusConfig& config) {
  return dump_line({{"tool", kToolName}, {"version", kToolVersion}, {"config", to_json(config)}});
}

void write_census(std::ostream& out, const CensusConfig& config,
                  const std::vector<CensusRecord>& records) {
  out << census_header(config);
  for (const auto& r : records) out << dump_line(to_json(r));
}

CensusStream read_census(std::istream& in) {
  CensusStream stream;
  std::string line;
  std::size_t number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    if (line.empty()) continue;
    try {
      const Json j = Json::parse(line);
      if (!header) {
        if (field(j, "tool") != kToolName) bad("not a census stream");
        const Json& v = field(j, "version");
        if (!v.is_string()) bad("version must be a string");
        stream.version = v.get<std::string>();
        stream.config = census_config_from_json(field(j, "config"));
        header = true;
      } else {
        stream.records.push_back(census_record_from_json(j));
      }
    } catch (const Json::exception& e) {
      bad("line " + std::to_string(number) + ": " + e.what());
    } catch (const Error& e) {
      bad("line " + std::to_string(number) + ": " + e.what());
    }
  }
  if (!header) bad("line 1: missing header");
  return stream;
}

}  // namespace regcoset
