#include "regcoset/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "regcoset/error.hpp"
#include "regcoset/kernel.hpp"
#include "regcoset/padic.hpp"
#include "regcoset/polygonal.hpp"
#include "regcoset/reduction.hpp"
#include "regcoset/regularity.hpp"
#include "regcoset/serialize.hpp"
#include "regcoset/watson.hpp"

namespace regcoset::cli {

namespace {

// A coset argument is a file path, or an inline JSON object.
Coset load_coset(const std::string& arg) {
  if (!arg.empty() && arg.front() == '{') {
    try {
      return coset_from_json(Json::parse(arg));
    } catch (const Json::exception& e) {
      throw Error(ErrorKind::ParseError, e.what());
    }
  }
  return read_coset_file(arg);
}

std::vector<Integer> parse_coeffs(const std::string& text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const Rational q = parse_rational(item);
    if (q.get_den() != 1) throw Error(ErrorKind::ParseError, "coefficient '" + item + "'");
    out.push_back(q.get_num());
  }
  return out;
}

Integer parse_integer(const std::string& text) {
  const Rational q = parse_rational(text);
  if (q.get_den() != 1) throw Error(ErrorKind::ParseError, "'" + text + "' is not an integer");
  return q.get_num();
}

Json mat_json(const IMat3& m) {
  Json out = Json::array();
  for (const IVec3& row : m) {
    Json r = Json::array();
    for (const Integer& x : row) r.push_back(x.get_str());
    out.push_back(r);
  }
  return out;
}

Json vec_json(const Vec3& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(to_json(x));
  return out;
}

Json invariants(const Coset& c) {
  return {{"conductor", conductor(c).get_str()},
          {"discriminant", to_json(discriminant(c))},
          {"norm_ideals", to_json(norm_ideals(c))},
          {"primitive", is_primitive(c)}};
}

struct Options {
  int threads = 0;
  std::string coset;
  std::string value;
  std::uint64_t p = 0;
  std::uint64_t bound = 10000;
  bool chain = false;
  bool map_only = false;

  std::string conductor = "1";
  std::string disc_bound = "1";
  std::int64_t coeff_bound = 0;
  std::string family = "all";
  std::string output;
  bool resume = false;

  int m = 3;
  std::string coeffs;
  std::string represents;
  std::uint64_t universal = 0;
  std::uint64_t regular = 0;
  std::int64_t scan = 0;

  std::uint64_t n_max = 200;
};

void cmd_reduce(const Options& o, std::ostream& out) {
  const Coset c = load_coset(o.coset);
  const ReducedCoset r = reduce(c);
  Json j = invariants(c);
  j["input"] = to_json(c);
  j["reduced"] = to_json(r.coset);
  j["minima"] = vec_json(r.minima);
  j["transform"] = mat_json(r.t);
  Json u = Json::array();
  for (const Integer& x : r.u) u.push_back(x.get_str());
  j["translation"] = u;
  j["polynomial"] = to_json(coset_to_polynomial(r.coset));
  out << j.dump(2) << "\n";
}

void cmd_local(const Options& o, std::ostream& out) {
  const Coset c = load_coset(o.coset);
  Json j;
  j["p"] = o.p;
  if (!o.value.empty()) {
    const Integer a = parse_integer(o.value);
    if (o.p == 0) {
      const GenusAnswer g = genus_represents(c, a);
      Json certs = Json::array();
      for (const auto& cert : g.certificates) {
        certs.push_back({{"p", cert.p}, {"represented", cert.represented}});
      }
      j = {{"value", a.get_str()},
           {"genus_represented", g.represented},
           {"real", g.real},
           {"certificates", certs}};
    } else {
      j["value"] = a.get_str();
      j["represented"] = local_represents(c, o.p, a);
    }
  } else {
    if (o.p == 0) throw Error(ErrorKind::InvalidArgument, "--p or --value is required");
    j["jordan"] = to_json(jordan_decompose(c, o.p));
    j["behaves_well"] = behaves_well(c, o.p);
    if (is_primitive(c)) {
      j["local_class"] = to_json(local_class(c, o.p));
      j["local_class_bound"] = local_class_bound(c, o.p);
    }
  }
  out << j.dump(2) << "\n";
}

void cmd_watson(const Options& o, std::ostream& out) {
  const Coset c = load_coset(o.coset);
  Json j;
  if (o.chain) {
    const DescentChain chain = descend_chain(c);
    Json steps = Json::array();
    for (const auto& s : chain.steps) steps.push_back(to_json(s));
    j = {{"result", to_json(chain.result)}, {"steps", steps}};
  } else if (o.map_only) {
    const WatsonMap map = watson_map(c.gram, o.p);
    Json gram = Json::array();
    for (const Vec3& row : map.gram) gram.push_back(vec_json(row));
    j = {{"p", o.p}, {"gram", gram}, {"basis", mat_json(map.basis)},
         {"i", map.scale}, {"t", map.drop}};
  } else {
    j = to_json(coset_descend(c, o.p));
  }
  out << j.dump(2) << "\n";
}

void cmd_check_regular(const Options& o, std::ostream& out) {
  const Coset c = load_coset(o.coset);
  Json j = to_json(check_regular(c, o.bound, o.threads));
  j["coset"] = to_json(c);
  out << j.dump(2) << "\n";
}

void cmd_census(const Options& o, std::ostream& out) {
  CensusConfig config;
  config.conductor = parse_integer(o.conductor);
  config.disc_bound = parse_rational(o.disc_bound);
  config.bound = o.bound;
  config.coeff_bound = o.coeff_bound;
  config.family = parse_family(o.family);
  config.m = o.m;
  if (config.conductor < 1) throw Error(ErrorKind::InvalidArgument, "conductor must be >= 1");
  if (config.disc_bound <= 0) throw Error(ErrorKind::InvalidArgument, "disc bound must be positive");

  std::vector<CensusRecord> previous;
  CosetSet skip;
  if (o.resume) {
    if (o.output.empty()) throw Error(ErrorKind::InvalidArgument, "--resume needs --output");
    if (std::filesystem::exists(o.output)) {
      std::ifstream in(o.output);
      CensusStream stream = read_census(in);
      if (to_json(stream.config) != to_json(config)) {
        throw Error(ErrorKind::InvalidArgument, "existing census was run with another config");
      }
      previous = std::move(stream.records);
      for (const auto& r : previous) skip.insert(r.coset);
    }
  }

  std::vector<CensusRecord> records = census(config, skip, o.threads);
  records.insert(records.end(), previous.begin(), previous.end());
  std::stable_sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
    if (a.discriminant != b.discriminant) return a.discriminant < b.discriminant;
    return coset_less(a.coset, b.coset);
  });

  if (o.output.empty()) {
    write_census(out, config, records);
    return;
  }
  std::ostringstream buffer;
  write_census(buffer, config, records);
  const std::string tmp = o.output + ".tmp";
  {
    std::ofstream file(tmp, std::ios::binary | std::ios::trunc);
    if (!file) throw Error(ErrorKind::InvalidArgument, "cannot write '" + o.output + "'");
    file << buffer.str();
  }
  std::filesystem::rename(tmp, o.output);
  out << Json({{"output", o.output},
               {"records", records.size()},
               {"new_records", records.size() - previous.size()}})
             .dump(2)
      << "\n";
}

void cmd_polygonal(const Options& o, std::ostream& out) {
  if (o.scan > 0) {
    const std::uint64_t k = o.universal ? o.universal : 10000;
    Json list = Json::array();
    for (const auto& g : universal_scan(o.m, o.scan, k, o.threads)) list.push_back(to_json(g));
    out << Json({{"m", o.m}, {"max_coeff", o.scan}, {"bound", k}, {"count", list.size()},
                 {"universal", list}})
               .dump(2)
        << "\n";
    return;
  }
  if (o.coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "--coeffs is required");
  const GonalForm g = canonicalize(GonalForm{o.m, parse_coeffs(o.coeffs)});
  Json j = {{"form", to_json(g)}, {"conductor", gonal_conductor(o.m).get_str()}};
  if (!o.represents.empty()) {
    const Integer k = parse_integer(o.represents);
    const bool yes = gonal_represents(g, k);
    j["k"] = k.get_str();
    j["answer"] = yes ? "represented" : "not represented";
  }
  if (o.universal > 0) {
    const auto gap = first_gap(g, o.universal, o.threads);
    j["universal_bound"] = o.universal;
    j["universal"] = !gap.has_value();
    j["first_gap"] = gap ? Json(*gap) : Json(nullptr);
  }
  if (o.regular > 0) j["regularity"] = to_json(is_regular_up_to(g, o.regular, o.threads));
  if (g.coeffs.size() == 3) {
    const GonalCoset gc = to_coset(g);
    j["coset"] = to_json(gc.coset());
    j["map"] = {{"slope", gc.slope.get_str()}, {"offset", gc.offset.get_str()}};
  }
  out << j.dump(2) << "\n";
}

void cmd_identity(const Options& o, std::ostream& out) {
  const IdentityReport report = verify_counting_identity(o.n_max, o.threads);
  Json rows = Json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n}, {"r", r.r}, {"r1", r.r1}, {"r2", r.r2}});
  }
  out << Json({{"n_max", o.n_max},
               {"difference_holds", report.difference_holds},
               {"ratio_holds", report.ratio_holds},
               {"rows", rows}})
             .dump(2)
      << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Exact computations with positive ternary quadratic cosets", "regcoset"};
  app.require_subcommand(1);
  app.add_option("--threads", o.threads, "Worker threads (default REGCOSET_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);

  auto* reduce_cmd = app.add_subcommand("reduce", "Canonical reduced form and invariants");
  reduce_cmd->add_option("--coset", o.coset, "Coset file or inline JSON")->required();

  auto* local_cmd = app.add_subcommand("local", "Jordan splitting and local representation");
  local_cmd->add_option("--coset", o.coset, "Coset file or inline JSON")->required();
  local_cmd->add_option("--p", o.p, "Prime");
  local_cmd->add_option("--value", o.value, "Integer to test (all relevant primes without --p)");

  auto* watson_cmd = app.add_subcommand("watson", "Watson transformation and coset descent");
  watson_cmd->add_option("--coset", o.coset, "Coset file or inline JSON")->required();
  auto* p_opt = watson_cmd->add_option("--p", o.p, "Odd prime");
  auto* chain_opt = watson_cmd->add_flag("--chain", o.chain, "Descend until every prime behaves well");
  watson_cmd->add_flag("--map", o.map_only, "Lattice map only")->needs(p_opt);
  p_opt->excludes(chain_opt);

  auto* regular_cmd = app.add_subcommand("check-regular", "Compare genus and global values up to N");
  regular_cmd->add_option("--coset", o.coset, "Coset file or inline JSON")->required();
  regular_cmd->add_option("--bound", o.bound, "N")->check(CLI::PositiveNumber);

  auto* census_cmd = app.add_subcommand("census", "Regularity census of reduced cosets");
  census_cmd->add_option("--conductor", o.conductor, "Conductor c0");
  census_cmd->add_option("--disc-bound", o.disc_bound, "Discriminant bound D");
  census_cmd->add_option("--bound", o.bound, "N")->check(CLI::PositiveNumber);
  census_cmd->add_option("--coeff-bound", o.coeff_bound, "Diagonal bound H")
      ->check(CLI::NonNegativeNumber);
  census_cmd->add_option("--family", o.family, "all, diagonal or gonal")
      ->check(CLI::IsMember({"all", "diagonal", "gonal"}));
  census_cmd->add_option("--m", o.m, "Polygonal order for the gonal family")
      ->check(CLI::Range(3, 1000));
  census_cmd->add_option("--output", o.output, "JSONL output file (stdout otherwise)");
  census_cmd->add_flag("--resume", o.resume, "Keep records already in --output");

  auto* gonal_cmd = app.add_subcommand("polygonal", "m-gonal forms");
  gonal_cmd->add_option("--m", o.m, "Polygonal order")->check(CLI::Range(3, 1000000));
  gonal_cmd->add_option("--coeffs", o.coeffs, "Comma separated coefficients");
  gonal_cmd->add_option("--represents", o.represents, "k to test");
  gonal_cmd->add_option("--universal", o.universal, "Check every k <= K")
      ->check(CLI::PositiveNumber);
  gonal_cmd->add_option("--regular", o.regular, "Regularity for k <= N")
      ->check(CLI::PositiveNumber);
  gonal_cmd->add_option("--scan", o.scan, "List universal primitive ternary forms, a <= b <= c <= H")
      ->check(CLI::PositiveNumber);

  auto* identity_cmd = app.add_subcommand("verify-identity", "Count representations of 8n + 5");
  identity_cmd->add_option("--n-max", o.n_max, "Largest n");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << app.help();
    return 2;
  }

  try {
    if (o.threads > 0) set_default_threads(o.threads);
    if (*reduce_cmd) cmd_reduce(o, out);
    if (*local_cmd) cmd_local(o, out);
    if (*watson_cmd) {
      if (!o.chain && o.p == 0) throw Error(ErrorKind::InvalidArgument, "--p or --chain is required");
      cmd_watson(o, out);
    }
    if (*regular_cmd) cmd_check_regular(o, out);
    if (*census_cmd) cmd_census(o, out);
    if (*gonal_cmd) cmd_polygonal(o, out);
    if (*identity_cmd) cmd_identity(o, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::InternalAssertion ? 1 : 2;
  } catch (const std::exception& e) {
    err << "error: InternalAssertion: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace regcoset::cli
