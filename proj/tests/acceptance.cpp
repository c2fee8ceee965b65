#include <gtest/gtest.h>

#include <array>
#include <bitset>
#include <chrono>
#include <map>
#include <numeric>
#include <sstream>

#include "oracles.hpp"
#include "regcoset/cli.hpp"
#include "regcoset/error.hpp"
#include "regcoset/linalg.hpp"
#include "regcoset/padic.hpp"
#include "regcoset/polygonal.hpp"
#include "regcoset/reduction.hpp"
#include "regcoset/regularity.hpp"
#include "regcoset/serialize.hpp"
#include "regcoset/watson.hpp"

using namespace regcoset;

namespace {

const Rational kHalf(1, 2);

Coset triangular_113() { return diagonal_coset(4, 4, 12, Vec3{kHalf, kHalf, kHalf}); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "regcoset");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  EXPECT_EQ(cli::run(static_cast<int>(argv.size()), argv.data(), out, err), 0) << err.str();
  return out.str();
}

// Random cosets shared by criteria 5 and 6; all primitive.
std::vector<Coset> local_corpus() {
  oracle::Generator gen(8101);
  std::vector<Coset> out;
  while (out.size() < 50) {
    const Coset c{gen.gram(9), gen.shift({1, 2, 3, 4, 5, 6, 7})};
    if (is_primitive(c)) out.push_back(c);
  }
  return out;
}

// gcd of f(x) - f(0) over a box: the ideal generated by the non-constant part.
Rational oracle_n0(const Coset& c) {
  const std::int64_t zero[3] = {0, 0, 0};
  const Rational f0 = oracle::eval(c, zero);
  Rational g = 0;
  std::int64_t x[3];
  for (x[0] = -2; x[0] <= 2; ++x[0]) {
    for (x[1] = -2; x[1] <= 2; ++x[1]) {
      for (x[2] = -2; x[2] <= 2; ++x[2]) g = rational_gcd(g, oracle::eval(c, x) - f0);
    }
  }
  return g;
}

std::int64_t residue(const Rational& q, std::int64_t p) {
  return mod_rational(q, Integer(static_cast<long>(p))).get_si();
}

bool in_span(const IMat3& basis, const Vec3& x) {
  return is_integral(x * inverse(to_rational(basis)));
}

}  // namespace

TEST(Acceptance, Criterion1_TriangularForm113) {
  const auto t0 = std::chrono::steady_clock::now();
  const GonalForm g{3, {Integer(1), Integer(1), Integer(3)}};
  EXPECT_FALSE(gonal_represents(g, Integer(8)));
  const Json answer = Json::parse(run_cli({"polygonal", "--m", "3", "--coeffs", "1,1,3", "--represents", "8"}));
  EXPECT_EQ(answer["answer"], "not represented");

  const RegularityVerdict v = check_regular(triangular_113(), 10000, 1);
  EXPECT_EQ(v.status, RegularityStatus::RegularUpToN);
  const Json cli = Json::parse(run_cli({"--threads", "1", "check-regular", "--coset",
                                        dump_line(to_json(triangular_113())), "--bound", "10000"}));
  EXPECT_EQ(cli["status"], "regular_up_to_N");
  const double elapsed = seconds_since(t0);
  EXPECT_LT(elapsed, 30.0);
  std::cout << "criterion 1: " << elapsed << " s\n";
}

TEST(Acceptance, Criterion2_CountingIdentity) {
  const auto t0 = std::chrono::steady_clock::now();
  const IdentityReport r = verify_counting_identity(200);
  const double elapsed = seconds_since(t0);
  EXPECT_TRUE(r.difference_holds);
  EXPECT_TRUE(r.ratio_holds);
  ASSERT_EQ(r.rows.size(), 201u);
  const std::uint64_t top = 8 * 200 + 5;
  const auto tri = oracle::brute_counts(triangular_113(), top);
  const auto r1 = oracle::brute_counts(diagonal_coset(1, 1, 3), top);
  const auto r2 = oracle::brute_counts(diagonal_coset(1, 1, 12), top);
  for (const IdentityRow& row : r.rows) {
    const std::uint64_t m = 8 * row.n + 5;
    EXPECT_EQ(row.r, tri[m]);
    EXPECT_EQ(row.r1, r1[m]);
    EXPECT_EQ(row.r2, r2[m]);
    EXPECT_EQ(row.r, row.r1 - row.r2);
    EXPECT_EQ(row.r1, 2 * row.r2);
  }
  EXPECT_LT(elapsed, 60.0);
}

TEST(Acceptance, Criterion3_UniversalTriangularForms) {
  constexpr std::size_t K = 10000;
  const auto found = universal_scan(3, 20, K);
  const std::vector<std::array<long, 3>> frozen{{1, 1, 1}, {1, 1, 2}, {1, 1, 4}, {1, 1, 5},
                                                {1, 2, 2}, {1, 2, 3}, {1, 2, 4}};
  std::vector<GonalForm> expected;
  for (const auto& t : frozen) expected.push_back(GonalForm{3, {Integer(t[0]), Integer(t[1]), Integer(t[2])}});
  EXPECT_EQ(found.size(), 7u);
  EXPECT_EQ(found, expected);

  // Independent recount with bitsets over triangular numbers.
  std::vector<std::size_t> tri;
  for (std::size_t x = 0; x * (x + 1) / 2 <= K; ++x) tri.push_back(x * (x + 1) / 2);
  std::vector<std::array<long, 3>> universal;
  for (long a = 1; a <= 20; ++a) {
    for (long b = a; b <= 20; ++b) {
      for (long c = b; c <= 20; ++c) {
        if (std::gcd(std::gcd(a, b), c) != 1) continue;
        std::bitset<K + 1> two, three;
        for (std::size_t u : tri) {
          for (std::size_t v : tri) {
            const std::size_t s = a * u + b * v;
            if (s <= K) two.set(s);
          }
        }
        for (std::size_t w : tri) {
          if (c * w > K) break;
          three |= two << (c * w);
        }
        if (three.all()) universal.push_back({a, b, c});
      }
    }
  }
  EXPECT_EQ(universal, frozen);
}

TEST(Acceptance, Criterion4_WatsonProperties) {
  oracle::Generator gen(8401);
  int lattices = 0, anisotropic = 0;
  std::map<int, int> drops;
  for (int k = 0; k < 200000 && lattices < 240; ++k) {
    Mat3 g;
    for (int i = 0; i < 3; ++i) {
      g[i][i] = Rational(gen.uniform(1, 30));
      for (int j = i + 1; j < 3; ++j) g[i][j] = g[j][i] = Rational(gen.uniform(-30, 30));
    }
    if (!oracle::Generator::positive(g)) continue;
    const Rational d = det(g);
    bool used = false;
    for (std::int64_t p : {3, 5, 7}) {
      const unsigned long pu = static_cast<unsigned long>(p);
      if (ord_p(d, pu) < 2 || ord_p(lattice_norm(g), pu) > 0) continue;
      used = true;
      const WatsonMap w = watson_map(g, static_cast<std::uint64_t>(p));
      ++drops[w.drop];
      EXPECT_TRUE(w.drop == 1 || w.drop == 2 || w.drop == 4) << w.drop;
      EXPECT_EQ(det(w.gram) * ipow(Integer(pu), static_cast<unsigned long>(w.drop)), d);

      // p L inside Lambda_p(L).
      for (int i = 0; i < 3; ++i) {
        Vec3 e{0, 0, 0};
        e[i] = Rational(p);
        EXPECT_TRUE(in_span(w.basis, e));
      }
      // Norm of Lambda_p(L) inside pZ.
      const Mat3 b = to_rational(w.basis);
      const Mat3 sub = b * g * transpose(b);
      EXPECT_EQ(Rational(lattice_norm(sub) / Rational(p)).get_den(), 1);

      // L_p = M + N with M unimodular anisotropic: Lambda_p = {Q = 0 mod p}.
      const JordanSplitting s = jordan_decompose(g, static_cast<std::uint64_t>(p));
      const auto& m = s.components.front();
      ASSERT_EQ(m.scale, 0);
      bool iso = false;
      for (std::int64_t x0 = 0; x0 < p && !iso; ++x0) {
        for (std::int64_t x1 = 0; x1 < p && !iso; ++x1) {
          if (x0 == 0 && x1 == 0) continue;
          if (m.rank == 1 && x1 != 0) continue;
          Rational q = m.gram[0][0] * x0 * x0;
          if (m.rank == 2) q += 2 * m.gram[0][1] * x0 * x1 + m.gram[1][1] * x1 * x1;
          iso = residue(q, p) == 0;
        }
      }
      if (iso) continue;
      ++anisotropic;
      for (std::int64_t x0 = 0; x0 < p; ++x0) {
        for (std::int64_t x1 = 0; x1 < p; ++x1) {
          for (std::int64_t x2 = 0; x2 < p; ++x2) {
            const Vec3 x{x0, x1, x2};
            EXPECT_EQ(in_span(w.basis, x), residue(quadratic(g, x), p) == 0);
          }
        }
      }
    }
    if (used) ++lattices;
  }
  EXPECT_GE(lattices, 200);
  EXPECT_GT(anisotropic, 0);
  std::cout << "criterion 4: " << lattices << " lattices, " << anisotropic
            << " anisotropic cases, drops";
  for (const auto& [t, n] : drops) std::cout << " t=" << t << ":" << n;
  std::cout << "\n";
}

TEST(Acceptance, Criterion5_LocalOracle) {
  const std::vector<Coset> corpus = local_corpus();
  std::size_t cases = 0;
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Coset& c = corpus[k];
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
      LocalSolver solver(c, p);
      for (int a = 0; a <= 200; ++a) {
        const auto expected = oracle::local_represents(c, p, Integer(a));
        ASSERT_TRUE(expected.has_value()) << k << " p=" << p << " a=" << a;
        ASSERT_EQ(solver.represents(Integer(a)), *expected) << k << " p=" << p << " a=" << a;
        ++cases;
      }
    }
  }
  EXPECT_EQ(cases, 50u * 6u * 201u);
}

TEST(Acceptance, Criterion6_LocalClassBound) {
  const std::vector<Coset> corpus = local_corpus();
  for (std::size_t k = 0; k < corpus.size(); ++k) {
    const Coset& c = corpus[k];
    const Rational n0 = oracle_n0(c);
    for (std::uint64_t p : {2, 3, 5, 7, 11, 13}) {
      const LocalClass lc = local_class(c, p);
      const int bound = 1 + ord_p(n0, static_cast<unsigned long>(p)) + (p == 2 ? 2 : 0);
      EXPECT_LE(lc.exponent, bound) << k << " p=" << p;
      EXPECT_EQ(oracle::local_represents(c, p, lc.residue), std::optional<bool>(true));
    }
  }
}

TEST(Acceptance, Criterion7_Descent) {
  const std::uint64_t n = 5000;
  std::vector<Coset> corpus;
  const std::vector<Vec3> shifts{{0, 0, 0}, {kHalf, kHalf, kHalf}, {kHalf, kHalf, 0}, {kHalf, 0, 0},
                                 {0, kHalf, kHalf}, {Rational(1, 4), Rational(1, 4), Rational(1, 4)}};
  for (std::int64_t p : {3, 5}) {
    for (std::int64_t a = 1; a <= 6; ++a) {
      for (std::int64_t b = 1; b <= 4; ++b) {
        for (std::int64_t c = b; c <= 4; ++c) {
          for (const Vec3& v : shifts) {
            corpus.push_back(diagonal_coset(a, b * p * p, c * p * p, v));
            corpus.push_back(diagonal_coset(a, b, c * p * p, v));
          }
        }
      }
    }
  }
  int regular = 0, tested = 0;
  for (const Coset& c : corpus) {
    if (!is_primitive(c)) continue;
    const Integer cond = conductor(c);
    for (std::uint64_t p : {3, 5}) {
      if (mpz_divisible_ui_p(cond.get_mpz_t(), static_cast<unsigned long>(p))) continue;
      if (behaves_well(c, p)) continue;
      ++tested;
      const WatsonStep step = coset_descend(c, p);
      EXPECT_EQ(conductor(step.output), cond);
      EXPECT_TRUE(is_primitive(step.output));
      EXPECT_EQ(conductor(step.output_reduced), cond);
      EXPECT_TRUE(is_primitive(step.output_reduced));
      if (check_regular(c, n).status != RegularityStatus::RegularUpToN) continue;
      ++regular;
      const RegularityVerdict after = check_regular(step.output_reduced, n / (p * p));
      EXPECT_EQ(after.status, RegularityStatus::RegularUpToN)
          << dump_line(to_json(c)) << " p=" << p << " witness " << after.witness.value_or(0);
    }
  }
  EXPECT_GE(tested, 50);
  EXPECT_GE(regular, 5);
  std::cout << "criterion 7: " << tested << " descents, " << regular << " from regular cosets\n";
}

TEST(Acceptance, Criterion8_ReductionBox) {
  oracle::Generator gen(8801);
  const std::int64_t box[3] = {30, 21, 8};
  std::uint64_t checked = 0;
  for (int k = 0; k < 200; ++k) {
    const Coset raw = transform(Coset{gen.gram(60), gen.shift({1, 2, 3, 4, 5, 7})}, oracle::unimodular(gen, 8),
                                IVec3{Integer(static_cast<long>(gen.uniform(-9, 9))), 0, 0});
    const ReducedCoset r = reduce(raw);
    ASSERT_TRUE(is_reduced(r.coset));
    const IntegerPolynomial f = scaled_polynomial(r.coset);
    __int128 quad[3][3], lin[3];
    for (int i = 0; i < 3; ++i) {
      lin[i] = f.lin[i].get_si();
      for (int j = 0; j < 3; ++j) quad[i][j] = f.quad[i][j].get_si();
    }
    const __int128 con = f.constant.get_si();
    auto value = [&](const std::int64_t a[3]) {
      __int128 s = con;
      for (int i = 0; i < 3; ++i) {
        s += lin[i] * a[i];
        for (int j = i; j < 3; ++j) s += quad[i][j] * a[i] * a[j];
      }
      return s;
    };
    const Vec3& mu = r.minima;
    Rational bound = Rational(3, 2) * mu[2];
    bound = std::min(bound, Rational(Rational(7, 2) * mu[1]));
    bound = std::min(bound, Rational(31 * mu[0]));
    // f(a) >= bound  <=>  D f(a) >= ceil(D bound).
    const __int128 scaled = ceil(bound * f.scale).get_si();
    auto outside = [&](const std::int64_t a[3]) {
      return std::abs(a[0]) > box[0] || std::abs(a[1]) > box[1] || std::abs(a[2]) > box[2];
    };
    auto check = [&](const std::int64_t a[3]) {
      ++checked;
      if (value(a) < scaled) {
        ADD_FAILURE() << "coset " << k << " a = (" << a[0] << ", " << a[1] << ", " << a[2] << ")";
        return false;
      }
      return true;
    };
    std::int64_t a[3];
    bool ok = true;
    for (a[0] = -box[0] - 1; a[0] <= box[0] + 1 && ok; ++a[0]) {
      for (a[1] = -box[1] - 1; a[1] <= box[1] + 1 && ok; ++a[1]) {
        for (a[2] = -box[2] - 1; a[2] <= box[2] + 1 && ok; ++a[2]) {
          if (outside(a)) ok = check(a);
        }
      }
    }
    for (int s = 0; s < 100000 && ok; ++s) {
      const std::int64_t reach = s % 10 == 0 ? 100000 : 200;
      do {
        for (int i = 0; i < 3; ++i) a[i] = gen.uniform(-reach, reach);
      } while (!outside(a));
      ok = check(a);
    }
  }
  EXPECT_EQ(checked, 200u * (63u * 45u * 19u - 61u * 43u * 17u + 100000u));
}
