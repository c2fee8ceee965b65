#include <gtest/gtest.h>

#include "oracles.hpp"
#include "regcoset/error.hpp"
#include "regcoset/linalg.hpp"
#include "regcoset/padic.hpp"
#include "regcoset/reduction.hpp"
#include "regcoset/watson.hpp"

using namespace regcoset;

namespace {

const Rational kHalf(1, 2);

Mat3 gram_of(const IMat3& basis, const Mat3& g) {
  const Mat3 b = to_rational(basis);
  return b * g * transpose(b);
}

// x lies in Lambda_m(L) by direct evaluation of both congruences.
bool in_lambda(const Mat3& g, const Vec3& x, std::uint64_t m) {
  const Rational mm{Integer(static_cast<unsigned long>(m))};
  for (int i = 0; i < 3; ++i) {
    Vec3 e{0, 0, 0};
    e[i] = 1;
    if (!is_integral(Vec3{2 * bilinear(g, x, e) / mm, 0, 0})) return false;
  }
  return is_integral(Vec3{quadratic(g, x) / mm, 0, 0});
}

bool in_span(const IMat3& basis, const Vec3& x) {
  return is_integral(x * inverse(to_rational(basis)));
}

}  // namespace

TEST(Lambda, Examples) {
  const IMat3 unit = lambda_sublattice(identity3(), 3);
  EXPECT_EQ(abs(det(unit)), 27);
  EXPECT_EQ(gram_of(unit, identity3()), (Mat3{Vec3{9, 0, 0}, Vec3{0, 9, 0}, Vec3{0, 0, 9}}));

  const Mat3 g = diagonal_coset(1, 9, 9).gram;
  const IMat3 b = lambda_sublattice(g, 3);
  EXPECT_EQ(abs(det(b)), 3);
  const Mat3 sub = gram_of(b, g);
  EXPECT_EQ(reduce(Coset{sub, {0, 0, 0}}).coset.gram, diagonal_coset(9, 9, 9).gram);

  EXPECT_EQ(lambda_sublattice(g, 1), identity_int3());
  try {
    lambda_sublattice(diagonal_coset(Rational(1, 3), 1, 1).gram, 3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotIntegralLattice);
  }
}

TEST(Lambda, MatchesDirectFilter) {
  oracle::Generator gen(401);
  for (int k = 0; k < 40; ++k) {
    const Mat3 g = gen.gram(12, k % 2 == 0);
    for (std::uint64_t m : {2, 3, 4, 5, 6}) {
      const IMat3 b = lambda_sublattice(g, m);
      const std::int64_t mm = static_cast<std::int64_t>(m);
      std::int64_t members = 0;
      for (std::int64_t a = 0; a < mm; ++a) {
        for (std::int64_t c = 0; c < mm; ++c) {
          for (std::int64_t d = 0; d < mm; ++d) {
            const Vec3 x{a, c, d};
            const bool expected = in_lambda(g, x, m);
            EXPECT_EQ(in_span(b, x), expected);
            if (expected) ++members;
          }
        }
      }
      EXPECT_EQ(abs(det(b)) * members, mm * mm * mm);
      // Norm of Lambda_m lies in mZ.
      const Rational n = lattice_norm(gram_of(b, g)) / Rational(Integer(static_cast<unsigned long>(m)));
      EXPECT_EQ(n.get_den(), 1);
    }
  }
}

TEST(WatsonMap, Examples) {
  const WatsonMap a = watson_map(diagonal_coset(1, 9, 9).gram, 3);
  EXPECT_EQ(a.scale, 2);
  EXPECT_EQ(a.drop, 4);
  EXPECT_EQ(reduce(Coset{a.gram, {0, 0, 0}}).coset.gram, identity3());

  const WatsonMap b = watson_map(diagonal_coset(1, 1, 9).gram, 3);
  EXPECT_EQ(b.scale, 2);
  EXPECT_EQ(b.drop, 2);
  EXPECT_EQ(det(b.gram), 1);

  const WatsonMap fixed = watson_map(identity3(), 3);
  EXPECT_EQ(fixed.scale, 2);
  EXPECT_EQ(fixed.drop, 0);
  EXPECT_EQ(fixed.gram, identity3());
}

TEST(WatsonMap, Errors) {
  try {
    watson_map(identity3(), 2);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::EvenPrime);
  }
  try {
    watson_map(diagonal_coset(3, 3, 9).gram, 3);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::PrimeDividesNorm);
  }
}

TEST(WatsonMap, DiscriminantDropAndNorm) {
  oracle::Generator gen(402);
  int checked = 0;
  for (int k = 0; k < 400; ++k) {
    const Mat3 g = gen.gram(30, true);
    for (std::uint64_t p : {3, 5, 7}) {
      const Rational d = det(g);
      const unsigned long pu = static_cast<unsigned long>(p);
      if (ord_p(d, pu) < 2 || ord_p(lattice_norm(g), pu) > 0) continue;
      const WatsonMap w = watson_map(g, p);
      EXPECT_TRUE(w.drop == 1 || w.drop == 2 || w.drop == 4) << w.drop;
      EXPECT_EQ(det(w.gram) * ipow(Integer(pu), static_cast<unsigned long>(w.drop)), d);
      EXPECT_EQ(ord_p(lattice_norm(w.gram), pu), ord_p(lattice_norm(g), pu));
      ++checked;
    }
  }
  EXPECT_GE(checked, 50);
}

TEST(Descent, LatticeOnly) {
  const WatsonStep s = coset_descend(diagonal_coset(1, 9, 9), 3);
  EXPECT_EQ(s.output_reduced, diagonal_coset(1, 1, 1));
  EXPECT_EQ(s.j, 1u);
  EXPECT_EQ(s.t, 4);
}

TEST(Descent, ConductorTwo) {
  const Coset c = diagonal_coset(4, 36, 36, Vec3{kHalf, kHalf, kHalf});
  ASSERT_TRUE(is_primitive(c));
  ASSERT_FALSE(behaves_well(c, 3));
  const WatsonStep s = coset_descend(c, 3);
  EXPECT_EQ(s.j, 1u);
  EXPECT_EQ(conductor(s.output), 2);
  EXPECT_EQ(conductor(s.output_reduced), 2);
  EXPECT_TRUE(is_primitive(s.output_reduced));
  EXPECT_EQ(discriminant(s.output) * ipow(Integer(3), static_cast<unsigned long>(s.t)), discriminant(c));
}

TEST(Descent, OrderOfPModConductor) {
  EXPECT_EQ(multiplicative_order(3, 4), 2u);
  const Coset c = diagonal_coset(16, 16 * 9, 16 * 9, Vec3{Rational(1, 4), Rational(1, 4), Rational(1, 4)});
  ASSERT_TRUE(is_primitive(c));
  ASSERT_FALSE(behaves_well(c, 3));
  const WatsonStep s = coset_descend(c, 3);
  EXPECT_EQ(s.j, 2u);
  EXPECT_EQ(conductor(s.output), 4);
}

TEST(Descent, Errors) {
  auto kind_of = [](auto&& f) {
    try {
      f();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InternalAssertion;
  };
  EXPECT_EQ(kind_of([] { coset_descend(diagonal_coset(1, 9, 9), 2); }), ErrorKind::EvenPrime);
  EXPECT_EQ(kind_of([] { coset_descend(diagonal_coset(1, 1, 1), 3); }), ErrorKind::BehavesWellAtP);
  EXPECT_EQ(kind_of([] { coset_descend(diagonal_coset(2, 18, 18), 3); }), ErrorKind::NotPrimitive);
  const Coset third = diagonal_coset(9, 81, 81, Vec3{Rational(1, 3), 0, 0});
  EXPECT_EQ(kind_of([&] { coset_descend(third, 3); }), ErrorKind::PrimeDividesConductor);
}

TEST(Descent, Chains) {
  EXPECT_TRUE(descend_chain(diagonal_coset(1, 1, 1)).steps.empty());
  const DescentChain one = descend_chain(diagonal_coset(1, 9, 9));
  ASSERT_EQ(one.steps.size(), 1u);
  EXPECT_EQ(one.result, diagonal_coset(1, 1, 1));

  const DescentChain deep = descend_chain(diagonal_coset(1, 9, 81));
  ASSERT_FALSE(deep.steps.empty());
  Rational d = discriminant(diagonal_coset(1, 9, 81));
  for (const WatsonStep& s : deep.steps) {
    EXPECT_EQ(s.p, 3u);
    EXPECT_TRUE(s.t == 1 || s.t == 2 || s.t == 4);
    const Rational next = discriminant(s.output);
    EXPECT_EQ(next * ipow(Integer(3), static_cast<unsigned long>(s.t)), d);
    d = next;
  }
  EXPECT_TRUE(behaves_well(deep.result, 3));
  EXPECT_EQ(Rational(discriminant(diagonal_coset(1, 9, 81)) / discriminant(deep.result)).get_den(), 1);
}

TEST(Descent, PreservesConductorAndPrimitivity) {
  oracle::Generator gen(403);
  int checked = 0;
  for (int k = 0; k < 600 && checked < 60; ++k) {
    Mat3 g = gen.gram(6, true);
    const std::uint64_t p = k % 2 ? 3 : 5;
    const Rational pp{Integer(static_cast<unsigned long>(p * p))};
    // <a> + p^2 M.
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        if (i > 0 && j > 0) g[i][j] *= pp;
        else if (i != j) g[i][j] = 0;
      }
    }
    const Coset c{g, gen.shift({1, 2, 4})};
    if (!is_primitive(c) || behaves_well(c, p)) continue;
    ++checked;
    const WatsonStep s = coset_descend(c, p);
    EXPECT_EQ(conductor(s.output_reduced), conductor(c));
    EXPECT_TRUE(is_primitive(s.output_reduced));
    EXPECT_EQ(s.output_reduced, reduce(s.output).coset);
  }
  EXPECT_GE(checked, 30);
}
