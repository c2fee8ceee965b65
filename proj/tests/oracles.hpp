#pragma once

// Reference implementations used only by tests. They share no code with the
// library beyond the Coset type and rational arithmetic.

#include <cmath>
#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "regcoset/coset.hpp"

namespace oracle {

using regcoset::Coset;
using regcoset::Integer;
using regcoset::Mat3;
using regcoset::Rational;
using regcoset::Vec3;

inline Rational eval(const Coset& c, const std::int64_t x[3]) {
  Rational y[3];
  for (int i = 0; i < 3; ++i) y[i] = Rational(Integer(static_cast<long>(x[i]))) + c.shift[i];
  Rational s = 0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) s += c.gram[i][j] * y[i] * y[j];
  }
  return s;
}

// Cofactor inverse of a symmetric 3x3 matrix.
inline Mat3 inverse(const Mat3& g) {
  Mat3 adj;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      adj[i][j] = g[i1][j1] * g[i2][j2] - g[i1][j2] * g[i2][j1];
    }
  }
  const Rational d = g[0][0] * adj[0][0] + g[0][1] * adj[1][0] + g[0][2] * adj[2][0];
  for (auto& row : adj) {
    for (Rational& x : row) x /= d;
  }
  return adj;
}

// counts[a] = #{x in Z^3 : Q(x + v) = a}, a <= bound, by scanning the box
// |x_i + v_i| <= sqrt(bound * (G^-1)_ii).
inline std::vector<std::uint64_t> brute_counts(const Coset& c, std::uint64_t bound) {
  const Mat3 inv = inverse(c.gram);
  std::int64_t lo[3], hi[3];
  for (int i = 0; i < 3; ++i) {
    const double r = std::sqrt(static_cast<double>(bound) * inv[i][i].get_d()) + 1.0;
    const double v = c.shift[i].get_d();
    lo[i] = static_cast<std::int64_t>(std::floor(-v - r));
    hi[i] = static_cast<std::int64_t>(std::ceil(-v + r));
  }
  std::vector<std::uint64_t> counts(bound + 1, 0);
  std::int64_t x[3];
  for (x[0] = lo[0]; x[0] <= hi[0]; ++x[0]) {
    for (x[1] = lo[1]; x[1] <= hi[1]; ++x[1]) {
      for (x[2] = lo[2]; x[2] <= hi[2]; ++x[2]) {
        const Rational q = eval(c, x);
        if (q.get_den() != 1 || q > Rational(Integer(static_cast<unsigned long>(bound)))) continue;
        ++counts[q.get_num().get_ui()];
      }
    }
  }
  return counts;
}

inline int ord(const Integer& n, unsigned long p) {
  if (n == 0) return 1 << 20;
  Integer m = n;
  int k = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++k;
  }
  return k;
}

// D * Q(x + v) as an integer polynomial in x.
struct IntPoly {
  Integer d;
  Integer quad[3][3];  // full symmetric coefficient matrix, H = x^t quad x + ...
  Integer lin[3];
  Integer con;

  explicit IntPoly(const Coset& c) {
    Rational lq[3];
    for (int i = 0; i < 3; ++i) {
      lq[i] = 0;
      for (int j = 0; j < 3; ++j) lq[i] += 2 * c.gram[i][j] * c.shift[j];
    }
    Rational k = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) k += c.gram[i][j] * c.shift[i] * c.shift[j];
    }
    d = 1;
    auto absorb = [&](const Rational& q) {
      mpz_lcm(d.get_mpz_t(), d.get_mpz_t(), q.get_den_mpz_t());
    };
    for (int i = 0; i < 3; ++i) {
      absorb(lq[i]);
      for (int j = 0; j < 3; ++j) absorb(c.gram[i][j]);
    }
    absorb(k);
    for (int i = 0; i < 3; ++i) {
      lin[i] = Rational(lq[i] * d).get_num();
      for (int j = 0; j < 3; ++j) quad[i][j] = Rational(c.gram[i][j] * d).get_num();
    }
    con = Rational(k * d).get_num();
  }

  Integer value(const Integer x[3]) const {
    Integer s = con;
    for (int i = 0; i < 3; ++i) {
      s += lin[i] * x[i];
      for (int j = 0; j < 3; ++j) s += quad[i][j] * x[i] * x[j];
    }
    return s;
  }

  Integer grad(const Integer x[3], int i) const {
    Integer s = lin[i];
    for (int j = 0; j < 3; ++j) s += 2 * quad[i][j] * x[j];
    return s;
  }
};

// Solutions of H(x) = D a are searched class by class: x mod p^j is kept
// while H(x) = D a mod p^j, and a class is accepted once a representative
// satisfies Hensel's condition ord(H(x) - D a) > 2 ord(grad H(x)).
// Returns nullopt when max_depth is reached without a decision.
inline std::optional<bool> local_represents(const Coset& c, std::uint64_t p, const Integer& a,
                                            int max_depth = 24) {
  const IntPoly h(c);
  const Integer target = h.d * a;
  const unsigned long pu = static_cast<unsigned long>(p);
  if (a == 0) {
    bool integral = true;
    for (const Rational& x : c.shift) integral = integral && !mpz_divisible_ui_p(x.get_den_mpz_t(), pu);
    if (integral) return true;  // x = -v
  }
  struct Node {
    Integer x[3];
    int j;
  };
  std::vector<Node> stack;
  stack.push_back({{0, 0, 0}, 0});
  bool capped = false;
  while (!stack.empty()) {
    Node node = stack.back();
    stack.pop_back();
    Integer step;
    mpz_ui_pow_ui(step.get_mpz_t(), pu, static_cast<unsigned long>(node.j));
    const Integer next = step * pu;
    for (unsigned long d0 = 0; d0 < pu; ++d0) {
      for (unsigned long d1 = 0; d1 < pu; ++d1) {
        for (unsigned long d2 = 0; d2 < pu; ++d2) {
          Node child{{node.x[0] + step * d0, node.x[1] + step * d1, node.x[2] + step * d2},
                     node.j + 1};
          const Integer diff = h.value(child.x) - target;
          if (!mpz_divisible_p(diff.get_mpz_t(), next.get_mpz_t())) continue;
          int t = 1 << 20;
          for (int i = 0; i < 3; ++i) t = std::min(t, ord(h.grad(child.x, i), pu));
          if (ord(diff, pu) > 2 * t) return true;
          if (child.j >= max_depth) {
            capped = true;
            continue;
          }
          stack.push_back(std::move(child));
        }
      }
    }
  }
  if (capped) return std::nullopt;
  return false;
}

// Random cosets for property tests.
class Generator {
 public:
  explicit Generator(std::uint64_t seed) : rng_(seed) {}

  std::int64_t uniform(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }

  // Positive definite Gram with B_ii in [1, diag] and 2 B_ij in [-B_ii, B_ii].
  Mat3 gram(std::int64_t diag, bool integral_offdiag = false) {
    for (;;) {
      Mat3 g;
      std::int64_t d[3];
      for (int i = 0; i < 3; ++i) d[i] = uniform(1, diag);
      for (int i = 0; i < 3; ++i) {
        g[i][i] = Rational(d[i]);
        for (int j = i + 1; j < 3; ++j) {
          const std::int64_t r = std::min(d[i], d[j]);
          Rational e = integral_offdiag ? Rational(uniform(-r / 2, r / 2))
                                        : Rational(uniform(-r, r), 2);
          e.canonicalize();
          g[i][j] = g[j][i] = e;
        }
      }
      if (positive(g)) return g;
    }
  }

  Vec3 shift(const std::vector<std::int64_t>& denominators) {
    const std::int64_t den =
        denominators[static_cast<std::size_t>(uniform(0, static_cast<std::int64_t>(denominators.size()) - 1))];
    Vec3 v;
    for (Rational& x : v) {
      x = Rational(uniform(0, den - 1), den);
      x.canonicalize();
    }
    return v;
  }

  std::mt19937_64& engine() { return rng_; }

  static bool positive(const Mat3& g) {
    const Rational m1 = g[0][0];
    const Rational m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
    const Rational m3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
                        g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                        g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
    return m1 > 0 && m2 > 0 && m3 > 0;
  }

 private:
  std::mt19937_64 rng_;
};

// Random unimodular matrix as a product of elementary moves.
inline regcoset::IMat3 unimodular(Generator& gen, int moves = 6) {
  regcoset::IMat3 t;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) t[i][j] = i == j ? 1 : 0;
  }
  for (int k = 0; k < moves; ++k) {
    const int i = static_cast<int>(gen.uniform(0, 2));
    int j = static_cast<int>(gen.uniform(0, 1));
    if (j >= i) ++j;
    const std::int64_t s = gen.uniform(-2, 2);
    for (int c = 0; c < 3; ++c) t[i][c] += s * t[j][c];
    if (gen.uniform(0, 3) == 0) std::swap(t[i], t[j]);
    if (gen.uniform(0, 3) == 0) {
      for (Integer& x : t[i]) x = -x;
    }
  }
  return t;
}

}  // namespace oracle
