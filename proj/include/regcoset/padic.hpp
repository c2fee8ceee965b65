#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "regcoset/coset.hpp"

namespace regcoset {

struct JordanComponent {
  int scale = 0;  // ord_p of the scale ideal
  int rank = 0;
  std::vector<std::vector<Rational>> gram;
};

/// transform * gram * transform^t is block diagonal with the components in
/// order of increasing scale. Entries are p-integral rationals.
struct JordanSplitting {
  std::uint64_t p = 0;
  std::vector<JordanComponent> components;
  Mat3 transform;
  Mat3 diagonalized;
};

JordanSplitting jordan_decompose(const Mat3& gram, std::uint64_t p);
inline JordanSplitting jordan_decompose(const Coset& c, std::uint64_t p) {
  return jordan_decompose(c.gram, p);
}

/// The scale-0 Jordan component has rank at least 2.
bool behaves_well(const Coset& c, std::uint64_t p);

/// Decides representation of p-adic integers by L_p + v.
///
/// With H = D f an integer polynomial and A = D a, residue classes x mod p^j
/// are refined while the gradient of H vanishes mod p^j. A class whose
/// gradient has valuation t < j contains a root of H = A exactly when
/// A = H(x) mod p^(j+t), so each such class contributes one p-adic ball to
/// the value set. Roots whose gradient has valuation t satisfy
/// ord(A) >= 2t - ord(2 det M), M the Hessian, so refining to depth J
/// settles every A with ord(A) < 2J - ord(2 det M).
class LocalSolver {
 public:
  LocalSolver(const Coset& c, std::uint64_t p);

  std::uint64_t prime() const { return p_; }

  /// a is an integer; negative integers are answered too.
  bool represents(const Integer& a);

  /// True when every element of r + p^k Z_p is represented.
  bool represents_coset(const Integer& r, int k);

  /// Number of balls and depth reached, for diagnostics.
  std::size_t ball_count() const;
  int depth() const { return depth_; }

 private:
  void deepen();
  void ensure_valuation(int nu);
  bool in_balls(const Integer& value) const;
  bool ball_covered(const Integer& rho, int m);
  bool nonzero_ball_covered(const Integer& rho, int m);
  bool split_covered(const Integer& rho, int m, int limit);
  bool diagonal_represents(const Integer& a) const;

  std::uint64_t p_;
  IntegerPolynomial poly_;
  Integer hessian_[3][3];
  bool shift_integral_ = true;
  int delta_ = 0;
  int depth_ = 0;
  int max_exponent_ = 0;
  std::vector<IVec3> singular_;
  std::map<int, std::set<Integer>> balls_;
  std::vector<Integer> powers_;
  // Odd p with a p-integral coset: unit residues of the diagonal Jordan
  // entries, keyed by scale.
  bool diagonal_ = false;
  std::map<int, std::vector<Integer>> levels_;

  const Integer& power(int e);
};

bool local_represents(const Coset& c, std::uint64_t p, const Integer& a);

struct LocalClass {
  std::uint64_t p = 0;
  Integer residue;  // r_p, reduced mod p^exponent
  int exponent = 0; // k_p
};

/// Least k, then least r in [0, p^k), with r + p^k Z_p represented by L_p + v.
LocalClass local_class(const Coset& c, std::uint64_t p);

/// Upper bound on k_p for a primitive coset: 1 + ord_p(n0) + 2[p = 2].
int local_class_bound(const Coset& c, std::uint64_t p);

struct ProgressionData {
  Integer a;
  Integer r;
};

ProgressionData progression_data(const Coset& c);

/// Primes outside this list are unimodular and coprime to the conductor,
/// where every p-adic integer is represented.
std::vector<std::uint64_t> relevant_primes(const Coset& c);

}  // namespace regcoset
