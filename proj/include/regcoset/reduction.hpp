#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "regcoset/coset.hpp"
#include "regcoset/kernel.hpp"

namespace regcoset {

struct ReducedCoset {
  Coset coset;
  Vec3 minima;
  // coset == transform(input, t, u)
  IMat3 t;
  IVec3 u;
};

/// Ternary Minkowski conditions: ordered diagonal, and
/// Q(e_k + sum_{i<k} s_i e_i) >= Q(e_k) for all s_i in {-1, 0, 1}.
bool is_minkowski_reduced(const Mat3& gram);

/// Unimodular T with T G T^t Minkowski reduced.
IMat3 minkowski_basis(const Mat3& gram);

/// Canonical reduced representative of the class of c.
///
/// The Gram matrix is the lexicographically smallest among all reduced
/// Gram matrices of L. Among the bases realizing it, the shift class mod 1
/// is taken lexicographically smallest in [0,1)^3; the returned shift is the
/// translate of that class minimizing Q(x + v), ties going to the
/// lexicographically largest translate.
ReducedCoset reduce(const Coset& c);

/// True when the Gram is Minkowski reduced and f attains its minimum at 0.
bool is_reduced(const Coset& c);

Rational min_value(const Coset& c);

/// Integers a <= bound represented by c, each with its canonical witness.
std::vector<std::pair<std::uint64_t, Point>> enumerate_represented(const Coset& c,
                                                                   std::uint64_t bound);

std::optional<Point> represents(const Coset& c, const Integer& a);

/// True when a < min(3/2 mu3, 7/2 mu2, 31 mu1), so every representation of a
/// by a reduced coset lies in the box |x1| <= 30, |x2| <= 21, |x3| <= 8.
bool search_box_filter(const Vec3& minima, const Rational& a);

inline constexpr std::int64_t kBox[3] = {30, 21, 8};

}  // namespace regcoset
