#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "regcoset/coset.hpp"
#include "regcoset/regularity.hpp"

namespace regcoset {

/// Delta_m(a_1, ..., a_n) = sum a_i ((m - 2) x_i^2 - (m - 4) x_i) / 2.
struct GonalForm {
  int m = 3;
  std::vector<Integer> coeffs;

  bool operator==(const GonalForm&) const = default;
};

Integer gonal_number(int m, const Integer& x);

/// 2(m - 2) for odd m, m - 2 when ord_2(m) = 1, (m - 2)/2 when 4 | m.
Integer gonal_conductor(int m);

GonalForm canonicalize(GonalForm g);

bool is_primitive(const GonalForm& g);

/// Gram <4(m-2)^2 a_i>, shift -(m-4)/(2(m-2)) (1, ..., 1); k is represented
/// by the form iff slope * k + offset is represented by the coset.
struct GonalCoset {
  QuadPolynomial polynomial;  // n-ary complete polynomial
  Integer slope;              // 8(m - 2)
  Integer offset;             // (m - 4)^2 (a_1 + ... + a_n)

  Integer map(const Integer& k) const { return slope * k + offset; }
  std::optional<Integer> unmap(const Integer& value) const;

  /// The ternary coset; InvalidArgument when n != 3.
  Coset coset() const;
};

GonalCoset to_coset(const GonalForm& g);

/// The coset of a ternary form divided by the generator of its value ideal,
/// together with that generator.
std::pair<Coset, Integer> primitive_coset(const GonalForm& g);

bool gonal_represents(const GonalForm& g, const Integer& k);

/// Every 0 <= k <= bound is represented.
bool is_universal_up_to(const GonalForm& g, std::uint64_t bound, int threads = 0);

/// Smallest k <= bound not represented, if any.
std::optional<std::uint64_t> first_gap(const GonalForm& g, std::uint64_t bound, int threads = 0);

/// Regularity of the primitive coset of a ternary form for values coming
/// from k <= bound.
RegularityVerdict is_regular_up_to(const GonalForm& g, std::uint64_t bound, int threads = 0);

/// Primitive ternary forms Delta_m(a, b, c), a <= b <= c <= max_coeff,
/// universal up to bound, in lexicographic order.
std::vector<GonalForm> universal_scan(int m, std::int64_t max_coeff, std::uint64_t bound,
                                      int threads = 0);

}  // namespace regcoset
