#pragma once

#include <vector>

#include "regcoset/linalg.hpp"

namespace regcoset {

/// f(x) = sum gram[i][j] x_i x_j + sum linear[i] x_i + constant, any dimension.
struct QuadPolynomial {
  std::vector<std::vector<Rational>> gram;
  std::vector<Rational> linear;
  Rational constant;

  std::size_t dimension() const { return linear.size(); }
  Rational evaluate(const std::vector<Integer>& x) const;
  /// True when f takes integer values on all of Z^n.
  bool is_integral() const;
  bool operator==(const QuadPolynomial&) const = default;
};

/// The coset L + v: Gram matrix of a basis of L and the coordinates of v.
struct Coset {
  Mat3 gram;
  Vec3 shift;

  /// Q(x + v) for an integer coordinate vector x.
  Rational value(const Vec3& x) const;
  Rational value(const Point& x) const;
  bool operator==(const Coset&) const = default;
};

struct NormIdeals {
  Rational n_f;   // generator of the norm ideal of Q on L
  Rational b_f;   // generator of {2B(v, x)}
  Rational n0_f;  // generator of the ideal of values of f - f(0)
};

QuadPolynomial coset_to_polynomial(const Coset& c);

/// Inverse of coset_to_polynomial; the polynomial must be ternary.
Coset polynomial_to_coset(const QuadPolynomial& f);

Integer conductor(const Coset& c);
Rational discriminant(const Coset& c);
NormIdeals norm_ideals(const Coset& c);

/// Generator of the ideal of values f(Z^3), i.e. gcd(f(0), n0_f).
Rational value_ideal(const Coset& c);

bool is_primitive(const Coset& c);

/// True when every value Q(x + v), x integral, is an integer.
bool is_integral(const Coset& c);

/// g(x) = f(xT + u): gram' = T G T^t, shift' = (u + v) T^{-1}.
Coset transform(const Coset& c, const IMat3& t, const IVec3& u);

/// Smallest positive D with D * f having integer coefficients.
Integer coefficient_denominator(const Coset& c);

/// D * f as an integer polynomial: quad[i][i] multiplies x_i^2, quad[i][j]
/// (i < j) multiplies x_i x_j.
struct IntegerPolynomial {
  Integer scale;
  Integer quad[3][3];
  Integer lin[3];
  Integer constant;
};

IntegerPolynomial scaled_polynomial(const Coset& c);

Coset diagonal_coset(const Rational& a, const Rational& b, const Rational& c,
                     const Vec3& shift = {0, 0, 0});

}  // namespace regcoset
