#include "regcoset/coset.hpp"

#include "regcoset/error.hpp"

namespace regcoset {

Rational QuadPolynomial::evaluate(const std::vector<Integer>& x) const {
  if (x.size() != dimension()) {
    throw Error(ErrorKind::InvalidArgument, "point dimension does not match polynomial");
  }
  Rational out = constant;
  for (std::size_t i = 0; i < x.size(); ++i) {
    out += linear[i] * x[i];
    for (std::size_t j = 0; j < x.size(); ++j) out += gram[i][j] * x[i] * x[j];
  }
  return out;
}

bool QuadPolynomial::is_integral() const {
  const std::size_t n = dimension();
  if (constant.get_den() != 1) return false;
  std::vector<Integer> x(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      x[i] = s;
      if (evaluate(x).get_den() != 1) return false;
      x[i] = 0;
    }
    for (std::size_t j = i + 1; j < n; ++j) {
      x[i] = 1;
      x[j] = 1;
      const bool ok = evaluate(x).get_den() == 1;
      x[i] = 0;
      x[j] = 0;
      if (!ok) return false;
    }
  }
  return true;
}

Rational Coset::value(const Vec3& x) const { return quadratic(gram, x + shift); }

Rational Coset::value(const Point& x) const { return value(to_rational(x)); }

QuadPolynomial coset_to_polynomial(const Coset& c) {
  QuadPolynomial f;
  f.gram.assign(3, std::vector<Rational>(3));
  f.linear.assign(3, 0);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) f.gram[i][j] = c.gram[i][j];
  }
  for (int i = 0; i < 3; ++i) {
    Rational b = 0;
    for (int j = 0; j < 3; ++j) b += c.shift[j] * c.gram[j][i];
    f.linear[i] = 2 * b;
  }
  f.constant = quadratic(c.gram, c.shift);
  return f;
}

Coset polynomial_to_coset(const QuadPolynomial& f) {
  if (f.dimension() != 3 || f.gram.size() != 3) {
    throw Error(ErrorKind::InvalidArgument, "coset conversion needs a ternary polynomial");
  }
  Coset c;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) c.gram[i][j] = f.gram[i][j];
  }
  const Mat3 inv = inverse(c.gram);
  Vec3 half_linear;
  for (int i = 0; i < 3; ++i) half_linear[i] = f.linear[i] / 2;
  c.shift = half_linear * inv;
  if (quadratic(c.gram, c.shift) != f.constant) {
    throw Error(ErrorKind::NotComplete, "constant term " + format_rational(f.constant) +
                                            " differs from Q(v) = " +
                                            format_rational(quadratic(c.gram, c.shift)));
  }
  return c;
}

Integer conductor(const Coset& c) {
  Integer out = 1;
  for (const Rational& x : c.shift) out = lcm(out, x.get_den());
  return out;
}

Rational discriminant(const Coset& c) { return det(c.gram); }

NormIdeals norm_ideals(const Coset& c) {
  const QuadPolynomial f = coset_to_polynomial(c);
  NormIdeals out{0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    out.n_f = rational_gcd(out.n_f, c.gram[i][i]);
    out.b_f = rational_gcd(out.b_f, f.linear[i]);
    out.n0_f = rational_gcd(out.n0_f, c.gram[i][i] + f.linear[i]);
    out.n0_f = rational_gcd(out.n0_f, c.gram[i][i] - f.linear[i]);
    for (int j = i + 1; j < 3; ++j) {
      out.n_f = rational_gcd(out.n_f, 2 * c.gram[i][j]);
      out.n0_f = rational_gcd(out.n0_f, 2 * c.gram[i][j]);
    }
  }
  return out;
}

Rational value_ideal(const Coset& c) {
  return rational_gcd(quadratic(c.gram, c.shift), norm_ideals(c).n0_f);
}

bool is_primitive(const Coset& c) {
  if (!is_positive_definite(c.gram)) {
    throw Error(ErrorKind::NotPositiveDefinite, "Gram matrix is not positive definite");
  }
  return value_ideal(c) == 1;
}

bool is_integral(const Coset& c) { return coset_to_polynomial(c).is_integral(); }

Coset transform(const Coset& c, const IMat3& t, const IVec3& u) {
  const Integer d = det(t);
  if (d != 1 && d != -1) {
    throw Error(ErrorKind::NotUnimodular, "transform has determinant " + d.get_str());
  }
  const Mat3 tr = to_rational(t);
  Coset out;
  out.gram = tr * c.gram * transpose(tr);
  out.shift = (to_rational(u) + c.shift) * inverse(tr);
  return out;
}

Integer coefficient_denominator(const Coset& c) {
  const QuadPolynomial f = coset_to_polynomial(c);
  Integer out = f.constant.get_den();
  for (int i = 0; i < 3; ++i) {
    out = lcm(out, f.gram[i][i].get_den());
    out = lcm(out, f.linear[i].get_den());
    for (int j = i + 1; j < 3; ++j) out = lcm(out, Rational(2 * f.gram[i][j]).get_den());
  }
  return out;
}

IntegerPolynomial scaled_polynomial(const Coset& c) {
  IntegerPolynomial out;
  out.scale = coefficient_denominator(c);
  const QuadPolynomial f = coset_to_polynomial(c);
  const Rational d(out.scale);
  auto as_int = [&](const Rational& q) {
    const Rational scaled = d * q;
    ensure(scaled.get_den() == 1, "coefficient denominator does not clear");
    return Integer(scaled.get_num());
  };
  for (int i = 0; i < 3; ++i) {
    out.quad[i][i] = as_int(f.gram[i][i]);
    for (int j = i + 1; j < 3; ++j) out.quad[i][j] = as_int(2 * f.gram[i][j]);
    out.lin[i] = as_int(f.linear[i]);
  }
  out.constant = as_int(f.constant);
  return out;
}

Coset diagonal_coset(const Rational& a, const Rational& b, const Rational& c, const Vec3& shift) {
  Coset out;
  out.gram = {Vec3{a, 0, 0}, Vec3{0, b, 0}, Vec3{0, 0, c}};
  out.shift = shift;
  return out;
}

}  // namespace regcoset
