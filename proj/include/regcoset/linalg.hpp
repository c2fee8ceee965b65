#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "regcoset/arith.hpp"

namespace regcoset {

using Vec3 = std::array<Rational, 3>;
using Mat3 = std::array<Vec3, 3>;
using IVec3 = std::array<Integer, 3>;
using IMat3 = std::array<IVec3, 3>;
using Point = std::array<std::int64_t, 3>;

Mat3 identity3();
IMat3 identity_int3();

Mat3 to_rational(const IMat3& m);
Vec3 to_rational(const IVec3& v);
Vec3 to_rational(const Point& v);

Rational det(const Mat3& m);
Integer det(const IMat3& m);

/// Exact inverse; SingularGram on a zero determinant.
Mat3 inverse(const Mat3& m);

Mat3 transpose(const Mat3& m);
Mat3 operator*(const Mat3& a, const Mat3& b);
IMat3 operator*(const IMat3& a, const IMat3& b);

/// Row vector times matrix.
Vec3 operator*(const Vec3& v, const Mat3& m);
Vec3 operator+(const Vec3& a, const Vec3& b);
Vec3 operator-(const Vec3& a, const Vec3& b);
Vec3 operator*(const Rational& s, const Vec3& v);

/// x G y^T.
Rational bilinear(const Mat3& gram, const Vec3& x, const Vec3& y);
Rational quadratic(const Mat3& gram, const Vec3& x);

/// Sylvester's criterion on the leading principal minors.
bool is_positive_definite(const Mat3& gram);

bool is_integral(const Vec3& v);

/// Row-style Hermite normal form of the lattice spanned by the given integer
/// row vectors; requires full rank 3. Rows of the result form a basis.
IMat3 hermite_basis(const std::vector<IVec3>& generators);

/// Lexicographic comparison by value, row-major.
int compare(const Mat3& a, const Mat3& b);
int compare(const Vec3& a, const Vec3& b);

}  // namespace regcoset
