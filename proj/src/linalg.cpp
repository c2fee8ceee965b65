#include "regcoset/linalg.hpp"

#include <algorithm>
#include <utility>

#include "regcoset/error.hpp"

namespace regcoset {

Mat3 identity3() {
  Mat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
  }
  return m;
}

IMat3 identity_int3() {
  IMat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = i == j ? 1 : 0;
  }
  return m;
}

Mat3 to_rational(const IMat3& m) {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = Rational(m[i][j]);
  }
  return out;
}

Vec3 to_rational(const IVec3& v) { return {Rational(v[0]), Rational(v[1]), Rational(v[2])}; }

Vec3 to_rational(const Point& v) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = Rational(Integer(static_cast<long>(v[i])));
  return out;
}

template <class M, class T>
static T det_impl(const M& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Rational det(const Mat3& m) { return det_impl<Mat3, Rational>(m); }
Integer det(const IMat3& m) { return det_impl<IMat3, Integer>(m); }

Mat3 inverse(const Mat3& m) {
  const Rational d = det(m);
  if (d == 0) throw Error(ErrorKind::SingularGram, "matrix has zero determinant");
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3;
      const int c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      out[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) / d;
    }
  }
  return out;
}

Mat3 transpose(const Mat3& m) {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out[i][j] = m[j][i];
  }
  return out;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    }
  }
  return out;
}

IMat3 operator*(const IMat3& a, const IMat3& b) {
  IMat3 out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j] + a[i][2] * b[2][j];
    }
  }
  return out;
}

Vec3 operator*(const Vec3& v, const Mat3& m) {
  Vec3 out;
  for (int j = 0; j < 3; ++j) out[j] = v[0] * m[0][j] + v[1] * m[1][j] + v[2] * m[2][j];
  return out;
}

Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
Vec3 operator*(const Rational& s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }

Rational bilinear(const Mat3& gram, const Vec3& x, const Vec3& y) {
  Rational out = 0;
  for (int i = 0; i < 3; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < 3; ++j) out += x[i] * gram[i][j] * y[j];
  }
  return out;
}

Rational quadratic(const Mat3& gram, const Vec3& x) { return bilinear(gram, x, x); }

bool is_positive_definite(const Mat3& gram) {
  if (gram[0][0] <= 0) return false;
  if (gram[0][0] * gram[1][1] - gram[0][1] * gram[1][0] <= 0) return false;
  return det(gram) > 0;
}

bool is_integral(const Vec3& v) {
  return v[0].get_den() == 1 && v[1].get_den() == 1 && v[2].get_den() == 1;
}

IMat3 hermite_basis(const std::vector<IVec3>& generators) {
  std::vector<IVec3> rows = generators;
  IMat3 out;
  std::size_t top = 0;
  for (int col = 0; col < 3; ++col) {
    // Euclid on the column among rows[top..] until one nonzero pivot remains.
    while (true) {
      std::size_t pivot = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] != 0 &&
            (pivot == rows.size() || abs(rows[r][col]) < abs(rows[pivot][col]))) {
          pivot = r;
        }
      }
      if (pivot == rows.size()) {
        throw Error(ErrorKind::InvalidArgument, "generators do not span a rank-3 lattice");
      }
      std::swap(rows[top], rows[pivot]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), rows[r][col].get_mpz_t(), rows[top][col].get_mpz_t());
        for (int k = 0; k < 3; ++k) rows[r][k] -= q * rows[top][k];
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][col] < 0) {
      for (int k = 0; k < 3; ++k) rows[top][k] = -rows[top][k];
    }
    ++top;
  }
  for (int i = 0; i < 3; ++i) out[i] = rows[i];
  // Reduce entries above each pivot into [0, pivot).
  for (int i = 1; i < 3; ++i) {
    for (int r = 0; r < i; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), out[r][i].get_mpz_t(), out[i][i].get_mpz_t());
      for (int k = 0; k < 3; ++k) out[r][k] -= q * out[i][k];
    }
  }
  return out;
}

int compare(const Mat3& a, const Mat3& b) {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const int c = cmp(a[i][j], b[i][j]);
      if (c != 0) return c < 0 ? -1 : 1;
    }
  }
  return 0;
}

int compare(const Vec3& a, const Vec3& b) {
  for (int i = 0; i < 3; ++i) {
    const int c = cmp(a[i], b[i]);
    if (c != 0) return c < 0 ? -1 : 1;
  }
  return 0;
}

}  // namespace regcoset
