#include "regcoset/reduction.hpp"

#include <algorithm>

#include "regcoset/error.hpp"

namespace regcoset {

namespace {

Rational norm_of(const Mat3& gram, const IVec3& row) { return quadratic(gram, to_rational(row)); }

Rational pairing(const Mat3& gram, const IVec3& a, const IVec3& b) {
  return bilinear(gram, to_rational(a), to_rational(b));
}

IVec3 combine(const IVec3& a, const Integer& s, const IVec3& b) {
  return {a[0] - s * b[0], a[1] - s * b[1], a[2] - s * b[2]};
}

Integer round_nearest(const Rational& q) { return floor(Rational(q + Rational(1, 2))); }

Vec3 fractional(const Vec3& v) {
  Vec3 out;
  for (int i = 0; i < 3; ++i) out[i] = v[i] - Rational(floor(v[i]));
  return out;
}

Mat3 congruent(const Mat3& gram, const IMat3& t) {
  const Mat3 tr = to_rational(t);
  return tr * gram * transpose(tr);
}

}  // namespace

bool is_minkowski_reduced(const Mat3& g) {
  if (!(g[0][0] > 0 && g[0][0] <= g[1][1] && g[1][1] <= g[2][2])) return false;
  if (abs(Rational(2 * g[0][1])) > g[0][0]) return false;
  for (int s0 = -1; s0 <= 1; ++s0) {
    for (int s1 = -1; s1 <= 1; ++s1) {
      const Vec3 x{Rational(s0), Rational(s1), Rational(1)};
      if (quadratic(g, x) < g[2][2]) return false;
    }
  }
  return true;
}

IMat3 minkowski_basis(const Mat3& gram) {
  if (!is_positive_definite(gram)) {
    throw Error(ErrorKind::NotPositiveDefinite, "Gram matrix is not positive definite");
  }
  IMat3 b = identity_int3();
  for (int guard = 0; guard < 100000; ++guard) {
    bool changed = false;
    std::stable_sort(b.begin(), b.end(), [&](const IVec3& x, const IVec3& y) {
      return norm_of(gram, x) < norm_of(gram, y);
    });

    // Lagrange reduction of the first two vectors.
    while (true) {
      const Integer q = round_nearest(pairing(gram, b[0], b[1]) / norm_of(gram, b[0]));
      if (q != 0) {
        b[1] = combine(b[1], q, b[0]);
        changed = true;
      }
      if (norm_of(gram, b[1]) < norm_of(gram, b[0])) {
        std::swap(b[0], b[1]);
        changed = true;
        continue;
      }
      break;
    }

    // Shorten the third vector against the plane of the first two.
    const Rational q0 = norm_of(gram, b[0]), q1 = norm_of(gram, b[1]);
    const Rational b01 = pairing(gram, b[0], b[1]);
    const Rational r0 = pairing(gram, b[2], b[0]), r1 = pairing(gram, b[2], b[1]);
    const Rational d2 = q0 * q1 - b01 * b01;
    const Rational s0 = (r0 * q1 - r1 * b01) / d2;
    const Rational s1 = (r1 * q0 - r0 * b01) / d2;
    IVec3 best = b[2];
    Rational best_norm = norm_of(gram, b[2]);
    for (const Integer& c0 : {floor(s0), ceil(s0)}) {
      for (const Integer& c1 : {floor(s1), ceil(s1)}) {
        const IVec3 cand = combine(combine(b[2], c0, b[0]), c1, b[1]);
        const Rational n = norm_of(gram, cand);
        if (n < best_norm) {
          best = cand;
          best_norm = n;
        }
      }
    }
    for (bool improved = true; improved;) {
      improved = false;
      for (int t0 = -1; t0 <= 1; ++t0) {
        for (int t1 = -1; t1 <= 1; ++t1) {
          const IVec3 cand = combine(combine(best, Integer(t0), b[0]), Integer(t1), b[1]);
          const Rational n = norm_of(gram, cand);
          if (n < best_norm) {
            best = cand;
            best_norm = n;
            improved = true;
          }
        }
      }
    }
    if (best != b[2]) {
      b[2] = best;
      changed = true;
    }
    if (!changed) {
      ensure(is_minkowski_reduced(congruent(gram, b)), "reduction loop ended unreduced");
      return b;
    }
  }
  internal_assert_failed("Minkowski reduction did not terminate");
}

ReducedCoset reduce(const Coset& c) {
  const IMat3 t0 = minkowski_basis(c.gram);
  const Mat3 g0 = congruent(c.gram, t0);
  const Vec3 mu{g0[0][0], g0[1][1], g0[2][2]};

  // All vectors whose norm is one of the successive minima.
  const Coset lattice{g0, Vec3{0, 0, 0}};
  const EllipsoidKernel kernel(lattice);
  std::vector<IVec3> shells[3];
  kernel.for_each(mu[2], [&](const Point& p, const Integer& scaled) {
    Rational value(scaled, kernel.scale());
    value.canonicalize();
    for (int k = 0; k < 3; ++k) {
      if (value == mu[k]) shells[k].push_back(IVec3{Integer(static_cast<long>(p[0])),
                                                    Integer(static_cast<long>(p[1])),
                                                    Integer(static_cast<long>(p[2]))});
    }
  });

  std::vector<IMat3> bases;
  Mat3 best_gram;
  for (const IVec3& b1 : shells[0]) {
    for (const IVec3& b2 : shells[1]) {
      for (const IVec3& b3 : shells[2]) {
        const IMat3 b{b1, b2, b3};
        const Integer d = det(b);
        if (d != 1 && d != -1) continue;
        const Mat3 g = congruent(g0, b);
        if (!is_minkowski_reduced(g)) continue;
        const int cmpv = bases.empty() ? -1 : compare(g, best_gram);
        if (cmpv < 0) {
          bases.clear();
          best_gram = g;
        }
        if (cmpv <= 0) bases.push_back(b);
      }
    }
  }
  ensure(!bases.empty(), "no reduced basis among the minimal vectors");

  IMat3 best_t;
  Vec3 key;
  bool have_key = false;
  for (const IMat3& b : bases) {
    const IMat3 t = b * t0;
    const Vec3 frac = fractional(c.shift * inverse(to_rational(t)));
    if (!have_key || compare(frac, key) < 0) {
      key = frac;
      best_t = t;
      have_key = true;
    }
  }

  // Translate the key class to a minimizer of Q(x + v).
  const Coset keyed{best_gram, key};
  const EllipsoidKernel shifted(keyed);
  Integer best_value;
  Vec3 best_shift;
  bool have_min = false;
  shifted.for_each(quadratic(best_gram, key), [&](const Point& p, const Integer& scaled) {
    const Vec3 candidate = key + to_rational(p);
    if (!have_min || scaled < best_value ||
        (scaled == best_value && compare(candidate, best_shift) > 0)) {
      best_value = scaled;
      best_shift = candidate;
      have_min = true;
    }
  });
  ensure(have_min, "translate search found no point");

  ReducedCoset out;
  out.coset = Coset{best_gram, best_shift};
  out.minima = mu;
  out.t = best_t;
  const Vec3 u = best_shift * to_rational(best_t) - c.shift;
  ensure(is_integral(u), "translation is not integral");
  for (int i = 0; i < 3; ++i) out.u[i] = u[i].get_num();
  return out;
}

bool is_reduced(const Coset& c) {
  if (!is_positive_definite(c.gram) || !is_minkowski_reduced(c.gram)) return false;
  const Rational at_zero = quadratic(c.gram, c.shift);
  const EllipsoidKernel kernel(c);
  const Integer scaled_zero = floor(Rational(at_zero * kernel.scale()));
  bool minimal = true;
  kernel.for_each(at_zero, [&](const Point&, const Integer& scaled) {
    if (scaled < scaled_zero) minimal = false;
  });
  return minimal;
}

Rational min_value(const Coset& c) {
  const ReducedCoset r = reduce(c);
  return quadratic(r.coset.gram, r.coset.shift);
}

std::vector<std::pair<std::uint64_t, Point>> enumerate_represented(const Coset& c,
                                                                   std::uint64_t bound) {
  if (!is_reduced(c)) throw Error(ErrorKind::NotReduced, "coset is not reduced");
  const ValueTable table = EllipsoidKernel(c).tabulate(bound);
  std::vector<std::pair<std::uint64_t, Point>> out;
  for (std::uint64_t a = 0; a <= bound; ++a) {
    if (table.counts[a] != 0) out.emplace_back(a, table.witnesses[a]);
  }
  return out;
}

std::optional<Point> represents(const Coset& c, const Integer& a) {
  const EllipsoidKernel kernel(c);
  if (a < 0) return std::nullopt;
  return kernel.witness(a);
}

bool search_box_filter(const Vec3& minima, const Rational& a) {
  Rational bound = Rational(3, 2) * minima[2];
  bound = std::min(bound, Rational(Rational(7, 2) * minima[1]));
  bound = std::min(bound, Rational(31 * minima[0]));
  return a < bound;
}

}  // namespace regcoset
