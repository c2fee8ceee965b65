#include "regcoset/padic.hpp"

#include <algorithm>
#include <numeric>

#include "regcoset/error.hpp"

namespace regcoset {

namespace {

Mat3 congruent(const Mat3& gram, const Mat3& t) { return t * gram * transpose(t); }

void axpy(Vec3& row, const Rational& s, const Vec3& other) {
  for (int k = 0; k < 3; ++k) row[k] -= s * other[k];
}

Integer mod_pow(const Integer& x, const Integer& modulus) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
  return r;
}

}  // namespace

JordanSplitting jordan_decompose(const Mat3& gram, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (gram[i][j] != 0 && ord_p(gram[i][j], p) < 0) {
        throw Error(ErrorKind::DenominatorAtP, "Gram entry " + format_rational(gram[i][j]) +
                                                  " is not integral at " + std::to_string(p));
      }
    }
  }
  if (det(gram) == 0) throw Error(ErrorKind::SingularGram, "Gram matrix is singular");

  Mat3 t = identity3();
  std::vector<int> remaining{0, 1, 2};
  std::vector<std::vector<int>> blocks;
  while (!remaining.empty()) {
    const Mat3 w = congruent(gram, t);
    if (remaining.size() == 1) {
      blocks.push_back({remaining[0]});
      break;
    }
    int m = kInfiniteOrder, di = -1, oi = -1, oj = -1;
    for (int i : remaining) {
      for (int j : remaining) {
        if (w[i][j] == 0) continue;
        m = std::min(m, ord_p(w[i][j], p));
      }
    }
    if (m == kInfiniteOrder) internal_assert_failed("degenerate block in Jordan splitting");
    for (int i : remaining) {
      if (di < 0 && w[i][i] != 0 && ord_p(w[i][i], p) == m) di = i;
      for (int j : remaining) {
        if (oi < 0 && i < j && w[i][j] != 0 && ord_p(w[i][j], p) == m) {
          oi = i;
          oj = j;
        }
      }
    }
    if (di >= 0) {
      for (int k : remaining) {
        if (k != di) axpy(t[k], w[k][di] / w[di][di], t[di]);
      }
      blocks.push_back({di});
      remaining.erase(std::find(remaining.begin(), remaining.end(), di));
    } else if (p != 2) {
      // 2B(e_i, e_j) dominates: e_i + e_j has a pivot of minimal valuation.
      for (int k = 0; k < 3; ++k) t[oi][k] += t[oj][k];
    } else {
      const Rational a = w[oi][oi], b = w[oi][oj], c = w[oj][oj];
      const Rational d = a * c - b * b;
      for (int k : remaining) {
        if (k == oi || k == oj) continue;
        const Rational mi = (w[k][oi] * c - w[k][oj] * b) / d;
        const Rational mj = (w[k][oj] * a - w[k][oi] * b) / d;
        axpy(t[k], mi, t[oi]);
        axpy(t[k], mj, t[oj]);
      }
      blocks.push_back({oi, oj});
      remaining.erase(std::find(remaining.begin(), remaining.end(), oi));
      remaining.erase(std::find(remaining.begin(), remaining.end(), oj));
    }
  }

  const Mat3 w = congruent(gram, t);
  auto block_scale = [&](const std::vector<int>& blk) {
    return blk.size() == 1 ? ord_p(w[blk[0]][blk[0]], p) : ord_p(w[blk[0]][blk[1]], p);
  };
  std::stable_sort(blocks.begin(), blocks.end(),
                   [&](const auto& x, const auto& y) { return block_scale(x) < block_scale(y); });

  JordanSplitting out;
  out.p = p;
  std::vector<int> order;
  for (const auto& blk : blocks) {
    const int s = block_scale(blk);
    if (out.components.empty() || out.components.back().scale != s) {
      out.components.push_back(JordanComponent{s, 0, {}});
    }
    out.components.back().rank += static_cast<int>(blk.size());
    order.insert(order.end(), blk.begin(), blk.end());
  }
  for (int i = 0; i < 3; ++i) out.transform[i] = t[order[i]];
  out.diagonalized = congruent(gram, out.transform);
  int offset = 0;
  for (JordanComponent& comp : out.components) {
    comp.gram.assign(comp.rank, std::vector<Rational>(comp.rank));
    for (int i = 0; i < comp.rank; ++i) {
      for (int j = 0; j < comp.rank; ++j) comp.gram[i][j] = out.diagonalized[offset + i][offset + j];
    }
    offset += comp.rank;
  }
  return out;
}

bool behaves_well(const Coset& c, std::uint64_t p) {
  const JordanSplitting js = jordan_decompose(c.gram, p);
  for (const JordanComponent& comp : js.components) {
    if (comp.scale == 0) return comp.rank >= 2;
  }
  return false;
}

LocalSolver::LocalSolver(const Coset& c, std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  if (!is_positive_definite(c.gram)) {
    throw Error(ErrorKind::NotPositiveDefinite, "Gram matrix is not positive definite");
  }
  poly_ = scaled_polynomial(c);
  for (int i = 0; i < 3; ++i) {
    hessian_[i][i] = 2 * poly_.quad[i][i];
    for (int j = i + 1; j < 3; ++j) {
      hessian_[i][j] = poly_.quad[i][j];
      hessian_[j][i] = poly_.quad[i][j];
    }
  }
  IMat3 m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) m[i][j] = hessian_[i][j];
  }
  delta_ = ord_p(Integer(2 * det(m)), p);
  shift_integral_ = ord_p(conductor(c), p) == 0;
  singular_.push_back(IVec3{0, 0, 0});
  if (p != 2 && shift_integral_) {
    try {
      const JordanSplitting js = jordan_decompose(c.gram, p);
      const Integer pp(static_cast<unsigned long>(p));
      for (const JordanComponent& comp : js.components) {
        const Rational scale(ipow(pp, static_cast<unsigned long>(comp.scale)));
        for (int i = 0; i < comp.rank; ++i) {
          levels_[comp.scale].push_back(mod_rational(comp.gram[i][i] / scale, pp));
        }
      }
      diagonal_ = true;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::DenominatorAtP) throw;
    }
  }
}

// Q = sum u_i p^e_i y_i^2. Either some y_i at the lowest level is a unit, and
// then a solution mod p lifts, or all of them are divisible by p and that
// level moves up by two.
bool LocalSolver::diagonal_represents(const Integer& a) const {
  if (a == 0) return true;
  const unsigned long p = static_cast<unsigned long>(p_);
  const Integer pp(p);
  const int t = ord_p(a, p);
  std::map<int, std::vector<Integer>> levels = levels_;
  while (!levels.empty()) {
    auto lowest = levels.begin();
    const int e = lowest->first;
    if (e > t) return false;
    const std::vector<Integer> units = std::move(lowest->second);
    levels.erase(lowest);
    Integer rest = a / ipow(pp, static_cast<unsigned long>(e));
    mpz_fdiv_r(rest.get_mpz_t(), rest.get_mpz_t(), pp.get_mpz_t());
    bool hit = false;
    if (units.size() >= 3) {
      hit = true;
    } else if (units.size() == 2) {
      const Integer minus = -units[0] * units[1];
      hit = rest != 0 || mpz_legendre(minus.get_mpz_t(), pp.get_mpz_t()) >= 0;
    } else {
      const Integer q = rest * units[0];
      hit = rest != 0 && mpz_legendre(q.get_mpz_t(), pp.get_mpz_t()) == 1;
    }
    if (hit) return true;
    auto& up = levels[e + 2];
    up.insert(up.end(), units.begin(), units.end());
  }
  return false;
}

const Integer& LocalSolver::power(int e) {
  while (static_cast<int>(powers_.size()) <= e) {
    powers_.push_back(powers_.empty() ? Integer(1)
                                      : Integer(powers_.back() * static_cast<unsigned long>(p_)));
  }
  return powers_[static_cast<std::size_t>(e)];
}

std::size_t LocalSolver::ball_count() const {
  std::size_t n = 0;
  for (const auto& [m, set] : balls_) n += set.size();
  return n;
}

void LocalSolver::deepen() {
  const int j = depth_;
  const Integer step = power(j);
  std::vector<IVec3> next;
  const unsigned long p = static_cast<unsigned long>(p_);
  for (const IVec3& base : singular_) {
    for (unsigned long d0 = 0; d0 < p; ++d0) {
      for (unsigned long d1 = 0; d1 < p; ++d1) {
        for (unsigned long d2 = 0; d2 < p; ++d2) {
          const IVec3 x{base[0] + step * d0, base[1] + step * d1, base[2] + step * d2};
          int t = j + 1;
          for (int i = 0; i < 3; ++i) {
            const Integer g =
                hessian_[i][0] * x[0] + hessian_[i][1] * x[1] + hessian_[i][2] * x[2] + poly_.lin[i];
            t = std::min(t, ord_p(g, p));
          }
          if (t > j) {
            next.push_back(x);
            continue;
          }
          const int m = j + 1 + t;
          Integer h = poly_.constant;
          for (int i = 0; i < 3; ++i) {
            h += poly_.lin[i] * x[i] + poly_.quad[i][i] * x[i] * x[i];
            for (int k = i + 1; k < 3; ++k) h += poly_.quad[i][k] * x[i] * x[k];
          }
          balls_[m].insert(mod_pow(h, power(m)));
          max_exponent_ = std::max(max_exponent_, m);
        }
      }
    }
  }
  if (next.size() > (1u << 20)) {
    throw Error(ErrorKind::OutOfRange, "too many singular residue classes at " + std::to_string(p_));
  }
  singular_ = std::move(next);
  depth_ = j + 1;
}

void LocalSolver::ensure_valuation(int nu) {
  while (!singular_.empty() && 2 * depth_ - delta_ <= nu) deepen();
}

bool LocalSolver::in_balls(const Integer& value) const {
  for (const auto& [m, set] : balls_) {
    if (set.count(mod_pow(value, powers_[static_cast<std::size_t>(m)]))) return true;
  }
  return false;
}

bool LocalSolver::represents(const Integer& a) {
  if (diagonal_) return diagonal_represents(a);
  const Integer target = poly_.scale * a;
  if (target == 0) {
    if (shift_integral_) return true;
    // Every point of v + Z_p^3 is then nonsingular, so the search ends.
    while (!singular_.empty()) deepen();
    power(max_exponent_);
    return in_balls(target);
  }
  ensure_valuation(ord_p(target, static_cast<unsigned long>(p_)));
  power(max_exponent_);
  return in_balls(target);
}

bool LocalSolver::nonzero_ball_covered(const Integer& rho, int m) {
  const int nu = ord_p(rho, static_cast<unsigned long>(p_));
  ensure_valuation(nu);
  // Balls meeting valuation nu come from gradient valuations t with
  // 2t <= nu + delta, and have exponent 2t + 1.
  return split_covered(rho, m, std::min(max_exponent_, 2 * ((nu + delta_) / 2) + 1));
}

bool LocalSolver::split_covered(const Integer& rho, int m, int limit) {
  power(std::max(limit, m) + 1);
  std::vector<std::pair<Integer, int>> stack{{rho, m}};
  while (!stack.empty()) {
    auto [r, e] = stack.back();
    stack.pop_back();
    bool hit = false;
    for (const auto& [mm, set] : balls_) {
      if (mm > e) break;
      if (set.count(mod_pow(r, powers_[static_cast<std::size_t>(mm)]))) {
        hit = true;
        break;
      }
    }
    if (hit) continue;
    if (e >= limit) return false;
    for (std::uint64_t i = 0; i < p_; ++i) {
      stack.emplace_back(r + powers_[static_cast<std::size_t>(e)] * static_cast<unsigned long>(i),
                         e + 1);
    }
  }
  return true;
}

bool LocalSolver::ball_covered(const Integer& rho, int m) {
  const Integer r = mod_pow(rho, power(m));
  if (r != 0) return nonzero_ball_covered(r, m);
  if (!shift_integral_) {
    // The value set is a finite union of balls.
    while (!singular_.empty()) deepen();
    return split_covered(r, m, max_exponent_);
  }
  // Values are closed under multiplication by p^2, so the two annuli of
  // valuation m and m + 1 decide the whole ball around 0.
  for (std::uint64_t u = 1; u < p_; ++u) {
    const Integer uu(static_cast<unsigned long>(u));
    if (!nonzero_ball_covered(uu * power(m), m + 1)) return false;
    if (!nonzero_ball_covered(uu * power(m + 1), m + 2)) return false;
  }
  return true;
}

bool LocalSolver::represents_coset(const Integer& r, int k) {
  const int d = ord_p(poly_.scale, static_cast<unsigned long>(p_));
  return ball_covered(poly_.scale * r, k + d);
}

bool local_represents(const Coset& c, std::uint64_t p, const Integer& a) {
  LocalSolver solver(c, p);
  return solver.represents(a);
}

int local_class_bound(const Coset& c, std::uint64_t p) {
  const Rational n0 = norm_ideals(c).n0_f;
  return 1 + ord_p(n0, static_cast<unsigned long>(p)) + (p == 2 ? 2 : 0);
}

LocalClass local_class(const Coset& c, std::uint64_t p) {
  if (!is_primitive(c)) throw Error(ErrorKind::NotPrimitive, "coset is not primitive");
  LocalSolver solver(c, p);
  const int bound = local_class_bound(c, p);
  for (int k = 0; k <= bound + 3; ++k) {
    const Integer pk = ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(k));
    for (Integer r = 0; r < pk; ++r) {
      if (solver.represents_coset(r, k)) return LocalClass{p, r, k};
    }
  }
  internal_assert_failed("no represented residue class found at " + std::to_string(p));
}

ProgressionData progression_data(const Coset& c) {
  if (!is_primitive(c)) throw Error(ErrorKind::NotPrimitive, "coset is not primitive");
  std::vector<std::uint64_t> primes = prime_divisors(2 * conductor(c));
  ProgressionData out{1, 0};
  for (std::uint64_t p : primes) {
    const LocalClass lc = local_class(c, p);
    const Integer pk =
        ipow(Integer(static_cast<unsigned long>(p)), static_cast<unsigned long>(lc.exponent));
    // Solve r = out.r mod out.a, r = lc.residue mod pk.
    Integer inv;
    mpz_invert(inv.get_mpz_t(), out.a.get_mpz_t(), pk.get_mpz_t());
    Integer step = (lc.residue - out.r) * inv;
    mpz_fdiv_r(step.get_mpz_t(), step.get_mpz_t(), pk.get_mpz_t());
    out.r += out.a * step;
    out.a *= pk;
    mpz_fdiv_r(out.r.get_mpz_t(), out.r.get_mpz_t(), out.a.get_mpz_t());
  }
  return out;
}

std::vector<std::uint64_t> relevant_primes(const Coset& c) {
  std::vector<std::uint64_t> out{2};
  const Rational d = discriminant(c);
  for (const Integer& n : {conductor(c), Integer(d.get_num()), Integer(d.get_den()),
                           coefficient_denominator(c)}) {
    if (n == 0) continue;
    for (std::uint64_t p : prime_divisors(n)) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace regcoset
