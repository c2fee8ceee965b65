#include "regcoset/kernel.hpp"

#include <omp.h>

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <limits>
#include <string>

#include "regcoset/error.hpp"

namespace regcoset {

namespace {

std::atomic<int> g_threads{0};

int threads_from_environment() {
  if (const char* env = std::getenv("REGCOSET_THREADS")) {
    const int value = std::atoi(env);
    if (value >= 1) return value;
  }
  return std::max(1, omp_get_max_threads());
}

bool fits_int64(const Integer& x) {
  static const Integer lo(std::string("-4611686018427387904"));
  static const Integer hi(std::string("4611686018427387904"));
  return x > lo && x < hi;
}

std::int64_t to_int64(const Integer& x) {
  if (!fits_int64(x)) throw Error(ErrorKind::OutOfRange, "coordinate exceeds 62 bits");
  return static_cast<std::int64_t>(x.get_si());
}

// Integer solutions of a x^2 + b x + c <= t with a > 0, as [lo, hi]; empty
// when lo > hi.
bool quadratic_range(const Integer& a, const Integer& b, const Integer& c, const Integer& t,
                     Integer& lo, Integer& hi) {
  const Integer disc = b * b - 4 * a * (c - t);
  if (disc < 0) return false;
  const Integer s = isqrt(disc);
  const Integer two_a = 2 * a;
  Integer num = -b - s;
  mpz_cdiv_q(lo.get_mpz_t(), num.get_mpz_t(), two_a.get_mpz_t());
  num = -b + s;
  mpz_fdiv_q(hi.get_mpz_t(), num.get_mpz_t(), two_a.get_mpz_t());
  return lo <= hi;
}

__int128 norm2(const Point& p) {
  __int128 out = 0;
  for (std::int64_t x : p) out += static_cast<__int128>(x) * x;
  return out;
}

void record(ValueTable& table, std::uint64_t value, const Point& p) {
  if (table.counts[value]++ == 0 || witness_less(p, table.witnesses[value])) {
    table.witnesses[value] = p;
  }
}

ValueTable empty_table(std::uint64_t bound) {
  ValueTable t;
  t.bound = bound;
  t.counts.assign(bound + 1, 0);
  t.witnesses.assign(bound + 1, Point{0, 0, 0});
  return t;
}

}  // namespace

int default_threads() {
  int t = g_threads.load();
  if (t == 0) {
    t = threads_from_environment();
    g_threads.store(t);
  }
  return t;
}

void set_default_threads(int threads) {
  if (threads < 1) throw Error(ErrorKind::InvalidArgument, "thread count must be positive");
  g_threads.store(threads);
}

bool witness_less(const Point& a, const Point& b) {
  const __int128 na = norm2(a), nb = norm2(b);
  if (na != nb) return na < nb;
  return a < b;
}

EllipsoidKernel::EllipsoidKernel(const Coset& c) {
  if (!is_positive_definite(c.gram)) {
    throw Error(ErrorKind::NotPositiveDefinite, "Gram matrix is not positive definite");
  }
  const IntegerPolynomial poly = scaled_polynomial(c);
  scale_ = poly.scale;
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) a_[i][j] = poly.quad[i][j];
    b_[i] = poly.lin[i];
  }
  c0_ = poly.constant;

  const Integer& al = a_[0][0];
  p22_ = 4 * al * a_[1][1] - a_[0][1] * a_[0][1];
  p33_ = 4 * al * a_[2][2] - a_[0][2] * a_[0][2];
  p23_ = 4 * al * a_[1][2] - 2 * a_[0][1] * a_[0][2];
  p2_ = 4 * al * b_[1] - 2 * a_[0][1] * b_[0];
  p3_ = 4 * al * b_[2] - 2 * a_[0][2] * b_[0];
  p0_ = 4 * al * c0_ - b_[0] * b_[0];
  h3a_ = 4 * p22_ * p33_ - p23_ * p23_;
  h3b_ = 4 * p22_ * p3_ - 2 * p23_ * p2_;
  h3c_ = 4 * p22_ * p0_ - p2_ * p2_;
  if (al <= 0 || p22_ <= 0 || h3a_ <= 0) internal_assert_failed("elimination lost definiteness");
}

std::vector<std::int64_t> EllipsoidKernel::outer_range(const Integer& scaled_bound) const {
  std::vector<std::int64_t> out;
  if (scaled_bound < 0) return out;
  const Integer t3 = 16 * a_[0][0] * p22_ * scaled_bound;
  Integer lo, hi;
  if (!quadratic_range(h3a_, h3b_, h3c_, t3, lo, hi)) return out;
  const std::int64_t l = to_int64(lo), h = to_int64(hi);
  out.reserve(static_cast<std::size_t>(h - l + 1));
  for (std::int64_t x3 = l; x3 <= h; ++x3) out.push_back(x3);
  return out;
}

void EllipsoidKernel::rows_for(std::int64_t x3v, const Integer& scaled_bound,
                               std::vector<Row>& out) const {
  const Integer x3(static_cast<long>(x3v));
  const Integer beta2 = p23_ * x3 + p2_;
  const Integer gamma2 = p33_ * x3 * x3 + p3_ * x3 + p0_;
  Integer lo2, hi2;
  if (!quadratic_range(p22_, beta2, gamma2, 4 * a_[0][0] * scaled_bound, lo2, hi2)) return;
  const std::int64_t l2 = to_int64(lo2), h2 = to_int64(hi2);
  for (std::int64_t x2v = l2; x2v <= h2; ++x2v) {
    const Integer x2(static_cast<long>(x2v));
    Row row;
    row.x2 = x2v;
    row.x3 = x3v;
    row.beta = a_[0][1] * x2 + a_[0][2] * x3 + b_[0];
    row.gamma = a_[1][1] * x2 * x2 + a_[2][2] * x3 * x3 + a_[1][2] * x2 * x3 + b_[1] * x2 +
                b_[2] * x3 + c0_;
    if (quadratic_range(a_[0][0], row.beta, row.gamma, scaled_bound, row.lo, row.hi)) {
      out.push_back(std::move(row));
    }
  }
}

void EllipsoidKernel::for_each(
    const Rational& bound,
    const std::function<void(const Point&, const Integer&)>& visit) const {
  const Integer scaled_bound = floor(Rational(bound * scale_));
  std::vector<Row> rows;
  for (std::int64_t x3 : outer_range(scaled_bound)) {
    rows.clear();
    rows_for(x3, scaled_bound, rows);
    for (const Row& row : rows) {
      const std::int64_t lo = to_int64(row.lo), hi = to_int64(row.hi);
      for (std::int64_t x1v = lo; x1v <= hi; ++x1v) {
        const Integer x1(static_cast<long>(x1v));
        const Integer g = a_[0][0] * x1 * x1 + row.beta * x1 + row.gamma;
        visit(Point{x1v, row.x2, row.x3}, g);
      }
    }
  }
}

std::vector<Point> EllipsoidKernel::solutions(const Rational& value) const {
  std::vector<Point> out;
  const Rational scaled = value * scale_;
  if (scaled.get_den() != 1 || scaled < 0) return out;
  const Integer target = scaled.get_num();
  std::vector<Row> rows;
  for (std::int64_t x3 : outer_range(target)) {
    rows.clear();
    rows_for(x3, target, rows);
    for (const Row& row : rows) {
      const Integer disc = row.beta * row.beta - 4 * a_[0][0] * (row.gamma - target);
      if (disc < 0 || !mpz_perfect_square_p(disc.get_mpz_t())) continue;
      const Integer s = isqrt(disc);
      const Integer two_a = 2 * a_[0][0];
      for (const Integer& num : {Integer(-row.beta - s), Integer(-row.beta + s)}) {
        if (!mpz_divisible_p(num.get_mpz_t(), two_a.get_mpz_t())) continue;
        const Integer x1 = num / two_a;
        const Point p{to_int64(x1), row.x2, row.x3};
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
      }
    }
  }
  std::sort(out.begin(), out.end(), witness_less);
  return out;
}

std::optional<Point> EllipsoidKernel::witness(const Integer& value) const {
  const std::vector<Point> all = solutions(Rational(value));
  if (all.empty()) return std::nullopt;
  return all.front();
}

void EllipsoidKernel::scan_row(const Row& row, const Integer& scaled_bound, std::uint64_t bound,
                               ValueTable& table) const {
  const std::int64_t lo = to_int64(row.lo), hi = to_int64(row.hi);
  const bool fast = fits_int64(a_[0][0]) && fits_int64(row.beta) && fits_int64(row.gamma) &&
                    fits_int64(scale_) && fits_int64(scaled_bound);
  if (fast) {
    const __int128 alpha = a_[0][0].get_si();
    const __int128 beta = row.beta.get_si();
    const __int128 d = scale_.get_si();
    __int128 g = alpha * lo * lo + beta * lo + static_cast<__int128>(row.gamma.get_si());
    for (std::int64_t x1 = lo; x1 <= hi; ++x1) {
      if (g % d == 0) {
        const __int128 v = g / d;
        if (v >= 0 && v <= static_cast<__int128>(bound)) {
          record(table, static_cast<std::uint64_t>(v), Point{x1, row.x2, row.x3});
        }
      }
      g += alpha * (2 * static_cast<__int128>(x1) + 1) + beta;
    }
    return;
  }
  for (std::int64_t x1v = lo; x1v <= hi; ++x1v) {
    const Integer x1(static_cast<long>(x1v));
    const Integer g = a_[0][0] * x1 * x1 + row.beta * x1 + row.gamma;
    if (!mpz_divisible_p(g.get_mpz_t(), scale_.get_mpz_t())) continue;
    const Integer v = g / scale_;
    if (v >= 0 && v <= Integer(static_cast<unsigned long>(bound))) {
      record(table, v.get_ui(), Point{x1v, row.x2, row.x3});
    }
  }
}

ValueTable EllipsoidKernel::tabulate(std::uint64_t bound, int threads) const {
  if (threads == 0) threads = default_threads();
  const Integer scaled_bound = scale_ * Integer(static_cast<unsigned long>(bound));
  const std::vector<std::int64_t> outer = outer_range(scaled_bound);
  const long n = static_cast<long>(outer.size());

  if (threads <= 1 || omp_in_parallel() || n < 2) {
    ValueTable table = empty_table(bound);
    std::vector<Row> rows;
    for (std::int64_t x3 : outer) {
      rows.clear();
      rows_for(x3, scaled_bound, rows);
      for (const Row& row : rows) scan_row(row, scaled_bound, bound, table);
    }
    return table;
  }

  std::vector<ValueTable> partial(static_cast<std::size_t>(threads));
#pragma omp parallel num_threads(threads)
  {
    ValueTable& local = partial[static_cast<std::size_t>(omp_get_thread_num())];
    local = empty_table(bound);
    std::vector<Row> rows;
#pragma omp for schedule(dynamic, 1)
    for (long k = 0; k < n; ++k) {
      rows.clear();
      rows_for(outer[static_cast<std::size_t>(k)], scaled_bound, rows);
      for (const Row& row : rows) scan_row(row, scaled_bound, bound, local);
    }
  }

  // Counts add and the witness order is total, so the merge does not depend
  // on which thread handled which slab.
  ValueTable table = empty_table(bound);
  for (const ValueTable& part : partial) {
    if (part.counts.empty()) continue;
    for (std::uint64_t a = 0; a <= bound; ++a) {
      if (part.counts[a] == 0) continue;
      if (table.counts[a] == 0 || witness_less(part.witnesses[a], table.witnesses[a])) {
        table.witnesses[a] = part.witnesses[a];
      }
      table.counts[a] += part.counts[a];
    }
  }
  return table;
}

}  // namespace regcoset
