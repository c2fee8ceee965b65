#include "regcoset/polygonal.hpp"

#include <omp.h>

#include <algorithm>
#include <functional>

#include "regcoset/error.hpp"
#include "regcoset/kernel.hpp"
#include "regcoset/reduction.hpp"

namespace regcoset {

namespace {

void require_order(int m) {
  if (m < 3) throw Error(ErrorKind::InvalidArgument, "polygonal order must be at least 3");
}

void require_coeffs(const GonalForm& g) {
  require_order(g.m);
  if (g.coeffs.empty()) throw Error(ErrorKind::InvalidArgument, "no coefficients");
  for (const Integer& a : g.coeffs) {
    if (a <= 0) throw Error(ErrorKind::InvalidArgument, "coefficients must be positive");
  }
}

Integer coordinate_bound(int m, const Integer& a, const Integer& k) {
  const Integer m2(m - 2);
  Integer shift_part;
  const Integer num(m - 4), den = 2 * m2;
  mpz_cdiv_q(shift_part.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  Integer q;
  const Integer top = 2 * k, bottom = m2 * a;
  mpz_cdiv_q(q.get_mpz_t(), top.get_mpz_t(), bottom.get_mpz_t());
  Integer root = isqrt(q);
  if (root * root < q) root += 1;
  return 1 + std::max(Integer(0), shift_part) + root;
}

bool direct_represents(const GonalForm& g, std::size_t index, const Integer& remaining) {
  if (index == g.coeffs.size()) return remaining == 0;
  const Integer& a = g.coeffs[index];
  const Integer bound = coordinate_bound(g.m, a, remaining);
  for (Integer x = -bound; x <= bound; ++x) {
    const Integer used = a * gonal_number(g.m, x);
    if (used > remaining) continue;
    if (direct_represents(g, index + 1, remaining - used)) return true;
  }
  return false;
}

std::optional<std::uint64_t> gap_in_table(const GonalCoset& gc, const ValueTable& table,
                                          std::uint64_t bound) {
  for (std::uint64_t k = 0; k <= bound; ++k) {
    const Integer v = gc.map(Integer(static_cast<unsigned long>(k)));
    if (!table.represented(v.get_ui())) return k;
  }
  return std::nullopt;
}

}  // namespace

Integer gonal_number(int m, const Integer& x) {
  require_order(m);
  const Integer twice = (m - 2) * x * x - (m - 4) * x;
  return twice / 2;
}

Integer gonal_conductor(int m) {
  require_order(m);
  if (m % 2 == 1) return 2 * (m - 2);
  if (m % 4 == 2) return m - 2;
  return (m - 2) / 2;
}

GonalForm canonicalize(GonalForm g) {
  std::sort(g.coeffs.begin(), g.coeffs.end());
  return g;
}

bool is_primitive(const GonalForm& g) {
  Integer d = 0;
  for (const Integer& a : g.coeffs) mpz_gcd(d.get_mpz_t(), d.get_mpz_t(), a.get_mpz_t());
  return d == 1;
}

std::optional<Integer> GonalCoset::unmap(const Integer& value) const {
  const Integer diff = value - offset;
  if (diff < 0 || !mpz_divisible_p(diff.get_mpz_t(), slope.get_mpz_t())) return std::nullopt;
  return Integer(diff / slope);
}

Coset GonalCoset::coset() const {
  if (polynomial.dimension() != 3) {
    throw Error(ErrorKind::InvalidArgument, "coset view needs three coefficients");
  }
  return polynomial_to_coset(polynomial);
}

GonalCoset to_coset(const GonalForm& g) {
  require_coeffs(g);
  const std::size_t n = g.coeffs.size();
  const Integer m2(g.m - 2), m4(g.m - 4);
  GonalCoset out;
  out.slope = 8 * m2;
  out.offset = 0;
  out.polynomial.gram.assign(n, std::vector<Rational>(n, Rational(0)));
  out.polynomial.linear.assign(n, 0);
  out.polynomial.constant = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Integer& a = g.coeffs[i];
    out.polynomial.gram[i][i] = Rational(4 * m2 * m2 * a);
    out.polynomial.linear[i] = Rational(-4 * m2 * m4 * a);
    out.polynomial.constant += Rational(m4 * m4 * a);
    out.offset += m4 * m4 * a;
  }
  return out;
}

std::pair<Coset, Integer> primitive_coset(const GonalForm& g) {
  Coset c = to_coset(g).coset();
  const Rational ideal = value_ideal(c);
  ensure(ideal.get_den() == 1, "m-gonal coset is not integral");
  for (auto& row : c.gram) {
    for (Rational& x : row) x /= ideal;
  }
  return {c, ideal.get_num()};
}

bool gonal_represents(const GonalForm& g, const Integer& k) {
  require_coeffs(g);
  if (k < 0) return false;
  if (g.coeffs.size() == 3) return represents(to_coset(g).coset(), to_coset(g).map(k)).has_value();
  return direct_represents(g, 0, k);
}

std::optional<std::uint64_t> first_gap(const GonalForm& g, std::uint64_t bound, int threads) {
  require_coeffs(g);
  if (g.coeffs.size() != 3) {
    for (std::uint64_t k = 0; k <= bound; ++k) {
      if (!direct_represents(g, 0, Integer(static_cast<unsigned long>(k)))) return k;
    }
    return std::nullopt;
  }
  const GonalCoset gc = to_coset(g);
  const EllipsoidKernel kernel(gc.coset());
  const std::uint64_t first = std::min<std::uint64_t>(bound, 100);
  for (std::uint64_t stage : {first, bound}) {
    const Integer top = gc.map(Integer(static_cast<unsigned long>(stage)));
    if (!top.fits_ulong_p()) throw Error(ErrorKind::OutOfRange, "bound too large");
    const ValueTable table = kernel.tabulate(top.get_ui(), threads);
    if (auto gap = gap_in_table(gc, table, stage)) return gap;
    if (stage == bound) break;
  }
  return std::nullopt;
}

bool is_universal_up_to(const GonalForm& g, std::uint64_t bound, int threads) {
  return !first_gap(g, bound, threads).has_value();
}

RegularityVerdict is_regular_up_to(const GonalForm& g, std::uint64_t bound, int threads) {
  require_coeffs(g);
  if (g.coeffs.size() != 3) {
    throw Error(ErrorKind::InvalidArgument, "regularity needs a ternary form");
  }
  const auto [c, divisor] = primitive_coset(g);
  const Integer top = to_coset(g).map(Integer(static_cast<unsigned long>(bound))) / divisor;
  if (!top.fits_ulong_p()) throw Error(ErrorKind::OutOfRange, "bound too large");
  return check_regular(c, top.get_ui(), threads);
}

std::vector<GonalForm> universal_scan(int m, std::int64_t max_coeff, std::uint64_t bound,
                                      int threads) {
  require_order(m);
  if (threads == 0) threads = default_threads();
  std::vector<GonalForm> candidates;
  for (std::int64_t a = 1; a <= max_coeff; ++a) {
    for (std::int64_t b = a; b <= max_coeff; ++b) {
      for (std::int64_t c = b; c <= max_coeff; ++c) {
        GonalForm g{m, {Integer(static_cast<long>(a)), Integer(static_cast<long>(b)),
                        Integer(static_cast<long>(c))}};
        if (is_primitive(g)) candidates.push_back(std::move(g));
      }
    }
  }
  const long n = static_cast<long>(candidates.size());
  std::vector<char> universal(candidates.size(), 0);
  std::vector<std::exception_ptr> errors(candidates.size());
#pragma omp parallel for schedule(dynamic, 4) num_threads(threads) if (threads > 1)
  for (long i = 0; i < n; ++i) {
    try {
      universal[static_cast<std::size_t>(i)] =
          is_universal_up_to(candidates[static_cast<std::size_t>(i)], bound, 1) ? 1 : 0;
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  std::vector<GonalForm> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    if (universal[i]) out.push_back(candidates[i]);
  }
  return out;
}

}  // namespace regcoset
