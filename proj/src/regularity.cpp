#include "regcoset/regularity.hpp"

#include <omp.h>

#include <algorithm>
#include <exception>

#include "regcoset/error.hpp"
#include "regcoset/kernel.hpp"
#include "regcoset/padic.hpp"
#include "regcoset/polygonal.hpp"
#include "regcoset/reduction.hpp"

namespace regcoset {

namespace {

template <class F>
void parallel_each(std::size_t n, int threads, F&& body) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads) if (threads > 1)
  for (long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::vector<Vec3> shifts_with_conductor(const Integer& c0) {
  std::vector<Vec3> out;
  if (!c0.fits_slong_p() || c0 > 1000) throw Error(ErrorKind::OutOfRange, "conductor too large");
  const long c = c0.get_si();
  for (long i = 0; i < c; ++i) {
    for (long j = 0; j < c; ++j) {
      for (long k = 0; k < c; ++k) {
        Vec3 v{Rational(i, c), Rational(j, c), Rational(k, c)};
        for (Rational& x : v) x.canonicalize();
        if (conductor(Coset{identity3(), v}) == c0) out.push_back(v);
      }
    }
  }
  return out;
}

bool census_order(const CensusRecord& a, const CensusRecord& b) {
  if (a.discriminant != b.discriminant) return a.discriminant < b.discriminant;
  return coset_less(a.coset, b.coset);
}

}  // namespace

std::string to_string(RegularityStatus s) {
  return s == RegularityStatus::RegularUpToN ? "regular_up_to_N" : "irregular";
}

RegularityStatus parse_status(const std::string& s) {
  if (s == "regular_up_to_N") return RegularityStatus::RegularUpToN;
  if (s == "irregular") return RegularityStatus::Irregular;
  throw Error(ErrorKind::ParseError, "unknown status '" + s + "'");
}

std::string to_string(CensusFamily f) {
  switch (f) {
    case CensusFamily::All: return "all";
    case CensusFamily::Diagonal: return "diagonal";
    case CensusFamily::Gonal: return "gonal";
  }
  return "all";
}

CensusFamily parse_family(const std::string& s) {
  if (s == "all") return CensusFamily::All;
  if (s == "diagonal") return CensusFamily::Diagonal;
  if (s == "gonal") return CensusFamily::Gonal;
  throw Error(ErrorKind::ParseError, "unknown census family '" + s + "'");
}

bool coset_less(const Coset& a, const Coset& b) {
  const int g = compare(a.gram, b.gram);
  if (g != 0) return g < 0;
  return compare(a.shift, b.shift) < 0;
}

GenusAnswer genus_represents(const Coset& c, const Integer& a) {
  GenusAnswer out;
  out.real = a >= 0;
  out.represented = out.real;
  for (std::uint64_t p : relevant_primes(c)) {
    const bool ok = local_represents(c, p, a);
    out.certificates.push_back({p, ok});
    out.represented = out.represented && ok;
  }
  return out;
}

RegularityVerdict check_regular(const Coset& c, std::uint64_t bound, int threads) {
  if (!is_primitive(c)) throw Error(ErrorKind::NotPrimitive, "coset is not primitive");
  RegularityVerdict v;
  v.bound = bound;

  std::vector<char> genus(bound + 1, 1);
  const std::vector<std::uint64_t> primes = relevant_primes(c);
  for (std::uint64_t p : primes) {
    LocalSolver solver(c, p);
    for (std::uint64_t a = 0; a <= bound; ++a) {
      if (genus[a] && !solver.represents(Integer(static_cast<unsigned long>(a)))) genus[a] = 0;
    }
  }
  const ValueTable table = EllipsoidKernel(c).tabulate(bound, threads);

  for (std::uint64_t a = 0; a <= bound; ++a) {
    const bool global = table.counts[a] != 0;
    if (global && !genus[a]) {
      internal_assert_failed(std::to_string(a) + " is represented but not by the genus");
    }
    v.genus_count += genus[a] ? 1 : 0;
    v.global_count += global ? 1 : 0;
    if (genus[a] && !global && !v.witness) v.witness = a;
  }
  if (v.witness) {
    v.status = RegularityStatus::Irregular;
    for (std::uint64_t p : primes) v.witness_certificates.push_back({p, true});
  }
  return v;
}

std::vector<CensusRecord> census(const CensusConfig& config, const CosetSet& skip, int threads) {
  if (threads == 0) threads = default_threads();
  if (config.conductor < 1) throw Error(ErrorKind::InvalidArgument, "conductor must be positive");
  std::vector<Coset> raw;
  const std::int64_t h = config.coeff_bound;

  auto admit = [&](const Coset& c) {
    if (!is_positive_definite(c.gram)) return;
    if (det(c.gram) > config.disc_bound) return;
    if (!is_integral(c) || !is_primitive(c)) return;
    raw.push_back(c);
  };

  if (config.family == CensusFamily::Gonal) {
    if (gonal_conductor(config.m) == config.conductor) {
      for (std::int64_t a = 1; a <= h; ++a) {
        for (std::int64_t b = a; b <= h; ++b) {
          for (std::int64_t c = b; c <= h; ++c) {
            const GonalForm g{config.m, {Integer(static_cast<long>(a)),
                                         Integer(static_cast<long>(b)),
                                         Integer(static_cast<long>(c))}};
            if (!is_primitive(g)) continue;
            admit(primitive_coset(g).first);
          }
        }
      }
    }
  } else {
    const std::vector<Vec3> shifts = shifts_with_conductor(config.conductor);
    const bool diagonal = config.family == CensusFamily::Diagonal;
    for (std::int64_t a = 1; a <= h; ++a) {
      for (std::int64_t b = a; b <= h; ++b) {
        for (std::int64_t c = b; c <= h; ++c) {
          if (Rational(a * b * c) > config.disc_bound * 8 && !diagonal) continue;
          const std::int64_t r12 = diagonal ? 0 : a, r13 = diagonal ? 0 : a, r23 = diagonal ? 0 : b;
          for (std::int64_t e12 = -r12; e12 <= r12; ++e12) {
            for (std::int64_t e13 = -r13; e13 <= r13; ++e13) {
              for (std::int64_t e23 = -r23; e23 <= r23; ++e23) {
                Mat3 g{Vec3{Rational(a), Rational(e12, 2), Rational(e13, 2)},
                       Vec3{Rational(e12, 2), Rational(b), Rational(e23, 2)},
                       Vec3{Rational(e13, 2), Rational(e23, 2), Rational(c)}};
                for (auto& row : g) {
                  for (Rational& x : row) x.canonicalize();
                }
                if (!is_positive_definite(g) || !is_minkowski_reduced(g)) continue;
                if (det(g) > config.disc_bound) continue;
                for (const Vec3& v : shifts) admit(Coset{g, v});
              }
            }
          }
        }
      }
    }
  }

  std::vector<Coset> canonical(raw.size());
  parallel_each(raw.size(), threads, [&](std::size_t i) { canonical[i] = reduce(raw[i]).coset; });
  std::sort(canonical.begin(), canonical.end(), coset_less);
  canonical.erase(std::unique(canonical.begin(), canonical.end()), canonical.end());
  std::erase_if(canonical, [&](const Coset& c) { return skip.count(c) != 0; });

  std::vector<CensusRecord> records(canonical.size());
  parallel_each(canonical.size(), threads, [&](std::size_t i) {
    CensusRecord& r = records[i];
    r.coset = canonical[i];
    r.conductor = conductor(r.coset);
    r.discriminant = discriminant(r.coset);
    r.verdict = check_regular(r.coset, config.bound, 1);
    r.descent = descend_chain(r.coset).steps;
  });
  std::sort(records.begin(), records.end(), census_order);
  return records;
}

IdentityReport verify_counting_identity(std::uint64_t n_max, int threads) {
  const std::uint64_t top = 8 * n_max + 5;
  const Rational half(1, 2);
  const ValueTable tri =
      EllipsoidKernel(diagonal_coset(4, 4, 12, Vec3{half, half, half})).tabulate(top, threads);
  const ValueTable t1 = EllipsoidKernel(diagonal_coset(1, 1, 3)).tabulate(top, threads);
  const ValueTable t2 = EllipsoidKernel(diagonal_coset(1, 1, 12)).tabulate(top, threads);
  IdentityReport report;
  for (std::uint64_t n = 0; n <= n_max; ++n) {
    const std::uint64_t v = 8 * n + 5;
    IdentityRow row{n, tri.counts[v], t1.counts[v], t2.counts[v]};
    report.difference_holds = report.difference_holds && row.r + row.r2 == row.r1;
    report.ratio_holds = report.ratio_holds && row.r1 == 2 * row.r2;
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace regcoset
