#include "regcoset/watson.hpp"

#include "regcoset/error.hpp"
#include "regcoset/padic.hpp"
#include "regcoset/reduction.hpp"

namespace regcoset {

namespace {

// Residue of an m-integral rational mod m.
std::int64_t residue(const Rational& q, std::uint64_t m) {
  Integer r = mod_rational(q, Integer(static_cast<unsigned long>(m)));
  return static_cast<std::int64_t>(r.get_si());
}

void require_integral_at(const Mat3& gram, std::uint64_t m) {
  const Integer mm(static_cast<unsigned long>(m));
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      const Rational q = i == j ? gram[i][i] : Rational(2 * gram[i][j]);
      Integer g;
      const Integer den = q.get_den();
      mpz_gcd(g.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t());
      if (g != 1) {
        throw Error(ErrorKind::NotIntegralLattice,
                    "entry " + format_rational(q) + " is not integral at " + std::to_string(m));
      }
    }
  }
}

}  // namespace

IMat3 lambda_sublattice(const Mat3& gram, std::uint64_t m) {
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "modulus must be positive");
  if (m == 1) return identity_int3();
  require_integral_at(gram, m);
  const std::int64_t mm = static_cast<std::int64_t>(m);
  std::int64_t diag[3], twice[3][3];
  for (int i = 0; i < 3; ++i) {
    diag[i] = residue(gram[i][i], m);
    for (int j = 0; j < 3; ++j) twice[i][j] = residue(Rational(2 * gram[i][j]), m);
  }

  std::vector<IVec3> generators;
  for (int i = 0; i < 3; ++i) {
    IVec3 e{0, 0, 0};
    e[i] = static_cast<unsigned long>(m);
    generators.push_back(e);
  }
  for (std::int64_t x0 = 0; x0 < mm; ++x0) {
    for (std::int64_t x1 = 0; x1 < mm; ++x1) {
      for (std::int64_t x2 = 0; x2 < mm; ++x2) {
        const std::int64_t x[3] = {x0, x1, x2};
        bool ok = true;
        for (int i = 0; i < 3 && ok; ++i) {
          __int128 s = 0;
          for (int j = 0; j < 3; ++j) s += static_cast<__int128>(twice[i][j]) * x[j];
          ok = s % mm == 0;
        }
        if (!ok) continue;
        __int128 q = 0;
        for (int i = 0; i < 3; ++i) {
          q += static_cast<__int128>(diag[i]) * x[i] % mm * x[i];
          for (int j = i + 1; j < 3; ++j) q += static_cast<__int128>(twice[i][j]) * x[i] % mm * x[j];
        }
        if (q % mm != 0) continue;
        if (x0 == 0 && x1 == 0 && x2 == 0) continue;
        generators.push_back(IVec3{Integer(static_cast<long>(x0)), Integer(static_cast<long>(x1)),
                                   Integer(static_cast<long>(x2))});
      }
    }
  }
  return hermite_basis(generators);
}

Rational lattice_norm(const Mat3& gram) {
  Rational n = 0;
  for (int i = 0; i < 3; ++i) {
    n = rational_gcd(n, gram[i][i]);
    for (int j = i + 1; j < 3; ++j) n = rational_gcd(n, Rational(2 * gram[i][j]));
  }
  return n;
}

WatsonMap watson_map(const Mat3& gram, std::uint64_t p) {
  if (p == 2) throw Error(ErrorKind::EvenPrime, "Watson transformations need an odd prime");
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  const unsigned long pu = static_cast<unsigned long>(p);
  const Rational norm = lattice_norm(gram);
  if (ord_p(norm, pu) > 0) {
    throw Error(ErrorKind::PrimeDividesNorm,
                std::to_string(p) + " divides the norm " + format_rational(norm));
  }
  WatsonMap out;
  out.basis = lambda_sublattice(gram, p);
  const Mat3 b = to_rational(out.basis);
  const Mat3 sub = b * gram * transpose(b);
  const Rational ratio = lattice_norm(sub) / norm;
  const Rational pr{Integer(pu)};
  if (ratio == pr) {
    out.scale = 1;
  } else if (ratio == pr * pr) {
    out.scale = 2;
  } else {
    internal_assert_failed("norm of Lambda_p is " + format_rational(ratio) + " times the norm of L");
  }
  const Rational factor = out.scale == 1 ? pr : Rational(pr * pr);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) out.gram[i][j] = sub[i][j] / factor;
  }
  out.drop = ord_p(det(gram), pu) - ord_p(det(out.gram), pu);
  return out;
}

WatsonStep coset_descend(const Coset& c, std::uint64_t p) {
  if (p == 2) throw Error(ErrorKind::EvenPrime, "descent needs an odd prime");
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, std::to_string(p) + " is not prime");
  if (!is_primitive(c)) throw Error(ErrorKind::NotPrimitive, "coset is not primitive");
  const Integer cond = conductor(c);
  const unsigned long pu = static_cast<unsigned long>(p);
  if (mpz_divisible_ui_p(cond.get_mpz_t(), pu)) {
    throw Error(ErrorKind::PrimeDividesConductor,
                std::to_string(p) + " divides the conductor " + cond.get_str());
  }
  if (behaves_well(c, p)) {
    throw Error(ErrorKind::BehavesWellAtP, "coset behaves well at " + std::to_string(p));
  }
  if (!cond.fits_ulong_p()) throw Error(ErrorKind::OutOfRange, "conductor too large");

  WatsonStep step;
  step.p = p;
  step.input = c;
  const WatsonMap map = watson_map(c.gram, p);
  step.i = map.scale;
  step.t = map.drop;
  step.j = multiplicative_order(p % cond.get_ui(), cond.get_ui());

  const Integer pj = ipow(Integer(pu), static_cast<unsigned long>(step.j));
  const Vec3 moved = Rational(pj) * c.shift;
  // p^j v differs from v by an element of L and lies in Lambda_p(L) locally at p.
  ensure(is_integral(moved - c.shift), "p^j v - v is not in L");
  step.output.gram = map.gram;
  step.output.shift = moved * inverse(to_rational(map.basis));
  for (const Rational& x : step.output.shift) {
    ensure(!mpz_divisible_ui_p(x.get_den_mpz_t(), pu), "p^j v is not in Lambda_p(L) at p");
  }
  ensure(conductor(step.output) == cond, "descent changed the conductor");
  ensure(is_primitive(step.output), "descent lost primitivity");
  step.output_reduced = reduce(step.output).coset;
  return step;
}

DescentChain descend_chain(const Coset& c) {
  DescentChain chain;
  chain.result = c;
  for (int guard = 0; guard < 256; ++guard) {
    const Integer cond = conductor(chain.result);
    const Rational d = discriminant(chain.result);
    std::uint64_t chosen = 0;
    for (std::uint64_t p : prime_divisors(d.get_num())) {
      if (p == 2 || mpz_divisible_ui_p(cond.get_mpz_t(), static_cast<unsigned long>(p))) continue;
      if (!behaves_well(chain.result, p)) {
        chosen = p;
        break;
      }
    }
    if (chosen == 0) return chain;
    WatsonStep step = coset_descend(chain.result, chosen);
    chain.result = step.output_reduced;
    chain.steps.push_back(std::move(step));
  }
  internal_assert_failed("descent chain did not terminate");
}

}  // namespace regcoset
