#include "regcoset/arith.hpp"

#include <cctype>

#include "regcoset/error.hpp"

namespace regcoset {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::SingularGram: return "SingularGram";
    case ErrorKind::NotComplete: return "NotComplete";
    case ErrorKind::NotUnimodular: return "NotUnimodular";
    case ErrorKind::NotReduced: return "NotReduced";
    case ErrorKind::NotPrimitive: return "NotPrimitive";
    case ErrorKind::DenominatorAtP: return "DenominatorAtP";
    case ErrorKind::NotIntegralLattice: return "NotIntegralLattice";
    case ErrorKind::PrimeDividesNorm: return "PrimeDividesNorm";
    case ErrorKind::EvenPrime: return "EvenPrime";
    case ErrorKind::BehavesWellAtP: return "BehavesWellAtP";
    case ErrorKind::PrimeDividesConductor: return "PrimeDividesConductor";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::InternalAssertion: return "InternalAssertion";
  }
  return "Unknown";
}

namespace {

bool is_decimal_integer(std::string_view s) {
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
  if (s.empty()) return false;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const auto slash = text.find('/');
  const std::string_view num = text.substr(0, slash);
  const std::string_view den =
      slash == std::string_view::npos ? std::string_view("1") : text.substr(slash + 1);
  if (!is_decimal_integer(num) || !is_decimal_integer(den) || den.front() == '-' ||
      den.front() == '+') {
    throw Error(ErrorKind::ParseError, "malformed rational '" + std::string(text) + "'");
  }
  std::string num_str(num);
  if (num_str.front() == '+') num_str.erase(0, 1);
  Integer n(num_str, 10);
  Integer d(std::string(den), 10);
  if (d == 0) throw Error(ErrorKind::ParseError, "zero denominator in '" + std::string(text) + "'");
  Rational q(n, d);
  q.canonicalize();
  return q;
}

std::string format_rational(const Rational& input) {
  Rational value = input;
  value.canonicalize();
  if (value.get_den() == 1) return value.get_num().get_str();
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Integer floor(const Rational& value) {
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Integer ceil(const Rational& value) {
  Integer out;
  mpz_cdiv_q(out.get_mpz_t(), value.get_num_mpz_t(), value.get_den_mpz_t());
  return out;
}

Rational rational_gcd(const Rational& a, const Rational& b) {
  // gcd(n1/d1, n2/d2) = gcd(n1*d2, n2*d1) / (d1*d2)
  Integer num;
  const Integer lhs = a.get_num() * b.get_den();
  const Integer rhs = b.get_num() * a.get_den();
  mpz_gcd(num.get_mpz_t(), lhs.get_mpz_t(), rhs.get_mpz_t());
  Rational out(num, a.get_den() * b.get_den());
  out.canonicalize();
  return out;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

int ord_p(const Integer& value, unsigned long p) {
  if (value == 0) return kInfiniteOrder;
  Integer rest = value;
  int count = 0;
  while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
    mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    ++count;
  }
  return count;
}

int ord_p(const Rational& value, unsigned long p) {
  if (value == 0) return kInfiniteOrder;
  return ord_p(value.get_num(), p) - ord_p(value.get_den(), p);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_divisors(const Integer& n) {
  std::vector<std::uint64_t> out;
  Integer rest = abs(n);
  if (rest == 0) return out;
  for (unsigned long d = 2; Integer(d) * d <= rest; ++d) {
    if (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
      out.push_back(d);
      while (mpz_divisible_ui_p(rest.get_mpz_t(), d)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), d);
      }
    }
  }
  if (rest > 1) {
    if (!rest.fits_ulong_p()) {
      throw Error(ErrorKind::OutOfRange, "prime factor exceeds 64 bits");
    }
    out.push_back(rest.get_ui());
  }
  return out;
}

Integer isqrt(const Integer& n) {
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

Integer ipow(const Integer& base, unsigned long exponent) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent);
  return out;
}

Integer mod_rational(const Rational& value, const Integer& modulus) {
  Integer inverse;
  if (mpz_invert(inverse.get_mpz_t(), value.get_den_mpz_t(), modulus.get_mpz_t()) == 0) {
    if (modulus == 1) return 0;
    throw Error(ErrorKind::DenominatorAtP,
                "denominator of " + format_rational(value) + " is not invertible mod " +
                    modulus.get_str());
  }
  Integer out = value.get_num() * inverse;
  mpz_fdiv_r(out.get_mpz_t(), out.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t m) {
  if (m == 1) return 1;
  std::uint64_t power = a % m;
  for (std::uint64_t j = 1; j <= m; ++j) {
    if (power == 1) return j;
    power = static_cast<std::uint64_t>((static_cast<unsigned __int128>(power) * a) % m);
  }
  throw Error(ErrorKind::InvalidArgument, "base is not invertible modulo m");
}

}  // namespace regcoset
