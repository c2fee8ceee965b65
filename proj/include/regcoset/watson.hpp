#pragma once

#include <cstdint>
#include <vector>

#include "regcoset/coset.hpp"

namespace regcoset {

/// Basis (rows, in L-coordinates) of
/// Lambda_m(L) = {x in L : Q(x) = 0 and 2B(x, e_i) = 0 mod m for all i}.
/// Entries of gram must be m-integral (denominators prime to m).
IMat3 lambda_sublattice(const Mat3& gram, std::uint64_t m);

/// Generator of the norm ideal of the lattice with this Gram matrix.
Rational lattice_norm(const Mat3& gram);

struct WatsonMap {
  Mat3 gram;      // Gram of lambda_p(L) on the basis below, scaled by p^-i
  IMat3 basis;    // basis of Lambda_p(L) in L-coordinates
  int scale = 0;  // i: norm of Lambda_p(L) is p^i times the norm of L
  int drop = 0;   // t: d(lambda_p(L)) = d(L) / p^t
};

WatsonMap watson_map(const Mat3& gram, std::uint64_t p);

struct WatsonStep {
  std::uint64_t p = 0;
  Coset input;
  Coset output;          // lambda_p(L) + p^j v in the basis of Lambda_p(L)
  Coset output_reduced;  // canonical form of output
  int i = 0;
  std::uint64_t j = 0;
  int t = 0;
};

WatsonStep coset_descend(const Coset& c, std::uint64_t p);

struct DescentChain {
  Coset result;
  std::vector<WatsonStep> steps;
};

/// Descends at the smallest odd prime p not dividing the conductor where the
/// coset does not behave well, until no such prime remains.
DescentChain descend_chain(const Coset& c);

}  // namespace regcoset
