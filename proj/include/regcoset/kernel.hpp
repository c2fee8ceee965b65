#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "regcoset/coset.hpp"

namespace regcoset {

/// Worker count used by the parallel kernels when a caller passes 0.
/// Initialized from REGCOSET_THREADS, else the OpenMP default.
int default_threads();
void set_default_threads(int threads);

/// Canonical witness order: smaller Euclidean norm first, then lexicographic.
bool witness_less(const Point& a, const Point& b);

/// Integer values 0..bound of a coset with representation counts and the
/// canonical witness for each represented value.
struct ValueTable {
  std::uint64_t bound = 0;
  std::vector<std::uint64_t> counts;
  std::vector<Point> witnesses;

  bool represented(std::uint64_t a) const { return a <= bound && counts[a] != 0; }
};

/// Exact lattice point enumeration in the ellipsoid {x : Q(x + v) <= B}.
/// The polynomial is scaled by its coefficient denominator D so that all
/// arithmetic is on integers; coordinates are eliminated in the order
/// x3, x2, x1 by completing the square.
class EllipsoidKernel {
 public:
  explicit EllipsoidKernel(const Coset& c);

  const Integer& scale() const { return scale_; }

  /// Visits every x with Q(x + v) <= bound, passing D * Q(x + v).
  void for_each(const Rational& bound,
                const std::function<void(const Point&, const Integer&)>& visit) const;

  /// All x with Q(x + v) = value.
  std::vector<Point> solutions(const Rational& value) const;

  /// Canonical witness for an integer value, if any.
  std::optional<Point> witness(const Integer& value) const;

  /// Parallel over x3 when threads != 1; threads == 0 means default_threads().
  ValueTable tabulate(std::uint64_t bound, int threads = 0) const;

  /// Single-threaded reference for tabulate.
  ValueTable tabulate_serial(std::uint64_t bound) const { return tabulate(bound, 1); }

 private:
  struct Row {
    std::int64_t x2, x3;
    Integer lo, hi, beta, gamma;
  };

  std::vector<std::int64_t> outer_range(const Integer& scaled_bound) const;
  void rows_for(std::int64_t x3, const Integer& scaled_bound, std::vector<Row>& out) const;
  void scan_row(const Row& row, const Integer& scaled_bound, std::uint64_t bound,
                ValueTable& table) const;

  Integer scale_;
  // Scaled coefficients: a_[i][i] of x_i^2, a_[i][j] (i < j) of x_i x_j.
  Integer a_[3][3];
  Integer b_[3];
  Integer c0_;
  // Elimination data.
  Integer p22_, p33_, p23_, p2_, p3_, p0_;
  Integer h3a_, h3b_, h3c_;
};

}  // namespace regcoset
