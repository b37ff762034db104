#pragma once

#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cellposet/errors.hpp"

namespace cellposet {

// h- and f-vectors are exact integer vectors. An h-vector of length d+1
// stores (h_0,...,h_d); an f-vector of the same length stores
// (f_{-1},f_0,...,f_{d-1}). All arithmetic is overflow-checked: a sum or
// product that does not fit 64 bits throws instead of wrapping.
using HVector = std::vector<long long>;

long long checked_add(long long a, long long b);
long long checked_mul(long long a, long long b);
long long binomial(int n, int k);

// The standard binomial transform pair: sum_i f_{i-1} (t-1)^{d-i} =
// sum_i h_i t^{d-i}. Round-trips exactly.
HVector h_from_f(const HVector& f);
HVector f_from_h(const HVector& h);

HVector unit_vector(int d, int i);  // e_i, length d+1
HVector add(const HVector& a, const HVector& b);
HVector sub(const HVector& a, const HVector& b);
long long vec_sum(const HVector& h);
bool nonnegative(const HVector& h);
bool is_zero(const HVector& h);

std::string format_hvector(const HVector& h);
HVector parse_hvector(const std::string& text);

// dh_i = (h_0+...+h_i) - (h_d+...+h_{d-i}) for i = 0..d-1. Defined for any
// integer vector; the output is always symmetric.
HVector boundary_h(const HVector& h);

struct ConditionFailure {
  int condition = 0;     // 1..7 for balls, 1..3 for spheres
  std::string witness;   // the indices that triggered the failure
};

struct ConditionReport {
  enum class Target { Sphere, Ball };
  Target target = Target::Ball;
  bool admissible = true;
  // Every condition is evaluated; failures are collected in (1)->(7) scan
  // order rather than short-circuited.
  std::vector<ConditionFailure> failures;

  int first_failing() const;  // 0 when admissible
  bool fails(int condition) const;
  std::set<int> failing_conditions() const;
  std::string summary() const;
};

// Sphere conditions: symmetry with h_0 = h_d = 1, nonnegativity, and the
// parity clause (an interior zero forces an even entry sum).
ConditionReport check_sphere(const HVector& h);

// Ball conditions (1)-(7); see README for the arithmetic statements.
ConditionReport check_ball(const HVector& h);

// Sorted index expansion of a nonnegative vector: index i repeated h_i
// times, ascending.
std::vector<int> sorted_indices(const HVector& h);

// Outer-to-inner pairs (i_1,i_a),(i_2,i_{a-1}),... of the sorted expansion.
// Requires a nonnegative vector with even entry sum.
std::vector<std::pair<int, int>> pairing_decomposition(const HVector& h);

// init = i_{a/2}; width = min over pairs of the index sums. For the zero
// vector: init = 0 and width = d (degenerate convention, so that a no-op
// gluing sequence keeps the full seed window).
int init_number(const HVector& h);
int width(const HVector& h);

// Independent characterization of width: the largest L such that
// h_0+...+h_k <= h_d+...+h_{L-k} for every k. Agrees with width() on every
// valid input; kept as a separate code path on purpose.
int width_formula(const HVector& h);

}  // namespace cellposet
