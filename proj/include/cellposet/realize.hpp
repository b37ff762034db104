#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cellposet/window.hpp"

namespace cellposet {

// boolean_algebra(d) with its full boundary as the window (k = d).
WindowedBall seed_ball(int d);

// Attach two rank-d simplexes: the first along the sub-window of faces not
// containing {1..i}, the second along the fresh simplex faces not containing
// {i+1..i+j}. Requires 1 <= i <= window.k and 1 <= j <= d-i. The h-vector
// gains exactly e_i + e_j and the new window has k = min(window.k, i+j);
// both facts are checked at runtime, as is the new window's containment in
// the new boundary.
WindowedBall glue_step(const WindowedBall& w, int i, int j);

// Repeated glue_step over the outer-to-inner pairs of `h`. Requires h
// nonnegative with h_0 = 0, boundary_h(h) nonnegative, even entry sum, and
// window.k >= init_number(h). The result has h(out) = h(in) + h and window
// k = min(window.k, width(h)).
WindowedBall realize_even(const WindowedBall& w, const HVector& h);

// Hypotheses shared by the seam construction: n <= d/2, d-n <= m < d,
// sum h = d, h_i = 1 for i < d-n, h_i > 0 for d-n <= i <= m, h_i = 0 above m.
void require_seam_hypotheses(int d, int n, int m, const HVector& h);

// The set of vertex pairs {p,q} (p in [n], q in {n+1..d}) whose complements
// in [d+1] generate the gluing seam; returned sorted by (p,q).
std::vector<std::pair<int, int>> seam_pairs(int d, int n, int m, const HVector& h);

struct SeamComplex {
  LabeledPoset omega;             // complex on [d+1] generated by the pair complements
  std::vector<Id> shelling;       // facet order, verified
  std::vector<int> ks;            // verified k-sequence
  HVector h;                      // h of the seam (length d)
  std::vector<std::pair<int, int>> pairs;
};

// Builds the seam complex, verifies the (p,q)-order is a shelling with
// k = p+q-n-2 at each step, and checks its h-vector against the closed form
// and against the increment it must contribute to the glued ball.
SeamComplex build_seam(int d, int n, int m, const HVector& h);

// Glues delta(d+1, n)-shaped and delta(d+1, d-n)-shaped blocks along the
// seam, producing a ball with h-vector `h` whose boundary carries two
// facet-disjoint windows of shapes delta(d, n) and delta(d, d-n).
TwoWindowBall two_window_ball(int d, int n, const HVector& h);

// Strictly decreasing running minima of dh on d-m..n, threshold d-m.
// Requires dh[n] == 0 and dh[d-m-1] >= d-m; the last entry is always n.
std::vector<int> drop_sequence(const HVector& dh, int d, int m, int n);

struct Case3Details {
  int n = 0;
  int m = 0;
  std::vector<int> s;
  HVector gamma;
  HVector delta_bar;
  HVector h_prime;
  HVector h_dprime;
};

struct RealizeResult {
  SimplicialPoset poset;
  ConstructionTrace trace;
  int case_id = 0;       // 1..3
  bool even_sum = false; // case 1 splits on parity
  std::optional<Case3Details> case3;
};

// Constructs a ball with the given admissible h-vector. Dispatch:
//   case 1: boundary_h positive  -> pair gluings (even sums peel one middle
//           index and finish with a single simplex glue);
//   case 2: boundary_h has a zero, even sum -> peel e_0 + e_{d-n} and finish
//           with a simplex glued along delta(d, d-n);
//   case 3: boundary_h has a zero, odd sum -> split h through a two-window
//           ball and realize the remainders on its windows.
// Inadmissible input is refused with the condition report attached to the
// error message. Every intermediate identity is checked at runtime.
RealizeResult realize(const HVector& h);

}  // namespace cellposet
