#pragma once

#include <cstdint>
#include <map>

#include "cellposet/poset.hpp"
#include "cellposet/trace.hpp"

namespace cellposet {

// An explicitly labeled embedded copy of delta_complex(d, k) inside the
// boundary of a host poset. The label map is the bookkeeping that makes the
// gluing constructions deterministic: faces are addressed by subset mask,
// never re-discovered by search.
struct Window {
  int d = 0;
  int k = 0;
  std::map<std::uint32_t, Id> label;  // face mask -> host element id
};

// Checks every window invariant against the host: exact domain, injectivity,
// rank and cover preservation (so the image is an order ideal isomorphic to
// the complex), and containment in boundary(host). Throws ConsistencyError
// with the given context on failure. Never assumed, always checked.
void require_window(const SimplicialPoset& host, const Window& w, const std::string& context);

// Restriction to the sub-ideal of faces not containing {1..k2}; k2 <= w.k.
Window sub_window(const Window& w, int k2);

// A ball carried together with a boundary window and its build recipe.
struct WindowedBall {
  SimplicialPoset poset;
  Window window;
  ConstructionTrace trace;
  int trace_var = -1;  // SSA variable holding `poset`
};

// A ball whose boundary carries two facet-disjoint windows, of complementary
// shapes delta(d, n) and delta(d, d-n).
struct TwoWindowBall {
  SimplicialPoset poset;
  Window window1;  // k = n
  Window window2;  // k = d-n
  ConstructionTrace trace;
  int trace_var = -1;
};

}  // namespace cellposet
