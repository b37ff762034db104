#include "cellposet/window.hpp"

#include <algorithm>
#include <set>

namespace cellposet {

namespace {

bool misses_block(std::uint32_t mask, int k) {
  const std::uint32_t kmask = (1u << k) - 1;
  return (mask & kmask) != kmask;
}

}  // namespace

void require_window(const SimplicialPoset& host, const Window& w, const std::string& context) {
  auto fail = [&](const std::string& why) {
    throw ConsistencyError(context + ": window check failed: " + why);
  };
  if (w.k < 1 || w.k > w.d) fail("k out of range");

  // exact domain: every nonempty face mask missing some of the first k bits
  std::size_t expected = 0;
  for (std::uint32_t m = 1; m < (1u << w.d); ++m)
    if (misses_block(m, w.k)) ++expected;
  if (w.label.size() != expected) fail("label domain has wrong size");

  std::set<Id> image;
  for (const auto& [mask, id] : w.label) {
    if (mask == 0 || mask >= (1u << w.d) || !misses_block(mask, w.k)) fail("mask outside domain");
    if (!host.has_id(id)) fail("label points to unknown element");
    if (host.rank_of(id) != __builtin_popcount(mask)) fail("label does not preserve rank");
    if (!image.insert(id).second) fail("label map is not injective");
  }

  // cover preservation both ways: the host covers of label(F) are exactly
  // the labels of the one-element-smaller subsets of F. This makes the image
  // an order ideal isomorphic to the complex.
  for (const auto& [mask, id] : w.label) {
    std::set<Id> expected_covers;
    for (int b = 0; b < w.d; ++b) {
      if (!(mask >> b & 1u)) continue;
      const std::uint32_t sub = mask & ~(1u << b);
      if (sub == 0) continue;
      auto it = w.label.find(sub);
      if (it == w.label.end()) fail("domain not downward closed");
      expected_covers.insert(it->second);
    }
    const Element& e = host.element_at(host.index_of(id));
    std::set<Id> actual(e.covers.begin(), e.covers.end());
    if (actual != expected_covers) fail("label does not preserve covers");
  }

  BoundaryResult b = boundary(host);
  std::set<Id> bset(b.ideal.members.begin(), b.ideal.members.end());
  for (Id id : image)
    if (!bset.count(id)) fail("window image leaves the boundary");
}

Window sub_window(const Window& w, int k2) {
  if (k2 < 1 || k2 > w.k) throw PreconditionError("sub_window: k out of range");
  Window out;
  out.d = w.d;
  out.k = k2;
  for (const auto& [mask, id] : w.label)
    if (misses_block(mask, k2)) out.label.emplace(mask, id);
  return out;
}

}  // namespace cellposet
