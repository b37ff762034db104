#include "cellposet/poset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cellposet {

namespace {

std::string describe_id(Id id) { return "element " + std::to_string(id); }

}  // namespace

SimplicialPoset::SimplicialPoset(int d, std::vector<Element> elements)
    : d_(d), elements_(std::move(elements)) {
  using Kind = ValidationReport::Kind;
  index_.reserve(elements_.size());
  for (int i = 0; i < size(); ++i) {
    const Element& e = elements_[i];
    if (e.id < 0) {
      issue_ = ValidationReport{false, true, Kind::NegativeId, "negative element id", e.id};
      return;
    }
    if (!index_.emplace(e.id, i).second) {
      issue_ = ValidationReport{false, true, Kind::DuplicateElementId, "duplicate element id", e.id};
      return;
    }
  }
  for (const Element& e : elements_) {
    std::set<Id> seen;
    for (Id c : e.covers) {
      if (!index_.count(c)) {
        issue_ = ValidationReport{false, true, Kind::DanglingCover,
                                  "dangling cover id " + std::to_string(c), e.id};
        return;
      }
      if (!seen.insert(c).second) {
        issue_ = ValidationReport{false, true, Kind::DuplicateCover,
                                  "duplicate cover entry " + std::to_string(c), e.id};
        return;
      }
    }
  }
  for (const Element& e : elements_) {
    for (Id c : e.covers) {
      if (elements_[index_.at(c)].rank != e.rank - 1) {
        issue_ = ValidationReport{false, false, Kind::RankSkew,
                                  "cover " + std::to_string(c) + " is not one rank below", e.id};
        return;
      }
    }
    if (e.rank < 1) {
      issue_ = ValidationReport{false, false, Kind::RankRange, "rank below 1", e.id};
      return;
    }
  }
  sound_ = true;
  dense_ = true;
  for (int i = 0; i < size(); ++i)
    if (elements_[i].id != i) {
      dense_ = false;
      break;
    }

  // atoms by increasing rank; uppers from the cover lists
  uppers_.assign(size(), {});
  atoms_.assign(size(), {});
  std::vector<int> by_rank(size());
  for (int i = 0; i < size(); ++i) by_rank[i] = i;
  std::sort(by_rank.begin(), by_rank.end(),
            [&](int a, int b) { return elements_[a].rank < elements_[b].rank; });
  for (int i : by_rank) {
    const Element& e = elements_[i];
    if (e.rank == 1) {
      atoms_[i] = {e.id};
      continue;
    }
    std::set<Id> acc;
    for (Id c : e.covers) {
      const auto& sub = atoms_[index_.at(c)];
      acc.insert(sub.begin(), sub.end());
    }
    atoms_[i].assign(acc.begin(), acc.end());
  }
  for (int i = 0; i < size(); ++i)
    for (Id c : elements_[i].covers) uppers_[index_.at(c)].push_back(elements_[i].id);
  for (auto& u : uppers_) std::sort(u.begin(), u.end());
}

int SimplicialPoset::index_of(Id id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw PreconditionError("unknown element id " + std::to_string(id));
  return it->second;
}

void SimplicialPoset::require_sound() const {
  if (!sound_)
    throw PreconditionError("operation on structurally broken poset: " +
                            (issue_ ? issue_->reason : std::string("unknown issue")));
}

const std::vector<Id>& SimplicialPoset::atoms_of(Id id) const {
  require_sound();
  return atoms_[index_of(id)];
}

const std::vector<Id>& SimplicialPoset::upper_covers_of(Id id) const {
  require_sound();
  return uppers_[index_of(id)];
}

std::vector<Id> SimplicialPoset::down_set(Id id) const {
  require_sound();
  std::vector<bool> seen(size(), false);
  std::vector<int> stack = {index_of(id)};
  std::vector<Id> out;
  seen[stack.back()] = true;
  while (!stack.empty()) {
    int i = stack.back();
    stack.pop_back();
    out.push_back(elements_[i].id);
    for (Id c : elements_[i].covers) {
      int j = index_.at(c);
      if (!seen[j]) {
        seen[j] = true;
        stack.push_back(j);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Id> SimplicialPoset::ids_of_rank(int rank) const {
  std::vector<Id> out;
  for (const Element& e : elements_)
    if (e.rank == rank) out.push_back(e.id);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Id> SimplicialPoset::facet_ids() const {
  require_sound();
  std::vector<Id> out;
  for (int i = 0; i < size(); ++i)
    if (uppers_[i].empty()) out.push_back(elements_[i].id);
  std::sort(out.begin(), out.end());
  return out;
}

bool SimplicialPoset::is_pure() const {
  for (Id f : facet_ids())
    if (rank_of(f) != d_) return false;
  return true;
}

ValidationReport validate(const SimplicialPoset& p) {
  using Kind = ValidationReport::Kind;
  if (p.construction_issue()) return *p.construction_issue();
  if (p.empty()) return {};
  if (p.d() < 1) return {false, false, Kind::RankRange, "d must be positive", -1};

  std::vector<Id> ids;
  ids.reserve(p.size());
  int max_rank = 0;
  for (const Element& e : p.elements()) {
    ids.push_back(e.id);
    max_rank = std::max(max_rank, e.rank);
  }
  std::sort(ids.begin(), ids.end());

  for (Id id : ids) {
    int r = p.rank_of(id);
    if (r > p.d()) return {false, false, Kind::RankRange, "rank exceeds d", id};
  }
  if (max_rank != p.d())
    return {false, false, Kind::RankRange,
            "maximal rank " + std::to_string(max_rank) + " differs from d", -1};

  // Boolean intervals: below each element of rank k sit exactly 2^k - 1
  // elements with pairwise distinct atom sets. Jointly over all elements
  // this pins every lower interval to a subset lattice.
  for (Id id : ids) {
    const int k = p.rank_of(id);
    if (k > 25) return {false, false, Kind::RankRange, "rank too large for interval check", id};
    const auto down = p.down_set(id);
    if (down.size() != (size_t{1} << k) - 1)
      return {false, false, Kind::Invariant,
              "interval size " + std::to_string(down.size()) + " != 2^" + std::to_string(k) + "-1",
              id};
    if (static_cast<int>(p.atoms_of(id).size()) != k)
      return {false, false, Kind::Invariant, "atom count differs from rank", id};
    std::set<std::vector<Id>> seen;
    for (Id t : down)
      if (!seen.insert(p.atoms_of(t)).second)
        return {false, false, Kind::Invariant,
                "two faces of " + describe_id(id) + " share an atom set", id};
  }
  return {};
}

HVector f_vector(const SimplicialPoset& p) {
  HVector f(p.d() + 1, 0);
  f[0] = 1;  // the implicit minimum
  for (const Element& e : p.elements()) {
    if (e.rank < 1 || e.rank > p.d()) throw PreconditionError("rank out of range in f_vector");
    f[e.rank] = checked_add(f[e.rank], 1);
  }
  return f;
}

HVector h_vector(const SimplicialPoset& p) { return h_from_f(f_vector(p)); }

OrderIdeal order_ideal(const SimplicialPoset& p, const std::vector<Id>& generators) {
  std::set<Id> members;
  for (Id g : generators)
    for (Id t : p.down_set(g)) members.insert(t);
  return OrderIdeal{std::vector<Id>(members.begin(), members.end())};
}

bool is_order_ideal(const SimplicialPoset& p, const std::vector<Id>& members) {
  std::set<Id> set(members.begin(), members.end());
  for (Id m : members) {
    for (Id c : p.elements()[p.index_of(m)].covers)
      if (!set.count(c)) return false;
  }
  return true;
}

SimplicialPoset subposet(const SimplicialPoset& p, const std::vector<Id>& members, int d) {
  std::set<Id> set(members.begin(), members.end());
  std::vector<Element> els;
  els.reserve(members.size());
  for (const Element& e : p.elements()) {
    if (!set.count(e.id)) continue;
    for (Id c : e.covers)
      if (!set.count(c))
        throw PreconditionError("subposet member set is not downward closed at id " +
                                std::to_string(e.id));
    els.push_back(e);
  }
  return SimplicialPoset(d, std::move(els));
}

BoundaryResult boundary(const SimplicialPoset& p) {
  const int d = p.d();
  std::vector<Id> gens;
  for (const Element& e : p.elements()) {
    if (e.rank != d - 1) continue;
    const size_t covers_above = p.upper_covers_of(e.id).size();
    if (covers_above >= 3)
      throw PreconditionError("not a pseudomanifold: " + describe_id(e.id) + " has " +
                              std::to_string(covers_above) + " covers");
    if (covers_above == 1) gens.push_back(e.id);
  }
  OrderIdeal ideal = order_ideal(p, gens);
  SimplicialPoset view = subposet(p, ideal.members, d - 1);
  return {std::move(ideal), std::move(view)};
}

SimplicialPoset cone(const SimplicialPoset& p) {
  const int n = p.size();
  std::vector<Element> els;
  els.reserve(2 * n + 1);
  auto base_id = [&](Id old) { return static_cast<Id>(p.index_of(old)); };
  for (int i = 0; i < n; ++i) {
    const Element& e = p.element_at(i);
    Element lower{i, e.rank, {}};
    for (Id c : e.covers) lower.covers.push_back(base_id(c));
    std::sort(lower.covers.begin(), lower.covers.end());
    els.push_back(std::move(lower));
  }
  els.push_back(Element{n, 1, {}});  // apex
  for (int i = 0; i < n; ++i) {
    const Element& e = p.element_at(i);
    Element upper{n + 1 + i, e.rank + 1, {i}};
    if (e.rank == 1) {
      upper.covers.push_back(n);
    } else {
      for (Id c : e.covers) upper.covers.push_back(n + 1 + base_id(c));
    }
    std::sort(upper.covers.begin(), upper.covers.end());
    els.push_back(std::move(upper));
  }
  return SimplicialPoset(p.d() + 1, std::move(els));
}

SimplicialPoset sp_closure(const SimplicialPoset& p) {
  BoundaryResult b = boundary(p);
  if (b.ideal.members.empty()) throw PreconditionError("sp_closure: empty boundary");

  const int n = p.size();
  std::vector<Element> els;
  els.reserve(n + 1 + b.ideal.members.size());
  auto base_id = [&](Id old) { return static_cast<Id>(p.index_of(old)); };
  for (int i = 0; i < n; ++i) {
    const Element& e = p.element_at(i);
    Element copy{i, e.rank, {}};
    for (Id c : e.covers) copy.covers.push_back(base_id(c));
    std::sort(copy.covers.begin(), copy.covers.end());
    els.push_back(std::move(copy));
  }
  els.push_back(Element{n, 1, {}});  // apex of the cone over the boundary
  std::map<Id, Id> cone_id;          // boundary id -> id of its coned copy
  Id next = n + 1;
  for (Id m : b.ideal.members) cone_id[m] = next++;
  for (Id m : b.ideal.members) {
    const Element& e = p.element_at(p.index_of(m));
    Element upper{cone_id[m], e.rank + 1, {base_id(m)}};
    if (e.rank == 1) {
      upper.covers.push_back(n);
    } else {
      for (Id c : e.covers) upper.covers.push_back(cone_id.at(c));
    }
    std::sort(upper.covers.begin(), upper.covers.end());
    els.push_back(std::move(upper));
  }
  return SimplicialPoset(p.d(), std::move(els));
}

GlueResult glue(const SimplicialPoset& left, const SimplicialPoset& right,
                const GluePairs& pairs) {
  if (!left.sound() || !right.sound()) throw PreconditionError("glue: operand not sound");
  if (!left.dense_ids() || !right.dense_ids())
    throw PreconditionError("glue: operands must carry dense ids");
  if (pairs.empty()) throw PreconditionError("glue: empty pair list");

  std::map<Id, Id> fwd, bwd;
  for (const auto& [a, b] : pairs) {
    if (!left.has_id(a) || !right.has_id(b))
      throw PreconditionError("glue: pair references unknown element");
    if (!fwd.emplace(a, b).second) throw PreconditionError("glue: left id repeated in pair list");
    if (!bwd.emplace(b, a).second) throw PreconditionError("glue: right id repeated in pair list");
  }
  std::vector<Id> left_members, right_members;
  for (const auto& [a, b] : fwd) left_members.push_back(a);
  for (const auto& [b, a] : bwd) right_members.push_back(b);
  if (!is_order_ideal(left, left_members))
    throw PreconditionError("glue: left side of the map is not an order ideal");
  if (!is_order_ideal(right, right_members))
    throw PreconditionError("glue: right side of the map is not an order ideal");
  for (const auto& [a, b] : fwd) {
    if (left.rank_of(a) != right.rank_of(b))
      throw PreconditionError("glue: map does not preserve rank at id " + std::to_string(a));
    std::set<Id> image;
    for (Id c : left.element_at(left.index_of(a)).covers) image.insert(fwd.at(c));
    std::set<Id> target(right.element_at(right.index_of(b)).covers.begin(),
                        right.element_at(right.index_of(b)).covers.end());
    if (image != target)
      throw PreconditionError("glue: map does not preserve covers at id " + std::to_string(a));
  }

  const int nl = left.size();
  GlueResult out;
  out.map_left.resize(nl);
  for (int i = 0; i < nl; ++i) out.map_left[i] = i;
  out.map_right.assign(right.size(), -1);
  Id next = nl;
  for (int i = 0; i < right.size(); ++i) {
    Id rid = right.element_at(i).id;
    auto it = bwd.find(rid);
    out.map_right[rid] = (it != bwd.end()) ? it->second : next++;
  }

  std::vector<Element> els;
  els.reserve(next);
  for (const Element& e : left.elements()) els.push_back(e);
  for (const Element& e : right.elements()) {
    if (bwd.count(e.id)) continue;
    Element moved{out.map_right[e.id], e.rank, {}};
    for (Id c : e.covers) moved.covers.push_back(out.map_right[c]);
    std::sort(moved.covers.begin(), moved.covers.end());
    els.push_back(std::move(moved));
  }
  std::sort(els.begin(), els.end(), [](const Element& a, const Element& b) { return a.id < b.id; });
  out.poset = SimplicialPoset(std::max(left.d(), right.d()), std::move(els));

  // The gluing of two simplicial posets along an ideal isomorphism is again
  // simplicial; re-validating guards against bugs in pair-list construction.
  ValidationReport rep = validate(out.poset);
  if (!rep.ok)
    throw ConsistencyError("glue output failed validation: " + rep.reason + " (witness " +
                           std::to_string(rep.witness) + ")");
  return out;
}

namespace {

LabeledPoset poset_from_masks(int ground, std::vector<std::uint32_t> masks, int d) {
  std::sort(masks.begin(), masks.end(), [](std::uint32_t a, std::uint32_t b) {
    int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
  LabeledPoset out;
  out.ground = ground;
  out.mask_of = masks;
  for (int i = 0; i < static_cast<int>(masks.size()); ++i) out.id_of[masks[i]] = i;
  std::vector<Element> els;
  els.reserve(masks.size());
  for (int i = 0; i < static_cast<int>(masks.size()); ++i) {
    std::uint32_t m = masks[i];
    Element e{i, __builtin_popcount(m), {}};
    for (int b = 0; b < ground; ++b) {
      if (!(m >> b & 1u)) continue;
      std::uint32_t sub = m & ~(1u << b);
      if (sub == 0) continue;
      e.covers.push_back(out.id_of.at(sub));
    }
    std::sort(e.covers.begin(), e.covers.end());
    els.push_back(std::move(e));
  }
  out.poset = SimplicialPoset(d, std::move(els));
  return out;
}

}  // namespace

LabeledPoset boolean_algebra(int d) {
  if (d < 1 || d > 25) throw PreconditionError("boolean_algebra: d out of range");
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << d); ++m) masks.push_back(m);
  return poset_from_masks(d, std::move(masks), d);
}

LabeledPoset delta_complex(int d, int k) {
  if (d < 1 || d > 25) throw PreconditionError("delta_complex: d out of range");
  if (k < 1 || k > d) throw PreconditionError("delta_complex: k out of range");
  const std::uint32_t kmask = (1u << k) - 1;
  std::vector<std::uint32_t> masks;
  for (std::uint32_t m = 1; m < (1u << d); ++m)
    if ((m & kmask) != kmask) masks.push_back(m);
  return poset_from_masks(d, std::move(masks), d - 1);
}

bool is_delta_shaped(const SimplicialPoset& p, const std::vector<Id>& members) {
  if (members.empty()) return false;
  std::set<Id> set(members.begin(), members.end());
  // maximal elements within the member set
  std::vector<Id> facets;
  for (Id m : members) {
    bool maximal = true;
    for (Id u : p.upper_covers_of(m))
      if (set.count(u)) {
        maximal = false;
        break;
      }
    if (maximal) facets.push_back(m);
  }
  const int rho = p.rank_of(facets.front());
  for (Id f : facets)
    if (p.rank_of(f) != rho) return false;
  // vertex-determined: distinct faces carry distinct atom sets
  std::set<std::vector<Id>> atom_sets;
  for (Id m : members)
    if (!atom_sets.insert(p.atoms_of(m)).second) return false;
  if (facets.size() == 1) return true;  // a full simplex boundary piece
  std::set<Id> ground;
  for (Id f : facets) {
    const auto& a = p.atoms_of(f);
    ground.insert(a.begin(), a.end());
  }
  // every facet must miss exactly one ground atom (distinctness follows
  // from the atom-set injectivity above)
  return static_cast<int>(ground.size()) == rho + 1;
}

ShellingResult verify_shelling(const SimplicialPoset& p, const std::vector<Id>& facet_order) {
  ShellingResult res;
  const int d = p.d();
  if (!p.is_pure()) {
    res.reason = "poset is not pure";
    return res;
  }
  {
    std::vector<Id> facets = p.facet_ids();
    std::vector<Id> given = facet_order;
    std::sort(given.begin(), given.end());
    if (facets != given) {
      res.reason = "facet order is not a permutation of the facets";
      return res;
    }
  }
  std::set<Id> shelled;
  for (size_t step = 0; step < facet_order.size(); ++step) {
    const Id f = facet_order[step];
    const auto down = p.down_set(f);
    if (step > 0) {
      std::vector<Id> meet;
      for (Id t : down)
        if (shelled.count(t)) meet.push_back(t);
      if (meet.empty()) {
        res.fail_step = static_cast<int>(step) + 1;
        res.reason = "facet meets no earlier facet";
        return res;
      }
      std::set<Id> meet_set(meet.begin(), meet.end());
      int k = 0;
      for (Id t : meet) {
        bool maximal = true;
        for (Id u : p.upper_covers_of(t))
          if (meet_set.count(u)) {
            maximal = false;
            break;
          }
        if (!maximal) continue;
        if (p.rank_of(t) != d - 1) {
          res.fail_step = static_cast<int>(step) + 1;
          res.reason = "intersection has a maximal face of rank " + std::to_string(p.rank_of(t));
          return res;
        }
        ++k;
      }
      res.ks.push_back(k);
    }
    for (Id t : down) shelled.insert(t);
  }
  res.ok = true;
  res.h.assign(d + 1, 0);
  res.h[0] = 1;
  for (int k : res.ks) res.h[k] = checked_add(res.h[k], 1);
  return res;
}

namespace {

bool shellable_rec(const SimplicialPoset& p, const std::vector<Id>& facets,
                   std::vector<bool>& used, std::vector<Id>& order, std::set<Id>& shelled,
                   std::set<std::vector<bool>>& dead) {
  if (order.size() == facets.size()) return true;
  if (dead.count(used)) return false;
  for (size_t i = 0; i < facets.size(); ++i) {
    if (used[i]) continue;
    const Id f = facets[i];
    const auto down = p.down_set(f);
    bool ok = true;
    if (!order.empty()) {
      std::vector<Id> meet;
      for (Id t : down)
        if (shelled.count(t)) meet.push_back(t);
      if (meet.empty()) {
        ok = false;
      } else {
        std::set<Id> meet_set(meet.begin(), meet.end());
        for (Id t : meet) {
          bool maximal = true;
          for (Id u : p.upper_covers_of(t))
            if (meet_set.count(u)) {
              maximal = false;
              break;
            }
          if (maximal && p.rank_of(t) != p.d() - 1) {
            ok = false;
            break;
          }
        }
      }
    }
    if (!ok) continue;
    used[i] = true;
    order.push_back(f);
    std::vector<Id> added;
    for (Id t : down)
      if (shelled.insert(t).second) added.push_back(t);
    if (shellable_rec(p, facets, used, order, shelled, dead)) return true;
    for (Id t : added) shelled.erase(t);
    order.pop_back();
    used[i] = false;
  }
  dead.insert(used);
  return false;
}

}  // namespace

std::optional<std::vector<Id>> find_shelling(const SimplicialPoset& p) {
  if (!p.is_pure()) return std::nullopt;
  const std::vector<Id> facets = p.facet_ids();
  if (facets.size() > 32) throw PreconditionError("find_shelling: too many facets for search");
  std::vector<bool> used(facets.size(), false);
  std::vector<Id> order;
  std::set<Id> shelled;
  std::set<std::vector<bool>> dead;
  if (shellable_rec(p, facets, used, order, shelled, dead)) return order;
  return std::nullopt;
}

}  // namespace cellposet
