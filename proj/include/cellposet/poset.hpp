#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "cellposet/hvector.hpp"

namespace cellposet {

using Id = int;

struct Element {
  Id id = 0;
  int rank = 0;
  std::vector<Id> covers;  // ids one rank below; empty for rank-1 elements
};

struct ValidationReport {
  enum class Kind {
    None,
    DuplicateElementId,
    NegativeId,
    DanglingCover,
    DuplicateCover,
    RankSkew,      // a cover not one rank below its parent
    RankRange,     // rank outside [1, d] or d inconsistent
    Invariant,     // Boolean-interval violation
  };
  bool ok = true;
  bool structural = false;  // dangling ids, duplicate ids, duplicate covers
  Kind kind = Kind::None;
  std::string reason;
  Id witness = -1;
  explicit operator bool() const { return ok; }
};

// A simplicial poset given as a Hasse diagram. The minimal element is
// implicit and not stored. Values are immutable after construction; derived
// data (atom sets, upward covers) is precomputed when the raw data is
// structurally usable, so operations are cheap and thread-safe.
//
// Distinct elements may share a vertex set (two edges between the same two
// vertices is a legal 1-sphere), which is why the representation is the
// cover relation and atom sets are derived, never authoritative.
class SimplicialPoset {
public:
  SimplicialPoset() = default;
  SimplicialPoset(int d, std::vector<Element> elements);

  int d() const { return d_; }
  int size() const { return static_cast<int>(elements_.size()); }
  bool empty() const { return elements_.empty(); }
  const std::vector<Element>& elements() const { return elements_; }
  const Element& element_at(int index) const { return elements_[index]; }

  bool has_id(Id id) const { return index_.count(id) != 0; }
  int index_of(Id id) const;  // throws PreconditionError if absent
  int rank_of(Id id) const { return elements_[index_of(id)].rank; }

  // True when ids resolve uniquely and every cover sits one rank below its
  // parent; all topology accessors below require it.
  bool sound() const { return sound_; }
  // First structural/rank problem found at construction, if any.
  const std::optional<ValidationReport>& construction_issue() const { return issue_; }

  // Sorted ids of the rank-1 elements below the given element.
  const std::vector<Id>& atoms_of(Id id) const;
  // Ids of the elements covering the given element.
  const std::vector<Id>& upper_covers_of(Id id) const;
  // All ids <= the given element (excluding the implicit minimum), sorted.
  std::vector<Id> down_set(Id id) const;

  std::vector<Id> ids_of_rank(int rank) const;
  // Maximal elements (no upper cover).
  std::vector<Id> facet_ids() const;
  bool is_pure() const;  // all facets of rank d
  // True when ids are exactly 0..n-1 in storage order.
  bool dense_ids() const { return dense_; }

private:
  void require_sound() const;

  int d_ = 0;
  std::vector<Element> elements_;
  std::unordered_map<Id, int> index_;
  std::vector<std::vector<Id>> atoms_;
  std::vector<std::vector<Id>> uppers_;
  bool sound_ = false;
  bool dense_ = false;
  std::optional<ValidationReport> issue_;
};

// Full invariant check: structural soundness, rank grading, and the
// Boolean-interval property of every lower interval. Reports the first
// violation (elements scanned in id order) with a witness id.
ValidationReport validate(const SimplicialPoset& p);

// (f_{-1}, f_0, ..., f_{d-1}); f_{-1} = 1 for the implicit minimum.
HVector f_vector(const SimplicialPoset& p);
HVector h_vector(const SimplicialPoset& p);

struct OrderIdeal {
  std::vector<Id> members;  // sorted ids, downward closed in the parent
};

OrderIdeal order_ideal(const SimplicialPoset& p, const std::vector<Id>& generators);
bool is_order_ideal(const SimplicialPoset& p, const std::vector<Id>& members);

// Induced sub-poset on the given downward-closed member set. Ids are kept.
SimplicialPoset subposet(const SimplicialPoset& p, const std::vector<Id>& members, int d);

struct BoundaryResult {
  OrderIdeal ideal;
  SimplicialPoset view;  // the ideal as its own poset of rank d-1
};

// Order ideal generated by the rank d-1 elements covered by exactly one
// element. Throws PreconditionError when some rank d-1 element has three or
// more covers (not a pseudomanifold).
BoundaryResult boundary(const SimplicialPoset& p);

// Poset product with a 2-chain: every element doubles, plus one apex vertex.
// Preserves h-entries and appends a trailing zero.
SimplicialPoset cone(const SimplicialPoset& p);

// Cone off the boundary and identify along it, producing a boundary-less
// poset with facets(SP) = facets(P) + facets(boundary P). Rejects posets
// with empty boundary.
SimplicialPoset sp_closure(const SimplicialPoset& p);

using GluePairs = std::vector<std::pair<Id, Id>>;

struct GlueResult {
  SimplicialPoset poset;
  // Old id -> new id, per side. Left ids are preserved; identified right
  // elements map onto their left partner.
  std::vector<Id> map_left;
  std::vector<Id> map_right;
};

// Quotient of the disjoint union identifying pairs.first ~ pairs.second.
// The pair list must be a rank- and cover-preserving bijection between
// downward-closed subsets of the two operands; the output is re-validated.
GlueResult glue(const SimplicialPoset& left, const SimplicialPoset& right,
                const GluePairs& pairs);

// Generator posets carry their canonical subset labels as bitmasks over the
// ground set [ground] (bit i-1 set means i is in the face).
struct LabeledPoset {
  SimplicialPoset poset;
  int ground = 0;
  std::map<std::uint32_t, Id> id_of;
  std::vector<std::uint32_t> mask_of;  // indexed by id (ids are dense)
};

// All nonempty subsets of [d] ordered by inclusion: the rank-d simplex.
LabeledPoset boolean_algebra(int d);

// All F subset of [d] with F not containing {1,...,k}: the rank d-1 complex
// generated by the facets [d] minus {i}, i = 1..k. Requires 1 <= k <= d.
LabeledPoset delta_complex(int d, int k);

// True when the induced poset on `members` (a validated order ideal) is
// isomorphic to some delta_complex(rho+1, k): pure, vertex-determined, and
// the facets miss pairwise-distinct atoms of a common ground set.
bool is_delta_shaped(const SimplicialPoset& p, const std::vector<Id>& members);

struct ShellingResult {
  bool ok = false;
  int fail_step = -1;  // 1-based facet position where verification failed
  std::string reason;
  std::vector<int> ks;  // k_2..k_r
  HVector h;            // e_0 + sum of e_{k_i}
};

// Checks that each facet meets the union of its predecessors in an ideal
// generated by k_i codimension-one faces (k_i distinct missing atoms), and
// reads the h-vector off the k-sequence.
ShellingResult verify_shelling(const SimplicialPoset& p, const std::vector<Id>& facet_order);

// Exhaustive backtracking search for a shelling order of a pure poset.
// Intended for small ideals (the gluing seams); returns the order found.
std::optional<std::vector<Id>> find_shelling(const SimplicialPoset& p);

}  // namespace cellposet
