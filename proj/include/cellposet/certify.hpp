#pragma once

#include <string>
#include <vector>

#include "cellposet/hvector.hpp"
#include "cellposet/poset.hpp"
#include "cellposet/trace.hpp"

namespace cellposet {

struct Certificate {
  SimplicialPoset poset;
  ConstructionTrace trace;
  HVector claimed_h;
};

struct CertifyCheck {
  std::string name;  // "(a) replay", ... "(h) sp-closure"
  bool pass = false;
  std::string detail;
};

struct CertifyReport {
  bool overall = false;
  std::vector<CertifyCheck> checks;
  const CertifyCheck* find(char letter) const;
  std::string summary() const;
};

// Executes the trace: generators, then glues. Every intermediate is
// validated, and every glued ideal must be certified constructible --
// delta-shaped ideals are accepted directly, anything else must admit a
// shelling (found by exact backtracking search).
SimplicialPoset replay(const ConstructionTrace& trace);

// Independent ball certification:
//   (a) replay(trace) equals the poset, canonically
//   (b) validate passes
//   (c) h_vector equals the claimed h
//   (d) pseudomanifold: every rank d-1 element has at most two covers
//   (e) boundary nonempty (d >= 2) and h(boundary) = boundary_h(claimed)
//   (f) check_sphere(h(boundary)) admissible
//   (g) check_ball(claimed) admissible
//   (h) sp-closure facet count identity and check_sphere(h(SP)) admissible
// For d = 1 (a point), (e) expects the conventional empty boundary with
// h = (1) and (h) holds vacuously.
CertifyReport certify_ball(const Certificate& cert);

struct SweepRow {
  HVector h;
  bool probe = false;       // fixed near-miss vector, outside the family
  bool admissible = false;
  std::string failing;      // comma-separated condition numbers
  bool certified = false;   // admissible rows only
  std::string certify_fail; // first failing certify check, if any
  long long facets = 0;
  long long element_count = 0;
  long long wall_us = 0;
};

struct SweepReport {
  int d_max = 0;
  long long facet_max = 0;
  std::vector<SweepRow> rows;
  // failure counts per condition over the enumerated family (probes excluded)
  std::vector<long long> condition_failures;  // index 1..7
  long long admissible_count = 0;
  long long inadmissible_count = 0;
  bool all_certified = false;

  std::string to_tsv() const;           // full table
  std::string data_columns_tsv() const; // table minus wall-time, for determinism checks
};

// Enumerates every h with h_0 = 1, h_d = 0, h_i >= 0, sum <= facet_max,
// 1 <= d <= d_max (lexicographic within each d). Admissible vectors are
// realized and certified; inadmissible ones get their failing conditions
// recorded. A small fixed probe block (vectors violating condition (1),
// which the family itself cannot produce) is appended and flagged.
SweepReport cross_check_small(int d_max, long long facet_max);

}  // namespace cellposet
