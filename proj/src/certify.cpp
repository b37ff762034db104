#include "cellposet/certify.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <sstream>

#include "cellposet/io.hpp"
#include "cellposet/realize.hpp"

namespace cellposet {

const CertifyCheck* CertifyReport::find(char letter) const {
  for (const auto& c : checks)
    if (!c.name.empty() && c.name[1] == letter) return &c;
  return nullptr;
}

std::string CertifyReport::summary() const {
  std::ostringstream out;
  out << (overall ? "PASS" : "FAIL") << "\n";
  for (const auto& c : checks)
    out << "  " << (c.pass ? "ok  " : "FAIL") << " " << c.name
        << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
  return out.str();
}

SimplicialPoset replay(const ConstructionTrace& trace) {
  if (trace.steps.empty() || trace.result < 0 ||
      trace.result >= static_cast<int>(trace.steps.size()))
    throw PreconditionError("replay: empty trace or bad result variable");
  std::vector<SimplicialPoset> vars;
  vars.reserve(trace.steps.size());
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const TraceStep& s = trace.steps[i];
    switch (s.op) {
      case TraceStep::Op::Boolean:
        vars.push_back(boolean_algebra(s.d).poset);
        break;
      case TraceStep::Op::Delta:
        vars.push_back(delta_complex(s.d, s.k).poset);
        break;
      case TraceStep::Op::Glue: {
        if (s.a < 0 || s.b < 0 || s.a >= static_cast<int>(i) || s.b >= static_cast<int>(i))
          throw PreconditionError("replay: glue operand out of range at step " +
                                  std::to_string(i));
        const SimplicialPoset& left = vars[s.a];
        // A glue is a constructibility step only if the shared ideal is
        // itself certified constructible: a delta-shaped ideal is, and
        // anything else must admit a shelling (exact search).
        std::vector<Id> members;
        members.reserve(s.pairs.size());
        for (const auto& [a, b] : s.pairs) members.push_back(a);
        std::sort(members.begin(), members.end());
        if (!is_order_ideal(left, members))
          throw PreconditionError("replay: glued ideal is not downward closed at step " +
                                  std::to_string(i));
        if (!is_delta_shaped(left, members)) {
          int rho = 0;
          for (Id m : members) rho = std::max(rho, left.rank_of(m));
          SimplicialPoset view = subposet(left, members, rho);
          if (!find_shelling(view))
            throw PreconditionError(
                "replay: glued ideal is neither delta-shaped nor shellable at step " +
                std::to_string(i));
        }
        vars.push_back(glue(left, vars[s.b], s.pairs).poset);
        break;
      }
    }
    const ValidationReport rep = validate(vars.back());
    if (!rep.ok)
      throw PreconditionError("replay: step " + std::to_string(i) +
                              " produced an invalid poset: " + rep.reason);
  }
  return vars[trace.result];
}

CertifyReport certify_ball(const Certificate& cert) {
  CertifyReport rep;
  auto run = [&](const std::string& name, const std::function<std::pair<bool, std::string>()>& fn) {
    CertifyCheck c;
    c.name = name;
    try {
      auto [pass, detail] = fn();
      c.pass = pass;
      c.detail = detail;
    } catch (const std::exception& e) {
      c.pass = false;
      c.detail = e.what();
    }
    rep.checks.push_back(std::move(c));
  };
  const int d = static_cast<int>(cert.claimed_h.size()) - 1;

  run("(a) replay", [&]() -> std::pair<bool, std::string> {
    SimplicialPoset replayed = replay(cert.trace);
    if (canonically_equal(replayed, cert.poset)) return {true, ""};
    return {false, "trace replays to a different poset"};
  });
  run("(b) validate", [&]() -> std::pair<bool, std::string> {
    ValidationReport v = validate(cert.poset);
    if (v.ok) return {true, ""};
    return {false, v.reason + " (witness " + std::to_string(v.witness) + ")"};
  });
  run("(c) h-vector", [&]() -> std::pair<bool, std::string> {
    HVector got = h_vector(cert.poset);
    if (got == cert.claimed_h) return {true, ""};
    return {false, "computed " + format_hvector(got) + ", claimed " +
                       format_hvector(cert.claimed_h)};
  });
  run("(d) pseudomanifold", [&]() -> std::pair<bool, std::string> {
    for (const Element& e : cert.poset.elements()) {
      if (e.rank != cert.poset.d() - 1) continue;
      size_t c = cert.poset.upper_covers_of(e.id).size();
      if (c > 2)
        return {false, "element " + std::to_string(e.id) + " has " + std::to_string(c) +
                           " covers"};
    }
    return {true, ""};
  });
  run("(e) boundary h-vector", [&]() -> std::pair<bool, std::string> {
    BoundaryResult b = boundary(cert.poset);
    if (d >= 2 && b.ideal.members.empty()) return {false, "boundary is empty"};
    if (d == 1 && !b.ideal.members.empty()) return {false, "a point must have empty boundary"};
    HVector got = h_vector(b.view);
    HVector want = boundary_h(cert.claimed_h);
    if (got == want) return {true, d == 1 ? "empty boundary by convention" : ""};
    return {false, "boundary h " + format_hvector(got) + " != " + format_hvector(want)};
  });
  run("(f) boundary sphere conditions", [&]() -> std::pair<bool, std::string> {
    BoundaryResult b = boundary(cert.poset);
    ConditionReport r = check_sphere(h_vector(b.view));
    if (r.admissible) return {true, ""};
    return {false, r.summary()};
  });
  run("(g) ball conditions", [&]() -> std::pair<bool, std::string> {
    ConditionReport r = check_ball(cert.claimed_h);
    if (r.admissible) return {true, ""};
    return {false, r.summary()};
  });
  run("(h) sp-closure", [&]() -> std::pair<bool, std::string> {
    if (d == 1) return {true, "vacuous for a point"};
    BoundaryResult b = boundary(cert.poset);
    SimplicialPoset sp = sp_closure(cert.poset);
    const long long facets_p = f_vector(cert.poset).back();
    const long long facets_b = f_vector(b.view).back();
    const long long facets_sp = f_vector(sp).back();
    if (facets_sp != checked_add(facets_p, facets_b))
      return {false, "facet count " + std::to_string(facets_sp) + " != " +
                         std::to_string(facets_p) + " + " + std::to_string(facets_b)};
    ConditionReport r = check_sphere(h_vector(sp));
    if (!r.admissible) return {false, r.summary()};
    return {true, ""};
  });

  rep.overall = std::all_of(rep.checks.begin(), rep.checks.end(),
                            [](const CertifyCheck& c) { return c.pass; });
  return rep;
}

namespace {

void sweep_one(SweepRow& row) {
  const auto t0 = std::chrono::steady_clock::now();
  const ConditionReport rep = check_ball(row.h);
  row.admissible = rep.admissible;
  if (!rep.admissible) {
    std::ostringstream f;
    bool first = true;
    for (int c : rep.failing_conditions()) {
      if (!first) f << ",";
      f << c;
      first = false;
    }
    row.failing = f.str();
  } else {
    RealizeResult r = realize(row.h);
    Certificate cert{r.poset, r.trace, row.h};
    CertifyReport c = certify_ball(cert);
    row.certified = c.overall;
    if (!c.overall) {
      for (const auto& chk : c.checks)
        if (!chk.pass) {
          row.certify_fail = chk.name;
          break;
        }
    }
    row.facets = f_vector(r.poset).back();
    row.element_count = r.poset.size();
  }
  const auto t1 = std::chrono::steady_clock::now();
  row.wall_us = std::chrono::duration_cast<std::chrono::microseconds>(t1 - t0).count();
}

}  // namespace

std::string SweepReport::to_tsv() const {
  std::ostringstream out;
  out << "h\tverdict\tfailing\tfacets\telements\twall_us\n";
  for (const auto& r : rows) {
    out << format_hvector(r.h) << "\t";
    if (r.probe)
      out << "probe-inadmissible";
    else if (!r.admissible)
      out << "inadmissible";
    else
      out << (r.certified ? "certified" : "CERTIFY-FAILED " + r.certify_fail);
    out << "\t" << r.failing << "\t" << r.facets << "\t" << r.element_count << "\t" << r.wall_us
        << "\n";
  }
  out << "# admissible " << admissible_count << ", inadmissible " << inadmissible_count << "\n";
  for (int c = 1; c <= 7; ++c)
    out << "# condition (" << c << ") failures: " << condition_failures[c] << "\n";
  out << "# all admissible certified: " << (all_certified ? "yes" : "no") << "\n";
  return out.str();
}

std::string SweepReport::data_columns_tsv() const {
  std::ostringstream out;
  for (const auto& r : rows)
    out << format_hvector(r.h) << "\t" << r.probe << "\t" << r.admissible << "\t" << r.failing
        << "\t" << r.certified << "\t" << r.facets << "\t" << r.element_count << "\n";
  return out.str();
}

SweepReport cross_check_small(int d_max, long long facet_max) {
  if (d_max < 1 || facet_max < 1) throw PreconditionError("sweep bounds must be positive");
  SweepReport rep;
  rep.d_max = d_max;
  rep.facet_max = facet_max;
  rep.condition_failures.assign(8, 0);

  for (int d = 1; d <= d_max; ++d) {
    // family: h_0 = 1, h_d = 0, interior entries enumerated lexicographically
    HVector h(d + 1, 0);
    h[0] = 1;
    std::vector<SweepRow> rows;
    if (d == 1) {
      SweepRow row;
      row.h = h;
      rows.push_back(std::move(row));
    } else {
      HVector interior(d - 1, 0);
      std::function<void(int, long long)> rec = [&](int pos, long long sum) {
        if (pos == d - 1) {
          SweepRow row;
          row.h.assign(d + 1, 0);
          row.h[0] = 1;
          for (int i = 0; i < d - 1; ++i) row.h[i + 1] = interior[i];
          rows.push_back(std::move(row));
          return;
        }
        for (long long v = 0; sum + v <= facet_max; ++v) {
          interior[pos] = v;
          rec(pos + 1, sum + v);
        }
        interior[pos] = 0;
      };
      rec(0, 1);
    }
    for (auto& row : rows) {
      sweep_one(row);
      if (row.admissible)
        ++rep.admissible_count;
      else {
        ++rep.inadmissible_count;
        for (int c : check_ball(row.h).failing_conditions()) ++rep.condition_failures[c];
      }
      rep.rows.push_back(std::move(row));
    }
  }

  // fixed near-miss probes: the family cannot violate condition (1), so a
  // handful of out-of-family vectors keep that clause exercised
  const std::vector<HVector> probes = {
      {1, 0, 0, 1},    // h_d != 0
      {2, 0, 0, 0},    // h_0 != 1
      {1, -1, 1, 0},   // negative interior entry
      {0, 1, 0, 0},    // h_0 != 1
  };
  for (const HVector& p : probes) {
    SweepRow row;
    row.h = p;
    row.probe = true;
    sweep_one(row);
    rep.rows.push_back(std::move(row));
  }

  rep.all_certified = true;
  for (const auto& r : rep.rows)
    if (r.admissible && !r.certified) rep.all_certified = false;
  return rep;
}

}  // namespace cellposet
