#include "cellposet/realize.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace cellposet {

namespace {

std::uint32_t block_mask(int from, int len) {  // bits for {from..from+len-1}, 1-based
  return ((1u << len) - 1) << (from - 1);
}

void check(bool cond, const std::string& claim) {
  if (!cond) throw ConsistencyError("construction identity failed: " + claim);
}

}  // namespace

WindowedBall seed_ball(int d) {
  if (d < 1) throw PreconditionError("seed_ball: d must be positive");
  LabeledPoset b = boolean_algebra(d);
  WindowedBall out;
  out.poset = std::move(b.poset);
  out.window.d = d;
  out.window.k = d;
  const std::uint32_t full = (1u << d) - 1;
  for (const auto& [mask, id] : b.id_of)
    if (mask != full) out.window.label.emplace(mask, id);
  out.trace_var = out.trace.add_boolean(d);
  return out;
}

WindowedBall glue_step(const WindowedBall& w, int i, int j) {
  const int d = w.window.d;
  const int m = w.window.k;
  if (w.poset.d() != d) throw PreconditionError("glue_step: window/poset dimension mismatch");
  if (i < 1 || i > m) throw PreconditionError("glue_step: need 1 <= i <= window k");
  if (j < 1 || j > d - i) throw PreconditionError("glue_step: need 1 <= j <= d - i");
  const int ell = std::min(m, i + j);

  // first simplex, attached along the window faces missing some of {1..i}
  LabeledPoset a = boolean_algebra(d);
  GluePairs pairs_a;
  for (const auto& [mask, id] : w.window.label)
    if ((mask & block_mask(1, i)) != block_mask(1, i))
      pairs_a.emplace_back(id, a.id_of.at(mask));
  std::sort(pairs_a.begin(), pairs_a.end());
  GlueResult g1 = glue(w.poset, a.poset, pairs_a);

  // second simplex, attached along the first one's faces missing some of
  // {i+1..i+j}; identified faces are addressed through their representative
  LabeledPoset b = boolean_algebra(d);
  const std::uint32_t jblock = block_mask(i + 1, j);
  GluePairs pairs_b;
  for (const auto& [mask, id] : a.id_of)
    if ((mask & jblock) != jblock) pairs_b.emplace_back(g1.map_right[id], b.id_of.at(mask));
  std::sort(pairs_b.begin(), pairs_b.end());
  GlueResult g2 = glue(g1.poset, b.poset, pairs_b);

  WindowedBall out;
  out.trace = w.trace;
  const int ta = out.trace.add_boolean(d);
  const int t1 = out.trace.add_glue(w.trace_var, ta, pairs_a);
  const int tb = out.trace.add_boolean(d);
  out.trace_var = out.trace.add_glue(t1, tb, pairs_b);

  // new window: fresh-simplex faces where possible, surviving old-window
  // faces where not; where both apply the identifications must agree
  out.window.d = d;
  out.window.k = ell;
  const std::uint32_t iblock = block_mask(1, i);
  const std::uint32_t lblock = block_mask(i + 1, ell - i);  // empty when ell == i
  for (std::uint32_t mask = 1; mask < (1u << d); ++mask) {
    if ((mask & block_mask(1, ell)) == block_mask(1, ell)) continue;
    const bool misses_i = (mask & iblock) != iblock;
    const bool misses_l = ell > i && (mask & lblock) != lblock;
    Id id = -1;
    if (misses_i) id = g2.map_right[b.id_of.at(mask)];
    if (misses_l) {
      const Id via_old = g2.map_left[g1.map_left[w.window.label.at(mask)]];
      if (misses_i) check(via_old == id, "glue_step window branches disagree");
      if (id < 0) id = via_old;
    }
    check(id >= 0, "glue_step window face unreachable");
    out.window.label.emplace(mask, id);
  }
  out.poset = std::move(g2.poset);

  const HVector gained = sub(h_vector(out.poset), h_vector(w.poset));
  check(gained == add(unit_vector(d, i), unit_vector(d, j)),
        "glue_step must add exactly e_i + e_j to the h-vector");
  require_window(out.poset, out.window, "glue_step");
  return out;
}

WindowedBall realize_even(const WindowedBall& w, const HVector& h) {
  const int d = w.window.d;
  if (static_cast<int>(h.size()) != d + 1)
    throw PreconditionError("realize_even: length mismatch");
  if (!nonnegative(h)) throw PreconditionError("realize_even: negative entry");
  if (h[0] != 0) throw PreconditionError("realize_even: h_0 must be 0");
  if (!nonnegative(boundary_h(h)))
    throw PreconditionError("realize_even: boundary transform has a negative entry");
  if (vec_sum(h) % 2 != 0) throw PreconditionError("realize_even: odd entry sum");
  if (is_zero(h)) return w;
  if (w.window.k < init_number(h))
    throw PreconditionError("realize_even: window k below the initial number");

  const HVector h_start = h_vector(w.poset);
  WindowedBall cur = w;
  for (const auto& [p, q] : pairing_decomposition(h)) cur = glue_step(cur, p, q);

  check(h_vector(cur.poset) == add(h_start, h), "realize_even must add h exactly");
  check(cur.window.k == std::min(w.window.k, width(h)),
        "realize_even window must shrink to min(k, width)");
  return cur;
}

void require_seam_hypotheses(int d, int n, int m, const HVector& h) {
  auto bad = [](const std::string& why) { throw PreconditionError("seam hypotheses: " + why); };
  if (static_cast<int>(h.size()) != d + 1) bad("length mismatch");
  if (n < 1 || 2 * n > d) bad("need 1 <= n <= d/2");
  if (m < d - n || m >= d) bad("need d-n <= m < d");
  if (vec_sum(h) != d) bad("entries must sum to d");
  for (int i = 0; i < d - n; ++i)
    if (h[i] != 1) bad("h_i must be 1 below d-n");
  for (int i = d - n; i <= m; ++i)
    if (h[i] <= 0) bad("h_i must be positive on [d-n, m]");
  for (int i = m + 1; i <= d; ++i)
    if (h[i] != 0) bad("h_i must vanish above m");
}

namespace {

// alpha_l = h_{(d-n)+l-1} + ... + h_d  for l = 1..n+1
std::vector<long long> seam_alphas(int d, int n, const HVector& h) {
  std::vector<long long> alpha(n + 2, 0);
  for (int l = 1; l <= n + 1; ++l) {
    long long s = 0;
    for (int t = (d - n) + l - 1; t <= d; ++t) s = checked_add(s, h[t]);
    alpha[l] = s;
  }
  check(alpha[1] == n, "first seam tail sum must equal n");
  for (int l = 1; l <= n + 1; ++l)
    check(alpha[l] <= n - (l - 1), "seam tail sums must drop by at least one");
  return alpha;
}

}  // namespace

std::vector<std::pair<int, int>> seam_pairs(int d, int n, int m, const HVector& h) {
  require_seam_hypotheses(d, n, m, h);
  const auto alpha = seam_alphas(d, n, h);
  std::set<std::pair<int, int>> pairs;
  for (int p = 1; p <= n; ++p)
    for (int q = n + 1; q <= d; ++q)
      if (p + q <= d) pairs.emplace(p, q);
  for (int l = 1; l <= m - (d - n) + 1; ++l)
    for (int p = l; p <= l + static_cast<int>(alpha[l]) - 1; ++p) pairs.emplace(p, d + l - p);
  for (const auto& [p, q] : pairs)
    check(p >= 1 && p <= n && q >= n + 1 && q <= d, "seam pair out of range");
  return {pairs.begin(), pairs.end()};
}

SeamComplex build_seam(int d, int n, int m, const HVector& h) {
  SeamComplex out;
  out.pairs = seam_pairs(d, n, m, h);
  const auto alpha = seam_alphas(d, n, h);

  const std::uint32_t full = (1u << (d + 1)) - 1;
  std::set<std::uint32_t> masks;
  std::vector<std::uint32_t> facet_masks;
  for (const auto& [p, q] : out.pairs) {
    const std::uint32_t fm = full & ~(1u << (p - 1)) & ~(1u << (q - 1));
    facet_masks.push_back(fm);
    for (std::uint32_t sub = fm; sub; sub = (sub - 1) & fm) masks.insert(sub);
  }
  out.omega = [&] {
    std::vector<std::uint32_t> v(masks.begin(), masks.end());
    // rank d-1 complex on ground [d+1]
    std::sort(v.begin(), v.end(), [](std::uint32_t a, std::uint32_t b) {
      int pa = __builtin_popcount(a), pb = __builtin_popcount(b);
      return pa != pb ? pa < pb : a < b;
    });
    LabeledPoset lp;
    lp.ground = d + 1;
    lp.mask_of = v;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) lp.id_of[v[i]] = i;
    std::vector<Element> els;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) {
      Element e{i, __builtin_popcount(v[i]), {}};
      for (int bpos = 0; bpos <= d; ++bpos) {
        if (!(v[i] >> bpos & 1u)) continue;
        std::uint32_t sub = v[i] & ~(1u << bpos);
        if (sub) e.covers.push_back(lp.id_of.at(sub));
      }
      std::sort(e.covers.begin(), e.covers.end());
      els.push_back(std::move(e));
    }
    lp.poset = SimplicialPoset(d - 1, std::move(els));
    return lp;
  }();

  for (std::uint32_t fm : facet_masks) out.shelling.push_back(out.omega.id_of.at(fm));
  ShellingResult sh = verify_shelling(out.omega.poset, out.shelling);
  check(sh.ok, "seam facet order must be a shelling (" + sh.reason + ")");
  out.ks = sh.ks;
  out.h = sh.h;
  out.h.resize(d);  // rank d-1 poset

  // each step's intersection shape is pinned by its pair
  for (size_t t = 1; t < out.pairs.size(); ++t)
    check(out.ks[t - 1] == out.pairs[t].first + out.pairs[t].second - n - 2,
          "seam shelling k-sequence must follow the pair sums");

  // closed form for the seam h-vector
  for (int i = 0; i <= d - 1; ++i) {
    long long expect = 0;
    if (i <= n - 1)
      expect = i + 1;
    else if (i <= d - n - 1)
      expect = n;
    else
      expect = alpha[i - (d - n) + 2];
    check(out.h[i] == expect, "seam h-vector must match its closed form");
  }

  // the seam contributes g = h - (ones below n) - (ones below d-n) to the
  // glued ball: g_i = -h_i(seam) + h_{i-1}(seam)
  HVector g = h;
  for (int i = 0; i < n; ++i) g[i] -= 1;
  for (int i = 0; i < d - n; ++i) g[i] -= 1;
  for (int i = 0; i <= d; ++i) {
    const long long hs_i = (i <= d - 1) ? out.h[i] : 0;
    const long long hs_im1 = (i >= 1 && i - 1 <= d - 1) ? out.h[i - 1] : 0;
    check(-hs_i + hs_im1 == g[i], "seam increment identity failed at index " + std::to_string(i));
  }
  return out;
}

TwoWindowBall two_window_ball(int d, int n, const HVector& h) {
  int m = -1;
  for (int i = 0; i <= d; ++i)
    if (h[i] > 0) m = i;
  require_seam_hypotheses(d, n, m, h);
  SeamComplex seam = build_seam(d, n, m, h);

  LabeledPoset a = delta_complex(d + 1, n);
  LabeledPoset b = delta_complex(d + 1, d - n);

  // The second block's forbidden vertex set is {n+1..d}; its canonical faces
  // are carried over by the permutation that swaps the first d-n ground
  // vertices with the last n (fixing d+1).
  auto to_canonical_b = [&](std::uint32_t seam_face) {
    std::uint32_t out_mask = seam_face & (1u << d);  // keep the d+1 bit
    for (int x = 1; x <= d; ++x) {
      if (!(seam_face >> (x - 1) & 1u)) continue;
      const int y = (x > n) ? x - n : x + (d - n);  // inverse of the block swap
      out_mask |= 1u << (y - 1);
    }
    return out_mask;
  };

  GluePairs pairs;
  for (std::uint32_t mask : seam.omega.mask_of)
    pairs.emplace_back(a.id_of.at(mask), b.id_of.at(to_canonical_b(mask)));
  std::sort(pairs.begin(), pairs.end());
  GlueResult g = glue(a.poset, b.poset, pairs);

  TwoWindowBall out;
  out.poset = std::move(g.poset);
  const int ta = out.trace.add_delta(d + 1, n);
  const int tb = out.trace.add_delta(d + 1, d - n);
  out.trace_var = out.trace.add_glue(ta, tb, pairs);

  check(h_vector(out.poset) == h, "two-window ball must realize the requested h-vector");

  out.window1.d = d;
  out.window1.k = n;
  out.window2.d = d;
  out.window2.k = d - n;
  const std::uint32_t dmask = (1u << d) - 1;  // faces not using vertex d+1
  for (std::uint32_t mask = 1; mask <= dmask; ++mask) {
    if ((mask & block_mask(1, n)) != block_mask(1, n))
      out.window1.label.emplace(mask, g.map_left[a.id_of.at(mask)]);
    if ((mask & block_mask(1, d - n)) != block_mask(1, d - n))
      out.window2.label.emplace(mask, g.map_right[b.id_of.at(mask)]);
  }
  require_window(out.poset, out.window1, "two_window_ball window1");
  require_window(out.poset, out.window2, "two_window_ball window2");

  // the windows must not share a facet, or gluing onto one would destroy
  // the other
  std::set<Id> facets1, facets2;
  for (const auto& [mask, id] : out.window1.label)
    if (__builtin_popcount(mask) == d - 1) facets1.insert(id);
  for (const auto& [mask, id] : out.window2.label)
    if (__builtin_popcount(mask) == d - 1) facets2.insert(id);
  for (Id f : facets1) check(!facets2.count(f), "two-window ball windows share a facet");
  return out;
}

std::vector<int> drop_sequence(const HVector& dh, int d, int m, int n) {
  if (n < 0 || n >= static_cast<int>(dh.size()))
    throw PreconditionError("drop_sequence: n out of range");
  if (dh[n] != 0) throw PreconditionError("drop_sequence: dh_n must vanish");
  if (d - m - 1 >= 0 && dh[d - m - 1] < d - m)
    throw PreconditionError("drop_sequence: dh_{d-m-1} below d-m");
  std::vector<int> s;
  long long threshold = d - m;
  for (int j = d - m; j <= n; ++j) {
    if (dh[j] < threshold) {
      s.push_back(j);
      threshold = dh[j];
    }
  }
  check(!s.empty() && s.back() == n, "drop sequence must end at the first zero");
  return s;
}

namespace {

// attach one rank-d simplex along the sub-window of shape k
WindowedBall glue_simplex_on_window(const WindowedBall& w, int k) {
  const int d = w.window.d;
  Window win = sub_window(w.window, k);
  LabeledPoset b = boolean_algebra(d);
  GluePairs pairs;
  for (const auto& [mask, id] : win.label) pairs.emplace_back(id, b.id_of.at(mask));
  std::sort(pairs.begin(), pairs.end());
  GlueResult g = glue(w.poset, b.poset, pairs);
  WindowedBall out;
  out.trace = w.trace;
  const int tb = out.trace.add_boolean(d);
  out.trace_var = out.trace.add_glue(w.trace_var, tb, pairs);
  out.poset = std::move(g.poset);
  out.window = Window{};  // final attachment, no window carried further
  return out;
}

}  // namespace

RealizeResult realize(const HVector& h) {
  const ConditionReport rep = check_ball(h);
  if (!rep.admissible)
    throw PreconditionError("realize: inadmissible h-vector: " + rep.summary());
  const int d = static_cast<int>(h.size()) - 1;
  const HVector dh = boundary_h(h);
  const bool positive_dh = std::all_of(dh.begin(), dh.end(), [](long long v) { return v > 0; });
  const bool even = vec_sum(h) % 2 == 0;

  RealizeResult out;

  if (positive_dh) {
    out.case_id = 1;
    out.even_sum = even;
    HVector rest = sub(h, unit_vector(d, 0));
    if (!even) {
      WindowedBall ball = realize_even(seed_ball(d), rest);
      check(h_vector(ball.poset) == h, "case 1 (odd) must realize h exactly");
      ball.trace.result = ball.trace_var;
      out.poset = std::move(ball.poset);
      out.trace = std::move(ball.trace);
      return out;
    }
    // even sum: peel the middle index of the remaining multiset, realize the
    // rest in pairs, and attach one last simplex along a window of the
    // peeled shape
    const std::vector<int> idxs = sorted_indices(rest);
    const int mid = idxs[(idxs.size() - 1) / 2];  // i_{(a+1)/2}, 1-based middle
    HVector peeled = sub(rest, unit_vector(d, mid));
    check(is_zero(peeled) || width(peeled) >= mid, "case 1 peel must keep width >= middle index");
    WindowedBall ball = realize_even(seed_ball(d), peeled);
    check(ball.window.k >= mid, "case 1 window too small for the final attachment");
    WindowedBall fin = glue_simplex_on_window(ball, mid);
    check(h_vector(fin.poset) == h, "case 1 (even) must realize h exactly");
    fin.trace.result = fin.trace_var;
    out.poset = std::move(fin.poset);
    out.trace = std::move(fin.trace);
    return out;
  }

  int n = 0;
  while (dh[n] != 0) ++n;  // dh_0 = 1 for admissible h, so n >= 1

  if (even) {
    out.case_id = 2;
    out.even_sum = true;
    HVector rest = sub(sub(h, unit_vector(d, 0)), unit_vector(d, d - n));
    check(nonnegative(rest), "case 2 peel must stay nonnegative");
    check(is_zero(rest) || width(rest) >= d - n, "case 2 peel must keep width >= d-n");
    WindowedBall ball = realize_even(seed_ball(d), rest);
    check(ball.window.k >= d - n, "case 2 window too small for the final attachment");
    WindowedBall fin = glue_simplex_on_window(ball, d - n);
    check(h_vector(fin.poset) == h, "case 2 must realize h exactly");
    fin.trace.result = fin.trace_var;
    out.poset = std::move(fin.poset);
    out.trace = std::move(fin.trace);
    return out;
  }

  // boundary transform has a zero and the sum is odd: d is even, n < d/2,
  // and the vector splits through a two-window ball
  out.case_id = 3;
  out.even_sum = false;
  check(d % 2 == 0, "case 3 requires even d");
  check(2 * n < d, "case 3 requires n < d/2");
  int m = 0;
  while (m <= d && h[m] != 0) ++m;
  --m;  // last index before the first zero of h
  check(m >= d - n && m <= d - 1, "case 3 requires d-n <= m <= d-1");

  Case3Details det;
  det.n = n;
  det.m = m;
  det.s = drop_sequence(dh, d, m, n);
  const auto& s = det.s;

  det.gamma = HVector(d + 1, 0);
  det.gamma[d - s[0]] = checked_add(d - m, -dh[s[0]]);
  for (size_t t = 1; t < s.size(); ++t)
    det.gamma[d - s[t]] = checked_add(det.gamma[d - s[t]], checked_add(dh[s[t - 1]], -dh[s[t]]));

  HVector delta(d + 1, 0);
  for (int i = 0; i <= m; ++i) delta[i] = 1;
  delta = add(delta, det.gamma);
  check(vec_sum(delta) == d + 1, "case 3: split vector entries must sum to d+1");
  check(delta[d - n] >= 2, "case 3: split vector must have at least 2 at d-n");
  det.delta_bar = sub(delta, unit_vector(d, d - n));

  det.h_prime = HVector(d + 1, 0);
  for (int k = n + 1; k <= d - n - 1; ++k) det.h_prime[k] = checked_add(h[k], -1);
  det.h_dprime = HVector(d + 1, 0);
  for (int k = 0; k <= n; ++k) det.h_dprime[k] = checked_add(h[k], -1);
  for (int k = d - n; k <= m; ++k) det.h_dprime[k] = checked_add(h[k], -1);
  for (int k = m + 1; k <= d; ++k) det.h_dprime[k] = h[k];
  det.h_dprime = sub(det.h_dprime, det.gamma);

  // claims (i)-(v): the split re-assembles h, both remainders are
  // nonnegative with even sums and nonnegative boundary transforms, the
  // second remainder keeps its boundary zero at n, and the first is wide
  // enough to reach the d-n window
  check(add(add(det.h_prime, det.h_dprime), add(det.delta_bar, unit_vector(d, d - n))) == h,
        "case 3 claim (i): split must re-assemble h");
  check(nonnegative(det.h_prime) && nonnegative(det.h_dprime),
        "case 3 claim (ii): remainders must be nonnegative");
  check(vec_sum(det.h_prime) % 2 == 0 && vec_sum(det.h_dprime) % 2 == 0,
        "case 3 claim (iii): remainder sums must be even");
  check(nonnegative(boundary_h(det.h_prime)) && nonnegative(boundary_h(det.h_dprime)),
        "case 3 claim (iv): remainder boundary transforms must be nonnegative");
  check(boundary_h(det.h_dprime)[n] == 0, "case 3 claim (iv): second remainder needs dh_n = 0");
  check(width(det.h_prime) >= d - n, "case 3 claim (v): first remainder too narrow");

  TwoWindowBall tw = two_window_ball(d, n, det.delta_bar);
  WindowedBall q = realize_even(seed_ball(d), det.h_prime);
  check(q.window.k >= d - n, "case 3: pair-built ball window too small");

  // glue the pair-built ball's d-n window onto the two-window ball's second
  // window; the first window survives because the windows share no facet
  Window qwin = sub_window(q.window, d - n);
  GluePairs pairs;
  for (const auto& [mask, id] : qwin.label) pairs.emplace_back(id, tw.window2.label.at(mask));
  std::sort(pairs.begin(), pairs.end());
  GlueResult g = glue(q.poset, tw.poset, pairs);

  WindowedBall r;
  r.poset = std::move(g.poset);
  r.window.d = d;
  r.window.k = n;
  for (const auto& [mask, id] : tw.window1.label)
    r.window.label.emplace(mask, g.map_right[id]);
  r.trace = q.trace;
  const int base = static_cast<int>(r.trace.steps.size());
  for (const TraceStep& st : tw.trace.steps) {
    TraceStep moved = st;
    if (moved.op == TraceStep::Op::Glue) {
      moved.a += base;
      moved.b += base;
    }
    r.trace.steps.push_back(std::move(moved));
  }
  r.trace_var = r.trace.add_glue(q.trace_var, tw.trace_var + base, pairs);
  check(h_vector(r.poset) == add(add(det.h_prime, det.delta_bar), unit_vector(d, d - n)),
        "case 3: intermediate ball has the wrong h-vector");
  require_window(r.poset, r.window, "case 3 surviving window");

  check(is_zero(det.h_dprime) || init_number(det.h_dprime) <= n,
        "case 3: second remainder must start within the surviving window");
  WindowedBall fin = realize_even(r, det.h_dprime);
  check(h_vector(fin.poset) == h, "case 3 must realize h exactly");
  fin.trace.result = fin.trace_var;
  out.poset = std::move(fin.poset);
  out.trace = std::move(fin.trace);
  out.case3 = std::move(det);
  return out;
}

}  // namespace cellposet
