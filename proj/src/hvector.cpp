#include "cellposet/hvector.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace cellposet {

long long checked_add(long long a, long long b) {
  long long r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw CellposetError("integer overflow in addition");
  return r;
}

long long checked_mul(long long a, long long b) {
  long long r = 0;
  if (__builtin_mul_overflow(a, b, &r)) throw CellposetError("integer overflow in multiplication");
  return r;
}

long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = checked_mul(r, n - k + i);
    r /= i;  // exact: r is a running binomial
  }
  return r;
}

HVector h_from_f(const HVector& f) {
  const int d = static_cast<int>(f.size()) - 1;
  if (d < 0) throw PreconditionError("empty f-vector");
  HVector h(d + 1, 0);
  for (int k = 0; k <= d; ++k) {
    long long acc = 0;
    for (int i = 0; i <= k; ++i) {
      long long term = checked_mul(binomial(d - i, k - i), f[i]);
      acc = checked_add(acc, ((k - i) % 2 == 0) ? term : -term);
    }
    h[k] = acc;
  }
  return h;
}

HVector f_from_h(const HVector& h) {
  const int d = static_cast<int>(h.size()) - 1;
  if (d < 0) throw PreconditionError("empty h-vector");
  HVector f(d + 1, 0);
  for (int j = 0; j <= d; ++j) {
    long long acc = 0;
    for (int i = 0; i <= j; ++i)
      acc = checked_add(acc, checked_mul(binomial(d - i, j - i), h[i]));
    f[j] = acc;
  }
  return f;
}

HVector unit_vector(int d, int i) {
  if (d < 0 || i < 0 || i > d) throw PreconditionError("unit_vector index out of range");
  HVector e(d + 1, 0);
  e[i] = 1;
  return e;
}

HVector add(const HVector& a, const HVector& b) {
  if (a.size() != b.size()) throw PreconditionError("vector length mismatch");
  HVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], b[i]);
  return r;
}

HVector sub(const HVector& a, const HVector& b) {
  if (a.size() != b.size()) throw PreconditionError("vector length mismatch");
  HVector r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = checked_add(a[i], -b[i]);
  return r;
}

long long vec_sum(const HVector& h) {
  long long s = 0;
  for (long long v : h) s = checked_add(s, v);
  return s;
}

bool nonnegative(const HVector& h) {
  return std::all_of(h.begin(), h.end(), [](long long v) { return v >= 0; });
}

bool is_zero(const HVector& h) {
  return std::all_of(h.begin(), h.end(), [](long long v) { return v == 0; });
}

std::string format_hvector(const HVector& h) {
  std::ostringstream out;
  for (size_t i = 0; i < h.size(); ++i) {
    if (i) out << ',';
    out << h[i];
  }
  return out.str();
}

HVector parse_hvector(const std::string& text) {
  HVector h;
  size_t pos = 0;
  if (text.empty()) throw ParseError("empty h-vector");
  while (pos <= text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (tok.empty()) throw ParseError("empty entry in h-vector '" + text + "'");
    errno = 0;
    char* end = nullptr;
    long long v = std::strtoll(tok.c_str(), &end, 10);
    if (errno != 0 || end == tok.c_str() || *end != '\0')
      throw ParseError("bad integer '" + tok + "' in h-vector");
    h.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return h;
}

HVector boundary_h(const HVector& h) {
  const int d = static_cast<int>(h.size()) - 1;
  if (d < 0) throw PreconditionError("empty vector");
  HVector dh(d, 0);
  long long pre = 0, suf = 0;
  for (int i = 0; i < d; ++i) {
    pre = checked_add(pre, h[i]);        // h_0 + ... + h_i
    suf = checked_add(suf, h[d - i]);    // h_d + ... + h_{d-i}
    dh[i] = checked_add(pre, -suf);
  }
  return dh;
}

int ConditionReport::first_failing() const {
  int best = 0;
  for (const auto& f : failures)
    if (best == 0 || f.condition < best) best = f.condition;
  return best;
}

bool ConditionReport::fails(int condition) const {
  for (const auto& f : failures)
    if (f.condition == condition) return true;
  return false;
}

std::set<int> ConditionReport::failing_conditions() const {
  std::set<int> s;
  for (const auto& f : failures) s.insert(f.condition);
  return s;
}

std::string ConditionReport::summary() const {
  std::ostringstream out;
  if (admissible) {
    out << "admissible";
    return out.str();
  }
  out << "inadmissible, first failing condition (" << first_failing() << ")";
  for (const auto& f : failures) out << "\n  (" << f.condition << ") " << f.witness;
  return out.str();
}

namespace {

std::string idx(const char* name, long long v) {
  std::ostringstream out;
  out << name << "=" << v;
  return out.str();
}

}  // namespace

ConditionReport check_sphere(const HVector& h) {
  ConditionReport rep;
  rep.target = ConditionReport::Target::Sphere;
  const int d = static_cast<int>(h.size()) - 1;
  if (d < 0) {
    rep.admissible = false;
    rep.failures.push_back({1, "empty vector"});
    return rep;
  }
  // (1) symmetry with ends equal to one
  if (h[0] != 1 || h[d] != 1)
    rep.failures.push_back({1, "h_0=" + std::to_string(h[0]) + ", h_d=" + std::to_string(h[d])});
  for (int i = 1; i <= d - 1; ++i)
    if (h[i] != h[d - i]) {
      rep.failures.push_back({1, idx("i", i)});
      break;
    }
  // (2) nonnegativity
  for (int i = 0; i <= d; ++i)
    if (h[i] < 0) {
      rep.failures.push_back({2, idx("i", i)});
      break;
    }
  // (3) an interior zero forces an even entry sum
  const long long total = vec_sum(h);
  for (int n = 1; n <= d - 1; ++n)
    if (h[n] == 0 && total % 2 != 0) {
      rep.failures.push_back({3, idx("n", n)});
      break;
    }
  rep.admissible = rep.failures.empty();
  return rep;
}

ConditionReport check_ball(const HVector& h) {
  ConditionReport rep;
  rep.target = ConditionReport::Target::Ball;
  const int d = static_cast<int>(h.size()) - 1;
  if (d < 1) {
    rep.admissible = false;
    rep.failures.push_back({1, "need d >= 1"});
    return rep;
  }
  const HVector dh = boundary_h(h);
  const long long total = vec_sum(h);
  const bool even = (((total % 2) + 2) % 2) == 0;

  // (1) h_0 = 1, h_d = 0, interior entries nonnegative
  if (h[0] != 1) rep.failures.push_back({1, "h_0=" + std::to_string(h[0])});
  if (h[d] != 0) rep.failures.push_back({1, "h_d=" + std::to_string(h[d])});
  for (int k = 1; k <= d - 1; ++k)
    if (h[k] < 0) {
      rep.failures.push_back({1, idx("k", k)});
      break;
    }

  // (2) boundary transform nonnegative
  for (int k = 0; k <= d - 1; ++k)
    if (dh[k] < 0) {
      rep.failures.push_back({2, idx("k", k)});
      break;
    }

  // (3) odd d with an interior boundary zero forces an even sum
  if (d % 2 == 1 && !even)
    for (int n = 1; n <= d - 2; ++n)
      if (dh[n] == 0) {
        rep.failures.push_back({3, idx("n", n)});
        break;
      }

  // (4) a boundary zero at n bounds dh by the n-term partial sums of h
  for (int n = 1; n <= d - 2; ++n) {
    if (dh[n] != 0) continue;
    for (int k = n; k <= d - 1; ++k) {
      long long window = 0;
      for (int t = k - n + 1; t <= k; ++t) window = checked_add(window, h[t]);
      if (window < dh[k])
        rep.failures.push_back({4, idx("n", n) + ", " + idx("k", k)});
    }
  }

  // (5) a boundary zero at i and an h zero at j with i+j <= d force even sum
  if (!even)
    for (int i = 1; i <= d - 1; ++i) {
      if (dh[i] != 0) continue;
      for (int j = 1; i + j <= d; ++j)
        if (h[j] == 0) rep.failures.push_back({5, idx("i", i) + ", " + idx("j", j)});
    }

  // (6) a boundary zero below d/2 with a tight partial-sum window forces even sum
  if (!even)
    for (int n = 1; 2 * n < d; ++n) {
      if (dh[n] != 0) continue;
      for (int l = n; l <= d - n; ++l) {  // l <= d-n <= d-1, so dh[l] exists
        long long window = 0;
        for (int t = l - n + 1; t <= l; ++t) window = checked_add(window, h[t]);
        if (window - dh[l] < n)
          rep.failures.push_back({6, idx("n", n) + ", " + idx("l", l)});
      }
    }

  // (7) complementary zeros with a small boundary entry force even sum
  if (!even)
    for (int i = 1; 2 * i < d; ++i) {
      if (dh[i] != 0) continue;
      for (int j = d - i + 1; j <= d - 1; ++j) {
        if (h[j] != 0) continue;
        for (int l = 0; l <= d - j; ++l)
          if (dh[l] <= l)
            rep.failures.push_back({7, idx("i", i) + ", " + idx("j", j) + ", " + idx("l", l)});
      }
    }

  rep.admissible = rep.failures.empty();
  return rep;
}

std::vector<int> sorted_indices(const HVector& h) {
  if (!nonnegative(h)) throw PreconditionError("sorted_indices: negative entry");
  std::vector<int> idxs;
  for (int i = 0; i < static_cast<int>(h.size()); ++i)
    for (long long c = 0; c < h[i]; ++c) idxs.push_back(i);
  return idxs;
}

std::vector<std::pair<int, int>> pairing_decomposition(const HVector& h) {
  if (!nonnegative(h)) throw PreconditionError("pairing: negative entry");
  if (vec_sum(h) % 2 != 0) throw PreconditionError("pairing: odd entry sum");
  const std::vector<int> idxs = sorted_indices(h);
  std::vector<std::pair<int, int>> pairs;
  const size_t a = idxs.size();
  for (size_t k = 0; k < a / 2; ++k) pairs.emplace_back(idxs[k], idxs[a - 1 - k]);
  return pairs;
}

int init_number(const HVector& h) {
  if (is_zero(h)) return 0;
  const auto pairs = pairing_decomposition(h);
  return pairs.back().first;  // i_{a/2}
}

int width(const HVector& h) {
  const int d = static_cast<int>(h.size()) - 1;
  if (is_zero(h)) return d;
  const auto pairs = pairing_decomposition(h);
  int w = pairs.front().first + pairs.front().second;
  for (const auto& [p, q] : pairs) w = std::min(w, p + q);
  return w;
}

int width_formula(const HVector& h) {
  if (!nonnegative(h)) throw PreconditionError("width: negative entry");
  if (vec_sum(h) % 2 != 0) throw PreconditionError("width: odd entry sum");
  const int d = static_cast<int>(h.size()) - 1;
  if (is_zero(h)) return d;  // clamped, matching width()
  std::vector<long long> pre(d + 1), suf(d + 2, 0);
  long long acc = 0;
  for (int t = 0; t <= d; ++t) pre[t] = (acc = checked_add(acc, h[t]));
  for (int t = d; t >= 0; --t) suf[t] = checked_add(suf[t + 1], h[t]);
  auto prefix = [&](int k) { return k < 0 ? 0 : pre[std::min(k, d)]; };
  auto suffix = [&](int j) { return j > d ? 0 : suf[std::max(j, 0)]; };
  int best = 0;
  for (int l = 0; l <= 2 * d; ++l) {
    bool ok = true;
    for (int k = 0; k <= 2 * d && ok; ++k)
      if (prefix(k) > suffix(l - k)) ok = false;
    if (ok) best = l;
  }
  return best;
}

}  // namespace cellposet
