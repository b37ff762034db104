#include <chrono>
#include <random>
#include <set>

#include "cellposet/io.hpp"
#include "cellposet/realize.hpp"
#include "doctest.h"

using namespace cellposet;

namespace {

std::set<std::uint32_t> facet_masks(const SeamComplex& seam) {
  std::set<std::uint32_t> out;
  SimplicialPoset view = seam.omega.poset;
  for (Id f : view.facet_ids()) out.insert(seam.omega.mask_of[f]);
  return out;
}

std::uint32_t mask_of(std::initializer_list<int> verts) {
  std::uint32_t m = 0;
  for (int v : verts) m |= 1u << (v - 1);
  return m;
}

}  // namespace

TEST_CASE("seed ball") {
  WindowedBall s = seed_ball(3);
  CHECK(h_vector(s.poset) == HVector{1, 0, 0, 0});
  CHECK(s.window.k == 3);
  CHECK(s.window.label.size() == 6);  // every proper nonempty subset of [3]
  // window image is exactly the boundary
  auto b = boundary(s.poset);
  std::set<Id> image;
  for (const auto& [mask, id] : s.window.label) image.insert(id);
  CHECK(image == std::set<Id>(b.ideal.members.begin(), b.ideal.members.end()));
  CHECK(s.trace.steps.size() == 1);
}

TEST_CASE("glue step") {
  {
    WindowedBall w = glue_step(seed_ball(4), 1, 3);
    CHECK(h_vector(w.poset) == HVector{1, 1, 0, 1, 0});
    CHECK(w.window.k == 4);
  }
  {
    WindowedBall w = glue_step(seed_ball(3), 1, 1);
    CHECK(h_vector(w.poset) == HVector{1, 2, 0, 0});
    CHECK(w.window.k == 2);
  }
  // h additivity along random admissible step sequences
  std::mt19937 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const int d = 2 + static_cast<int>(rng() % 4);
    WindowedBall w = seed_ball(d);
    for (int step = 0; step < 3; ++step) {
      const int i = 1 + static_cast<int>(rng() % w.window.k);
      if (d - i < 1) break;
      const int j = 1 + static_cast<int>(rng() % (d - i));
      HVector before = h_vector(w.poset);
      w = glue_step(w, i, j);
      CHECK(sub(h_vector(w.poset), before) == add(unit_vector(d, i), unit_vector(d, j)));
      CHECK(validate(w.poset).ok);
    }
  }
  CHECK_THROWS_AS(glue_step(seed_ball(3), 0, 1), PreconditionError);
  CHECK_THROWS_AS(glue_step(seed_ball(3), 1, 3), PreconditionError);  // j > d - i
  CHECK_THROWS_AS(glue_step(glue_step(seed_ball(3), 1, 1), 3, 1),
                  PreconditionError);  // i above the shrunken window
}

TEST_CASE("realize_even") {
  {
    WindowedBall s = seed_ball(3);
    WindowedBall w = realize_even(s, HVector(4, 0));
    CHECK(h_vector(w.poset) == h_vector(s.poset));
    CHECK(w.window.k == 3);
  }
  {
    WindowedBall w = realize_even(seed_ball(4), {0, 1, 0, 1, 0});
    CHECK(h_vector(w.poset) == HVector{1, 1, 0, 1, 0});
    CHECK(w.window.k == 4);
  }
  {
    WindowedBall w = realize_even(seed_ball(4), {0, 2, 1, 1, 0});
    CHECK(h_vector(w.poset) == HVector{1, 2, 1, 1, 0});
    CHECK(w.window.k == 3);
  }
  CHECK_THROWS_AS(realize_even(seed_ball(3), {1, 1, 0, 0}), PreconditionError);  // h_0 != 0
  CHECK_THROWS_AS(realize_even(seed_ball(3), {0, 1, 0, 0}), PreconditionError);  // odd sum
  CHECK_THROWS_AS(realize_even(seed_ball(3), {0, 0, 0, 2}), PreconditionError);  // dh negative
}

TEST_CASE("seam pair sets") {
  CHECK(seam_pairs(4, 2, 2, {1, 1, 2, 0, 0}) ==
        std::vector<std::pair<int, int>>{{1, 3}, {1, 4}, {2, 3}});
  CHECK(seam_pairs(4, 1, 3, {1, 1, 1, 1, 0}) ==
        std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {1, 4}});
  CHECK_THROWS_AS(seam_pairs(4, 2, 2, {1, 1, 1, 1, 0}), PreconditionError);  // sum != d
  CHECK_THROWS_AS(seam_pairs(4, 3, 2, {1, 1, 2, 0, 0}), PreconditionError);  // n > d/2
}

TEST_CASE("seam complexes") {
  {
    SeamComplex seam = build_seam(4, 2, 2, {1, 1, 2, 0, 0});
    CHECK(facet_masks(seam) == std::set<std::uint32_t>{mask_of({2, 4, 5}), mask_of({2, 3, 5}),
                                                       mask_of({1, 4, 5})});
    CHECK(seam.h == HVector{1, 2, 0, 0});
  }
  {
    SeamComplex seam = build_seam(4, 1, 3, {1, 1, 1, 1, 0});
    CHECK(facet_masks(seam) == std::set<std::uint32_t>{mask_of({3, 4, 5}), mask_of({2, 4, 5}),
                                                       mask_of({2, 3, 5})});
    CHECK(seam.h == HVector{1, 1, 1, 0});
  }
  // counting oracle: h_i equals the number of pairs with p + q - n - 2 = i
  for (auto [d, n, m, h] : std::vector<std::tuple<int, int, int, HVector>>{
           {4, 2, 2, {1, 1, 2, 0, 0}},
           {4, 1, 3, {1, 1, 1, 1, 0}},
           {5, 2, 4, {1, 1, 1, 1, 1, 0}},
           {5, 2, 3, {1, 1, 1, 2, 0, 0}},
           {6, 3, 3, {1, 1, 1, 3, 0, 0, 0}},
           {6, 2, 5, {1, 1, 1, 1, 1, 1, 0}}}) {
    SeamComplex seam = build_seam(d, n, m, h);
    HVector counted(d, 0);
    for (const auto& [p, q] : seam.pairs) counted[p + q - n - 2] += 1;
    CHECK(seam.h == counted);
  }
}

TEST_CASE("two-window balls") {
  {
    TwoWindowBall tw = two_window_ball(4, 2, {1, 1, 2, 0, 0});
    CHECK(h_vector(tw.poset) == HVector{1, 1, 2, 0, 0});
    CHECK(tw.window1.k == 2);
    CHECK(tw.window2.k == 2);
    CHECK(validate(tw.poset).ok);
  }
  {
    TwoWindowBall tw = two_window_ball(4, 1, {1, 1, 1, 1, 0});
    CHECK(h_vector(tw.poset) == HVector{1, 1, 1, 1, 0});
    CHECK(tw.window1.k == 1);
    CHECK(tw.window2.k == 3);
  }
  // the first block is the k = n complex one dimension up: h = sum of the
  // first n unit vectors
  CHECK(h_vector(delta_complex(5, 2).poset) == HVector{1, 1, 0, 0, 0});
}

TEST_CASE("drop sequences") {
  CHECK(drop_sequence({1, 0, 0, 1}, 4, 3, 1) == std::vector<int>{1});
  // flat at the threshold until a single zero: only the zero is recorded
  CHECK(drop_sequence({5, 3, 2, 2, 0, 2}, 6, 4, 4) == std::vector<int>{4});
  // a staircase of strict running minima
  CHECK(drop_sequence({9, 9, 3, 2, 1, 0}, 10, 7, 5) == std::vector<int>{3, 4, 5});
  CHECK(drop_sequence({9, 9, 3, 3, 1, 0}, 10, 7, 5) == std::vector<int>{4, 5});
  CHECK_THROWS_AS(drop_sequence({1, 1, 1, 1}, 4, 3, 1), PreconditionError);  // dh_n != 0
}

TEST_CASE("realize: simplexes") {
  for (int d = 1; d <= 5; ++d) {
    RealizeResult r = realize(unit_vector(d, 0));
    CHECK(r.case_id == 1);
    CHECK(r.trace.steps.size() == 1);
    CHECK(canonically_equal(r.poset, boolean_algebra(d).poset));
  }
}

TEST_CASE("realize: boundary-zero even case") {
  RealizeResult r = realize({1, 0, 0, 1, 0});
  CHECK(r.case_id == 2);
  CHECK(h_vector(r.poset) == HVector{1, 0, 0, 1, 0});
  CHECK(f_vector(r.poset) == HVector{1, 4, 6, 5, 2});
  // the construction is exactly two simplexes sharing a k = 3 ideal
  LabeledPoset a = boolean_algebra(4), b = boolean_algebra(4);
  GluePairs pairs;
  for (const auto& [mask, id] : a.id_of)
    if ((mask & 0b111u) != 0b111u) pairs.emplace_back(id, b.id_of.at(mask));
  CHECK(canonically_equal(r.poset, glue(a.poset, b.poset, pairs).poset));
}

TEST_CASE("realize: worked split case") {
  const auto t0 = std::chrono::steady_clock::now();
  RealizeResult r = realize({1, 1, 1, 2, 0});
  const auto t1 = std::chrono::steady_clock::now();
  CHECK(r.case_id == 3);
  REQUIRE(r.case3.has_value());
  CHECK(r.case3->n == 1);
  CHECK(r.case3->m == 3);
  CHECK(r.case3->s == std::vector<int>{1});
  CHECK(r.case3->gamma == HVector{0, 0, 0, 1, 0});
  CHECK(r.case3->delta_bar == HVector{1, 1, 1, 1, 0});
  CHECK(is_zero(r.case3->h_prime));
  CHECK(is_zero(r.case3->h_dprime));
  CHECK(h_vector(r.poset) == HVector{1, 1, 1, 2, 0});
  CHECK(validate(r.poset).ok);
  CHECK(std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() < 1000);
}

TEST_CASE("realize: split case with a staircase drop sequence") {
  // d = 8 instances exercising the multi-entry drop sequence and both
  // nonzero remainders; expected internals derived by hand from the
  // boundary transform (1,3,1,0,0,1,3,1) resp. (1,2,1,0,0,1,2,1)
  {
    RealizeResult r = realize({1, 1, 1, 1, 3, 2, 2, 0, 0});
    REQUIRE(r.case_id == 3);
    CHECK(r.case3->n == 3);
    CHECK(r.case3->m == 6);
    CHECK(r.case3->s == std::vector<int>{2, 3});
    CHECK(r.case3->gamma == add(unit_vector(8, 5), unit_vector(8, 6)));
    CHECK(r.case3->delta_bar == HVector{1, 1, 1, 1, 1, 1, 2, 0, 0});
    CHECK(r.case3->h_prime == HVector{0, 0, 0, 0, 2, 0, 0, 0, 0});
    CHECK(is_zero(r.case3->h_dprime));
    CHECK(h_vector(r.poset) == HVector{1, 1, 1, 1, 3, 2, 2, 0, 0});
  }
  {
    RealizeResult r = realize({1, 2, 1, 1, 1, 2, 3, 0, 0});
    REQUIRE(r.case_id == 3);
    CHECK(r.case3->s == std::vector<int>{2, 3});
    CHECK(is_zero(r.case3->h_prime));
    CHECK(r.case3->h_dprime == add(unit_vector(8, 1), unit_vector(8, 6)));
    CHECK(h_vector(r.poset) == HVector{1, 2, 1, 1, 1, 2, 3, 0, 0});
    CHECK(validate(r.poset).ok);
  }
}

TEST_CASE("realize: split case two dimensions up") {
  // exercises the larger seam (21 candidate pairs) and the deep window
  // bookkeeping; certified end to end in well under a second
  const HVector h{1, 1, 1, 1, 2, 2, 1, 2, 2, 0, 0};
  REQUIRE(check_ball(h).admissible);
  RealizeResult r = realize(h);
  REQUIRE(r.case_id == 3);
  CHECK(r.case3->n == 3);
  CHECK(r.case3->m == 8);
  CHECK(r.case3->s == std::vector<int>{2, 3});
  CHECK(r.case3->h_prime == add(unit_vector(10, 4), unit_vector(10, 5)));
  CHECK(is_zero(r.case3->h_dprime));
  CHECK(h_vector(r.poset) == h);
  CHECK(f_vector(r.poset).back() == vec_sum(h));
}

TEST_CASE("realize: refusal and general contract") {
  CHECK_THROWS_AS(realize({1, 0, 1, 0, 1, 0}), PreconditionError);
  CHECK_THROWS_AS(realize({1, 0, 2, 0}), PreconditionError);

  for (const HVector& h : {HVector{1, 2, 0}, HVector{1, 1, 1, 0}, HVector{1, 2, 1, 3, 0},
                           HVector{1, 3, 2, 0, 0}, HVector{1, 1, 2, 1, 0, 0}}) {
    REQUIRE(check_ball(h).admissible);
    RealizeResult r = realize(h);
    CHECK(h_vector(r.poset) == h);
    CHECK(validate(r.poset).ok);
    auto b = boundary(r.poset);
    HVector bh = h_vector(b.view);
    CHECK(bh == boundary_h(h));
    const int dim = static_cast<int>(bh.size()) - 1;
    for (int i = 0; i <= dim; ++i) CHECK(bh[i] == bh[dim - i]);  // boundary symmetry
  }
}
