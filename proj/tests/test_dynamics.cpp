#include <doctest.h>

#include <random>

#include "bootlab/dynamics.hpp"
#include "bootlab/error.hpp"
#include "oracles.hpp"

using namespace bootlab;

namespace {

const LatticeSpec kSquare3 = LatticeSpec::uniform(2, 3, 2);

CellSet cells(const LatticeSpec& spec, std::vector<Cell> c) { return make_cellset(spec, c); }

}  // namespace

TEST_CASE("closure examples") {
  const auto full = CellSet::full(kSquare3.volume());
  const auto all = closure(kSquare3, full);
  CHECK(all.closure == full);
  CHECK(all.generations == 0);
  CHECK(all.history == std::vector<std::size_t>{9});

  const auto diag = cells(kSquare3, {{1, 1}, {2, 2}, {3, 3}});
  const auto res = closure(kSquare3, diag);
  CHECK(res.closure == full);
  CHECK(res.closure == oracle::naive_closure(kSquare3, diag, BoundaryCondition::none()));
  CHECK(res.generations == 2);
  CHECK(res.history == std::vector<std::size_t>{3, 7, 9});

  const auto corners = cells(kSquare3, {{1, 1}, {3, 3}});
  CHECK(closure(kSquare3, corners).closure == corners);
  CHECK(closure(kSquare3, corners).generations == 0);

  const auto empty = CellSet(kSquare3.volume());
  CHECK(closure(kSquare3, empty).closure.empty());
}

TEST_CASE("boundary credit") {
  const auto line = LatticeSpec::uniform(2, 3, 2);
  const auto a = cells(line, {{2, 1}});
  // Half-space below axis 2 gives every cell in row y=1 one extra neighbour.
  const auto res = closure(line, a, BoundaryCondition::half_low(2));
  CHECK(res.closure == oracle::naive_closure(line, a, BoundaryCondition::half_low(2)));
  CHECK(res.closure.contains(line.index(std::vector<int>{1, 1})));
  CHECK(res.closure.contains(line.index(std::vector<int>{3, 1})));

  const auto all_out = closure(line, CellSet(line.volume()), BoundaryCondition::all_outside());
  CHECK(all_out.closure == CellSet::full(line.volume()));
  CHECK(closure(line, CellSet(line.volume()), BoundaryCondition::half_high(1)).closure.empty());
}

TEST_CASE("closure confined to a rectangle") {
  const auto spec = LatticeSpec::uniform(2, 5, 2);
  const auto a = cells(spec, {{1, 1}, {2, 2}, {4, 4}});
  const Rect rect{{1, 1}, {3, 3}};
  const auto res = closure(spec, a, BoundaryCondition::none(), rect);
  CHECK(res.closure == cells(spec, {{1, 1}, {1, 2}, {2, 1}, {2, 2}}));
  CHECK_THROWS_AS(closure(spec, a, BoundaryCondition::none(), Rect{{0, 1}, {3, 3}}), BoundsError);
  CHECK_THROWS_AS(closure(spec, a, BoundaryCondition::half_low(3)), DomainError);
}

TEST_CASE("frontier closure matches full rescan") {
  std::mt19937_64 rng(21);
  int mismatches = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const auto spec = oracle::random_spec(rng);
    const auto bc = oracle::random_bc(spec, rng);
    const auto a = oracle::random_set(spec, std::uniform_real_distribution<double>(0.0, 0.5)(rng), rng);
    std::optional<Rect> rect;
    if (trial % 3 == 0) rect = oracle::random_rect(spec, rng);
    const auto res = closure(spec, a, bc, rect);
    mismatches += !(res.closure == oracle::naive_closure(spec, a, bc, rect));
  }
  CHECK(mismatches == 0);
}

TEST_CASE("closure properties") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto spec = oracle::random_spec(rng);
    const auto bc = oracle::random_bc(spec, rng);
    const auto a = oracle::random_set(spec, 0.15, rng);
    auto b = oracle::random_set(spec, 0.1, rng);
    b |= a;
    const auto ca = closure(spec, a, bc);
    const auto cb = closure(spec, b, bc);

    CHECK(a.is_subset_of(ca.closure));
    CHECK(ca.closure.is_subset_of(cb.closure));
    CHECK(closure(spec, ca.closure, bc).closure == ca.closure);
    CHECK(oracle::async_closure(spec, a, bc, rng) == ca.closure);

    REQUIRE(ca.history.size() == static_cast<std::size_t>(ca.generations) + 1);
    CHECK(ca.history.front() == a.size());
    CHECK(ca.history.back() == ca.closure.size());
    for (std::size_t i = 1; i < ca.history.size(); ++i) CHECK(ca.history[i] > ca.history[i - 1]);
  }
}

TEST_CASE("percolates") {
  CHECK(percolates(kSquare3, CellSet::full(kSquare3.volume())));
  CHECK_FALSE(percolates(kSquare3, CellSet(kSquare3.volume())));
  CHECK(percolates(kSquare3, cells(kSquare3, {{1, 1}, {2, 2}, {3, 3}})));
  CHECK_FALSE(percolates(kSquare3, cells(kSquare3, {{1, 1}, {3, 3}})));
}

TEST_CASE("components and diameters") {
  const auto pair = components(kSquare3, cells(kSquare3, {{1, 1}, {1, 2}}));
  CHECK(pair.size() == 1);
  const auto apart = components(kSquare3, cells(kSquare3, {{3, 3}, {1, 1}}));
  REQUIRE(apart.size() == 2);
  CHECK(apart[0] == cells(kSquare3, {{1, 1}}));
  CHECK(apart[1] == cells(kSquare3, {{3, 3}}));
  CHECK(components(kSquare3, CellSet(kSquare3.volume())).empty());

  CHECK(diam(kSquare3, cells(kSquare3, {{2, 2}})) == 1);
  CHECK(diam(kSquare3, cells(kSquare3, {{1, 1}, {1, 2}})) == 2);
  CHECK(diam(kSquare3, cells(kSquare3, {{1, 1}, {3, 3}})) == 1);
  CHECK(diam(kSquare3, CellSet(kSquare3.volume())) == 0);

  const auto th = LatticeSpec::thick(1, 1, 4, 6, 2);
  const auto col = cells(th, {{2, 1}, {2, 2}, {2, 3}, {2, 4}});
  CHECK(diam(th, col) == 4);
  CHECK(long_diam(th, col) == 1);
}

TEST_CASE("components agree with breadth-first search") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 300; ++trial) {
    const auto spec = oracle::random_spec(rng);
    const auto s = oracle::random_set(spec, 0.4, rng);
    const auto mine = components(spec, s);
    const auto ref = oracle::naive_components(spec, s);
    REQUIRE(mine.size() == ref.size());
    for (std::size_t i = 0; i < ref.size(); ++i) {
      CellSet c(spec.volume());
      for (auto x : ref[i]) c.insert(x);
      CHECK(mine[i] == c);
    }
  }
}

TEST_CASE("span") {
  const auto dom = span(kSquare3, cells(kSquare3, {{1, 1}, {1, 2}}));
  REQUIRE(dom.rects.size() == 1);
  CHECK(dom.rects[0] == Rect{{1, 1}, {1, 2}});
  const auto diag = span(kSquare3, cells(kSquare3, {{1, 1}, {2, 2}, {3, 3}}));
  REQUIRE(diag.rects.size() == 1);
  CHECK(diag.rects[0] == full_rect(kSquare3));
  CHECK(span(kSquare3, CellSet(kSquare3.volume())).rects.empty());
}

TEST_CASE("internally spanned") {
  const auto spec = LatticeSpec::uniform(2, 5, 2);
  CHECK(internally_spanned(spec, Rect{{2, 3}, {2, 3}}, cells(spec, {{2, 3}})));
  CHECK_FALSE(internally_spanned(spec, Rect{{1, 1}, {2, 2}}, cells(spec, {{4, 4}})));
  CHECK(internally_spanned(kSquare3, full_rect(kSquare3), cells(kSquare3, {{1, 1}, {2, 2}, {3, 3}})));
  // Cells outside the rectangle do not help.
  CHECK_FALSE(internally_spanned(spec, Rect{{1, 1}, {2, 2}}, cells(spec, {{1, 1}, {3, 2}})));
}

TEST_CASE("internally spanned agrees with span of the restricted set") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 500; ++trial) {
    const int d = oracle::uniform_int(rng, 1, 3);
    const auto spec = LatticeSpec::uniform(d, d == 3 ? 4 : 6, 2);
    const auto rect = oracle::random_rect(spec, rng);
    auto a = oracle::random_set(spec, 0.3, rng);
    CellSet inside(spec.volume());
    a.for_each([&](std::size_t i) {
      if (rect.contains_cell(spec.cell(i))) inside.insert(i);
    });
    const auto rects = span(spec, inside).rects;
    const bool listed = std::find(rects.begin(), rects.end(), rect) != rects.end();
    CHECK(internally_spanned(spec, rect, a) == listed);
    CHECK(internally_spanned(spec, rect, a) == oracle::spans_rect(spec, rect, a));
  }
}

TEST_CASE("internally spanned follows the component definition on thick structures") {
  std::mt19937_64 rng(27);
  int thick_only = 0;
  for (int trial = 0; trial < 1500; ++trial) {
    auto spec = oracle::random_spec(rng, 100, trial % 2);
    if (spec.r() < 2) continue;
    const auto rect = oracle::random_rect(spec, rng);
    const auto a = oracle::random_set(spec, 0.35, rng);
    const bool got = internally_spanned(spec, rect, a);
    CHECK(got == oracle::internally_spans(spec, rect, a));
    thick_only += got && !oracle::spans_rect(spec, rect, a);
  }
  // Spanned without being filled happens only when thick axes are present.
  CHECK(thick_only > 0);
}

TEST_CASE("crossing examples") {
  const auto spec = LatticeSpec::uniform(2, 4, 2);
  const Rect rect{{2, 2}, {3, 3}};
  CHECK_FALSE(crossed(spec, rect, CellSet(spec.volume()), 1));
  // The half-space fills the first column only; each second-column cell then sees one neighbour.
  CHECK_FALSE(crossed(spec, rect, cells(spec, {{2, 2}}), 1));
  CHECK_FALSE(crossed(spec, Rect{{1, 1}, {2, 2}}, cells(spec, {{1, 1}}), 1));
  CHECK(crossed(spec, rect, cells(spec, {{2, 2}, {3, 3}}), 1));
  CHECK(crossed(spec, rect, cells(spec, {{2, 2}, {2, 3}, {3, 2}, {3, 3}}), 2));
  // A site outside the rectangle is ignored.
  CHECK_FALSE(crossed(spec, rect, cells(spec, {{1, 2}}), 1));
  CHECK_FALSE(crossed(spec, rect, CellSet(spec.volume()), 1, cells(spec, {{2, 3}})));
  CHECK(crossed(spec, rect, cells(spec, {{2, 2}}), 1, cells(spec, {{3, 3}})));
  CHECK_THROWS_AS(crossed(spec, rect, CellSet(spec.volume()), 1, cells(spec, {{1, 1}})), DomainError);
}

TEST_CASE("crossing needs a single component touching both faces") {
  const auto spec = LatticeSpec::uniform(2, 5, 1);
  const Rect rect{{1, 1}, {3, 3}};
  // With r = 1 the half-space fills the rectangle, so the event holds.
  CHECK(crossed(spec, rect, CellSet(spec.volume()), 1));
  const auto r2 = LatticeSpec::uniform(2, 5, 2);
  // One infected piece on each face, never merging.
  CHECK_FALSE(crossed(r2, Rect{{1, 1}, {4, 1}}, cells(r2, {{1, 1}, {4, 1}}), 1));
}

TEST_CASE("crossing matches the rescan oracle") {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 500; ++trial) {
    const auto spec = LatticeSpec::uniform(2, 6, 2);
    const auto rect = oracle::random_rect(spec, rng);
    const int axis = oracle::uniform_int(rng, 1, 2);
    const auto a = oracle::random_set(spec, 0.15, rng);
    const auto cl = oracle::naive_closure(spec, a, BoundaryCondition::half_low(axis), rect);
    const auto u = static_cast<std::size_t>(axis - 1);
    bool expect = false;
    for (const auto& comp : oracle::naive_components(spec, cl)) {
      bool lo = false;
      bool hi = false;
      for (auto i : comp) {
        const auto c = spec.cell(i);
        lo = lo || c[u] == rect.lo[u];
        hi = hi || c[u] == rect.hi[u];
      }
      expect = expect || (lo && hi);
    }
    CHECK(crossed(spec, rect, a, axis) == expect);
  }
}

TEST_CASE("coupled block closure") {
  const auto spec = LatticeSpec::thick(2, 1, 6, 4, 2);
  const Rect rect{{1, 2}, {6, 4}};
  CHECK(coupled_block_closure(spec, rect, CellSet(spec.volume()), 3, 1).empty());

  CellSet inside(spec.volume());
  for (std::size_t i = 0; i < spec.volume(); ++i) {
    if (rect.contains_cell(spec.cell(i))) inside.insert(i);
  }
  CHECK(coupled_block_closure(spec, rect, inside, 2, 1) == inside);
  CHECK(coupled_block_closure(spec, rect, CellSet::full(spec.volume()), 6, 1) == inside);

  CHECK_THROWS_AS(coupled_block_closure(spec, rect, inside, 4, 1), DomainError);
  CHECK_THROWS_AS(coupled_block_closure(spec, rect, inside, 1, 1), DomainError);
  CHECK_THROWS_AS(coupled_block_closure(LatticeSpec::slab({6}, {3}), Rect{{1}, {6}}, CellSet(18), 3, 1),
                  DomainError);
}

TEST_CASE("coupled block closure contains the confined closure") {
  std::mt19937_64 rng(26);
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int d = oracle::uniform_int(rng, 1, 2);
    const int ell = oracle::uniform_int(rng, 0, 1);
    const auto spec = ell == 0 ? LatticeSpec::uniform(d, 8, oracle::uniform_int(rng, 2, 3))
                               : LatticeSpec::thick(d, 1, 8, oracle::uniform_int(rng, 1, 4), 2);
    const int axis = oracle::uniform_int(rng, 1, d);
    const int s = oracle::uniform_int(rng, 2, 4);
    auto rect = oracle::random_rect(spec, rng);
    const auto u = static_cast<std::size_t>(axis - 1);
    const int blocks = oracle::uniform_int(rng, 1, 8 / s);
    rect.lo[u] = oracle::uniform_int(rng, 1, 8 - blocks * s + 1);
    rect.hi[u] = rect.lo[u] + blocks * s - 1;
    const auto a = oracle::random_set(spec, 0.2, rng);
    const auto coupled = coupled_block_closure(spec, rect, a, s, axis);
    const auto truth = closure(spec, a, BoundaryCondition::half_low(axis), rect).closure;
    violations += !truth.is_subset_of(coupled);
  }
  CHECK(violations == 0);
}
