#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "bootlab/error.hpp"
#include "bootlab/io.hpp"
#include "bootlab/lattice.hpp"
#include "oracles.hpp"

using namespace bootlab;

namespace {

std::vector<Cell> sorted(std::vector<Cell> v) {
  std::sort(v.begin(), v.end());
  return v;
}

}  // namespace

TEST_CASE("thresholds") {
  const auto thick = LatticeSpec::thick(2, 1, 5, 5, 2);
  CHECK(threshold(thick, {3, 3, 1}) == 2);
  CHECK(threshold(thick, {3, 3, 5}) == 2);
  CHECK(threshold(thick, {3, 3, 3}) == 3);

  const auto uni = LatticeSpec::uniform(3, 4, 3);
  CHECK(threshold(uni, {1, 1, 1}) == 3);
  CHECK(threshold(uni, {2, 3, 4}) == 3);

  const auto slab = LatticeSpec::slab({3}, {4, 5});
  CHECK(slab.r() == 1);
  CHECK(threshold(slab, {2, 1, 5}) == 1);
  CHECK(threshold(slab, {2, 2, 5}) == 2);
  CHECK(threshold(slab, {2, 2, 3}) == 3);

  CHECK_THROWS_AS(threshold(uni, {0, 1, 1}), BoundsError);
  CHECK_THROWS_AS(threshold(uni, {1, 1}), BoundsError);
}

TEST_CASE("threshold bounds hold on every cell") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = oracle::random_spec(rng);
    const int lo = spec.kind() == StructureKind::Slab ? 1 : spec.r();
    for (std::size_t i = 0; i < spec.volume(); ++i) {
      const auto c = spec.cell(i);
      const int t = threshold(spec, c);
      CHECK(t == oracle::threshold_of(spec, c));
      CHECK(t >= lo);
      CHECK(t <= lo + spec.ell());
    }
  }
}

TEST_CASE("neighbours") {
  const auto sq = LatticeSpec::uniform(2, 5, 2);
  CHECK(sorted(neighbours(sq, {1, 1})) == std::vector<Cell>{{1, 2}, {2, 1}});
  CHECK(neighbours(sq, {3, 3}).size() == 4);

  const auto th = LatticeSpec::thick(1, 1, 4, 3, 1);
  CHECK(sorted(neighbours(th, {2, 2})) == std::vector<Cell>{{1, 2}, {2, 1}, {2, 3}, {3, 2}});
}

TEST_CASE("neighbours are symmetric and degree is bounded") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    const auto spec = oracle::random_spec(rng);
    for (std::size_t i = 0; i < spec.volume(); ++i) {
      const auto c = spec.cell(i);
      const auto nbs = neighbours(spec, c);
      CHECK(nbs.size() <= static_cast<std::size_t>(2 * spec.dims()));
      for (const auto& nb : nbs) {
        const auto back = neighbours(spec, nb);
        CHECK(std::find(back.begin(), back.end(), c) != back.end());
      }
    }
  }
}

TEST_CASE("linearisation is row-major with the last axis fastest") {
  const auto spec = LatticeSpec::thick(2, 1, 3, 4, 2);
  CHECK(spec.index(std::vector<int>{1, 1, 1}) == 0);
  CHECK(spec.index(std::vector<int>{1, 1, 2}) == 1);
  CHECK(spec.index(std::vector<int>{1, 2, 1}) == 4);
  CHECK(spec.index(std::vector<int>{2, 1, 1}) == 12);
  for (std::size_t i = 0; i < spec.volume(); ++i) CHECK(spec.index(spec.cell(i)) == i);
}

TEST_CASE("construction limits") {
  CHECK_THROWS_AS(LatticeSpec::uniform(0, 4, 2), DomainError);
  CHECK_THROWS_AS(LatticeSpec::uniform(2, 0, 2), DomainError);
  CHECK_THROWS_AS(LatticeSpec::uniform(2, 4, 0), DomainError);
  CHECK_THROWS_AS(LatticeSpec::uniform(4, 1 << 8, 2), DomainError);
  CHECK_THROWS_AS(LatticeSpec::slab({3}, {}), DomainError);
  CHECK_NOTHROW(LatticeSpec::uniform(1, 1 << 20, 1));
}

TEST_CASE("bounding_rect") {
  const auto spec = LatticeSpec::uniform(2, 5, 2);
  CHECK(bounding_rect(spec, make_cellset(spec, {{2, 3}, {4, 1}})) == Rect{{2, 1}, {4, 3}});
  CHECK(bounding_rect(spec, make_cellset(spec, {{3, 3}})) == Rect{{3, 3}, {3, 3}});
  CHECK(bounding_rect(spec, make_cellset(spec, {{1, 1}, {1, 5}, {5, 1}})) == Rect{{1, 1}, {5, 5}});
  CHECK_THROWS_AS(bounding_rect(spec, CellSet(spec.volume())), EmptyInputError);

  const auto th = LatticeSpec::thick(1, 1, 6, 4, 2);
  CHECK(bounding_rect(th, make_cellset(th, {{2, 4}, {5, 1}})) == Rect{{2}, {5}});
}

TEST_CASE("bounding_rect is monotone") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const auto spec = oracle::random_spec(rng);
    const auto s = oracle::random_set(spec, 0.2, rng);
    auto t = oracle::random_set(spec, 0.2, rng);
    t |= s;
    if (s.empty()) continue;
    CHECK(bounding_rect(spec, t).contains(bounding_rect(spec, s)));
  }
}

TEST_CASE("rect measures") {
  const Rect r{{2, 1, 4}, {5, 1, 9}};
  CHECK(r.dims() == std::vector<int>{4, 1, 6});
  CHECK(r.phi() == 11);
  CHECK(r.long_side() == 6);
  CHECK(r.short_side() == 1);

  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 200; ++trial) {
    const auto spec = oracle::random_spec(rng);
    const auto q = oracle::random_rect(spec, rng);
    CHECK(q.short_side() <= q.long_side());
    CHECK(q.long_side() <= q.phi());
  }
}

TEST_CASE("cell set bookkeeping") {
  CellSet s(130);
  CHECK(s.insert(0));
  CHECK(s.insert(129));
  CHECK_FALSE(s.insert(129));
  CHECK(s.size() == 2);
  CHECK(s.indices() == std::vector<std::size_t>{0, 129});
  CHECK(s.erase(0));
  CHECK(s.size() == 1);
  CHECK_THROWS_AS(s.insert(130), BoundsError);
  CHECK(CellSet::full(130).size() == 130);

  CellSet t(130);
  t.insert(5);
  t |= s;
  CHECK(t.size() == 2);
  CHECK(s.is_subset_of(t));
  t &= s;
  CHECK(t == s);
  CHECK_THROWS_AS(t |= CellSet(10), DomainError);
}

TEST_CASE("spec JSON round trip") {
  for (const auto& spec : {LatticeSpec::uniform(2, 7, 2), LatticeSpec::thick(2, 2, 5, 4, 3),
                           LatticeSpec::slab({3, 4}, {2, 5, 6})}) {
    CHECK(spec_from_json(spec_to_json(spec)) == spec);
  }
  CHECK(spec_from_json(nlohmann::json::parse(R"({"kind":"slab","d":1,"ell":2,"n":4,"k":3})")) ==
        LatticeSpec::slab({4}, {3, 3}));
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"kind":"uniform","d":2,"n":4})")), DomainError);
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"kind":"cube","d":2,"n":4,"r":2})")), DomainError);
  CHECK_THROWS_AS(spec_from_json(nlohmann::json::parse(R"({"kind":"slab","d":1,"n":4,"k":[3],"r":2})")),
                  DomainError);
}

TEST_CASE("cell text format") {
  const auto spec = LatticeSpec::uniform(2, 4, 2);
  std::istringstream in("# header\n1,2\n\n 3 , 4  # trailing\n");
  const auto s = read_cells(spec, in);
  CHECK(to_cells(spec, s) == std::vector<Cell>{{1, 2}, {3, 4}});

  std::ostringstream out;
  write_cells(spec, s, out);
  CHECK(out.str() == "1,2\n3,4\n");

  std::istringstream bad("1,2,3\n");
  CHECK_THROWS_AS(read_cells(spec, bad), DomainError);
  std::istringstream outside("5,1\n");
  CHECK_THROWS_AS(read_cells(spec, outside), BoundsError);
  CHECK_THROWS_AS(parse_rect("1,2-3,4"), DomainError);
  CHECK(parse_rect("1,2:3,4") == Rect{{1, 2}, {3, 4}});
}
