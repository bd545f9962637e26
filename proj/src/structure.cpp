#include "bootlab/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "bootlab/detail/box.hpp"
#include "bootlab/dynamics.hpp"

namespace bootlab {
namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  // Returns the surviving root.
  std::size_t unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return a;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
    return a;
  }

 private:
  std::vector<std::size_t> parent_;
};

void check_set(const LatticeSpec& spec, const CellSet& s) {
  if (s.universe() != spec.volume()) throw DomainError("cell set does not match the lattice");
}

}  // namespace

// ---------------------------------------------------------------------------

Rect al_window(const LatticeSpec& spec, const CellSet& a, int L) {
  if (spec.kind() == StructureKind::Slab || spec.r() != 2) {
    throw DomainError("al_window is defined for r = 2 uniform and thick structures");
  }
  check_set(spec, a);
  if (L < 1) throw DomainError("L must be positive");
  const int reach = long_diam(spec, closure(spec, a).closure);
  if (L > reach) {
    throw DomainError("L exceeds the long diameter of the closure (" + std::to_string(reach) + ")");
  }

  const int d = spec.d();
  std::vector<Cell> sites;
  a.for_each([&](std::size_t i) {
    Cell c(static_cast<std::size_t>(d));
    for (int ax = 0; ax < d; ++ax) c[static_cast<std::size_t>(ax)] = spec.coord0(i, ax) + 1;
    sites.push_back(std::move(c));
  });

  Rect r;
  r.lo.assign(static_cast<std::size_t>(d), 1);
  r.hi.assign(static_cast<std::size_t>(d), 1);
  const auto advance = [&]() {
    for (int ax = d - 1; ax >= 0; --ax) {
      const auto u = static_cast<std::size_t>(ax);
      if (r.hi[u] < spec.side(ax)) {
        ++r.hi[u];
        return true;
      }
      if (r.lo[u] < spec.side(ax)) {
        ++r.lo[u];
        r.hi[u] = r.lo[u];
        return true;
      }
      r.lo[u] = r.hi[u] = 1;
    }
    return false;
  };

  Rect tight;
  do {
    const int lg = r.long_side();
    if (lg < L || lg > 2 * L) continue;
    // An internally spanned rectangle is the bounding box of a ∩ R.
    bool any = false;
    for (const auto& c : sites) {
      if (!r.contains_cell(c)) continue;
      if (!any) {
        tight.lo = tight.hi = c;
        any = true;
        continue;
      }
      for (std::size_t u = 0; u < c.size(); ++u) {
        tight.lo[u] = std::min(tight.lo[u], c[u]);
        tight.hi[u] = std::max(tight.hi[u], c[u]);
      }
    }
    if (!any || !(tight == r)) continue;
    if (internally_spanned(spec, r, a)) return r;
  } while (advance());
  throw LemmaViolation("no internally spanned rectangle with L <= long(R) <= 2L");
}

CellSet small_component(const LatticeSpec& spec, const CellSet& a, int L) {
  check_set(spec, a);
  if (L < 1) throw DomainError("L must be positive");
  const BootstrapProcess proc(spec);
  std::vector<std::size_t> order;
  proc.run_local(a, &order);

  const auto& box = proc.box();
  const auto dims = static_cast<std::size_t>(spec.dims());
  const std::size_t volume = spec.volume();
  UnionFind uf(volume);
  std::vector<std::uint8_t> added(volume, 0);
  std::vector<int> lo(volume * dims);
  std::vector<int> hi(volume * dims);
  const auto extent = [&](std::size_t root) {
    int e = 0;
    for (std::size_t ax = 0; ax < dims; ++ax) e = std::max(e, hi[root * dims + ax] - lo[root * dims + ax] + 1);
    return e;
  };

  int best = 0;
  for (std::size_t step = 0; step < order.size(); ++step) {
    const std::size_t c = order[step];
    added[c] = 1;
    for (std::size_t ax = 0; ax < dims; ++ax) {
      lo[c * dims + ax] = hi[c * dims + ax] = box.coord0(c, static_cast<int>(ax));
    }
    std::size_t root = c;
    box.for_each_neighbour(c, [&](std::size_t nb) {
      if (!added[nb]) return;
      const auto rn = uf.find(nb);
      const auto rc = uf.find(root);
      if (rn == rc) return;
      const auto merged = uf.unite(rn, rc);
      const auto other = merged == rn ? rc : rn;
      for (std::size_t ax = 0; ax < dims; ++ax) {
        lo[merged * dims + ax] = std::min(lo[merged * dims + ax], lo[other * dims + ax]);
        hi[merged * dims + ax] = std::max(hi[merged * dims + ax], hi[other * dims + ax]);
      }
      root = merged;
    });
    root = uf.find(root);
    const int e = extent(root);
    best = std::max(best, e);
    if (e < L) continue;

    CellSet x(volume);
    for (std::size_t i = 0; i <= step; ++i) {
      if (uf.find(order[i]) == root) x.insert(order[i]);
    }
    const int dx = diam(spec, x);
    CellSet seeds = a;
    seeds &= x;
    if (components(spec, x).size() != 1 || dx < L || dx > 2 * L ||
        !x.is_subset_of(closure(spec, seeds).closure)) {
      throw LemmaViolation("incremental component fails L <= diam(X) <= 2L or is not internally filled");
    }
    return x;
  }
  throw DomainError("L exceeds the diameter of the closure (" + std::to_string(best) + ")");
}

bool has_double_gap(const LatticeSpec& spec, const Rect& rect, const CellSet& a, int axis) {
  check_rect(spec, rect);
  check_set(spec, a);
  if (axis < 1 || axis > spec.d()) throw DomainError("axis must be a long axis");
  const auto u = static_cast<std::size_t>(axis - 1);
  std::vector<std::uint8_t> occupied(static_cast<std::size_t>(rect.hi[u] - rect.lo[u] + 1), 0);
  a.for_each([&](std::size_t i) {
    for (int ax = 0; ax < spec.d(); ++ax) {
      const int x = spec.coord0(i, ax) + 1;
      const auto v = static_cast<std::size_t>(ax);
      if (x < rect.lo[v] || x > rect.hi[v]) return;
    }
    occupied[static_cast<std::size_t>(spec.coord0(i, axis - 1) + 1 - rect.lo[u])] = 1;
  });
  for (std::size_t t = 0; t + 1 < occupied.size(); ++t) {
    if (!occupied[t] && !occupied[t + 1]) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

class SliceMap {
 public:
  SliceMap(const LatticeSpec& slab, const CellSet& a) {
    if (slab.kind() != StructureKind::Slab) throw DomainError("blockers are defined on slab structures");
    check_set(slab, a);
    k_.assign(slab.k().begin(), slab.k().end());
    std::size_t vol = 1;
    for (int s : k_) vol *= static_cast<std::size_t>(s);
    occupied_.assign(vol, 0);
    a.for_each([&](std::size_t i) { occupied_[i % vol] = 1; });
  }

  int ell() const { return static_cast<int>(k_.size()); }
  int k(int axis) const { return k_[static_cast<std::size_t>(axis - 1)]; }

  // Slices outside [k] count as unoccupied.
  bool empty(const std::vector<int>& x) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < k_.size(); ++i) {
      if (x[i] < 1 || x[i] > k_[i]) return true;
      idx = idx * static_cast<std::size_t>(k_[i]) + static_cast<std::size_t>(x[i] - 1);
    }
    return !occupied_[idx];
  }

  void check_edge(const SlabEdge& e) const {
    if (e.axis < 1 || e.axis > ell()) throw DomainError("edge direction must be a thick axis");
    if (e.corner.size() != k_.size()) throw DomainError("corner has the wrong dimension");
    for (std::size_t i = 0; i < k_.size(); ++i) {
      if (e.corner[i] != 1 && e.corner[i] != k_[i]) throw DomainError("corner coordinates must be 1 or k_i");
    }
  }

  bool blocker(const std::vector<int>& x, const SlabEdge& e, BlockerSign sign) const {
    if (!empty(x)) return false;
    std::vector<int> y = x;
    for (int i = 1; i <= ell(); ++i) {
      const auto u = static_cast<std::size_t>(i - 1);
      int step = 1;
      if (i == e.axis) {
        if (sign == BlockerSign::Minus) step = -1;
      } else if (e.corner[u] == k_[u]) {
        step = -1;
      }
      y[u] += step;
      const bool ok = empty(y);
      y[u] -= step;
      if (!ok) return false;
    }
    return true;
  }

  bool blocked(const SlabEdge& e, bool full) const {
    const auto u = static_cast<std::size_t>(e.axis - 1);
    const double kj = k_[u];
    std::vector<int> x = e.corner;
    int first_plus = -1;
    int last_minus = -1;
    for (int t = 1; t <= k_[u]; ++t) {
      x[u] = t;
      if (first_plus < 0 && blocker(x, e, BlockerSign::Plus) && (!full || t < kj / 3.0 - 1.0)) {
        first_plus = t;
      }
      if (blocker(x, e, BlockerSign::Minus) && (!full || t > 2.0 * kj / 3.0 + 1.0)) last_minus = t;
    }
    return first_plus > 0 && last_minus > first_plus;
  }

 private:
  std::vector<int> k_;
  std::vector<std::uint8_t> occupied_;
};

}  // namespace

bool is_blocker(const LatticeSpec& slab, const CellSet& a, const SlabIndex& x, const SlabEdge& edge,
                BlockerSign sign) {
  const SliceMap map(slab, a);
  map.check_edge(edge);
  if (x.x.size() != edge.corner.size()) throw DomainError("slice index has the wrong dimension");
  for (int i = 1; i <= map.ell(); ++i) {
    const auto u = static_cast<std::size_t>(i - 1);
    if (x.x[u] < 1 || x.x[u] > map.k(i)) throw DomainError("slice index out of range");
    if (i != edge.axis && x.x[u] != edge.corner[u]) throw DomainError("slice does not lie on the edge");
  }
  return map.blocker(x.x, edge, sign);
}

bool edge_blocked(const LatticeSpec& slab, const CellSet& a, const SlabEdge& edge, bool full) {
  const SliceMap map(slab, a);
  map.check_edge(edge);
  return map.blocked(edge, full);
}

std::vector<SlabEdge> slab_edges(const LatticeSpec& slab, int axis) {
  if (slab.kind() != StructureKind::Slab) throw DomainError("edges are defined on slab structures");
  const auto k = slab.k();
  const int ell = static_cast<int>(k.size());
  if (axis < 1 || axis > ell) throw DomainError("edge direction must be a thick axis");
  std::vector<SlabEdge> out;
  SlabEdge e;
  e.axis = axis;
  e.corner.assign(k.size(), 1);
  while (true) {
    out.push_back(e);
    int i = ell - 1;
    for (; i >= 0; --i) {
      const auto u = static_cast<std::size_t>(i);
      if (i + 1 == axis || k[u] == 1) continue;
      if (e.corner[u] == 1) {
        e.corner[u] = k[u];
        break;
      }
      e.corner[u] = 1;
    }
    if (i < 0) break;
  }
  return out;
}

std::string to_string(CrossCase c) {
  switch (c) {
    case CrossCase::NoCross:
      return "NO_CROSS";
    case CrossCase::CaseA:
      return "CASE_A";
    case CrossCase::CaseB:
      return "CASE_B";
    case CrossCase::CaseC:
      return "CASE_C";
    case CrossCase::Violation:
      return "VIOLATION";
  }
  return "UNKNOWN";
}

CrossCase detercross_check(const LatticeSpec& slab, const CellSet& a, int axis) {
  const SliceMap map(slab, a);
  if (axis < 1 || axis > map.ell()) throw DomainError("crossing direction must be a thick axis");
  const int spec_axis = slab.d() + axis - 1;

  const BootstrapProcess proc(slab);
  const auto fr = proc.run_local(a);
  const auto labels = detail::label_components(proc.box(), fr.infected);
  const auto u = static_cast<std::size_t>(spec_axis);
  const bool crossing = std::any_of(labels.comps.begin(), labels.comps.end(), [&](const auto& c) {
    return c.lo[u] == 0 && c.hi[u] == map.k(axis) - 1;
  });
  if (!crossing) return CrossCase::NoCross;

  const auto& box = proc.box();
  bool close_pair = false;
  a.for_each([&](std::size_t c) {
    if (close_pair) return;
    box.for_each_neighbour(c, [&](std::size_t nb) {
      if (a.contains(nb)) close_pair = true;
      box.for_each_neighbour(nb, [&](std::size_t nb2) {
        if (nb2 != c && a.contains(nb2)) close_pair = true;
      });
    });
  });
  if (close_pair) return CrossCase::CaseA;

  for (const auto& e : slab_edges(slab, axis)) {
    if (!map.blocked(e, false)) return CrossCase::CaseB;
  }
  for (int i = 1; i <= map.ell(); ++i) {
    if (i == axis) continue;
    for (const auto& e : slab_edges(slab, i)) {
      if (!map.blocked(e, true)) return CrossCase::CaseC;
    }
  }
  return CrossCase::Violation;
}

// ---------------------------------------------------------------------------

double lgap_probability(int m, int ell, double u) {
  if (m < 1) throw DomainError("m must be positive");
  if (ell < 0) throw DomainError("ell must be nonnegative");
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("u must lie in [0,1]");
  return lgap_probability_exact<double>(m, ell, u);
}

// ---------------------------------------------------------------------------

CellSet gamma_set(const LatticeSpec& spec, const CellSet& a, int m, const Cell& x) {
  check_set(spec, a);
  if (m < 1) throw DomainError("m must be positive");
  if (!spec.in_bounds(x)) throw BoundsError("cell out of bounds");
  if (spec.min_threshold() < 2) throw DomainError("gamma_set needs every threshold to be at least 2");

  const auto dims = static_cast<std::size_t>(spec.dims());
  std::vector<int> width(dims);
  std::vector<int> first(dims);
  std::vector<int> last(dims);
  for (std::size_t ax = 0; ax < dims; ++ax) {
    const int side = spec.side(static_cast<int>(ax));
    width[ax] = std::min(m, side);
    first[ax] = std::max(0, x[ax] - width[ax]);
    last[ax] = std::min(x[ax] - 1, side - width[ax]);
  }

  CellSet out(spec.volume());
  std::vector<int> offset = first;
  while (true) {
    const detail::Box box(spec, offset, width);
    std::vector<int> need(box.volume());
    box.for_each_cell([&](std::size_t local, std::span<const int> c) {
      need[local] = spec.threshold_unchecked(c);
    });
    std::vector<std::size_t> seeds;
    a.for_each([&](std::size_t i) {
      if (auto l = box.to_local(i)) seeds.push_back(*l);
    });
    const auto fr = detail::run_frontier(box, need, seeds);
    const auto xl = *box.to_local(spec.index(x));
    if (fr.infected[xl]) {
      const auto labels = detail::label_components(box, fr.infected);
      const int id = labels.label[xl];
      for (std::size_t l = 0; l < box.volume(); ++l) {
        if (labels.label[l] == id) out.insert(box.to_parent(l));
      }
    }

    std::size_t ax = dims;
    while (ax > 0) {
      --ax;
      if (offset[ax] < last[ax]) {
        ++offset[ax];
        break;
      }
      offset[ax] = first[ax];
      if (ax == 0) return out;
    }
  }
}

// ---------------------------------------------------------------------------

namespace {

std::size_t vertex_id(const GraphVertex& v, int s) {
  return static_cast<std::size_t>((v.second - 1) * s + (v.first - 1));
}

GraphEdge normalised(const GraphEdge& e) { return e.first < e.second ? e : GraphEdge{e.second, e.first}; }

}  // namespace

void validate(const ColouredGraph& g) {
  if (g.s < 1) throw DomainError("vertex set S must be nonempty");
  std::set<GraphEdge> good;
  const auto check = [&](const GraphEdge& e) {
    for (const auto& v : {e.first, e.second}) {
      if (v.first < 1 || v.first > g.s || v.second < 1 || v.second > 2) {
        throw DomainError("graph vertex out of range");
      }
    }
    if (e.first == e.second) throw DomainError("self-loops are not allowed");
  };
  for (const auto& e : g.good) {
    check(e);
    good.insert(normalised(e));
  }
  for (const auto& e : g.bad) {
    check(e);
    if (good.count(normalised(e))) throw DomainError("an edge cannot be both good and bad");
  }
}

bool is_admissible(const ColouredGraph& g) {
  validate(g);
  if (!g.bad.empty()) return true;
  const auto n = static_cast<std::size_t>(2 * g.s);
  UnionFind uf(n);
  std::set<GraphEdge> edges;
  for (const auto& e : g.good) {
    edges.insert(normalised(e));
    uf.unite(vertex_id(e.first, g.s), vertex_id(e.second, g.s));
  }
  std::vector<std::size_t> size(n, 0);
  std::vector<std::size_t> count(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++size[uf.find(v)];
  for (const auto& e : edges) ++count[uf.find(vertex_id(e.first, g.s))];
  for (std::size_t r = 0; r < n; ++r) {
    if (size[r] > 0 && count[r] != size[r] * (size[r] - 1) / 2) return false;
  }
  return true;
}

bool chain_crossed(const GraphChain& p) {
  if (p.s < 1) throw DomainError("vertex set S must be nonempty");
  const auto m = static_cast<int>(p.layers.size());
  if (m == 0) return false;
  for (const auto& g : p.layers) {
    if (g.s != p.s) throw DomainError("all graphs in a chain must share S");
    if (!is_admissible(g)) throw DomainError("chain contains a non-admissible graph");
  }
  const int s = p.s;
  const auto id = [s](int x, int col) { return static_cast<std::size_t>((col - 1) * s + (x - 1)); };
  UnionFind uf(static_cast<std::size_t>(2 * m * s));
  for (int t = 1; t <= m; ++t) {
    const auto& g = p.layers[static_cast<std::size_t>(t - 1)];
    const auto join = [&](const GraphEdge& e) {
      uf.unite(id(e.first.first, 2 * t - 2 + e.first.second), id(e.second.first, 2 * t - 2 + e.second.second));
    };
    for (const auto& e : g.good) join(e);
    for (const auto& e : g.bad) join(e);
  }
  for (int y = 1; y < m; ++y) {
    for (int x = 1; x <= s; ++x) uf.unite(id(x, 2 * y), id(x, 2 * y + 1));
  }
  for (int x = 1; x <= s; ++x) {
    for (int x2 = 1; x2 <= s; ++x2) {
      if (uf.find(id(x, 1)) == uf.find(id(x2, 2 * m))) return true;
    }
  }
  return false;
}

}  // namespace bootlab
