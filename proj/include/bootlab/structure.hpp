#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "bootlab/error.hpp"
#include "bootlab/lattice.hpp"

namespace bootlab {

// Internally spanned rectangle R with L <= long(R) <= 2L. Only for r = 2
// uniform/thick structures; requires 1 <= L <= long_diam(closure(a)).
Rect al_window(const LatticeSpec& spec, const CellSet& a, int L);

// Connected X with X ⊆ [a ∩ X] and L <= diam(X) <= 2L, found by adding the
// sites of a and then the newly infected sites one at a time.
CellSet small_component(const LatticeSpec& spec, const CellSet& a, int L);

// Two adjacent hyperplanes of rect perpendicular to long `axis` with no
// element of a.
bool has_double_gap(const LatticeSpec& spec, const Rect& rect, const CellSet& a, int axis);

// ---------------------------------------------------------------------------
// Slab blockers. Thick axes are numbered 1..ell; slices M_x are indexed by
// the thick coordinate vector x.

struct SlabIndex {
  std::vector<int> x;
};

// Boundary edge E^(j)_b: corner b ∈ {1,k_1} x .. x {1,k_ell}, direction j.
struct SlabEdge {
  std::vector<int> corner;
  int axis = 1;
};

enum class BlockerSign { Plus, Minus };

bool is_blocker(const LatticeSpec& slab, const CellSet& a, const SlabIndex& x,
                const SlabEdge& edge, BlockerSign sign);
bool edge_blocked(const LatticeSpec& slab, const CellSet& a, const SlabEdge& edge, bool full);

// Distinct boundary edges in direction `axis` (corners with b_axis = 1).
std::vector<SlabEdge> slab_edges(const LatticeSpec& slab, int axis);

enum class CrossCase { NoCross, CaseA, CaseB, CaseC, Violation };
std::string to_string(CrossCase c);

// Trichotomy for a crossing of the slab in thick direction `axis`.
CrossCase detercross_check(const LatticeSpec& slab, const CellSet& a, int axis);

// ---------------------------------------------------------------------------
// L-gaps. Events U_1..U_{m+1} and V^(1..ell)_1..m, each independently with
// probability u; returns P(no i with U_i, U_{i+1}, V^(*)_i all failing).

template <class T>
T lgap_probability_exact(int m, int ell, const T& u) {
  const T one(1);
  T none_v(1);
  for (int i = 0; i < ell; ++i) none_v *= one - u;
  const T some_v = one - none_v;
  T on = u;          // U_i occurred
  T off = one - u;   // U_i failed
  for (int i = 0; i < m; ++i) {
    const T next_on = (on + off) * u;
    const T next_off = on * (one - u) + off * (one - u) * some_v;
    on = next_on;
    off = next_off;
  }
  return on + off;
}

double lgap_probability(int m, int ell, double u);

// ---------------------------------------------------------------------------

// Cells joined to x by an internally filled connected set of diam <= m.
// Requires every threshold to be at least 2.
CellSet gamma_set(const LatticeSpec& spec, const CellSet& a, int m, const Cell& x);

// ---------------------------------------------------------------------------
// Two-coloured graphs on S x [2], S = {1..s}. Vertices are (x, side).

using GraphVertex = std::pair<int, int>;
using GraphEdge = std::pair<GraphVertex, GraphVertex>;

struct ColouredGraph {
  int s = 0;
  std::vector<GraphEdge> good;
  std::vector<GraphEdge> bad;
};

struct GraphChain {
  int s = 0;
  std::vector<ColouredGraph> layers;
};

void validate(const ColouredGraph& g);
bool is_admissible(const ColouredGraph& g);
// Path from S x {1} to S x {2m} in G_P.
bool chain_crossed(const GraphChain& p);

}  // namespace bootlab
