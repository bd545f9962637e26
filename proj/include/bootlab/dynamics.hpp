#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "bootlab/detail/box.hpp"
#include "bootlab/lattice.hpp"

namespace bootlab {

// Infected region assumed to lie outside the simulated box. Credit is given
// as +1 to the needed-neighbour count of the face cells it touches; exterior
// cells are never materialised.
//
//   HalfSpaceLow(j)   everything with x_j < lo_j is infected
//   HalfSpaceHigh(j)  everything with x_j > hi_j is infected
//   AllOutside        everything outside the box along the long axes
struct BoundaryCondition {
  enum class Mode { None, HalfSpaceLow, HalfSpaceHigh, AllOutside };

  Mode mode = Mode::None;
  int axis = 0;  // 1-based long axis, half-space modes only

  static BoundaryCondition none() { return {}; }
  static BoundaryCondition half_low(int axis) { return {Mode::HalfSpaceLow, axis}; }
  static BoundaryCondition half_high(int axis) { return {Mode::HalfSpaceHigh, axis}; }
  static BoundaryCondition all_outside() { return {Mode::AllOutside, 0}; }

  bool operator==(const BoundaryCondition&) const = default;
};

struct ClosureResult {
  CellSet closure;
  int generations = 0;                // rounds that infected at least one cell
  std::vector<std::size_t> history;   // |A_0|, |A_1|, ..., |A_generations|
};

struct SpanDecomposition {
  std::vector<Rect> rects;  // one per component of the closure
};

// Frontier-based bootstrap engine bound to one box and boundary condition.
// Construction precomputes per-cell needs; run() may be called repeatedly
// and concurrently.
class BootstrapProcess {
 public:
  using ThresholdFn = std::function<int(std::span<const int>)>;

  BootstrapProcess(const LatticeSpec& spec, std::optional<Rect> box = std::nullopt,
                   BoundaryCondition bc = BoundaryCondition::none());
  // Same, with thresholds taken from `thresholds` (1-based parent coordinates)
  // instead of the spec.
  BootstrapProcess(const LatticeSpec& spec, const Rect& box, BoundaryCondition bc,
                   const ThresholdFn& thresholds);

  const detail::Box& box() const noexcept { return box_; }

  // Seeds outside the box are ignored.
  ClosureResult run(const CellSet& seeds) const;
  detail::FrontierResult run_local(const CellSet& seeds,
                                   std::vector<std::size_t>* order = nullptr) const;

 private:
  void init_needs(BoundaryCondition bc, const ThresholdFn* thresholds);

  const LatticeSpec* spec_;
  detail::Box box_;
  std::vector<int> need_;
};

ClosureResult closure(const LatticeSpec& spec, const CellSet& a,
                      BoundaryCondition bc = BoundaryCondition::none(),
                      const std::optional<Rect>& confine = std::nullopt);

bool percolates(const LatticeSpec& spec, const CellSet& a);

std::vector<CellSet> components(const LatticeSpec& spec, const CellSet& s);

// Largest L-infinity extent + 1 over connected pairs, all axes; 0 if empty.
int diam(const LatticeSpec& spec, const CellSet& s);
// Same, measured over the long axes only.
int long_diam(const LatticeSpec& spec, const CellSet& s);

SpanDecomposition span(const LatticeSpec& spec, const CellSet& a);

bool internally_spanned(const LatticeSpec& spec, const Rect& rect, const CellSet& a);

// Left-to-right crossing of `rect` in long direction `axis` (1-based) by
// (a ∩ rect) ∪ forced, with the half-space behind the low face infected. The
// crossing path must lie in one component of the confined closure.
bool crossed(const LatticeSpec& spec, const Rect& rect, const CellSet& a, int axis,
             const CellSet& forced);
bool crossed(const LatticeSpec& spec, const Rect& rect, const CellSet& a, int axis);

// Splits `rect` into blocks of width `block_len` along long `axis`, gives each
// block the reduced slab thresholds (base r-1, +1 for cells strictly inside
// the block along `axis`, +1 per interior thick coordinate) and closes every
// block independently. Returns the union of the block closures.
CellSet coupled_block_closure(const LatticeSpec& spec, const Rect& rect, const CellSet& a,
                              int block_len, int axis);

}  // namespace bootlab
