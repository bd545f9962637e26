#pragma once

// Internal helpers shared by the dynamics, structure and Monte Carlo
// modules: a local sub-box of a lattice, the frontier engine that runs on it
// and connected-component labelling.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bootlab/lattice.hpp"

namespace bootlab::detail {

// A box of a lattice: a rectangle on the long axes times full thickness.
// Local indices are row-major in the same axis order as the parent, so
// ascending local order agrees with ascending parent order.
class Box {
 public:
  Box(const LatticeSpec& spec, const Rect& rect);
  explicit Box(const LatticeSpec& spec);
  // Arbitrary sub-box over all axes, zero-based offset.
  Box(const LatticeSpec& spec, std::vector<int> offset, std::vector<int> sides);

  const LatticeSpec& spec() const noexcept { return *spec_; }
  int dims() const noexcept { return static_cast<int>(sides_.size()); }
  int side(int axis) const noexcept { return sides_[static_cast<std::size_t>(axis)]; }
  std::size_t volume() const noexcept { return volume_; }
  bool is_whole() const noexcept { return whole_; }

  int coord0(std::size_t local, int axis) const noexcept {
    const auto u = static_cast<std::size_t>(axis);
    return static_cast<int>((local / strides_[u]) % static_cast<std::size_t>(sides_[u]));
  }
  std::size_t to_parent(std::size_t local) const noexcept;
  std::optional<std::size_t> to_local(std::size_t parent) const noexcept;

  template <class F>
  void for_each_neighbour(std::size_t local, F&& f) const {
    for (std::size_t a = 0; a < sides_.size(); ++a) {
      const auto c = static_cast<int>((local / strides_[a]) % static_cast<std::size_t>(sides_[a]));
      if (c > 0) f(local - strides_[a]);
      if (c + 1 < sides_[a]) f(local + strides_[a]);
    }
  }

  // Visits every local cell with its 1-based parent coordinates.
  template <class F>
  void for_each_cell(F&& f) const {
    Cell c(sides_.size());
    for (std::size_t a = 0; a < sides_.size(); ++a) c[a] = offset_[a] + 1;
    for (std::size_t local = 0; local < volume_; ++local) {
      f(local, std::span<const int>(c));
      for (int a = static_cast<int>(sides_.size()) - 1; a >= 0; --a) {
        const auto u = static_cast<std::size_t>(a);
        if (++c[u] <= offset_[u] + sides_[u]) break;
        c[u] = offset_[u] + 1;
      }
    }
  }

 private:
  const LatticeSpec* spec_;
  std::vector<int> offset_;  // zero-based parent coordinate of local origin
  std::vector<int> sides_;
  std::vector<std::size_t> strides_;
  std::size_t volume_ = 0;
  bool whole_ = false;
};

struct FrontierResult {
  std::vector<std::uint8_t> infected;
  std::size_t count = 0;
  int generations = 0;
  std::vector<std::size_t> history;
};

// Synchronous bootstrap rounds on a box. `need[c]` is the number of infected
// box neighbours cell c requires (threshold minus boundary credit). If
// `order` is given it receives the infected cells in a valid one-at-a-time
// infection order: seeds as given, then each round in ascending order.
FrontierResult run_frontier(const Box& box, std::span<const int> need,
                            std::span<const std::size_t> seeds_local,
                            std::vector<std::size_t>* order = nullptr);

struct ComponentExtent {
  std::size_t first = 0;  // smallest local index in the component
  std::size_t size = 0;
  std::vector<int> lo;  // zero-based local coordinates, all axes
  std::vector<int> hi;
};

struct ComponentLabels {
  std::vector<int> label;  // -1 for non-members
  std::vector<ComponentExtent> comps;
};

// Components of the member set, ordered by smallest local index.
ComponentLabels label_components(const Box& box, std::span<const std::uint8_t> member);

}  // namespace bootlab::detail
