#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace bootlab {

// A lattice cell: 1-based coordinates, long axes first, thick axes last.
using Cell = std::vector<int>;

enum class StructureKind { Uniform, Thick, Slab };

std::string to_string(StructureKind kind);

// Shape and per-cell threshold rule of a bootstrap structure.
//
//   Uniform  [n]^d, every cell has threshold r.
//   Thick    [n]^d x [k]^ell, threshold r + #{thick coordinates not in {1,k}}.
//   Slab     [m_1]x..x[m_d] x [k_1]x..x[k_ell], threshold
//            1 + #{j : thick coordinate j not in {1,k_j}}.
//
// `ell` always counts the thick axes that are actually stored. Cells are
// linearised row-major over (long axes, thick axes): the last thick axis
// varies fastest. Immutable after construction.
class LatticeSpec {
 public:
  static constexpr std::uint64_t kMaxCells = std::uint64_t{1} << 31;

  static LatticeSpec uniform(int d, int n, int r);
  static LatticeSpec thick(int d, int ell, int n, int k, int r);
  static LatticeSpec slab(std::vector<int> long_sides, std::vector<int> thick_sides);

  StructureKind kind() const noexcept { return kind_; }
  int d() const noexcept { return d_; }
  int ell() const noexcept { return ell_; }
  int dims() const noexcept { return d_ + ell_; }
  int r() const noexcept { return r_; }
  // Side length of long axis 1 (all long axes for Uniform/Thick).
  int n() const noexcept { return sides_.front(); }
  // Thick side lengths, one per thick axis.
  std::span<const int> k() const noexcept {
    return std::span<const int>(sides_).subspan(static_cast<std::size_t>(d_));
  }
  std::span<const int> sides() const noexcept { return sides_; }
  int side(int axis) const { return sides_.at(static_cast<std::size_t>(axis)); }
  std::size_t volume() const noexcept { return volume_; }
  std::span<const std::size_t> strides() const noexcept { return strides_; }

  bool in_bounds(std::span<const int> cell) const noexcept;
  std::size_t index(std::span<const int> cell) const;  // throws BoundsError
  Cell cell(std::size_t index) const;
  // Zero-based coordinate of `index` along `axis`.
  int coord0(std::size_t index, int axis) const noexcept {
    return static_cast<int>((index / strides_[static_cast<std::size_t>(axis)]) %
                            static_cast<std::size_t>(sides_[static_cast<std::size_t>(axis)]));
  }

  // Threshold from 1-based coordinates; no bounds check.
  int threshold_unchecked(std::span<const int> cell) const noexcept;
  int max_threshold() const noexcept;
  int min_threshold() const noexcept;

  bool operator==(const LatticeSpec&) const = default;

 private:
  LatticeSpec(StructureKind kind, int d, int ell, int r, std::vector<int> sides);

  StructureKind kind_;
  int d_;
  int ell_;
  int r_;
  std::vector<int> sides_;
  std::vector<std::size_t> strides_;
  std::size_t volume_;
};

// Dense bitset over the cells of one lattice, with a cached cardinality.
class CellSet {
 public:
  CellSet() = default;
  explicit CellSet(std::size_t universe);
  static CellSet full(std::size_t universe);

  std::size_t universe() const noexcept { return universe_; }
  std::size_t size() const noexcept { return count_; }
  bool empty() const noexcept { return count_ == 0; }

  bool contains(std::size_t i) const noexcept { return (words_[i >> 6] >> (i & 63)) & 1u; }
  bool insert(std::size_t i);  // true if newly added
  bool erase(std::size_t i);
  void clear();

  // Visits members in ascending index order.
  template <class F>
  void for_each(F&& f) const {
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits) {
        const int b = __builtin_ctzll(bits);
        f(w * 64 + static_cast<std::size_t>(b));
        bits &= bits - 1;
      }
    }
  }
  std::vector<std::size_t> indices() const;

  bool is_subset_of(const CellSet& other) const;
  CellSet& operator|=(const CellSet& other);
  CellSet& operator&=(const CellSet& other);
  bool operator==(const CellSet& other) const {
    return universe_ == other.universe_ && words_ == other.words_;
  }

  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

 private:
  void check_universe(const CellSet& other) const;
  void recount();

  std::size_t universe_ = 0;
  std::size_t count_ = 0;
  std::vector<std::uint64_t> words_;
};

// Axis-aligned rectangle over the d long axes; thick axes are always full.
struct Rect {
  std::vector<int> lo;
  std::vector<int> hi;

  int d() const noexcept { return static_cast<int>(lo.size()); }
  std::vector<int> dims() const;
  long long phi() const;
  int long_side() const;
  int short_side() const;
  bool contains_cell(std::span<const int> cell) const noexcept;
  bool contains(const Rect& other) const noexcept;
  bool operator==(const Rect&) const = default;
};

Rect full_rect(const LatticeSpec& spec);
// Validates lo <= hi and that the rectangle lies in the lattice.
void check_rect(const LatticeSpec& spec, const Rect& rect);

CellSet make_cellset(const LatticeSpec& spec, const std::vector<Cell>& cells);
std::vector<Cell> to_cells(const LatticeSpec& spec, const CellSet& set);

int threshold(const LatticeSpec& spec, const Cell& c);
std::vector<Cell> neighbours(const LatticeSpec& spec, const Cell& c);
Rect bounding_rect(const LatticeSpec& spec, const CellSet& s);

}  // namespace bootlab
