#include "bootlab/lattice.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>
#include <sstream>

#include "bootlab/error.hpp"

namespace bootlab {

std::string to_string(StructureKind kind) {
  switch (kind) {
    case StructureKind::Uniform:
      return "uniform";
    case StructureKind::Thick:
      return "thick";
    case StructureKind::Slab:
      return "slab";
  }
  return "unknown";
}

LatticeSpec::LatticeSpec(StructureKind kind, int d, int ell, int r, std::vector<int> sides)
    : kind_(kind), d_(d), ell_(ell), r_(r), sides_(std::move(sides)) {
  if (d_ < 1) throw DomainError("lattice needs at least one long axis");
  if (ell_ < 0) throw DomainError("ell must be nonnegative");
  if (r_ < 1) throw DomainError("threshold r must be positive");
  std::uint64_t vol = 1;
  for (int s : sides_) {
    if (s < 1) throw DomainError("side lengths must be positive");
    vol *= static_cast<std::uint64_t>(s);
    if (vol > kMaxCells) throw DomainError("lattice exceeds 2^31 cells");
  }
  volume_ = static_cast<std::size_t>(vol);
  strides_.assign(sides_.size(), 1);
  for (int i = static_cast<int>(sides_.size()) - 2; i >= 0; --i) {
    const auto u = static_cast<std::size_t>(i);
    strides_[u] = strides_[u + 1] * static_cast<std::size_t>(sides_[u + 1]);
  }
}

LatticeSpec LatticeSpec::uniform(int d, int n, int r) {
  if (d < 1) throw DomainError("lattice needs at least one long axis");
  return LatticeSpec(StructureKind::Uniform, d, 0, r, std::vector<int>(static_cast<std::size_t>(d), n));
}

LatticeSpec LatticeSpec::thick(int d, int ell, int n, int k, int r) {
  if (d < 1 || ell < 0) throw DomainError("invalid axis counts");
  std::vector<int> sides(static_cast<std::size_t>(d), n);
  sides.insert(sides.end(), static_cast<std::size_t>(ell), k);
  return LatticeSpec(StructureKind::Thick, d, ell, r, std::move(sides));
}

LatticeSpec LatticeSpec::slab(std::vector<int> long_sides, std::vector<int> thick_sides) {
  if (thick_sides.empty()) throw DomainError("slab needs at least one thick axis");
  const int d = static_cast<int>(long_sides.size());
  const int ell = static_cast<int>(thick_sides.size());
  long_sides.insert(long_sides.end(), thick_sides.begin(), thick_sides.end());
  return LatticeSpec(StructureKind::Slab, d, ell, 1, std::move(long_sides));
}

bool LatticeSpec::in_bounds(std::span<const int> cell) const noexcept {
  if (cell.size() != sides_.size()) return false;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    if (cell[i] < 1 || cell[i] > sides_[i]) return false;
  }
  return true;
}

std::size_t LatticeSpec::index(std::span<const int> cell) const {
  if (!in_bounds(cell)) {
    std::ostringstream os;
    os << "cell (";
    for (std::size_t i = 0; i < cell.size(); ++i) os << (i ? "," : "") << cell[i];
    os << ") out of bounds";
    throw BoundsError(os.str());
  }
  std::size_t idx = 0;
  for (std::size_t i = 0; i < cell.size(); ++i) {
    idx += static_cast<std::size_t>(cell[i] - 1) * strides_[i];
  }
  return idx;
}

Cell LatticeSpec::cell(std::size_t index) const {
  if (index >= volume_) throw BoundsError("cell index out of range");
  Cell c(sides_.size());
  for (std::size_t i = 0; i < sides_.size(); ++i) {
    c[i] = static_cast<int>((index / strides_[i]) % static_cast<std::size_t>(sides_[i])) + 1;
  }
  return c;
}

int LatticeSpec::threshold_unchecked(std::span<const int> cell) const noexcept {
  if (kind_ == StructureKind::Uniform) return r_;
  int t = r_;
  for (int j = d_; j < d_ + ell_; ++j) {
    const auto u = static_cast<std::size_t>(j);
    if (cell[u] != 1 && cell[u] != sides_[u]) ++t;
  }
  return t;
}

int LatticeSpec::max_threshold() const noexcept {
  int t = r_;
  for (int j = d_; j < d_ + ell_; ++j) {
    if (sides_[static_cast<std::size_t>(j)] >= 3) ++t;
  }
  return t;
}

int LatticeSpec::min_threshold() const noexcept { return r_; }

// ---------------------------------------------------------------------------

CellSet::CellSet(std::size_t universe) : universe_(universe), words_((universe + 63) / 64, 0) {}

CellSet CellSet::full(std::size_t universe) {
  CellSet s(universe);
  std::fill(s.words_.begin(), s.words_.end(), ~std::uint64_t{0});
  if (universe % 64 != 0 && !s.words_.empty()) {
    s.words_.back() = (std::uint64_t{1} << (universe % 64)) - 1;
  }
  s.count_ = universe;
  return s;
}

bool CellSet::insert(std::size_t i) {
  if (i >= universe_) throw BoundsError("cell index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (words_[i >> 6] & mask) return false;
  words_[i >> 6] |= mask;
  ++count_;
  return true;
}

bool CellSet::erase(std::size_t i) {
  if (i >= universe_) throw BoundsError("cell index out of range");
  const std::uint64_t mask = std::uint64_t{1} << (i & 63);
  if (!(words_[i >> 6] & mask)) return false;
  words_[i >> 6] &= ~mask;
  --count_;
  return true;
}

void CellSet::clear() {
  std::fill(words_.begin(), words_.end(), 0);
  count_ = 0;
}

std::vector<std::size_t> CellSet::indices() const {
  std::vector<std::size_t> out;
  out.reserve(count_);
  for_each([&](std::size_t i) { out.push_back(i); });
  return out;
}

void CellSet::check_universe(const CellSet& other) const {
  if (universe_ != other.universe_) throw DomainError("cell sets belong to different lattices");
}

void CellSet::recount() {
  count_ = 0;
  for (auto w : words_) count_ += static_cast<std::size_t>(std::popcount(w));
}

bool CellSet::is_subset_of(const CellSet& other) const {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w] & ~other.words_[w]) return false;
  }
  return true;
}

CellSet& CellSet::operator|=(const CellSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] |= other.words_[w];
  recount();
  return *this;
}

CellSet& CellSet::operator&=(const CellSet& other) {
  check_universe(other);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] &= other.words_[w];
  recount();
  return *this;
}

// ---------------------------------------------------------------------------

std::vector<int> Rect::dims() const {
  std::vector<int> out(lo.size());
  for (std::size_t i = 0; i < lo.size(); ++i) out[i] = hi[i] - lo[i] + 1;
  return out;
}

long long Rect::phi() const {
  long long s = 0;
  for (int x : dims()) s += x;
  return s;
}

int Rect::long_side() const {
  const auto d = dims();
  return *std::max_element(d.begin(), d.end());
}

int Rect::short_side() const {
  const auto d = dims();
  return *std::min_element(d.begin(), d.end());
}

bool Rect::contains_cell(std::span<const int> cell) const noexcept {
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (cell[i] < lo[i] || cell[i] > hi[i]) return false;
  }
  return true;
}

bool Rect::contains(const Rect& other) const noexcept {
  if (other.lo.size() != lo.size()) return false;
  for (std::size_t i = 0; i < lo.size(); ++i) {
    if (other.lo[i] < lo[i] || other.hi[i] > hi[i]) return false;
  }
  return true;
}

Rect full_rect(const LatticeSpec& spec) {
  Rect r;
  for (int i = 0; i < spec.d(); ++i) {
    r.lo.push_back(1);
    r.hi.push_back(spec.side(i));
  }
  return r;
}

void check_rect(const LatticeSpec& spec, const Rect& rect) {
  if (rect.d() != spec.d() || rect.hi.size() != rect.lo.size()) {
    throw BoundsError("rectangle dimension does not match the lattice");
  }
  for (int i = 0; i < spec.d(); ++i) {
    const auto u = static_cast<std::size_t>(i);
    if (rect.lo[u] < 1 || rect.hi[u] > spec.side(i) || rect.lo[u] > rect.hi[u]) {
      throw BoundsError("rectangle out of bounds or inverted");
    }
  }
}

CellSet make_cellset(const LatticeSpec& spec, const std::vector<Cell>& cells) {
  CellSet s(spec.volume());
  for (const auto& c : cells) s.insert(spec.index(c));
  return s;
}

std::vector<Cell> to_cells(const LatticeSpec& spec, const CellSet& set) {
  std::vector<Cell> out;
  out.reserve(set.size());
  set.for_each([&](std::size_t i) { out.push_back(spec.cell(i)); });
  return out;
}

int threshold(const LatticeSpec& spec, const Cell& c) {
  if (!spec.in_bounds(c)) throw BoundsError("cell out of bounds");
  return spec.threshold_unchecked(c);
}

std::vector<Cell> neighbours(const LatticeSpec& spec, const Cell& c) {
  if (!spec.in_bounds(c)) throw BoundsError("cell out of bounds");
  std::vector<Cell> out;
  for (int axis = 0; axis < spec.dims(); ++axis) {
    const auto u = static_cast<std::size_t>(axis);
    for (int delta : {-1, 1}) {
      Cell nb = c;
      nb[u] += delta;
      if (nb[u] >= 1 && nb[u] <= spec.side(axis)) out.push_back(std::move(nb));
    }
  }
  return out;
}

Rect bounding_rect(const LatticeSpec& spec, const CellSet& s) {
  if (s.empty()) throw EmptyInputError("bounding_rect of an empty set");
  if (s.universe() != spec.volume()) throw DomainError("cell set does not match the lattice");
  Rect r;
  r.lo.assign(static_cast<std::size_t>(spec.d()), std::numeric_limits<int>::max());
  r.hi.assign(static_cast<std::size_t>(spec.d()), std::numeric_limits<int>::min());
  s.for_each([&](std::size_t idx) {
    for (int i = 0; i < spec.d(); ++i) {
      const int x = spec.coord0(idx, i) + 1;
      const auto u = static_cast<std::size_t>(i);
      r.lo[u] = std::min(r.lo[u], x);
      r.hi[u] = std::max(r.hi[u], x);
    }
  });
  return r;
}

}  // namespace bootlab
