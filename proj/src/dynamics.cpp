#include "bootlab/dynamics.hpp"

#include <algorithm>
#include <string>

#include "bootlab/error.hpp"

namespace bootlab {
namespace detail {

namespace {

std::pair<std::vector<int>, std::vector<int>> rect_extent(const LatticeSpec& spec, const Rect& rect) {
  check_rect(spec, rect);
  std::vector<int> offset;
  std::vector<int> sides;
  for (int a = 0; a < spec.dims(); ++a) {
    if (a < spec.d()) {
      const auto u = static_cast<std::size_t>(a);
      offset.push_back(rect.lo[u] - 1);
      sides.push_back(rect.hi[u] - rect.lo[u] + 1);
    } else {
      offset.push_back(0);
      sides.push_back(spec.side(a));
    }
  }
  return {std::move(offset), std::move(sides)};
}

}  // namespace

Box::Box(const LatticeSpec& spec, std::vector<int> offset, std::vector<int> sides)
    : spec_(&spec), offset_(std::move(offset)), sides_(std::move(sides)) {
  if (offset_.size() != static_cast<std::size_t>(spec.dims()) || sides_.size() != offset_.size()) {
    throw BoundsError("box dimension does not match the lattice");
  }
  whole_ = true;
  for (int a = 0; a < spec.dims(); ++a) {
    const auto u = static_cast<std::size_t>(a);
    if (offset_[u] < 0 || sides_[u] < 1 || offset_[u] + sides_[u] > spec.side(a)) {
      throw BoundsError("box out of bounds");
    }
    if (sides_[u] != spec.side(a)) whole_ = false;
  }
  strides_.assign(sides_.size(), 1);
  for (int i = static_cast<int>(sides_.size()) - 2; i >= 0; --i) {
    const auto u = static_cast<std::size_t>(i);
    strides_[u] = strides_[u + 1] * static_cast<std::size_t>(sides_[u + 1]);
  }
  volume_ = 1;
  for (int s : sides_) volume_ *= static_cast<std::size_t>(s);
}

Box::Box(const LatticeSpec& spec, const Rect& rect)
    : Box(spec, rect_extent(spec, rect).first, rect_extent(spec, rect).second) {}

Box::Box(const LatticeSpec& spec) : Box(spec, full_rect(spec)) {}

std::size_t Box::to_parent(std::size_t local) const noexcept {
  if (whole_) return local;
  const auto pstrides = spec_->strides();
  std::size_t idx = 0;
  for (std::size_t a = 0; a < sides_.size(); ++a) {
    const auto c = (local / strides_[a]) % static_cast<std::size_t>(sides_[a]);
    idx += (c + static_cast<std::size_t>(offset_[a])) * pstrides[a];
  }
  return idx;
}

std::optional<std::size_t> Box::to_local(std::size_t parent) const noexcept {
  if (whole_) return parent;
  std::size_t idx = 0;
  for (std::size_t a = 0; a < sides_.size(); ++a) {
    const int c = spec_->coord0(parent, static_cast<int>(a)) - offset_[a];
    if (c < 0 || c >= sides_[a]) return std::nullopt;
    idx += static_cast<std::size_t>(c) * strides_[a];
  }
  return idx;
}

FrontierResult run_frontier(const Box& box, std::span<const int> need,
                            std::span<const std::size_t> seeds_local,
                            std::vector<std::size_t>* order) {
  constexpr std::uint8_t kHealthy = 0, kInfected = 1, kQueued = 2;
  const std::size_t volume = box.volume();
  FrontierResult res;
  res.infected.assign(volume, kHealthy);
  std::vector<int> remaining(need.begin(), need.end());

  std::vector<std::size_t> current;
  std::vector<std::size_t> next;
  current.reserve(seeds_local.size());
  for (auto s : seeds_local) {
    if (res.infected[s] == kHealthy) {
      res.infected[s] = kInfected;
      current.push_back(s);
    }
  }
  res.count = current.size();
  res.history.push_back(res.count);
  if (order) *order = current;

  // Cells whose boundary credit alone meets the threshold join in round one.
  for (std::size_t c = 0; c < volume; ++c) {
    if (res.infected[c] == kHealthy && remaining[c] <= 0) {
      res.infected[c] = kQueued;
      next.push_back(c);
    }
  }

  while (true) {
    for (auto c : current) {
      box.for_each_neighbour(c, [&](std::size_t nb) {
        if (res.infected[nb] == kHealthy && --remaining[nb] <= 0) {
          res.infected[nb] = kQueued;
          next.push_back(nb);
        }
      });
    }
    if (next.empty()) break;
    for (auto c : next) res.infected[c] = kInfected;
    if (order) {
      const auto mark = order->size();
      order->insert(order->end(), next.begin(), next.end());
      std::sort(order->begin() + static_cast<std::ptrdiff_t>(mark), order->end());
    }
    res.count += next.size();
    res.history.push_back(res.count);
    ++res.generations;
    current.swap(next);
    next.clear();
  }
  return res;
}

ComponentLabels label_components(const Box& box, std::span<const std::uint8_t> member) {
  ComponentLabels out;
  out.label.assign(box.volume(), -1);
  std::vector<std::size_t> stack;
  const auto dims = static_cast<std::size_t>(box.dims());
  for (std::size_t start = 0; start < box.volume(); ++start) {
    if (!member[start] || out.label[start] >= 0) continue;
    const int id = static_cast<int>(out.comps.size());
    ComponentExtent ext;
    ext.first = start;
    ext.lo.assign(dims, box.side(0) + 1);
    ext.hi.assign(dims, -1);
    for (std::size_t a = 0; a < dims; ++a) ext.lo[a] = box.side(static_cast<int>(a));
    out.label[start] = id;
    stack.push_back(start);
    while (!stack.empty()) {
      const auto c = stack.back();
      stack.pop_back();
      ++ext.size;
      for (std::size_t a = 0; a < dims; ++a) {
        const int x = box.coord0(c, static_cast<int>(a));
        ext.lo[a] = std::min(ext.lo[a], x);
        ext.hi[a] = std::max(ext.hi[a], x);
      }
      box.for_each_neighbour(c, [&](std::size_t nb) {
        if (member[nb] && out.label[nb] < 0) {
          out.label[nb] = id;
          stack.push_back(nb);
        }
      });
    }
    out.comps.push_back(std::move(ext));
  }
  return out;
}

}  // namespace detail

namespace {

void check_set(const LatticeSpec& spec, const CellSet& s) {
  if (s.universe() != spec.volume()) throw DomainError("cell set does not match the lattice");
}

void check_long_axis(const LatticeSpec& spec, int axis) {
  if (axis < 1 || axis > spec.d()) {
    throw DomainError("axis " + std::to_string(axis) + " is not a long axis");
  }
}

std::vector<std::uint8_t> membership(const detail::Box& box, const CellSet& s) {
  std::vector<std::uint8_t> m(box.volume(), 0);
  s.for_each([&](std::size_t i) {
    if (auto l = box.to_local(i)) m[*l] = 1;
  });
  return m;
}

}  // namespace

BootstrapProcess::BootstrapProcess(const LatticeSpec& spec, std::optional<Rect> box,
                                   BoundaryCondition bc)
    : spec_(&spec), box_(box ? detail::Box(spec, *box) : detail::Box(spec)) {
  init_needs(bc, nullptr);
}

BootstrapProcess::BootstrapProcess(const LatticeSpec& spec, const Rect& box, BoundaryCondition bc,
                                   const ThresholdFn& thresholds)
    : spec_(&spec), box_(spec, box) {
  init_needs(bc, &thresholds);
}

void BootstrapProcess::init_needs(BoundaryCondition bc, const ThresholdFn* thresholds) {
  using Mode = BoundaryCondition::Mode;
  if (bc.mode == Mode::HalfSpaceLow || bc.mode == Mode::HalfSpaceHigh) {
    check_long_axis(*spec_, bc.axis);
  }
  need_.assign(box_.volume(), 0);
  const int d = spec_->d();
  box_.for_each_cell([&](std::size_t local, std::span<const int> cell) {
    int t = thresholds ? (*thresholds)(cell) : spec_->threshold_unchecked(cell);
    switch (bc.mode) {
      case Mode::None:
        break;
      case Mode::HalfSpaceLow:
        if (box_.coord0(local, bc.axis - 1) == 0) --t;
        break;
      case Mode::HalfSpaceHigh:
        if (box_.coord0(local, bc.axis - 1) == box_.side(bc.axis - 1) - 1) --t;
        break;
      case Mode::AllOutside:
        for (int a = 0; a < d; ++a) {
          const int x = box_.coord0(local, a);
          if (x == 0) --t;
          if (x == box_.side(a) - 1) --t;
        }
        break;
    }
    need_[local] = t;
  });
}

detail::FrontierResult BootstrapProcess::run_local(const CellSet& seeds,
                                                  std::vector<std::size_t>* order) const {
  check_set(*spec_, seeds);
  std::vector<std::size_t> local;
  local.reserve(seeds.size());
  seeds.for_each([&](std::size_t i) {
    if (auto l = box_.to_local(i)) local.push_back(*l);
  });
  return detail::run_frontier(box_, need_, local, order);
}

ClosureResult BootstrapProcess::run(const CellSet& seeds) const {
  auto fr = run_local(seeds);
  ClosureResult out;
  out.closure = CellSet(spec_->volume());
  for (std::size_t l = 0; l < fr.infected.size(); ++l) {
    if (fr.infected[l]) out.closure.insert(box_.to_parent(l));
  }
  out.generations = fr.generations;
  out.history = std::move(fr.history);
  return out;
}

ClosureResult closure(const LatticeSpec& spec, const CellSet& a, BoundaryCondition bc,
                      const std::optional<Rect>& confine) {
  return BootstrapProcess(spec, confine, bc).run(a);
}

bool percolates(const LatticeSpec& spec, const CellSet& a) {
  return BootstrapProcess(spec).run_local(a).count == spec.volume();
}

std::vector<CellSet> components(const LatticeSpec& spec, const CellSet& s) {
  check_set(spec, s);
  const detail::Box box(spec);
  const auto member = membership(box, s);
  const auto labels = detail::label_components(box, member);
  std::vector<CellSet> out(labels.comps.size(), CellSet(spec.volume()));
  for (std::size_t i = 0; i < labels.label.size(); ++i) {
    if (labels.label[i] >= 0) out[static_cast<std::size_t>(labels.label[i])].insert(i);
  }
  return out;
}

namespace {

int max_extent(const LatticeSpec& spec, const CellSet& s, int axes) {
  check_set(spec, s);
  const detail::Box box(spec);
  const auto labels = detail::label_components(box, membership(box, s));
  int best = 0;
  for (const auto& c : labels.comps) {
    for (int a = 0; a < axes; ++a) {
      const auto u = static_cast<std::size_t>(a);
      best = std::max(best, c.hi[u] - c.lo[u] + 1);
    }
  }
  return best;
}

}  // namespace

int diam(const LatticeSpec& spec, const CellSet& s) { return max_extent(spec, s, spec.dims()); }

int long_diam(const LatticeSpec& spec, const CellSet& s) { return max_extent(spec, s, spec.d()); }

SpanDecomposition span(const LatticeSpec& spec, const CellSet& a) {
  const BootstrapProcess proc(spec);
  const auto fr = proc.run_local(a);
  const auto labels = detail::label_components(proc.box(), fr.infected);
  SpanDecomposition out;
  for (const auto& c : labels.comps) {
    Rect r;
    for (int i = 0; i < spec.d(); ++i) {
      r.lo.push_back(c.lo[static_cast<std::size_t>(i)] + 1);
      r.hi.push_back(c.hi[static_cast<std::size_t>(i)] + 1);
    }
    out.rects.push_back(std::move(r));
  }
  return out;
}

bool internally_spanned(const LatticeSpec& spec, const Rect& rect, const CellSet& a) {
  const BootstrapProcess proc(spec, rect);
  const auto fr = proc.run_local(a);
  const auto labels = detail::label_components(proc.box(), fr.infected);
  for (const auto& c : labels.comps) {
    bool whole = true;
    for (int i = 0; i < spec.d() && whole; ++i) {
      const auto u = static_cast<std::size_t>(i);
      whole = c.lo[u] == 0 && c.hi[u] == proc.box().side(i) - 1;
    }
    if (whole) return true;
  }
  return false;
}

bool crossed(const LatticeSpec& spec, const Rect& rect, const CellSet& a, int axis,
             const CellSet& forced) {
  check_long_axis(spec, axis);
  check_set(spec, forced);
  const BootstrapProcess proc(spec, rect, BoundaryCondition::half_low(axis));
  forced.for_each([&](std::size_t i) {
    if (!proc.box().to_local(i)) throw DomainError("forced cells must lie inside the rectangle");
  });
  CellSet seeds = a;
  seeds |= forced;
  const auto fr = proc.run_local(seeds);
  const auto labels = detail::label_components(proc.box(), fr.infected);
  const auto u = static_cast<std::size_t>(axis - 1);
  const int far = proc.box().side(axis - 1) - 1;
  return std::any_of(labels.comps.begin(), labels.comps.end(),
                     [&](const detail::ComponentExtent& c) { return c.lo[u] == 0 && c.hi[u] == far; });
}

bool crossed(const LatticeSpec& spec, const Rect& rect, const CellSet& a, int axis) {
  return crossed(spec, rect, a, axis, CellSet(spec.volume()));
}

CellSet coupled_block_closure(const LatticeSpec& spec, const Rect& rect, const CellSet& a,
                              int block_len, int axis) {
  if (spec.kind() == StructureKind::Slab) {
    throw DomainError("block coupling applies to uniform and thick structures");
  }
  check_rect(spec, rect);
  check_long_axis(spec, axis);
  check_set(spec, a);
  if (block_len < 2) throw DomainError("block length must be at least 2");
  const auto u = static_cast<std::size_t>(axis - 1);
  const int width = rect.hi[u] - rect.lo[u] + 1;
  if (width % block_len != 0) {
    throw DomainError("block length " + std::to_string(block_len) +
                      " does not divide the rectangle width " + std::to_string(width));
  }
  CellSet out(spec.volume());
  for (int start = rect.lo[u]; start <= rect.hi[u]; start += block_len) {
    Rect block = rect;
    block.lo[u] = start;
    block.hi[u] = start + block_len - 1;
    const int first = block.lo[u];
    const int last = block.hi[u];
    const auto thresholds = [&, first, last](std::span<const int> cell) {
      int t = spec.threshold_unchecked(cell) - 1;
      if (cell[u] != first && cell[u] != last) ++t;
      return t;
    };
    out |= BootstrapProcess(spec, block, BoundaryCondition::none(), thresholds).run(a).closure;
  }
  return out;
}

}  // namespace bootlab
