#include "bootlab/special.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "bootlab/error.hpp"

namespace bootlab {
namespace {

// beta and beta - 1 from u, 1-u, (1-u)^k and 1-(1-u)^k.
struct BetaParts {
  double value;
  double minus_one;
};

BetaParts beta_parts(double u, double v, double w, double omw) {
  const double root = std::sqrt(omw * omw + 4.0 * u * w);
  return {0.5 * (omw + root), -2.0 * w * v / (root + 1.0 + w)};
}

}  // namespace

double beta(int k, double u) {
  if (k < 1) throw DomainError("beta needs k >= 1");
  if (!(u >= 0.0 && u <= 1.0)) throw DomainError("beta needs u in [0,1]");
  const double v = 1.0 - u;
  const double w = std::pow(v, k);
  const double omw = u < 1.0 ? -std::expm1(k * std::log1p(-u)) : 1.0;
  const auto b = beta_parts(u, v, w, omw);
  return b.value < 0.5 ? b.value : 1.0 + b.minus_one;
}

double g(int k, double z) {
  if (k < 1) throw DomainError("g needs k >= 1");
  if (!(z > 0.0)) throw DomainError("g needs z > 0");
  const double u = -std::expm1(-z);
  const double v = std::exp(-z);
  const double w = std::exp(-k * z);
  const double omw = -std::expm1(-k * z);
  const auto b = beta_parts(u, v, w, omw);
  return b.value < 0.5 ? -std::log(b.value) : -std::log1p(b.minus_one);
}

double q_of_p(double p) {
  if (!(p >= 0.0 && p < 1.0)) throw DomainError("q needs p in [0,1)");
  return -std::log1p(-p);
}

double u_of(double q, double x) {
  if (!(q >= 0.0)) throw DomainError("q must be nonnegative");
  return -std::expm1(-q * x);
}

double u_scaled(std::span<const double> dims, double p, int axis) {
  if (axis < 1 || axis > static_cast<int>(dims.size())) throw DomainError("axis out of range");
  double prod = 1.0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (static_cast<int>(i) + 1 != axis) prod *= dims[i];
  }
  return u_of(q_of_p(p), prod);
}

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  QuadResult out;
  out.truncation_point = hi;
  if (hi <= lo) return out;
  double err = 0.0;
  double l1 = 0.0;
  const double rel = std::min(1e-10, tol);
  out.value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, lo, hi, 15, rel, &err, &l1);
  out.abs_error_estimate = err;
  if (!std::isfinite(out.value) || !std::isfinite(err)) {
    throw ConvergenceError("quadrature produced a non-finite value", out.value, err);
  }
  return out;
}

QuadResult lambda(int d, int r, double tol) {
  if (r < 2 || d < r) throw DomainError("lambda needs d >= r >= 2");
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const int k = r - 1;
  const int s = d - r + 1;

  // (0,1]: z = e^{-t}; the integrand behaves like (s/2) t e^{-t}.
  const double t_cap = 600.0 / s;
  double t_max = std::min(20.0, t_cap);
  while (0.5 * s * (t_max + 1.0) * std::exp(-t_max) >= tol / 10.0 && t_max < t_cap) t_max = std::min(t_max + 5.0, t_cap);
  const double head_tail = 0.5 * s * (t_max + 1.0) * std::exp(-t_max);
  const auto head = integrate([&](double t) { return g(k, std::exp(-s * t)) * std::exp(-t); }, 0.0, t_max,
                              tol / 4.0);

  // [1,inf): truncate where 2 e^{-k Z^s} / (k s Z^{s-1}) < tol/10.
  const auto tail_bound = [&](double z) {
    return 2.0 * std::exp(-k * std::pow(z, s)) / (k * s * std::pow(z, s - 1));
  };
  double z_max = 1.0;
  while (tail_bound(z_max) >= tol / 10.0) z_max *= 1.05;
  const auto body = integrate([&](double z) { return g(k, std::pow(z, s)); }, 1.0, z_max, tol / 4.0);

  QuadResult out;
  out.value = head.value + body.value;
  out.abs_error_estimate = head.abs_error_estimate + body.abs_error_estimate + head_tail + tail_bound(z_max);
  out.truncation_point = z_max;
  if (out.abs_error_estimate > tol) {
    throw ConvergenceError("lambda(" + std::to_string(d) + "," + std::to_string(r) +
                               ") did not reach the requested tolerance",
                           out.value, out.abs_error_estimate);
  }
  return out;
}

double highdim_series(double x, double tol) {
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    term *= -x / (std::ldexp(1.0, 2 * (k - 1)) * k);
    sum += term;
    if (std::abs(term) < tol / 10.0) break;
  }
  return sum;
}

double lambda_highdim(double tol) {
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");
  const double series_tol = std::min(tol, 1e-15);
  double lo = 0.0;
  double hi = 0.0;
  for (double x = 0.01; x < 10.0; x += 0.01) {
    if (highdim_series(x, series_tol) <= 0.0) {
      hi = x;
      lo = x - 0.01;
      break;
    }
  }
  if (hi == 0.0) throw ConvergenceError("no sign change found for the series", 0.0, 0.0);
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (highdim_series(mid, series_tol) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// ---------------------------------------------------------------------------

void validate(const PathPoly& path) {
  const std::size_t d = path.start.size();
  if (d == 0 || path.end.size() != d) throw DomainError("path endpoints must have the same positive dimension");
  std::vector<double> pos = path.start;
  for (double x : pos) {
    if (!(x > 0.0)) throw DomainError("paths live in the positive orthant");
  }
  for (const auto& st : path.steps) {
    if (st.axis < 1 || st.axis > static_cast<int>(d)) throw DomainError("path step axis out of range");
    if (!(st.length > 0.0)) throw DomainError("path steps must have positive length");
    pos[static_cast<std::size_t>(st.axis - 1)] += st.length;
  }
  for (std::size_t i = 0; i < d; ++i) {
    if (std::abs(pos[i] - path.end[i]) > 1e-9 * (1.0 + std::abs(path.end[i]))) {
      throw DomainError("path steps do not end at the declared end point");
    }
  }
}

double w_path(const CostFn& f, const PathPoly& path) {
  validate(path);
  std::vector<double> pos = path.start;
  double total = 0.0;
  for (const auto& st : path.steps) {
    const auto j = static_cast<std::size_t>(st.axis - 1);
    double prod = 1.0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
      if (i != j) prod *= pos[i];
    }
    total += st.length * f(prod);
    pos[j] += st.length;
  }
  return total;
}

namespace {

constexpr std::size_t kMaxNodes = std::size_t{1} << 26;

double staircase_min(const CostFn& f, std::span<const double> a, std::span<const double> b, int grid) {
  const std::size_t d = a.size();
  std::vector<std::vector<double>> nodes(d);
  std::size_t total = 1;
  for (std::size_t j = 0; j < d; ++j) {
    if (a[j] == b[j]) {
      nodes[j] = {a[j]};
    } else {
      const bool geometric = b[j] / a[j] > 10.0;
      for (int i = 0; i <= grid; ++i) {
        const double t = static_cast<double>(i) / grid;
        nodes[j].push_back(geometric ? a[j] * std::pow(b[j] / a[j], t) : a[j] + (b[j] - a[j]) * t);
      }
      nodes[j].back() = b[j];
    }
    total *= nodes[j].size();
    if (total > kMaxNodes) throw DomainError("w_min grid too large");
  }
  std::vector<std::size_t> stride(d, 1);
  for (std::size_t j = d; j-- > 1;) stride[j - 1] = stride[j] * nodes[j].size();

  std::vector<double> best(total, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> idx(d, 0);
  best[0] = 0.0;
  for (std::size_t n = 0; n < total; ++n) {
    if (n > 0) {
      for (std::size_t j = 0; j < d; ++j) {
        if (idx[j] == 0) continue;
        double prod = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
          if (i != j) prod *= nodes[i][idx[i]];
        }
        const double step = nodes[j][idx[j]] - nodes[j][idx[j] - 1];
        best[n] = std::min(best[n], best[n - stride[j]] + step * f(prod));
      }
    }
    for (std::size_t j = d; j-- > 0;) {
      if (++idx[j] < nodes[j].size()) break;
      idx[j] = 0;
    }
  }
  return best[total - 1];
}

}  // namespace

WMinResult w_min(const CostFn& f, std::span<const double> a, std::span<const double> b, int grid) {
  if (a.empty() || a.size() != b.size()) throw DomainError("endpoints must have the same positive dimension");
  if (grid < 2) throw DomainError("grid must be at least 2");
  for (std::size_t j = 0; j < a.size(); ++j) {
    if (!(a[j] > 0.0)) throw DomainError("endpoints must be positive");
    if (!(a[j] <= b[j])) throw DomainError("w_min needs a <= b coordinate-wise");
  }
  WMinResult out;
  out.grid = grid;
  out.value = staircase_min(f, a, b, grid);
  out.slack = std::abs(out.value - staircase_min(f, a, b, grid / 2));
  return out;
}

SwitchCosts w_switch(const CostFn& f, std::span<const double> a, double b) {
  if (a.size() < 2) throw DomainError("w_switch needs d >= 2");
  if (!(b > 0.0)) throw DomainError("step length must be positive");
  PathPoly p;
  p.start.assign(a.begin(), a.end());
  p.end = p.start;
  p.end[0] += b;
  p.end[1] += b;
  SwitchCosts out;
  p.steps = {{1, b}, {2, b}};
  out.first_axis1 = w_path(f, p);
  p.steps = {{2, b}, {1, b}};
  out.first_axis2 = w_path(f, p);
  return out;
}

}  // namespace bootlab
