#include "schur2/smoothing.hpp"

#include "schur2/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace schur2 {

namespace {
constexpr double kTensorBudget = 4e6;
constexpr Index kMaxGridDim = 16;
}

void GridFunction::validate() const {
  const Index k = origin.size();
  if (k < 1 || spacing.size() != k || static_cast<Index>(dims.size()) != k) {
    throw DimensionError("GridFunction: origin, spacing and dims must share the dimension");
  }
  if (k > kMaxGridDim) throw DimensionError("GridFunction: at most 16 dimensions");
  std::size_t total = 1;
  for (Index j = 0; j < k; ++j) {
    if (dims[j] < 2 || !(spacing[j] > 0.0)) throw DimensionError("GridFunction: need >= 2 points and positive spacing");
    total *= static_cast<std::size_t>(dims[j]);
  }
  if (values.size() != total) throw DimensionError("GridFunction: value count does not match dims");
}

RealVector GridFunction::node(const std::vector<Index>& index) const {
  RealVector x(origin.size());
  for (Index j = 0; j < origin.size(); ++j) x[j] = origin[j] + spacing[j] * static_cast<double>(index[j]);
  return x;
}

double GridFunction::operator()(const RealVector& x) const {
  const Index k = origin.size();
  if (x.size() != k || k > kMaxGridDim) throw DimensionError("GridFunction: point dimension mismatch");
  std::array<Index, kMaxGridDim> base{};
  std::array<double, kMaxGridDim> frac{};
  for (Index j = 0; j < k; ++j) {
    const double u = (x[j] - origin[j]) / spacing[j];
    if (!(u >= 0.0) || u > static_cast<double>(dims[j] - 1)) return outside;
    const Index i = std::min<Index>(static_cast<Index>(std::floor(u)), dims[j] - 2);
    base[j] = i;
    frac[j] = u - static_cast<double>(i);
  }
  double v = 0.0;
  for (unsigned corner = 0; corner < (1u << k); ++corner) {
    double w = 1.0;
    std::size_t flat = 0;
    for (Index j = 0; j < k; ++j) {
      const bool up = (corner >> j) & 1u;
      w *= up ? frac[j] : 1.0 - frac[j];
      flat = flat * static_cast<std::size_t>(dims[j]) + static_cast<std::size_t>(base[j] + (up ? 1 : 0));
    }
    if (w != 0.0) v += w * values[flat];
  }
  return v;
}

namespace {

double tensor_rule(const GridFunction& f, double sigma, const RealVector& x, int n) {
  const Index k = x.size();
  const HermiteRule& rule = gauss_hermite(n);
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  RealVector y(k);
  double total = 0.0;
  for (;;) {
    double w = 1.0;
    for (Index j = 0; j < k; ++j) {
      y[j] = x[j] + sigma * rule.nodes[idx[j]];
      w *= rule.weights[idx[j]];
    }
    if (w > 0.0) total += w * f(y);
    Index j = 0;
    while (j < k && ++idx[j] == n) idx[j++] = 0;
    if (j == k) break;
  }
  return total;
}

}  // namespace

SmoothResult smooth(const GridFunction& f, double sigma, const RealVector& x, double target_rel, double abs_tol) {
  f.validate();
  if (x.size() != f.dimension()) throw DimensionError("smooth: point dimension mismatch");
  if (!(sigma > 0.0)) throw std::invalid_argument("smooth: sigma must be positive");
  const double k = static_cast<double>(x.size());
  SmoothResult out;
  double prev = 0.0;
  bool have_prev = false;
  for (int n = 32; n <= 512; n *= 2) {
    if (have_prev && std::pow(static_cast<double>(n), k) > kTensorBudget) break;
    const double v = tensor_rule(f, sigma, x, n);
    out.value = v;
    out.nodes_per_axis = n;
    if (have_prev) {
      out.error = std::abs(v - prev);
      if (out.error <= std::max(target_rel * std::abs(v), abs_tol)) {
        out.converged = true;
        break;
      }
    }
    prev = v;
    have_prev = true;
  }
  if (!out.converged && out.error == 0.0) out.error = std::abs(out.value);
  return out;
}

GridFunction smooth_grid(const GridFunction& f, double sigma, double target_rel) {
  f.validate();
  GridFunction g = f;
  // Far outside the grid every smoothed value tends to the extension constant.
  const Index k = f.dimension();
  double scale = std::abs(f.outside);
  for (double v : f.values) scale = std::max(scale, std::abs(v));
  std::vector<Index> idx(static_cast<std::size_t>(k), 0);
  for (std::size_t flat = 0; flat < f.values.size(); ++flat) {
    g.values[flat] = smooth(f, sigma, f.node(idx), target_rel, target_rel * scale).value;
    for (Index j = k - 1; j >= 0; --j) {
      if (++idx[j] < f.dims[j]) break;
      idx[j] = 0;
    }
  }
  return g;
}

}  // namespace schur2
