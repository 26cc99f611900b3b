#include "schur2/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <queue>
#include <stdexcept>

namespace schur2 {

const HermiteRule& gauss_hermite(int n) {
  if (n < 1) throw std::invalid_argument("gauss_hermite: n must be positive");
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<HermiteRule>> cache;
  const std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (slot) return *slot;

  // Jacobi matrix of the probabilists' Hermite recurrence x He_j = He_{j+1} + j He_{j-1}.
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd sub(std::max(n - 1, 0));
  for (int j = 1; j < n; ++j) sub[j - 1] = std::sqrt(static_cast<double>(j));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw std::runtime_error("gauss_hermite: eigensolver failed");

  auto rule = std::make_unique<HermiteRule>();
  rule->nodes.resize(static_cast<std::size_t>(n));
  rule->weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    // Newton polish on the orthonormal recurrence, then the Christoffel
    // weight 1 / sum_j p_j(x)^2, which keeps tiny tail weights accurate.
    double x = solver.eigenvalues()[i];
    double christoffel = 0.0;
    for (int iter = 0; iter < 3; ++iter) {
      double p_prev = 0.0;
      double p = 1.0;
      double dp_prev = 0.0;
      double dp = 0.0;
      christoffel = 1.0;
      for (int j = 0; j < n; ++j) {
        const double s_next = std::sqrt(static_cast<double>(j + 1));
        const double s_cur = std::sqrt(static_cast<double>(j));
        const double p_next = (x * p - s_cur * p_prev) / s_next;
        const double dp_next = (p + x * dp - s_cur * dp_prev) / s_next;
        p_prev = p;
        p = p_next;
        dp_prev = dp;
        dp = dp_next;
        if (j + 1 < n) christoffel += p * p;
      }
      if (dp != 0.0 && iter < 2) x -= p / dp;
    }
    rule->nodes[i] = x;
    rule->weights[i] = 1.0 / christoffel;
  }
  // Symmetrize to remove eigensolver round-off.
  for (int i = 0; i < n / 2; ++i) {
    const int j = n - 1 - i;
    const double x = 0.5 * (rule->nodes[j] - rule->nodes[i]);
    const double w = 0.5 * (rule->weights[i] + rule->weights[j]);
    rule->nodes[i] = -x;
    rule->nodes[j] = x;
    rule->weights[i] = rule->weights[j] = w;
  }
  if (n % 2 == 1) rule->nodes[n / 2] = 0.0;
  slot = std::move(rule);
  return *slot;
}

namespace {

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment kronrod(const std::function<double(double)>& f, double a, double b) {
  double err = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

}  // namespace

QuadResult integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, double abs_tol, std::vector<double> breaks,
                              int max_segments) {
  if (!std::isfinite(a) || !std::isfinite(b)) throw std::invalid_argument("integrate_adaptive: finite limits required");
  QuadResult out;
  if (!(a < b)) return {0.0, 0.0, 0, true};
  breaks.erase(std::remove_if(breaks.begin(), breaks.end(), [&](double x) { return !(x > a && x < b); }),
               breaks.end());
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());

  std::priority_queue<Segment> heap;
  double lo = a;
  breaks.push_back(b);
  for (double hi : breaks) {
    heap.push(kronrod(f, lo, hi));
    out.evaluations += 15;
    lo = hi;
  }

  auto totals = [&] {
    // Sum smallest contributions first for a stable total.
    std::vector<Segment> all;
    auto copy = heap;
    while (!copy.empty()) {
      all.push_back(copy.top());
      copy.pop();
    }
    double v = 0.0;
    double e = 0.0;
    for (auto it = all.rbegin(); it != all.rend(); ++it) {
      v += it->value;
      e += it->error;
    }
    return std::pair{v, e};
  };

  double value = 0.0;
  double error = 0.0;
  for (;;) {
    std::tie(value, error) = totals();
    if (error <= std::max(abs_tol, rel_tol * std::abs(value))) {
      out.converged = true;
      break;
    }
    if (static_cast<int>(heap.size()) >= max_segments) break;
    // Split a batch of the worst segments before re-summing.
    const std::size_t batch = std::max<std::size_t>(1, heap.size() / 8);
    for (std::size_t i = 0; i < batch && static_cast<int>(heap.size()) < max_segments; ++i) {
      const Segment worst = heap.top();
      const double mid = 0.5 * (worst.a + worst.b);
      if (!(mid > worst.a && mid < worst.b)) break;
      heap.pop();
      heap.push(kronrod(f, worst.a, mid));
      heap.push(kronrod(f, mid, worst.b));
      out.evaluations += 30;
    }
  }
  out.value = value;
  out.error = error;
  return out;
}

namespace {

struct SimpsonState {
  const std::function<double(double)>& f;
  long evaluations = 0;
  double error = 0.0;
  bool converged = true;
};

double simpson_recurse(SimpsonState& s, double a, double b, double fa, double fm, double fb, double whole,
                       double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = s.f(lm);
  const double frm = s.f(rm);
  s.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  // |delta| / 15 bounds the error only for smooth f; kinks (rays grazing a
  // corner) leave it closer to |delta| / 3, so the full |delta| is charged.
  if (std::abs(delta) <= tol || depth <= 0 || !(lm > a && rm < b)) {
    if (depth <= 0 && std::abs(delta) > tol) s.converged = false;
    s.error += std::abs(delta);
    return left + right + delta / 15.0;
  }
  return simpson_recurse(s, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_recurse(s, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

QuadResult integrate_simpson(const std::function<double(double)>& f, double a, double b, int panels,
                             double rel_tol, double abs_tol, int max_depth) {
  if (panels < 1) throw std::invalid_argument("integrate_simpson: panels must be positive");
  SimpsonState s{f};
  const double h = (b - a) / panels;
  std::vector<double> x(2 * panels + 1);
  std::vector<double> fx(2 * panels + 1);
  for (int i = 0; i <= 2 * panels; ++i) {
    x[i] = a + 0.5 * h * i;
    fx[i] = f(x[i]);
  }
  s.evaluations = 2 * panels + 1;
  double pilot = 0.0;
  std::vector<double> whole(panels);
  for (int i = 0; i < panels; ++i) {
    whole[i] = h / 6.0 * (fx[2 * i] + 4.0 * fx[2 * i + 1] + fx[2 * i + 2]);
    pilot += whole[i];
  }
  const double tol = std::max(abs_tol, rel_tol * std::abs(pilot)) / panels;
  double value = 0.0;
  for (int i = 0; i < panels; ++i) {
    value += simpson_recurse(s, x[2 * i], x[2 * i + 2], fx[2 * i], fx[2 * i + 1], fx[2 * i + 2], whole[i], tol,
                             max_depth);
  }
  // A jump in f exhausts the depth on its segment while contributing almost
  // nothing, so the verdict rests on the accumulated error estimate.
  const bool converged = s.converged || s.error <= std::max(abs_tol, rel_tol * std::abs(value));
  return {value, s.error, s.evaluations, converged};
}

}  // namespace schur2
