#include "rearr/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rearr {

namespace {

struct Simplex {
  std::vector<std::vector<double>> x;
  std::vector<double> f;  // values of the maximized objective
};

void build_simplex(Simplex& s, const std::vector<double>& center, double center_value, double step,
                   const Objective& f, std::size_t& evals) {
  const std::size_t n = center.size();
  s.x.assign(n + 1, center);
  s.f.assign(n + 1, center_value);
  for (std::size_t i = 0; i < n; ++i) {
    s.x[i + 1][i] += step;
    s.f[i + 1] = f(s.x[i + 1]);
    ++evals;
  }
}

// Best (largest) value first; index ties keep their relative order.
void order(Simplex& s) {
  std::vector<std::size_t> idx(s.f.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return s.f[a] > s.f[b]; });
  Simplex t;
  t.x.reserve(idx.size());
  t.f.reserve(idx.size());
  for (auto i : idx) {
    t.x.push_back(std::move(s.x[i]));
    t.f.push_back(s.f[i]);
  }
  s = std::move(t);
}

std::vector<double> affine(const std::vector<double>& base, const std::vector<double>& towards, double t) {
  std::vector<double> p(base.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = base[i] + t * (towards[i] - base[i]);
  return p;
}

}  // namespace

OptimizeResult nelder_mead_maximize(const Objective& f, std::vector<double> x0, const NelderMeadOptions& opt) {
  const std::size_t n = x0.size();
  OptimizeResult res;
  Simplex s;
  const double f0 = f(x0);
  res.evaluations = 1;
  build_simplex(s, x0, f0, opt.initial_step, f, res.evaluations);
  double best_at_last_rebuild = -INFINITY;

  std::vector<double> centroid(n);
  for (res.iterations = 0; res.iterations < opt.max_iters; ++res.iterations) {
    order(s);

    double xspread = 0;
    for (std::size_t j = 1; j <= n; ++j)
      for (std::size_t i = 0; i < n; ++i) xspread = std::max(xspread, std::abs(s.x[j][i] - s.x[0][i]));
    const double fspread = s.f[0] - s.f[n];
    if (xspread <= opt.collapse_tol && fspread <= opt.value_tol) {
      if (res.rebuilds >= opt.max_rebuilds || s.f[0] <= best_at_last_rebuild + opt.value_tol) break;
      best_at_last_rebuild = s.f[0];
      ++res.rebuilds;
      const auto center = s.x[0];
      build_simplex(s, center, s.f[0], opt.initial_step, f, res.evaluations);
      continue;
    }

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += s.x[j][i];
    for (auto& c : centroid) c /= double(n);

    const auto& worst = s.x[n];
    auto xr = affine(centroid, worst, -opt.reflection);
    const double fr = f(xr);
    ++res.evaluations;

    if (fr > s.f[0]) {
      auto xe = affine(centroid, worst, -opt.reflection * opt.expansion);
      const double fe = f(xe);
      ++res.evaluations;
      if (fe > fr) {
        s.x[n] = std::move(xe);
        s.f[n] = fe;
      } else {
        s.x[n] = std::move(xr);
        s.f[n] = fr;
      }
      continue;
    }
    if (fr > s.f[n - 1]) {
      s.x[n] = std::move(xr);
      s.f[n] = fr;
      continue;
    }

    const bool outside = fr > s.f[n];
    auto xc = outside ? affine(centroid, xr, opt.contraction) : affine(centroid, worst, opt.contraction);
    const double fc = f(xc);
    ++res.evaluations;
    if (fc > (outside ? fr : s.f[n])) {
      s.x[n] = std::move(xc);
      s.f[n] = fc;
      continue;
    }

    for (std::size_t j = 1; j <= n; ++j) {
      s.x[j] = affine(s.x[0], s.x[j], opt.shrink);
      s.f[j] = f(s.x[j]);
      ++res.evaluations;
    }
  }
  order(s);
  res.x = s.x[0];
  res.value = s.f[0];
  return res;
}

OptimizeResult finite_diff_ascent(const Objective& f, std::vector<double> x0, const GradientAscentOptions& opt) {
  const std::size_t n = x0.size();
  OptimizeResult res;
  res.x = std::move(x0);
  res.value = f(res.x);
  res.evaluations = 1;
  double rate = opt.initial_rate;
  std::vector<double> grad(n), probe(n);

  for (res.iterations = 0; res.iterations < opt.max_iters; ++res.iterations) {
    probe = res.x;
    double gnorm2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      probe[i] = res.x[i] + opt.fd_step;
      const double up = f(probe);
      probe[i] = res.x[i] - opt.fd_step;
      const double down = f(probe);
      probe[i] = res.x[i];
      grad[i] = (up - down) / (2.0 * opt.fd_step);
      gnorm2 += grad[i] * grad[i];
    }
    res.evaluations += 2 * n;
    if (gnorm2 == 0.0) break;

    bool moved = false;
    while (rate >= opt.min_rate) {
      for (std::size_t i = 0; i < n; ++i) probe[i] = res.x[i] + rate * grad[i];
      const double fv = f(probe);
      ++res.evaluations;
      if (fv > res.value) {
        res.x = probe;
        res.value = fv;
        rate *= 2.0;
        moved = true;
        break;
      }
      rate *= 0.5;
    }
    if (!moved) break;
  }
  return res;
}

}  // namespace rearr
