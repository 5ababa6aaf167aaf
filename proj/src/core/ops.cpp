#include "core/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "core/spectral.hpp"

namespace ma2d3 {

namespace {

// 4th-order first derivative along one axis. along_x selects the axis.
ScalarField fd_derivative_axis(const ScalarField& f, bool along_x) {
  const Grid2& g = f.grid;
  int n = along_x ? g.nx : g.ny;
  require(n >= 5, errc::margin, "grid too small for the 4th-order stencil");
  ScalarField out(g);
  double ih = 1.0 / (12.0 * g.h);
  auto v = [&](int i, int j) { return along_x ? f.at(i, j) : f.at(j, i); };
  auto& o = out;
  int n_perp = along_x ? g.ny : g.nx;
  for (int j = 0; j < n_perp; ++j) {
    for (int i = 0; i < n; ++i) {
      double d;
      if (i >= 2 && i <= n - 3) {
        d = (v(i - 2, j) - 8 * v(i - 1, j) + 8 * v(i + 1, j) - v(i + 2, j)) * ih;
      } else if (i == 0) {
        d = (-25 * v(0, j) + 48 * v(1, j) - 36 * v(2, j) + 16 * v(3, j) - 3 * v(4, j)) * ih;
      } else if (i == 1) {
        d = (-3 * v(0, j) - 10 * v(1, j) + 18 * v(2, j) - 6 * v(3, j) + v(4, j)) * ih;
      } else if (i == n - 2) {
        d = (3 * v(n - 1, j) + 10 * v(n - 2, j) - 18 * v(n - 3, j) + 6 * v(n - 4, j) - v(n - 5, j)) * ih;
      } else {  // i == n - 1
        d = (25 * v(n - 1, j) - 48 * v(n - 2, j) + 36 * v(n - 3, j) - 16 * v(n - 4, j) + 3 * v(n - 5, j)) * ih;
      }
      if (along_x) o.at(i, j) = d; else o.at(j, i) = d;
    }
  }
  return out;
}

}  // namespace

ScalarField partial_derivative(const ScalarField& f, int t, int s) {
  require(t >= 0 && s >= 0, errc::config, "derivative orders must be nonnegative");
  require_finite(f, "partial_derivative input");
  if (f.grid.periodic()) return spectral::derivative(f, t, s);
  ScalarField out = f;
  for (int i = 0; i < t; ++i) out = fd_derivative_axis(out, true);
  for (int i = 0; i < s; ++i) out = fd_derivative_axis(out, false);
  return out;
}

ScalarField component_derivative(const VectorField& f, int c, int t, int s) {
  require(c >= 0 && c < f.k(), errc::config, "component index out of range");
  ScalarField d = partial_derivative(f.comp[c], t, s);
  if (!f.lin.zero() && t + s == 1) {
    require(f.k() == 2, errc::internal, "affine part only supported on 2-component fields");
    double add = (t == 1) ? (c == 0 ? f.lin.a11 : f.lin.a21) : (c == 0 ? f.lin.a12 : f.lin.a22);
    d += add;
  }
  return d;
}

ScalarField component_values(const VectorField& f, int c) {
  ScalarField out = f.comp[c];
  if (!f.lin.zero()) {
    require(f.k() == 2, errc::internal, "affine part only supported on 2-component fields");
    const Grid2& g = f.grid;
    double l1 = (c == 0) ? f.lin.a11 : f.lin.a21;
    double l2 = (c == 0) ? f.lin.a12 : f.lin.a22;
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        out.at(ix, iy) += l1 * (g.x(ix) - g.x0) + l2 * (g.y(iy) - g.y0);
  }
  return out;
}

SymMatrixField hessian(const ScalarField& f) {
  SymMatrixField h(f.grid);
  h.d11 = partial_derivative(f, 2, 0);
  h.d12 = partial_derivative(f, 1, 1);
  h.d22 = partial_derivative(f, 0, 2);
  return h;
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& f) {
  return {partial_derivative(f, 1, 0), partial_derivative(f, 0, 1)};
}

// ---------------------------------------------------------------------------
// norms
// ---------------------------------------------------------------------------

namespace {

template <typename Fn>
void for_region(const Grid2& g, const Region& region, Fn&& fn) {
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      if (region.whole() || region.contains(g.x(ix), g.y(iy))) fn(ix, iy);
}

double holder_seminorm(const ScalarField& f, double beta, const Region& region, double radius) {
  const Grid2& g = f.grid;
  const int dirs[4][2] = {{1, 0}, {0, 1}, {1, 1}, {1, -1}};
  double best = 0.0;
  for (auto& d : dirs) {
    double step_len = g.h * std::sqrt(double(d[0] * d[0] + d[1] * d[1]));
    for (int j = 0;; ++j) {
      long stride = 1L << j;
      double dist = step_len * stride;
      if (dist > radius || stride >= std::min(g.nx, g.ny)) break;
      double denom = std::pow(dist, beta);
      int ox = d[0] * static_cast<int>(stride), oy = d[1] * static_cast<int>(stride);
      for_region(g, region, [&](int ix, int iy) {
        int jx = ix + ox, jy = iy + oy;
        if (g.periodic()) {
          jx = (jx % g.nx + g.nx) % g.nx;
          jy = (jy % g.ny + g.ny) % g.ny;
        } else {
          if (jx < 0 || jx >= g.nx || jy < 0 || jy >= g.ny) return;
          if (!region.whole() && !region.contains(g.x(jx), g.y(jy))) return;
        }
        double q = std::abs(f.at(jx, jy) - f.at(ix, iy)) / denom;
        if (q > best) best = q;
      });
    }
  }
  return best;
}

}  // namespace

double sup_norm(const ScalarField& f, const Region& region) {
  double m = 0;
  for_region(f.grid, region, [&](int ix, int iy) { m = std::max(m, std::abs(f.at(ix, iy))); });
  return m;
}

double sup_norm(const SymMatrixField& f, const Region& region) {
  double m = 0;
  for_region(f.grid, region, [&](int ix, int iy) {
    double a = f.d11.at(ix, iy), b = f.d12.at(ix, iy), c = f.d22.at(ix, iy);
    double mid = 0.5 * (a + c), rad = std::sqrt(0.25 * (a - c) * (a - c) + b * b);
    m = std::max(m, std::max(std::abs(mid + rad), std::abs(mid - rad)));
  });
  return m;
}

double sup_norm(const VectorField& f, const Region& region) {
  double m = 0;
  for (int c = 0; c < f.k(); ++c) {
    ScalarField vals = f.lin.zero() ? f.comp[c] : component_values(f, c);
    m = std::max(m, sup_norm(vals, region));
  }
  return m;
}

double field_min(const ScalarField& f, const Region& region) {
  double m = std::numeric_limits<double>::infinity();
  for_region(f.grid, region, [&](int ix, int iy) { m = std::min(m, f.at(ix, iy)); });
  return m;
}

double field_max(const ScalarField& f, const Region& region) {
  double m = -std::numeric_limits<double>::infinity();
  for_region(f.grid, region, [&](int ix, int iy) { m = std::max(m, f.at(ix, iy)); });
  return m;
}

double cm_norm(const ScalarField& f, int m, const Region& region) {
  double best = 0;
  for (int t = 0; t <= m; ++t)
    for (int s = 0; t + s <= m; ++s)
      best = std::max(best, sup_norm(partial_derivative(f, t, s), region));
  return best;
}

double deriv_order_norm(const SymMatrixField& f, int m, const Region& region) {
  double best = 0;
  for (const ScalarField* c : {&f.d11, &f.d12, &f.d22})
    for (int t = 0; t <= m; ++t)
      best = std::max(best, sup_norm(partial_derivative(*c, t, m - t), region));
  return best;
}

double cm_norm(const VectorField& f, int m, const Region& region) {
  double best = 0;
  for (int c = 0; c < f.k(); ++c) {
    for (int t = 0; t <= m; ++t)
      for (int s = 0; t + s <= m; ++s) {
        ScalarField d = (t + s == 0) ? component_values(f, c) : component_derivative(f, c, t, s);
        best = std::max(best, sup_norm(d, region));
      }
  }
  return best;
}

namespace {

NormReport norms_impl(const std::vector<const ScalarField*>& comps, int m_max,
                      const std::vector<double>& betas, const Region& region) {
  require(m_max >= 0, errc::config, "m_max must be nonnegative");
  for (double b : betas)
    require(b > 0 && b <= 1, errc::config, "Holder exponents must lie in (0,1]");
  NormReport r;
  const Grid2& g = comps.front()->grid;
  r.sampling_radius = 0.25 * std::min(g.nx, g.ny) * g.h;
  std::vector<double> per_order(m_max + 1, 0.0);
  for (const ScalarField* f : comps) {
    for (int t = 0; t <= m_max; ++t)
      for (int s = 0; t + s <= m_max; ++s) {
        double v = sup_norm(partial_derivative(*f, t, s), region);
        for (int m = t + s; m <= m_max; ++m) per_order[m] = std::max(per_order[m], v);
      }
  }
  r.cm = per_order;
  r.sup = per_order[0];
  for (double b : betas) {
    double sn = 0;
    for (const ScalarField* f : comps) sn = std::max(sn, holder_seminorm(*f, b, region, r.sampling_radius));
    r.holder.emplace_back(b, sn);
  }
  return r;
}

}  // namespace

NormReport norms(const ScalarField& f, int m_max, const std::vector<double>& betas, const Region& region) {
  return norms_impl({&f}, m_max, betas, region);
}

NormReport norms(const VectorField& f, int m_max, const std::vector<double>& betas, const Region& region) {
  std::vector<ScalarField> vals;
  std::vector<const ScalarField*> ptrs;
  vals.reserve(f.k());
  for (int c = 0; c < f.k(); ++c) vals.push_back(component_values(f, c));
  for (auto& v : vals) ptrs.push_back(&v);
  return norms_impl(ptrs, m_max, betas, region);
}

NormReport norms(const SymMatrixField& f, int m_max, const std::vector<double>& betas, const Region& region) {
  return norms_impl({&f.d11, &f.d12, &f.d22}, m_max, betas, region);
}

// ---------------------------------------------------------------------------
// mollification
// ---------------------------------------------------------------------------

double grid_margin(const Grid2& g, const Region& domain) {
  if (g.periodic() || domain.whole()) return std::numeric_limits<double>::infinity();
  double xlo = g.x0, xhi = g.x(g.nx - 1), ylo = g.y0, yhi = g.y(g.ny - 1);
  double dxlo, dxhi, dylo, dyhi;
  if (domain.shape == Region::Shape::rect) {
    dxlo = (domain.cx - domain.hx) - xlo;
    dxhi = xhi - (domain.cx + domain.hx);
    dylo = (domain.cy - domain.hy) - ylo;
    dyhi = yhi - (domain.cy + domain.hy);
  } else {
    dxlo = (domain.cx - domain.r) - xlo;
    dxhi = xhi - (domain.cx + domain.r);
    dylo = (domain.cy - domain.r) - ylo;
    dyhi = yhi - (domain.cy + domain.r);
  }
  return std::min(std::min(dxlo, dxhi), std::min(dylo, dyhi));
}

namespace {

struct Kernel {
  std::vector<int> dx, dy;
  std::vector<double> w;
  double total = 0;
};

Kernel make_kernel(double l, double h) {
  Kernel k;
  int rad = static_cast<int>(std::floor(l / h));
  for (int oy = -rad; oy <= rad; ++oy)
    for (int ox = -rad; ox <= rad; ++ox) {
      double r2 = (ox * ox + oy * oy) * h * h / (l * l);
      if (r2 >= 1.0) continue;
      double w = std::exp(1.0 / (r2 - 1.0));
      k.dx.push_back(ox);
      k.dy.push_back(oy);
      k.w.push_back(w);
      k.total += w;
    }
  return k;
}

}  // namespace

ScalarField mollify(const ScalarField& f, double l) {
  require(l > 0, errc::config, "mollification length must be positive");
  const Grid2& g = f.grid;
  Kernel k = make_kernel(l, g.h);
  ScalarField out(g);
  if (g.periodic()) {
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        double acc = 0;
        for (size_t j = 0; j < k.w.size(); ++j) {
          int jx = (ix + k.dx[j]) % g.nx;
          if (jx < 0) jx += g.nx;
          int jy = (iy + k.dy[j]) % g.ny;
          if (jy < 0) jy += g.ny;
          acc += k.w[j] * f.at(jx, jy);
        }
        out.at(ix, iy) = acc / k.total;
      }
  } else {
    // Truncated footprints at the rectangle edge keep the kernel normalized,
    // so constants survive exactly there as well. Interior points see the
    // full kernel.
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        double acc = 0, wsum = 0;
        for (size_t j = 0; j < k.w.size(); ++j) {
          int jx = ix + k.dx[j], jy = iy + k.dy[j];
          if (jx < 0 || jx >= g.nx || jy < 0 || jy >= g.ny) continue;
          acc += k.w[j] * f.at(jx, jy);
          wsum += k.w[j];
        }
        out.at(ix, iy) = acc / wsum;
      }
  }
  return out;
}

VectorField mollify(const VectorField& f, double l) {
  VectorField out = f;
  for (auto& c : out.comp) c = mollify(c, l);
  return out;  // affine part is invariant under the symmetric normalized kernel
}

SymMatrixField mollify(const SymMatrixField& f, double l) {
  SymMatrixField out(f.grid);
  out.d11 = mollify(f.d11, l);
  out.d12 = mollify(f.d12, l);
  out.d22 = mollify(f.d22, l);
  return out;
}

ScalarField convolution_commutator(const ScalarField& f, const ScalarField& g, double l) {
  require_same_grid(f.grid, g.grid, "convolution_commutator");
  return mollify(f * g, l) - mollify(f, l) * mollify(g, l);
}

// ---------------------------------------------------------------------------
// algebra
// ---------------------------------------------------------------------------

SymMatrixField sym_grad(const VectorField& phi) {
  require(phi.k() == 2, errc::config, "sym_grad expects a 2-component field");
  SymMatrixField out(phi.grid);
  out.d11 = component_derivative(phi, 0, 1, 0);
  out.d22 = component_derivative(phi, 1, 0, 1);
  ScalarField a = component_derivative(phi, 1, 1, 0);
  ScalarField b = component_derivative(phi, 0, 0, 1);
  out.d12 = (a + b) * 0.5;
  return out;
}

SymMatrixField quadratic_form(const VectorField& v) {
  SymMatrixField out(v.grid);
  for (int c = 0; c < v.k(); ++c) {
    ScalarField dx = component_derivative(v, c, 1, 0);
    ScalarField dy = component_derivative(v, c, 0, 1);
    out.d11 += dx * dx;
    out.d12 += dx * dy;
    out.d22 += dy * dy;
  }
  out *= 0.5;
  return out;
}

SymMatrixField defect(const VectorField& v, const VectorField& w, const SymMatrixField& A) {
  require_same_grid(v.grid, w.grid, "defect");
  require_same_grid(v.grid, A.grid, "defect");
  return A - quadratic_form(v) - sym_grad(w);
}

ScalarField curl_curl(const SymMatrixField& m) {
  return partial_derivative(m.d11, 0, 2) - 2.0 * partial_derivative(m.d12, 1, 1) +
         partial_derivative(m.d22, 2, 0);
}

ScalarField det_ma(const VectorField& v) {
  ScalarField out(v.grid);
  for (int c = 0; c < v.k(); ++c) {
    ScalarField d11 = component_derivative(v, c, 2, 0);
    ScalarField d22 = component_derivative(v, c, 0, 2);
    ScalarField d12 = component_derivative(v, c, 1, 1);
    out += d11 * d22 - d12 * d12;
  }
  return out;
}

SymMatrixField wedge(const SymMatrixField& d) {
  SymMatrixField out = d;
  std::fill(out.d22.a.begin(), out.d22.a.end(), 0.0);
  return out;
}

ScalarField min_eigenvalue(const SymMatrixField& d) {
  ScalarField out(d.grid);
  for (size_t i = 0; i < out.a.size(); ++i) {
    double a = d.d11.a[i], b = d.d12.a[i], c = d.d22.a[i];
    out.a[i] = 0.5 * (a + c) - std::sqrt(0.25 * (a - c) * (a - c) + b * b);
  }
  return out;
}

SymMatrixField outer_sym(const ScalarField& gx, const ScalarField& gy) {
  SymMatrixField out(gx.grid);
  out.d11 = gx * gx;
  out.d12 = gx * gy;
  out.d22 = gy * gy;
  return out;
}

// ---------------------------------------------------------------------------
// potential reconstruction
// ---------------------------------------------------------------------------

namespace {

ScalarField antiderivative_x_fd(const ScalarField& f) {
  const Grid2& g = f.grid;
  require(g.nx >= 5, errc::margin, "grid too small for cumulative integration");
  ScalarField out(g);
  double h = g.h;
  for (int iy = 0; iy < g.ny; ++iy) {
    double acc = 0;
    out.at(0, iy) = 0;
    for (int i = 0; i + 1 < g.nx; ++i) {
      double seg;
      auto v = [&](int j) { return f.at(j, iy); };
      if (i == 0)
        seg = h * (9 * v(0) + 19 * v(1) - 5 * v(2) + v(3)) / 24.0;
      else if (i == g.nx - 2)
        seg = h * (9 * v(g.nx - 1) + 19 * v(g.nx - 2) - 5 * v(g.nx - 3) + v(g.nx - 4)) / 24.0;
      else
        seg = h * (-v(i - 1) + 13 * v(i) + 13 * v(i + 1) - v(i + 2)) / 24.0;
      acc += seg;
      out.at(i + 1, iy) = acc;
    }
  }
  return out;
}

}  // namespace

ScalarField antiderivative_y_fd(const ScalarField& f) {
  const Grid2& g = f.grid;
  require(g.ny >= 5, errc::margin, "grid too small for cumulative integration");
  ScalarField out(g);
  double h = g.h;
  for (int ix = 0; ix < g.nx; ++ix) {
    double acc = 0;
    out.at(ix, 0) = 0;
    for (int i = 0; i + 1 < g.ny; ++i) {
      double seg;
      auto v = [&](int j) { return f.at(ix, j); };
      if (i == 0)
        seg = h * (9 * v(0) + 19 * v(1) - 5 * v(2) + v(3)) / 24.0;
      else if (i == g.ny - 2)
        seg = h * (9 * v(g.ny - 1) + 19 * v(g.ny - 2) - 5 * v(g.ny - 3) + v(g.ny - 4)) / 24.0;
      else
        seg = h * (-v(i - 1) + 13 * v(i) + 13 * v(i + 1) - v(i + 2)) / 24.0;
      acc += seg;
      out.at(ix, i + 1) = acc;
    }
  }
  return out;
}

namespace {

double field_mean(const ScalarField& f) {
  double s = 0;
  for (double v : f.a) s += v;
  return s / f.a.size();
}

ScalarField broadcast_first_column(const ScalarField& f) {
  ScalarField out(f.grid);
  for (int iy = 0; iy < f.grid.ny; ++iy) {
    double v = f.at(0, iy);
    for (int ix = 0; ix < f.grid.nx; ++ix) out.at(ix, iy) = v;
  }
  return out;
}

}  // namespace

VectorField potential_from_sym_grad(const SymMatrixField& m) {
  const Grid2& g = m.grid;
  bool per = g.periodic();
  auto dx = [&](const ScalarField& f) { return partial_derivative(f, 1, 0); };
  auto dy = [&](const ScalarField& f) { return partial_derivative(f, 0, 1); };
  auto adx = [&](const ScalarField& f) {
    return per ? spectral::antiderivative_x(f) : antiderivative_x_fd(f);
  };
  auto ady = [&](const ScalarField& f) {
    return per ? spectral::antiderivative_y(f) : antiderivative_y_fd(f);
  };

  // rotation rho with grad(rho) = (d1 m12 - d2 m11, d1 m22 - d2 m12)
  ScalarField g1 = dx(m.d12) - dy(m.d11);
  ScalarField g2 = dx(m.d22) - dy(m.d12);
  ScalarField rho = adx(g1) + broadcast_first_column(ady(g2));

  VectorField psi(g, 2);
  psi.comp[0] = adx(m.d11) + broadcast_first_column(ady(m.d12 - rho));
  psi.comp[1] = adx(m.d12 + rho) + broadcast_first_column(ady(m.d22));

  if (per) {
    // the affine content is mean(M) + mean(rho) J; remove it from the samples
    // so they stay periodic
    double m11 = field_mean(m.d11), m12 = field_mean(m.d12), m22 = field_mean(m.d22);
    double rbar = field_mean(rho);
    Mat2 lin{m11, m12 - rbar, m12 + rbar, m22};
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix) {
        double rx = g.x(ix) - g.x0, ry = g.y(iy) - g.y0;
        psi.comp[0].at(ix, iy) -= lin.a11 * rx + lin.a12 * ry;
        psi.comp[1].at(ix, iy) -= lin.a21 * rx + lin.a22 * ry;
      }
    psi.lin = lin;
  }
  return psi;
}

ScalarField make_cutoff(const Grid2& g, const Region& inner, double width) {
  require(width > 0, errc::config, "cutoff width must be positive");
  ScalarField chi(g, 1.0);
  if (inner.whole()) return chi;
  // exp-based partition ramp; every derivative vanishes at both ends, so the
  // cutoff stays spectrally benign
  auto ramp = [](double t) {
    if (t <= 0) return 1.0;
    if (t >= 1) return 0.0;
    double a = std::exp(-1.0 / (1.0 - t));
    double b = std::exp(-1.0 / t);
    return a / (a + b);
  };
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) {
      double x = g.x(ix), y = g.y(iy);
      double dist;
      if (inner.shape == Region::Shape::rect) {
        double ddx = std::max(std::abs(x - inner.cx) - inner.hx, 0.0);
        double ddy = std::max(std::abs(y - inner.cy) - inner.hy, 0.0);
        dist = std::sqrt(ddx * ddx + ddy * ddy);
      } else {
        double ddx = x - inner.cx, ddy = y - inner.cy;
        dist = std::max(std::sqrt(ddx * ddx + ddy * ddy) - inner.r, 0.0);
      }
      chi.at(ix, iy) = ramp(dist / width);
    }
  return chi;
}

ScalarField unit_cutoff(const Grid2& g) { return ScalarField(g, 1.0); }

}  // namespace ma2d3
