#include "core/grid.hpp"

#include <cmath>

namespace ma2d3 {

Grid2 make_periodic_grid(int nx, int ny, double box_x, double box_y, double x0, double y0) {
  require(nx >= 8 && ny >= 8, errc::config, "grid needs nx, ny >= 8");
  require(box_x > 0 && box_y > 0, errc::config, "periodic box lengths must be positive");
  double hx = box_x / nx, hy = box_y / ny;
  require(std::abs(hx - hy) <= 1e-12 * hx, errc::config, "grid cells must be square");
  Grid2 g;
  g.x0 = x0; g.y0 = y0; g.h = hx; g.nx = nx; g.ny = ny;
  g.boundary = BoundaryMode::periodic;
  return g;
}

Grid2 make_extended_grid(int nx, int ny, double h, double x0, double y0) {
  require(nx >= 8 && ny >= 8, errc::config, "grid needs nx, ny >= 8");
  require(h > 0, errc::config, "grid spacing must be positive");
  Grid2 g;
  g.x0 = x0; g.y0 = y0; g.h = h; g.nx = nx; g.ny = ny;
  g.boundary = BoundaryMode::extended;
  return g;
}

Region Region::grown(double m) const {
  Region s = *this;
  switch (shape) {
    case Shape::all: break;
    case Shape::rect: s.hx += m; s.hy += m; break;
    case Shape::disk: s.r += m; break;
  }
  return s;
}

bool Region::contains(double x, double y) const {
  switch (shape) {
    case Shape::all: return true;
    case Shape::rect:
      return std::abs(x - cx) <= hx + 1e-12 && std::abs(y - cy) <= hy + 1e-12;
    case Shape::disk: {
      double dx = x - cx, dy = y - cy;
      return dx * dx + dy * dy <= r * r + 1e-12;
    }
  }
  return true;
}

ScalarField& ScalarField::operator+=(const ScalarField& o) {
  require_same_grid(grid, o.grid, "field +=");
  for (size_t i = 0; i < a.size(); ++i) a[i] += o.a[i];
  return *this;
}

ScalarField& ScalarField::operator-=(const ScalarField& o) {
  require_same_grid(grid, o.grid, "field -=");
  for (size_t i = 0; i < a.size(); ++i) a[i] -= o.a[i];
  return *this;
}

ScalarField& ScalarField::operator*=(double s) {
  for (double& v : a) v *= s;
  return *this;
}

ScalarField& ScalarField::operator+=(double c) {
  for (double& v : a) v += c;
  return *this;
}

ScalarField operator+(ScalarField f, const ScalarField& g) { f += g; return f; }
ScalarField operator-(ScalarField f, const ScalarField& g) { f -= g; return f; }
ScalarField operator*(ScalarField f, double s) { f *= s; return f; }
ScalarField operator*(double s, ScalarField f) { f *= s; return f; }

ScalarField operator*(const ScalarField& f, const ScalarField& g) {
  require_same_grid(f.grid, g.grid, "pointwise product");
  ScalarField out(f.grid);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = f.a[i] * g.a[i];
  return out;
}

ScalarField sample(const Grid2& g, const std::function<double(double, double)>& fn) {
  ScalarField f(g);
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix) f.at(ix, iy) = fn(g.x(ix), g.y(iy));
  return f;
}

VectorField& VectorField::operator+=(const VectorField& o) {
  require(k() == o.k(), errc::config, "vector field component mismatch");
  for (int c = 0; c < k(); ++c) comp[c] += o.comp[c];
  lin = lin + o.lin;
  return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
  require(k() == o.k(), errc::config, "vector field component mismatch");
  for (int c = 0; c < k(); ++c) comp[c] -= o.comp[c];
  lin = lin - o.lin;
  return *this;
}

VectorField& VectorField::operator*=(double s) {
  for (auto& c : comp) c *= s;
  lin = lin * s;
  return *this;
}

VectorField operator-(VectorField f, const VectorField& g) { f -= g; return f; }

SymMatrixField& SymMatrixField::operator+=(const SymMatrixField& o) {
  d11 += o.d11; d12 += o.d12; d22 += o.d22;
  return *this;
}

SymMatrixField& SymMatrixField::operator-=(const SymMatrixField& o) {
  d11 -= o.d11; d12 -= o.d12; d22 -= o.d22;
  return *this;
}

SymMatrixField& SymMatrixField::operator*=(double s) {
  d11 *= s; d12 *= s; d22 *= s;
  return *this;
}

SymMatrixField operator+(SymMatrixField a, const SymMatrixField& b) { a += b; return a; }
SymMatrixField operator-(SymMatrixField a, const SymMatrixField& b) { a -= b; return a; }
SymMatrixField operator*(SymMatrixField a, double s) { a *= s; return a; }

void require_same_grid(const Grid2& a, const Grid2& b, const char* what) {
  require(a == b, errc::config, std::string("grid mismatch in ") + what);
}

void require_finite(const ScalarField& f, const char* what) {
  for (double v : f.a)
    require(std::isfinite(v), errc::config, std::string("non-finite values in ") + what);
}

}  // namespace ma2d3
