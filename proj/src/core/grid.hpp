#ifndef MA2D3_GRID_HPP
#define MA2D3_GRID_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "core/errors.hpp"

namespace ma2d3 {

// Uniform square-cell grid on a rectangle.
//
// periodic: the box [x0, x0+nx*h) x [y0, y0+ny*h); point (ix,iy) wraps, and
//   derivative / convolution operators are spectral.
// extended: the closed rectangle with nx*ny points and finite-difference
//   operators; meant to cover a domain plus a working margin.
enum class BoundaryMode { periodic, extended };

struct Grid2 {
  double x0 = 0.0, y0 = 0.0;
  double h = 0.0;
  int nx = 0, ny = 0;
  BoundaryMode boundary = BoundaryMode::periodic;

  int npts() const { return nx * ny; }
  double x(int ix) const { return x0 + ix * h; }
  double y(int iy) const { return y0 + iy * h; }
  double length_x() const { return nx * h; }
  double length_y() const { return ny * h; }
  bool periodic() const { return boundary == BoundaryMode::periodic; }
  bool operator==(const Grid2&) const = default;
};

Grid2 make_periodic_grid(int nx, int ny, double box_x, double box_y,
                         double x0 = 0.0, double y0 = 0.0);
Grid2 make_extended_grid(int nx, int ny, double h, double x0 = 0.0, double y0 = 0.0);

// Point subset used for masked norms and identity checks. `all` means every
// grid point. Rectangles are center/half-width, disks center/radius; `grown`
// realizes the +B_m neighbourhoods of a domain as enlarged masks.
struct Region {
  enum class Shape { all, rect, disk };
  Shape shape = Shape::all;
  double cx = 0, cy = 0;
  double hx = 0, hy = 0;  // rect half widths
  double r = 0;           // disk radius

  static Region all() { return {}; }
  static Region rect(double cx, double cy, double hx, double hy) {
    Region s; s.shape = Shape::rect; s.cx = cx; s.cy = cy; s.hx = hx; s.hy = hy; return s;
  }
  static Region disk(double cx, double cy, double r) {
    Region s; s.shape = Shape::disk; s.cx = cx; s.cy = cy; s.r = r; return s;
  }
  Region grown(double m) const;
  bool contains(double x, double y) const;
  bool whole() const { return shape == Shape::all; }
};

struct Mat2 {
  double a11 = 0, a12 = 0, a21 = 0, a22 = 0;
  Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
  Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
  Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
  bool zero() const { return a11 == 0 && a12 == 0 && a21 == 0 && a22 == 0; }
};

struct ScalarField {
  Grid2 grid;
  std::vector<double> a;

  ScalarField() = default;
  explicit ScalarField(const Grid2& g, double fill = 0.0) : grid(g), a(g.npts(), fill) {}

  double& at(int ix, int iy) { return a[static_cast<size_t>(iy) * grid.nx + ix]; }
  double at(int ix, int iy) const { return a[static_cast<size_t>(iy) * grid.nx + ix]; }
  size_t size() const { return a.size(); }
  bool empty() const { return a.empty(); }

  ScalarField& operator+=(const ScalarField& o);
  ScalarField& operator-=(const ScalarField& o);
  ScalarField& operator*=(double s);
  ScalarField& operator+=(double c);
};

ScalarField operator+(ScalarField f, const ScalarField& g);
ScalarField operator-(ScalarField f, const ScalarField& g);
ScalarField operator*(ScalarField f, double s);
ScalarField operator*(double s, ScalarField f);
ScalarField operator*(const ScalarField& f, const ScalarField& g);  // pointwise

ScalarField sample(const Grid2& g, const std::function<double(double, double)>& fn);

// k = 2 or 3 components sharing one grid. Two-component fields may carry an
// affine part: value(x) = samples + lin * (x - origin). The decomposition
// potentials and the w updates need it on periodic grids, where a pure-sample
// representation of a linear map would break periodicity.
struct VectorField {
  Grid2 grid;
  std::vector<ScalarField> comp;
  Mat2 lin{};

  VectorField() = default;
  VectorField(const Grid2& g, int k) : grid(g), comp(k, ScalarField(g)) {}
  int k() const { return static_cast<int>(comp.size()); }

  VectorField& operator+=(const VectorField& o);
  VectorField& operator-=(const VectorField& o);
  VectorField& operator*=(double s);
};

VectorField operator-(VectorField f, const VectorField& g);

struct SymMatrixField {
  Grid2 grid;
  ScalarField d11, d12, d22;

  SymMatrixField() = default;
  explicit SymMatrixField(const Grid2& g, double f11 = 0, double f12 = 0, double f22 = 0)
      : grid(g), d11(g, f11), d12(g, f12), d22(g, f22) {}

  SymMatrixField& operator+=(const SymMatrixField& o);
  SymMatrixField& operator-=(const SymMatrixField& o);
  SymMatrixField& operator*=(double s);
};

SymMatrixField operator+(SymMatrixField a, const SymMatrixField& b);
SymMatrixField operator-(SymMatrixField a, const SymMatrixField& b);
SymMatrixField operator*(SymMatrixField a, double s);

void require_same_grid(const Grid2& a, const Grid2& b, const char* what);
void require_finite(const ScalarField& f, const char* what);

}  // namespace ma2d3

#endif
