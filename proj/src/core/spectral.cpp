#include "core/spectral.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <map>
#include <mutex>

namespace ma2d3::spectral {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct PlanPair {
  fftw_plan fwd = nullptr;  // r2c
  fftw_plan bwd = nullptr;  // c2r
  double* rbuf = nullptr;
  fftw_complex* cbuf = nullptr;
  int nx = 0, ny = 0;
};

// One cached plan set per grid size. FFTW planning is not thread safe, so the
// whole lookup-or-create is serialized; execution uses the new-array variants
// on per-call fftw_malloc'd buffers.
std::map<std::pair<int, int>, PlanPair>& plan_cache() {
  static std::map<std::pair<int, int>, PlanPair> cache;
  return cache;
}
std::mutex plan_mutex;

const PlanPair& plans_for(int nx, int ny) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto key = std::make_pair(nx, ny);
  auto it = plan_cache().find(key);
  if (it != plan_cache().end()) return it->second;
  PlanPair p;
  p.nx = nx; p.ny = ny;
  p.rbuf = fftw_alloc_real(static_cast<size_t>(nx) * ny);
  p.cbuf = fftw_alloc_complex(static_cast<size_t>(ny) * (nx / 2 + 1));
  p.fwd = fftw_plan_dft_r2c_2d(ny, nx, p.rbuf, p.cbuf, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_c2r_2d(ny, nx, p.cbuf, p.rbuf, FFTW_ESTIMATE);
  require(p.fwd && p.bwd, errc::internal, "fftw plan creation failed");
  return plan_cache().emplace(key, p).first->second;
}

struct Buffers {
  double* r;
  fftw_complex* c;
  int nx, ny;
  Buffers(int nx_, int ny_) : nx(nx_), ny(ny_) {
    r = fftw_alloc_real(static_cast<size_t>(nx) * ny);
    c = fftw_alloc_complex(static_cast<size_t>(ny) * (nx / 2 + 1));
  }
  ~Buffers() {
    fftw_free(r);
    fftw_free(c);
  }
  Buffers(const Buffers&) = delete;
  Buffers& operator=(const Buffers&) = delete;
};

void forward(const PlanPair& p, const ScalarField& f, Buffers& b) {
  std::copy(f.a.begin(), f.a.end(), b.r);
  fftw_execute_dft_r2c(p.fwd, b.r, b.c);
}

ScalarField backward(const PlanPair& p, const Grid2& g, Buffers& b) {
  fftw_execute_dft_c2r(p.bwd, b.c, b.r);
  ScalarField out(g);
  double scale = 1.0 / (static_cast<double>(g.nx) * g.ny);
  for (size_t i = 0; i < out.a.size(); ++i) out.a[i] = b.r[i] * scale;
  return out;
}

double wavenumber_y(const Grid2& g, int iy) {
  int m = (iy <= g.ny / 2) ? iy : iy - g.ny;
  return kTwoPi * m / g.length_y();
}

void check_periodic(const Grid2& g) {
  require(g.periodic(), errc::internal, "spectral operator on non-periodic grid");
}

}  // namespace

ScalarField derivative(const ScalarField& f, int t, int s) {
  check_periodic(f.grid);
  if (t == 0 && s == 0) return f;
  const Grid2& g = f.grid;
  const PlanPair& p = plans_for(g.nx, g.ny);
  Buffers b(g.nx, g.ny);
  forward(p, f, b);

  int nxh = g.nx / 2 + 1;
  for (int iy = 0; iy < g.ny; ++iy) {
    double ky = wavenumber_y(g, iy);
    bool ny_nyquist = (g.ny % 2 == 0) && (iy == g.ny / 2);
    for (int ix = 0; ix < nxh; ++ix) {
      double kx = kTwoPi * ix / g.length_x();
      bool nx_nyquist = (g.nx % 2 == 0) && (ix == g.nx / 2);
      std::complex<double> m(1.0, 0.0);
      if (t > 0) {
        if (nx_nyquist && (t % 2 == 1)) m = 0.0;
        else m *= std::pow(std::complex<double>(0.0, kx), t);
      }
      if (s > 0) {
        if (ny_nyquist && (s % 2 == 1)) m = 0.0;
        else m *= std::pow(std::complex<double>(0.0, ky), s);
      }
      auto& c = b.c[static_cast<size_t>(iy) * nxh + ix];
      std::complex<double> v(c[0], c[1]);
      v *= m;
      c[0] = v.real();
      c[1] = v.imag();
    }
  }
  return backward(p, g, b);
}

ScalarField poisson(const ScalarField& rhs) {
  check_periodic(rhs.grid);
  const Grid2& g = rhs.grid;
  const PlanPair& p = plans_for(g.nx, g.ny);
  Buffers b(g.nx, g.ny);
  forward(p, rhs, b);

  int nxh = g.nx / 2 + 1;
  for (int iy = 0; iy < g.ny; ++iy) {
    double ky = wavenumber_y(g, iy);
    for (int ix = 0; ix < nxh; ++ix) {
      double kx = kTwoPi * ix / g.length_x();
      double k2 = kx * kx + ky * ky;
      auto& c = b.c[static_cast<size_t>(iy) * nxh + ix];
      if (k2 == 0.0) {
        c[0] = 0.0;
        c[1] = 0.0;
      } else {
        c[0] /= -k2;
        c[1] /= -k2;
      }
    }
  }
  return backward(p, g, b);
}

namespace {

// Shared 1d antiderivative along x; the y version transposes.
ScalarField antiderivative_axis(const ScalarField& f, bool along_x) {
  check_periodic(f.grid);
  const Grid2& g = f.grid;
  int n_line = along_x ? g.nx : g.ny;    // points along the integration axis
  int n_perp = along_x ? g.ny : g.nx;
  double len = along_x ? g.length_x() : g.length_y();

  std::vector<double> line(n_line), means(n_perp);
  ScalarField out(g);

  fftw_complex* spec = fftw_alloc_complex(n_line / 2 + 1);
  double* rbuf = fftw_alloc_real(n_line);
  fftw_plan fwd = fftw_plan_dft_r2c_1d(n_line, rbuf, spec, FFTW_ESTIMATE);
  fftw_plan bwd = fftw_plan_dft_c2r_1d(n_line, spec, rbuf, FFTW_ESTIMATE);

  for (int j = 0; j < n_perp; ++j) {
    for (int i = 0; i < n_line; ++i)
      line[i] = along_x ? f.at(i, j) : f.at(j, i);
    double mean = 0;
    for (double v : line) mean += v;
    mean /= n_line;
    means[j] = mean;
    for (int i = 0; i < n_line; ++i) rbuf[i] = line[i] - mean;
    fftw_execute(fwd);
    spec[0][0] = 0; spec[0][1] = 0;
    for (int m = 1; m <= n_line / 2; ++m) {
      double k = kTwoPi * m / len;
      if ((n_line % 2 == 0) && m == n_line / 2) { spec[m][0] = 0; spec[m][1] = 0; continue; }
      double re = spec[m][0], im = spec[m][1];
      // divide by i*k
      spec[m][0] = im / k;
      spec[m][1] = -re / k;
    }
    fftw_execute(bwd);
    double base = rbuf[0] / n_line;  // pin F = 0 at the line start
    for (int i = 0; i < n_line; ++i) {
      double coord = i * g.h;  // x - x0 along the axis
      double val = rbuf[i] / n_line - base + means[j] * coord;
      if (along_x) out.at(i, j) = val; else out.at(j, i) = val;
    }
  }
  fftw_destroy_plan(fwd);
  fftw_destroy_plan(bwd);
  fftw_free(spec);
  fftw_free(rbuf);
  return out;
}

}  // namespace

ScalarField antiderivative_x(const ScalarField& f) { return antiderivative_axis(f, true); }
ScalarField antiderivative_y(const ScalarField& f) { return antiderivative_axis(f, false); }

ScalarField upsample2(const ScalarField& f) {
  check_periodic(f.grid);
  const Grid2& g = f.grid;
  Grid2 g2 = g;
  g2.nx = 2 * g.nx;
  g2.ny = 2 * g.ny;
  g2.h = g.h / 2;

  const PlanPair& p = plans_for(g.nx, g.ny);
  Buffers b(g.nx, g.ny);
  forward(p, f, b);

  const PlanPair& p2 = plans_for(g2.nx, g2.ny);
  Buffers b2(g2.nx, g2.ny);
  int nxh = g.nx / 2 + 1, nxh2 = g2.nx / 2 + 1;
  for (size_t i = 0; i < static_cast<size_t>(g2.ny) * nxh2; ++i) {
    b2.c[i][0] = 0;
    b2.c[i][1] = 0;
  }
  for (int iy = 0; iy < g.ny; ++iy) {
    int iy2 = (iy <= g.ny / 2) ? iy : iy + g2.ny - g.ny;
    for (int ix = 0; ix < nxh; ++ix) {
      auto& src = b.c[static_cast<size_t>(iy) * nxh + ix];
      auto& dst = b2.c[static_cast<size_t>(iy2) * nxh2 + ix];
      dst[0] = src[0];
      dst[1] = src[1];
    }
  }
  ScalarField out = backward(p2, g2, b2);
  out *= 4.0;  // fft scale difference between the two sizes cancels to x4
  return out;
}

}  // namespace ma2d3::spectral
