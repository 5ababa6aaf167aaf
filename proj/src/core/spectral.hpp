#ifndef MA2D3_SPECTRAL_HPP
#define MA2D3_SPECTRAL_HPP

#include "core/grid.hpp"

namespace ma2d3::spectral {

// All routines require a periodic grid. Plans are cached per (nx, ny) and the
// cache is mutex-guarded; execution on caller buffers is thread-safe.

// d^t/dx^t d^s/dy^s with exact wavenumber multipliers. Odd-order factors zero
// the Nyquist mode.
ScalarField derivative(const ScalarField& f, int t, int s);

// Solve laplace(u) = rhs on the torus, mean(u) = 0. The rhs mean is dropped.
ScalarField poisson(const ScalarField& rhs);

// F with dF/dx = f and F(x0, y) = 0 per row. The per-row mean of f produces a
// term mean * (x - x0); everything else stays periodic.
ScalarField antiderivative_x(const ScalarField& f);
// F with dF/dy = f and F(x, y0) = 0 per column.
ScalarField antiderivative_y(const ScalarField& f);

// Zero-padded spectral upsampling by 2x in each direction.
ScalarField upsample2(const ScalarField& f);

}  // namespace ma2d3::spectral

#endif
