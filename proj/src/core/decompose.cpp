#include "core/decompose.hpp"

#include <cmath>

#include "core/spectral.hpp"

namespace ma2d3 {

namespace {

// The Poisson correction runs on a periodic view of the field data. For
// periodic grids that is the grid itself; extended rectangles are reused as a
// periodic box, which is legitimate because the masked traceless part
// vanishes near the rectangle edge.
Grid2 periodic_view(const Grid2& g) {
  if (g.periodic()) return g;
  Grid2 p = g;
  p.boundary = BoundaryMode::periodic;
  return p;
}

ScalarField on_grid(ScalarField f, const Grid2& g) {
  f.grid = g;
  return f;
}

struct CoreResult {
  ScalarField coeff;
  VectorField potential;
  double curlcurl_residual = 0;
};

// trace part p, traceless part chi*(D - p Id); returns coeff = p_used - u and
// the line-integrated potential.
CoreResult decompose_core(const ScalarField& p_part, const SymMatrixField& d_traceless_masked) {
  const Grid2& g = p_part.grid;
  Grid2 pg = periodic_view(g);

  SymMatrixField dd(pg);
  dd.d11 = on_grid(d_traceless_masked.d11, pg);
  dd.d12 = on_grid(d_traceless_masked.d12, pg);
  dd.d22 = on_grid(d_traceless_masked.d22, pg);

  ScalarField rhs = curl_curl(dd) * -1.0;
  ScalarField u = spectral::poisson(rhs);

  SymMatrixField m = dd;
  m.d11 += u;
  m.d22 += u;

  CoreResult res;
  res.curlcurl_residual = sup_norm(curl_curl(m));
  VectorField psi = potential_from_sym_grad(m);

  res.coeff = p_part - on_grid(u, g);
  res.potential = VectorField(g, 2);
  res.potential.comp[0] = on_grid(psi.comp[0], g);
  res.potential.comp[1] = on_grid(psi.comp[1], g);
  res.potential.lin = psi.lin;
  return res;
}

double check_identity(const SymMatrixField& target, const ScalarField& coeff,
                      const VectorField& potential, const Region& region) {
  SymMatrixField rec = sym_grad(potential);
  rec.d11 += coeff;
  rec.d22 += coeff;
  return sup_norm(target - rec, region);
}

}  // namespace

Decomposition decompose(const SymMatrixField& d, const ScalarField& cutoff,
                        const DecomposeOptions& opt) {
  require_same_grid(d.grid, cutoff.grid, "decompose");
  ScalarField p = (d.d11 + d.d22) * 0.5;
  SymMatrixField dt(d.grid);
  dt.d11 = (d.d11 - d.d22) * 0.5 * cutoff;
  dt.d22 = dt.d11 * -1.0;
  dt.d12 = d.d12 * cutoff;

  CoreResult core = decompose_core(p, dt);
  Decomposition out;
  out.coeff = core.coeff;
  out.potential = core.potential;
  out.curlcurl_residual = core.curlcurl_residual;
  out.residual = check_identity(d, out.coeff, out.potential, opt.check_region);

  double scale = std::max(1.0, sup_norm(d));
  if (opt.hard_fail && out.residual > opt.tolerance * scale)
    fail(errc::compatibility,
         "decomposition identity residual " + std::to_string(out.residual) +
             " exceeds tolerance (curl_curl residual " + std::to_string(out.curlcurl_residual) + ")");
  return out;
}

Decomposition decompose_shifted(const SymMatrixField& h, double mu, double gamma, double ctilde,
                                const ScalarField& cutoff, const DecomposeOptions& opt) {
  require_same_grid(h.grid, cutoff.grid, "decompose_shifted");
  require(mu > 0, errc::config, "decompose_shifted needs mu > 0");

  // full mask: chi H splits into trace part chi p and traceless chi Hdot
  ScalarField p = (h.d11 + h.d22) * 0.5 * cutoff;
  SymMatrixField ht(h.grid);
  ht.d11 = (h.d11 - h.d22) * 0.5 * cutoff;
  ht.d22 = ht.d11 * -1.0;
  ht.d12 = h.d12 * cutoff;

  CoreResult core = decompose_core(p, ht);

  double abar_sup = sup_norm(core.coeff);
  double mug = std::pow(mu, gamma);
  if (ctilde <= 0) {
    ctilde = 4.0 * abar_sup / mug;
    if (ctilde < 1e-12) ctilde = 1.0;  // degenerate zero input: keep the padding positive
  }
  double pad = ctilde * mug;
  double cap = opt.max_abar_fraction * pad;
  if (abar_sup > cap + 1e-12 * std::max(1.0, pad))
    fail(errc::amplitude, "|abar(chi H)|_0 = " + std::to_string(abar_sup) +
                              " exceeds the admissible " + std::to_string(cap));

  Decomposition out;
  out.ctilde = ctilde;
  out.coeff = core.coeff;
  out.amp2 = core.coeff;
  out.amp2 += pad;
  out.potential = core.potential;
  out.potential.lin.a11 -= pad;
  out.potential.lin.a22 -= pad;
  out.curlcurl_residual = core.curlcurl_residual;

  double lo = field_min(out.amp2, opt.check_region) / pad;
  double hi = field_max(out.amp2, opt.check_region) / pad;
  out.band_low = lo;
  out.band_high = hi;
  if (lo < 0.5 - 1e-12 || hi > 1.5 + 1e-12)
    fail(errc::amplitude, "amplitude band violated: a^2/(ctilde mu^gamma) in [" +
                              std::to_string(lo) + ", " + std::to_string(hi) + "]");

  SymMatrixField chih(h.grid);
  chih.d11 = h.d11 * cutoff;
  chih.d12 = h.d12 * cutoff;
  chih.d22 = h.d22 * cutoff;
  SymMatrixField rec = sym_grad(out.potential);
  rec.d11 += out.amp2;
  rec.d22 += out.amp2;
  out.residual = sup_norm(chih - rec, opt.check_region);
  double scale = std::max(1.0, sup_norm(h));
  if (opt.hard_fail && out.residual > opt.tolerance * scale)
    fail(errc::compatibility, "shifted decomposition identity residual " +
                                  std::to_string(out.residual) + " exceeds tolerance");
  return out;
}

}  // namespace ma2d3
