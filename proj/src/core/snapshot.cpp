#include "core/snapshot.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace ma2d3 {

namespace {

const char* kMagic = "ma2d3 field snapshot v1";

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_values(std::ostream& os, const std::vector<const ScalarField*>& comps,
                  SnapshotPayload payload, const Grid2& g) {
  if (payload == SnapshotPayload::csv) {
    for (int iy = 0; iy < g.ny; ++iy) {
      for (int ix = 0; ix < g.nx; ++ix) {
        for (size_t c = 0; c < comps.size(); ++c) {
          if (ix != 0 || c != 0) os << ',';
          os << fmt17(comps[c]->at(ix, iy));
        }
      }
      os << '\n';
    }
  } else {
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        for (const ScalarField* f : comps) {
          double v = f->at(ix, iy);
          os.write(reinterpret_cast<const char*>(&v), sizeof v);
        }
  }
}

}  // namespace

void save_snapshot(const std::string& path, const AnyField& field, SnapshotPayload payload) {
  std::ofstream os(path, std::ios::binary);
  require(os.good(), errc::io, "cannot open " + path + " for writing");

  const Grid2* g = nullptr;
  std::string kind;
  std::vector<const ScalarField*> comps;
  Mat2 lin;
  if (const auto* s = std::get_if<ScalarField>(&field)) {
    g = &s->grid;
    kind = "scalar";
    comps = {s};
  } else if (const auto* v = std::get_if<VectorField>(&field)) {
    g = &v->grid;
    kind = v->k() == 2 ? "vector2" : "vector3";
    for (const auto& c : v->comp) comps.push_back(&c);
    lin = v->lin;
  } else {
    const auto* m = std::get_if<SymMatrixField>(&field);
    g = &m->grid;
    kind = "symmat";
    comps = {&m->d11, &m->d12, &m->d22};
  }

  os << kMagic << '\n';
  os << "kind " << kind << '\n';
  os << "grid " << fmt17(g->x0) << ' ' << fmt17(g->y0) << ' ' << fmt17(g->h) << ' ' << g->nx
     << ' ' << g->ny << ' ' << (g->periodic() ? "periodic" : "extended") << '\n';
  if (!lin.zero())
    os << "lin " << fmt17(lin.a11) << ' ' << fmt17(lin.a12) << ' ' << fmt17(lin.a21) << ' '
       << fmt17(lin.a22) << '\n';
  os << "payload " << (payload == SnapshotPayload::csv ? "csv" : "binary") << '\n';
  os << "data\n";
  write_values(os, comps, payload, *g);
  require(os.good(), errc::io, "write failed for " + path);
}

AnyField load_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  require(is.good(), errc::io, "cannot open " + path);
  std::string line;
  std::getline(is, line);
  require(line == kMagic, errc::io, path + " is not a field snapshot");

  std::string kind, payload_s;
  Grid2 g;
  Mat2 lin;
  bool have_lin = false;
  while (std::getline(is, line)) {
    if (line == "data") break;
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "kind") {
      ls >> kind;
    } else if (key == "grid") {
      std::string mode;
      ls >> g.x0 >> g.y0 >> g.h >> g.nx >> g.ny >> mode;
      g.boundary = mode == "periodic" ? BoundaryMode::periodic : BoundaryMode::extended;
    } else if (key == "lin") {
      ls >> lin.a11 >> lin.a12 >> lin.a21 >> lin.a22;
      have_lin = true;
    } else if (key == "payload") {
      ls >> payload_s;
    } else {
      fail(errc::io, "unknown snapshot header key: " + key);
    }
    require(!ls.fail(), errc::io, "malformed snapshot header line: " + line);
  }
  require(g.nx > 0 && g.ny > 0 && g.h > 0, errc::io, "snapshot without a valid grid header");

  int ncomp = kind == "scalar" ? 1 : kind == "vector2" ? 2 : kind == "vector3" ? 3
              : kind == "symmat" ? 3 : 0;
  require(ncomp > 0, errc::io, "unknown snapshot kind: " + kind);

  std::vector<ScalarField> comps(ncomp, ScalarField(g));
  size_t total = static_cast<size_t>(g.npts()) * ncomp;
  if (payload_s == "csv") {
    size_t read = 0;
    double v;
    char sep;
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        for (int c = 0; c < ncomp; ++c) {
          if (read > 0) is >> sep;
          is >> v;
          require(!is.fail(), errc::io, "snapshot payload truncated");
          comps[c].at(ix, iy) = v;
          ++read;
        }
  } else if (payload_s == "binary") {
    for (int iy = 0; iy < g.ny; ++iy)
      for (int ix = 0; ix < g.nx; ++ix)
        for (int c = 0; c < ncomp; ++c) {
          double v;
          is.read(reinterpret_cast<char*>(&v), sizeof v);
          require(is.gcount() == sizeof v, errc::io, "snapshot payload truncated");
          comps[c].at(ix, iy) = v;
        }
  } else {
    fail(errc::io, "unknown snapshot payload: " + payload_s);
  }
  (void)total;

  if (kind == "scalar") return comps[0];
  if (kind == "symmat") {
    SymMatrixField m(g);
    m.d11 = comps[0];
    m.d12 = comps[1];
    m.d22 = comps[2];
    return m;
  }
  VectorField vf(g, ncomp);
  vf.comp = comps;
  if (have_lin) vf.lin = lin;
  return vf;
}

void export_component_mesh(const std::string& path, const ScalarField& f) {
  std::ofstream os(path);
  require(os.good(), errc::io, "cannot open " + path + " for writing");
  const Grid2& g = f.grid;
  for (int iy = 0; iy < g.ny; ++iy)
    for (int ix = 0; ix < g.nx; ++ix)
      os << "v " << fmt17(g.x(ix)) << ' ' << fmt17(g.y(iy)) << ' ' << fmt17(f.at(ix, iy)) << '\n';
  auto id = [&](int ix, int iy) { return iy * g.nx + ix + 1; };
  for (int iy = 0; iy + 1 < g.ny; ++iy)
    for (int ix = 0; ix + 1 < g.nx; ++ix) {
      os << "f " << id(ix, iy) << ' ' << id(ix + 1, iy) << ' ' << id(ix + 1, iy + 1) << '\n';
      os << "f " << id(ix, iy) << ' ' << id(ix + 1, iy + 1) << ' ' << id(ix, iy + 1) << '\n';
    }
  require(os.good(), errc::io, "write failed for " + path);
}

}  // namespace ma2d3
