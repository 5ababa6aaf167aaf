#ifndef MA2D3_SNAPSHOT_HPP
#define MA2D3_SNAPSHOT_HPP

#include <string>
#include <variant>

#include "core/grid.hpp"

namespace ma2d3 {

// Field snapshot files: a plain-text header followed by a row-major payload,
// either CSV at 17 significant digits (lossless for doubles) or little-endian
// binary. See the README for the exact layout.

enum class SnapshotPayload { csv, binary };

using AnyField = std::variant<ScalarField, VectorField, SymMatrixField>;

void save_snapshot(const std::string& path, const AnyField& field,
                   SnapshotPayload payload = SnapshotPayload::csv);
AnyField load_snapshot(const std::string& path);

// Height-field triangle mesh of one component, in ASCII OBJ form
// (`v x y z` vertex lines, `f a b c` faces).
void export_component_mesh(const std::string& path, const ScalarField& f);

}  // namespace ma2d3

#endif
