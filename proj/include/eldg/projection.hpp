#pragma once

#include <memory>
#include <span>
#include <vector>

#include "eldg/field.hpp"
#include "eldg/mesh.hpp"

namespace eldg {

// One maximal subinterval of a destination cell lying inside a single source
// cell (up to a whole-period shift of the source).
struct OverlapPiece {
  int src_cell;
  double lo, hi;  // in the destination (unwrapped) frame
  int shift;      // source evaluation happens at x - shift*period
};

// Destination cells split at every straddled source node.
struct OverlapDecomposition {
  std::shared_ptr<const Mesh1D> src;
  std::vector<double> dst_lo, dst_hi;
  std::vector<std::vector<OverlapPiece>> pieces;  // per destination cell

  int n_dst() const { return static_cast<int>(pieces.size()); }
};

// Workhorse: arbitrary destination intervals covering one period of src.
OverlapDecomposition overlap_decompose_intervals(std::shared_ptr<const Mesh1D> src,
                                                 std::span<const double> dst_lo,
                                                 std::span<const double> dst_hi);

OverlapDecomposition overlap_decompose(std::shared_ptr<const Mesh1D> src,
                                       const Mesh1D& dst);
OverlapDecomposition overlap_decompose(std::shared_ptr<const Mesh1D> src,
                                       const UpstreamMesh& dst);

// L2 projection onto the destination mesh, assembled subinterval-by-subinterval
// so the weak identity holds to round-off for the discontinuous source field.
// dst_degree, when given, must equal the source degree (cross-degree projection
// is not supported).
DGField l2_project(const DGField& field, const OverlapDecomposition& decomp,
                   std::shared_ptr<const Mesh1D> dst_mesh, int dst_degree = -1);

// Convenience: project between two meshes of the same periodic domain.
DGField l2_project(const DGField& field, std::shared_ptr<const Mesh1D> dst_mesh);

}  // namespace eldg
