#include "eldg/projection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "eldg/basis.hpp"

namespace eldg {

OverlapDecomposition overlap_decompose_intervals(std::shared_ptr<const Mesh1D> src,
                                                 std::span<const double> dst_lo,
                                                 std::span<const double> dst_hi) {
  if (dst_lo.size() != dst_hi.size())
    throw std::invalid_argument("overlap_decompose: interval list size mismatch");
  const double L = src->length();
  OverlapDecomposition d;
  d.src = src;
  d.dst_lo.assign(dst_lo.begin(), dst_lo.end());
  d.dst_hi.assign(dst_hi.begin(), dst_hi.end());
  d.pieces.resize(dst_lo.size());

  const int n_src = src->n_cells();
  const double eps = 1e-13 * L;

  for (size_t j = 0; j < dst_lo.size(); ++j) {
    double a = dst_lo[j], b = dst_hi[j];
    if (!(b > a)) throw std::invalid_argument("overlap_decompose: empty destination cell");
    std::vector<double> cuts;
    cuts.push_back(a);
    // periodic images of interior source nodes strictly inside (a, b)
    int p_lo = static_cast<int>(std::floor((a - src->domain_lo) / L)) - 1;
    int p_hi = static_cast<int>(std::floor((b - src->domain_lo) / L)) + 1;
    for (int p = p_lo; p <= p_hi; ++p)
      for (int s = 0; s < n_src; ++s) {
        double x = src->nodes[s] + p * L;
        if (x > a + eps && x < b - eps) cuts.push_back(x);
      }
    cuts.push_back(b);
    std::sort(cuts.begin(), cuts.end());
    for (size_t q = 0; q + 1 < cuts.size(); ++q) {
      double lo = cuts[q], hi = cuts[q + 1];
      if (hi - lo <= eps) continue;
      auto loc = src->locate(0.5 * (lo + hi));
      d.pieces[j].push_back({loc.cell, lo, hi, loc.shift});
    }
  }
  return d;
}

OverlapDecomposition overlap_decompose(std::shared_ptr<const Mesh1D> src,
                                       const Mesh1D& dst) {
  if (std::abs(dst.length() - src->length()) > 1e-12 * src->length())
    throw std::invalid_argument("overlap_decompose: meshes cover different domains");
  const int n = dst.n_cells();
  std::vector<double> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    lo[j] = dst.cell_lo(j);
    hi[j] = dst.cell_hi(j);
  }
  return overlap_decompose_intervals(std::move(src), lo, hi);
}

OverlapDecomposition overlap_decompose(std::shared_ptr<const Mesh1D> src,
                                       const UpstreamMesh& dst) {
  const int n = static_cast<int>(dst.elements.size());
  std::vector<double> lo(n), hi(n);
  for (int j = 0; j < n; ++j) {
    lo[j] = dst.elements[j].upstream_lo;
    hi[j] = dst.elements[j].upstream_hi;
  }
  return overlap_decompose_intervals(std::move(src), lo, hi);
}

DGField l2_project(const DGField& field, const OverlapDecomposition& decomp,
                   std::shared_ptr<const Mesh1D> dst_mesh, int dst_degree) {
  if (dst_degree >= 0 && dst_degree != field.degree)
    throw std::invalid_argument("l2_project: degree mismatch");
  if (field.mesh->n_cells() != decomp.src->n_cells() ||
      std::abs(field.mesh->length() - decomp.src->length()) >
          1e-12 * decomp.src->length())
    throw std::invalid_argument("l2_project: field does not live on the decomposition source");
  if (dst_mesh->n_cells() != decomp.n_dst())
    throw std::invalid_argument("l2_project: destination mesh size mismatch");
  const int k = field.degree;
  const int nc = field.n_comp;
  const double L = field.mesh->length();
  DGField out = DGField::zeros(dst_mesh, k, nc);
  out.time_tag = field.time_tag;

  const auto& rule = QuadratureRule::gauss(default_quad_points(k));
  std::vector<double> psi_dst(k + 1), psi_src(k + 1);

  for (int j = 0; j < decomp.n_dst(); ++j) {
    const double a = decomp.dst_lo[j], b = decomp.dst_hi[j];
    for (const auto& piece : decomp.pieces[j]) {
      double half = 0.5 * (piece.hi - piece.lo), mid = 0.5 * (piece.hi + piece.lo);
      for (int q = 0; q < rule.size(); ++q) {
        double x = mid + half * rule.nodes[q];
        double w = rule.weights[q] * half;
        legendre_all(k, (2.0 * x - a - b) / (b - a), psi_dst.data());
        double xs = x - piece.shift * L;
        legendre_all(k, field.mesh->reference_coord(piece.src_cell, xs), psi_src.data());
        for (int c = 0; c < nc; ++c) {
          const double* coef = field.cell_comp(piece.src_cell, c);
          double v = 0.0;
          for (int m = 0; m <= k; ++m) v += coef[m] * psi_src[m];
          for (int m = 0; m <= k; ++m) out.at(j, c, m) += w * v * psi_dst[m];
        }
      }
    }
    double w_dst = b - a;
    for (int c = 0; c < nc; ++c)
      for (int m = 0; m <= k; ++m) out.at(j, c, m) /= w_dst / (2.0 * m + 1.0);
  }
  return out;
}

DGField l2_project(const DGField& field, std::shared_ptr<const Mesh1D> dst_mesh) {
  auto decomp = overlap_decompose(field.mesh, *dst_mesh);
  return l2_project(field, decomp, std::move(dst_mesh));
}

}  // namespace eldg
