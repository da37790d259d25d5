#pragma once

#include <array>
#include <string>
#include <vector>

#include "kf/core.hpp"
#include "kf/torus.hpp"

namespace kf {

using TorusTransform = std::array<std::array<int64_t, 2>, 2>;

struct OverlayResult {
  SimplicialComplex refinement;                    // labels ov0, ov1, ...
  std::vector<Vec2> coords;                        // canonical point per vertex
  std::vector<std::vector<std::string>> carrier1;  // vertex -> smallest t1 simplex
  std::vector<std::vector<std::string>> carrier2;  // vertex -> smallest t2 simplex
};

/// Common refinement of two affine torus triangulations, with t2 first mapped
/// through `transform` (must lie in GL2(Z)). Exact rational arithmetic.
OverlayResult overlay_refinement(const AffineTorus& t1, const AffineTorus& t2,
                                 const TorusTransform& transform);

/// Independent point-location check of the carriers (used as an oracle).
bool verify_overlay_carriers(const OverlayResult& r, const AffineTorus& t1,
                             const AffineTorus& t2, const TorusTransform& transform);

/// The affine torus as a plain 2-complex (vertex labels and triangles).
SimplicialComplex affine_torus_complex(const AffineTorus& t);

}  // namespace kf
