#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kf/core.hpp"
#include "kf/overlay.hpp"
#include "kf/subdivide.hpp"
#include "kf/torus.hpp"

namespace kf {

struct RegionTag {
  enum class Kind : uint8_t { Torus, Collar, Exterior };
  Kind kind = Kind::Exterior;
  int component = -1;

  bool operator==(const RegionTag&) const = default;
};

/// Closed 3-complex with every tetrahedron assigned to a solid-torus region,
/// a collar region or the exterior; cores and marked curves ride along.
struct RegionTaggedComplex {
  SimplicialComplex complex;
  std::vector<RegionTag> tet_tags;  // per cells(3) index
  std::vector<SolidTorusComplex> tori;
  bool subdivided = false;

  std::vector<std::array<std::string, 4>> cores() const {
    std::vector<std::array<std::string, 4>> out;
    for (auto& t : tori) out.push_back(t.core);
    return out;
  }
};

struct ExteriorBoundary {
  std::vector<std::string> vertices;
  std::vector<std::string> meridian;
  std::vector<std::string> longitude;
  // overlay route: affine coordinates for the boundary torus
  std::optional<AffineTorus> affine;
  // direct route: boundary vertex -> solid-torus boundary label
  std::optional<std::map<std::string, std::string>> identify;
};

struct ExteriorInput {
  SimplicialComplex complex;
  std::vector<ExteriorBoundary> boundaries;  // one per link component
};

struct GluingFixtures {
  std::vector<TorusTransform> transforms;  // per component (overlay route)
};

RegionTaggedComplex assemble_sigma(const ExteriorInput& exterior, const GluingFixtures& fixtures);

RegionTaggedComplex step3_subdivide(const RegionTaggedComplex& sigma0);

struct CertificateItem {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct Theorem3Certificate {
  std::vector<CertificateItem> items;
  bool all_pass() const {
    for (auto& i : items)
      if (!i.pass) return false;
    return !items.empty();
  }
};

Theorem3Certificate verify_theorem3(const RegionTaggedComplex& sigma);

std::pair<ExteriorInput, GluingFixtures> builtin_unknot();
std::pair<ExteriorInput, GluingFixtures> builtin_unknot_wrong_framing();
std::pair<ExteriorInput, GluingFixtures> builtin_unlink();

/// Full subcomplex on everything outside the interiors of the given
/// solid-torus regions (knot exterior). Requires a subdivided complex.
SimplicialComplex exterior_complex(const RegionTaggedComplex& sigma,
                                   const std::vector<int>& components);
SimplicialComplex exterior_complex(const RegionTaggedComplex& sigma, int component);

}  // namespace kf
