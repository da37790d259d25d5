#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "kf/core.hpp"

namespace kf {

/// Finitely presented group. Letters are signed 1-based generator ids,
/// so +3/-3 stand for g3 / g3^-1. All exponents are expanded to +-1.
struct GroupPresentation {
  std::vector<std::string> generators;
  std::vector<std::vector<int32_t>> relators;
  std::vector<char> involution;  // set for RACG generators

  size_t total_length() const {
    size_t n = 0;
    for (auto& r : relators) n += r.size();
    return n;
  }
  bool empty() const { return generators.empty() && relators.empty(); }
};

struct TietzeOptions {
  // The simplifier never lets the total relator length grow past
  // max(initial_length * growth_factor, min_budget).
  double growth_factor = 4.0;
  size_t min_budget = 4096;
  size_t max_substitutions = 1u << 22;
};

struct TietzeResult {
  GroupPresentation presentation;
  bool trivialized = false;  // reached the empty presentation
  size_t substitutions = 0;
};

GroupPresentation pi1_presentation(const SimplicialComplex& k, const std::string& basepoint);
GroupPresentation pi1_presentation(const SimplicialComplex& k);  // least-label basepoint

TietzeResult tietze_simplify(const GroupPresentation& p, TietzeOptions opt = {});

HomologyProfile abelianization(const GroupPresentation& p);

/// Finite target group with a full multiplication table.
struct FiniteGroup {
  std::string name;
  int order = 0;
  std::vector<std::vector<int>> mul;  // mul[a][b]
  std::vector<int> inv;
  std::vector<std::string> element_names;
  int identity = 0;
  bool abelian = true;
};

const std::vector<FiniteGroup>& builtin_targets();          // S3, D4, A4, S4, A5
const FiniteGroup* find_target(const std::string& name);

struct QuotientCertificate {
  std::string target;
  std::vector<int> images;                // per generator, element index
  std::vector<std::string> image_names;
  int generated_subgroup_order = 0;       // == target order (surjectivity witness)
  std::vector<std::string> relator_transcript;  // relator -> evaluated element
};

/// First surjection onto a nonabelian target found in deterministic order,
/// or nullopt within the time budget. Absence proves nothing.
std::optional<QuotientCertificate> nonabelian_certificate(
    const GroupPresentation& p, const std::vector<std::string>& target_names,
    int64_t budget_ms);

/// Re-verifies a certificate from the multiplication table alone.
bool verify_certificate(const GroupPresentation& p, const QuotientCertificate& cert);

}  // namespace kf
