#pragma once

#include <string>

#include "hgops/core.hpp"

namespace hgops {

enum class SpaceKind { Hardy, Bergman, DirichletType };

/// Function-space tag with exponent p and weight alpha (alpha is ignored for
/// Hardy).  admissible() is the norm-level check; hg_well_defined() is the
/// stricter gate under which the generalized Hilbert operator acts on the
/// space at all (every member must be integrable on [0,1)).
struct SpaceParams {
  SpaceKind kind = SpaceKind::Hardy;
  double p = 2.0;
  double alpha = 0.0;

  static SpaceParams hardy(double p) { return {SpaceKind::Hardy, p, 0.0}; }
  static SpaceParams bergman(double p, double alpha) { return {SpaceKind::Bergman, p, alpha}; }
  static SpaceParams dirichlet(double p, double alpha) {
    return {SpaceKind::DirichletType, p, alpha};
  }

  bool admissible() const {
    if (!(p > 0.0)) return false;
    if (kind != SpaceKind::Hardy && !(alpha > -1.0)) return false;
    return true;
  }

  bool hg_well_defined() const {
    if (!admissible()) return false;
    switch (kind) {
      case SpaceKind::Hardy:
        return p > 1.0;
      case SpaceKind::Bergman:
        return p > 1.0 && alpha < p - 2.0;
      case SpaceKind::DirichletType:
        return p > 1.0 && alpha > p - 2.0 && alpha <= p - 1.0;
    }
    return false;
  }

  void require_admissible() const {
    if (!admissible()) throw domain_error("space parameters are not admissible: " + label());
  }

  std::string label() const {
    switch (kind) {
      case SpaceKind::Hardy:
        return "H^" + std::to_string(p);
      case SpaceKind::Bergman:
        return "A^" + std::to_string(p) + "_" + std::to_string(alpha);
      case SpaceKind::DirichletType:
        return "D^" + std::to_string(p) + "_" + std::to_string(alpha);
    }
    return "?";
  }

  std::string kind_name() const {
    switch (kind) {
      case SpaceKind::Hardy:
        return "hardy";
      case SpaceKind::Bergman:
        return "bergman";
      case SpaceKind::DirichletType:
        return "dirichlet";
    }
    return "?";
  }
};

}  // namespace hgops
