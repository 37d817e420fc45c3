#pragma once

#include <string_view>

#include "gmshadow/mesh.hpp"

namespace gmshadow {

enum class InitKind { CosinePlus, Spiky, Constant };

std::string_view to_string(InitKind kind);
/// Accepts cosine | spiky | constant.
InitKind parse_init_kind(std::string_view name);

/// Initial activator profile.
///   CosinePlus  u0 = cos(pi y) + c on the square (cos(pi R) + c on a ball), c > 1
///   Spiky       u0 = lambda * psi_delta(R), radial grids only
///   Constant    u0 = c, c > 0
struct InitSpec {
  InitKind kind = InitKind::CosinePlus;
  double c = 2.0;
  double delta = 0.8;
  double lambda = 0.1;

  void validate() const;
};

/// psi_delta(R) = R^-a for R >= delta and
/// delta^-a (1 + a/2) - (a/2) delta^(-a-2) R^2 below, with a = 2/(p-1).
/// The inner parabola matches value and slope at R = delta.
double spike_profile(double R, double delta, double p);

/// Nodal evaluation of the initial datum. p fixes the spike exponent.
/// Throws std::invalid_argument for c <= 1 with CosinePlus, for a spiky datum
/// on a rectangle, or for p <= 1 with Spiky.
Field build_initial(const InitSpec& spec, const Grid& grid, double p);

}  // namespace gmshadow
