#include "gmshadow/initdata.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gmshadow {

std::string_view to_string(InitKind kind) {
  switch (kind) {
    case InitKind::CosinePlus:
      return "cosine";
    case InitKind::Spiky:
      return "spiky";
    case InitKind::Constant:
      return "constant";
  }
  return "unknown";
}

InitKind parse_init_kind(std::string_view name) {
  if (name == "cosine") return InitKind::CosinePlus;
  if (name == "spiky") return InitKind::Spiky;
  if (name == "constant") return InitKind::Constant;
  throw std::invalid_argument("unknown init kind '" + std::string(name) +
                              "' (expected cosine, spiky or constant)");
}

void InitSpec::validate() const {
  switch (kind) {
    case InitKind::CosinePlus:
      if (!(c > 1.0)) {
        throw std::invalid_argument("cosine datum needs c > 1 to stay positive");
      }
      break;
    case InitKind::Constant:
      if (!(c > 0.0)) {
        throw std::invalid_argument("constant datum needs c > 0");
      }
      break;
    case InitKind::Spiky:
      if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("spiky datum needs 0 < delta < 1");
      }
      if (!(lambda > 0.0)) {
        throw std::invalid_argument("spiky datum needs lambda > 0");
      }
      break;
  }
}

double spike_profile(double R, double delta, double p) {
  if (!(p > 1.0)) {
    throw std::invalid_argument("spiky datum needs p > 1");
  }
  const double a = 2.0 / (p - 1.0);
  if (R >= delta) {
    return std::pow(R, -a);
  }
  const double da = std::pow(delta, -a);
  return da * (1.0 + 0.5 * a) - 0.5 * a * da / (delta * delta) * R * R;
}

Field build_initial(const InitSpec& spec, const Grid& grid, double p) {
  spec.validate();
  Field f(grid, 0.0);
  const double pi = std::numbers::pi;

  if (const auto* rect = std::get_if<RectGrid>(&grid)) {
    rect->validate();
    if (spec.kind == InitKind::Spiky) {
      throw std::invalid_argument("spiky datum is defined on radial grids only");
    }
    for (int j = 0; j < rect->ny; ++j) {
      const double y = j * rect->hy();
      const double v = spec.kind == InitKind::CosinePlus ? std::cos(pi * y) + spec.c : spec.c;
      for (int i = 0; i < rect->nx; ++i) {
        f.values[static_cast<std::size_t>(j) * rect->nx + i] = v;
      }
    }
    return f;
  }

  const auto& rad = std::get<RadialGrid>(grid);
  rad.validate();
  for (int i = 0; i < rad.M; ++i) {
    const double R = rad.radius(i);
    switch (spec.kind) {
      case InitKind::CosinePlus:
        f.values[i] = std::cos(pi * R) + spec.c;
        break;
      case InitKind::Constant:
        f.values[i] = spec.c;
        break;
      case InitKind::Spiky:
        f.values[i] = spec.lambda * spike_profile(R, spec.delta, p);
        break;
    }
  }
  return f;
}

}  // namespace gmshadow
