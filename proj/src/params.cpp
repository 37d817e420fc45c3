#include "gmshadow/params.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace gmshadow {

void Parameters::validate() const {
  if (!(s > -1.0)) {
    throw std::invalid_argument("s must exceed -1 (got " + std::to_string(s) + ")");
  }
  if (!(r > 0.0)) {
    throw std::invalid_argument("r must be positive (got " + std::to_string(r) + ")");
  }
  if (!(q >= 0.0)) {
    throw std::invalid_argument("q must be non-negative (got " + std::to_string(q) + ")");
  }
  if (!(p > 0.0)) {
    throw std::invalid_argument("p must be positive (got " + std::to_string(p) + ")");
  }
  if (!(D1 > 0.0) || !(D2 > 0.0)) {
    throw std::invalid_argument("diffusivities must be positive");
  }
  if (!(tau >= 0.0)) {
    throw std::invalid_argument("tau must be non-negative");
  }
}

DerivedIndices derive_indices(const Parameters& params) {
  if (!(params.s > -1.0)) {
    throw std::invalid_argument("s must exceed -1 for gamma to be finite");
  }
  if (!(params.r > 0.0)) {
    throw std::invalid_argument("r must be positive for pi to be finite");
  }
  DerivedIndices idx;
  idx.gamma = params.q / (params.s + 1.0);
  idx.omega = params.p - params.r * idx.gamma;
  idx.pi = (params.p - 1.0) / params.r;
  return idx;
}

bool turing_condition(const DerivedIndices& idx) { return idx.omega < 1.0; }

bool global_existence_condition(const Parameters& params, int dim) {
  if (dim < 1) {
    throw std::invalid_argument("dimension must be at least 1");
  }
  const DerivedIndices idx = derive_indices(params);
  const double bound =
      std::min({1.0, 2.0 / dim, 0.5 * (1.0 - 1.0 / params.r)});
  return idx.pi < bound && idx.gamma > 0.0 && idx.gamma < 1.0;
}

bool diffusion_blowup_condition(const Parameters& params, int dim) {
  if (dim < 3) {
    return false;
  }
  const DerivedIndices idx = derive_indices(params);
  const double N = dim;
  return params.r >= 1.0 && params.r <= params.p && params.p > N / (N - 2.0) &&
         2.0 / N < idx.pi && idx.pi < idx.gamma && idx.gamma > 1.0;
}

}  // namespace gmshadow
