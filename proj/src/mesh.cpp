#include "gmshadow/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <stdexcept>

#include "gmshadow/power.hpp"

namespace gmshadow {

void RectGrid::validate() const {
  if (nx < 3 || ny < 3) {
    throw std::invalid_argument("rectangle grid needs at least 3 nodes per axis");
  }
}

void RadialGrid::validate() const {
  if (M < 3) {
    throw std::invalid_argument("radial grid needs at least 3 nodes");
  }
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("radial grid dimension must be 1, 2 or 3");
  }
}

std::size_t node_count(const Grid& grid) {
  return std::visit([](const auto& g) { return g.size(); }, grid);
}

bool is_radial(const Grid& grid) { return std::holds_alternative<RadialGrid>(grid); }

Field::Field(Grid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v)) {
  if (values.size() != node_count(grid)) {
    throw std::invalid_argument("field size does not match the grid");
  }
}

Field::Field(Grid g, double constant) : grid(std::move(g)) {
  values.assign(node_count(grid), constant);
}

Discretization::Discretization(const Grid& grid) : grid_(grid) {
  if (const auto* rect = std::get_if<RectGrid>(&grid)) {
    rect->validate();
    const int nx = rect->nx;
    const int ny = rect->ny;
    weights_.resize(rect->size());
    const double wx = 1.0 / (nx - 1);
    const double wy = 1.0 / (ny - 1);
    for (int j = 0; j < ny; ++j) {
      const double fy = (j == 0 || j == ny - 1) ? 0.5 * wy : wy;
      for (int i = 0; i < nx; ++i) {
        const double fx = (i == 0 || i == nx - 1) ? 0.5 * wx : wx;
        weights_[static_cast<std::size_t>(j) * nx + i] = fx * fy;
      }
    }
    max_diag_ = 2.0 / (rect->hx() * rect->hx()) + 2.0 / (rect->hy() * rect->hy());
    return;
  }

  const auto& rad = std::get<RadialGrid>(grid);
  rad.validate();
  const int M = rad.M;
  const int N = rad.dim;
  const double h = rad.h();
  weights_.resize(M);
  lower_.assign(M, 0.0);
  upper_.assign(M, 0.0);
  for (int i = 0; i < M; ++i) {
    const double R = rad.radius(i);
    const double rm = std::max(0.0, R - 0.5 * h);
    const double rp = std::min(1.0, R + 0.5 * h);
    const double w = std::pow(rp, N) - std::pow(rm, N);
    const double vol = w / N;
    weights_[i] = w;
    if (i + 1 < M) {
      upper_[i] = std::pow(rp, N - 1) / (h * vol);
    }
    if (i > 0) {
      lower_[i] = std::pow(rm, N - 1) / (h * vol);
    }
    max_diag_ = std::max(max_diag_, upper_[i] + lower_[i]);
  }
}

void Discretization::apply_laplacian(const double* in, double* out) const {
  if (const auto* rect = std::get_if<RectGrid>(&grid_)) {
    const int nx = rect->nx;
    const int ny = rect->ny;
    const double cx = 1.0 / (rect->hx() * rect->hx());
    const double cy = 1.0 / (rect->hy() * rect->hy());
    for (int j = 0; j < ny; ++j) {
      const double* row = in + static_cast<std::size_t>(j) * nx;
      const double* below = in + static_cast<std::size_t>(j == 0 ? 1 : j - 1) * nx;
      const double* above = in + static_cast<std::size_t>(j == ny - 1 ? ny - 2 : j + 1) * nx;
      double* dst = out + static_cast<std::size_t>(j) * nx;
      dst[0] = cx * (2.0 * row[1] - 2.0 * row[0]) + cy * (below[0] + above[0] - 2.0 * row[0]);
      for (int i = 1; i < nx - 1; ++i) {
        dst[i] = cx * (row[i - 1] + row[i + 1] - 2.0 * row[i]) +
                 cy * (below[i] + above[i] - 2.0 * row[i]);
      }
      const int e = nx - 1;
      dst[e] = cx * (2.0 * row[e - 1] - 2.0 * row[e]) + cy * (below[e] + above[e] - 2.0 * row[e]);
    }
    return;
  }

  const std::size_t M = weights_.size();
  out[0] = upper_[0] * (in[1] - in[0]);
  for (std::size_t i = 1; i + 1 < M; ++i) {
    out[i] = upper_[i] * (in[i + 1] - in[i]) + lower_[i] * (in[i - 1] - in[i]);
  }
  out[M - 1] = lower_[M - 1] * (in[M - 2] - in[M - 1]);
}

Field laplacian(const Field& f) {
  const Discretization disc(f.grid);
  Field out(f.grid, 0.0);
  disc.apply_laplacian(f.values.data(), out.values.data());
  return out;
}

Field laplacian_rect(const Field& f) {
  if (is_radial(f.grid)) {
    throw std::invalid_argument("laplacian_rect called on a radial field");
  }
  return laplacian(f);
}

Field laplacian_radial(const Field& f) {
  if (!is_radial(f.grid)) {
    throw std::invalid_argument("laplacian_radial called on a rectangle field");
  }
  return laplacian(f);
}

std::vector<double> quadrature_weights(const Grid& grid) {
  return Discretization(grid).weights();
}

double weighted_mean_pow(const std::vector<double>& weights, const std::vector<double>& values,
                         double power) {
  if (weights.size() != values.size()) {
    throw std::invalid_argument("weights and values differ in length");
  }
  if (power < 0.0) {
    for (double v : values) {
      if (!(v > 0.0)) {
        throw std::domain_error("negative moment of a field with a non-positive value");
      }
    }
  }
  const PowerFn pw(power);
  double acc = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    acc += weights[i] * pw(values[i]);
  }
  return acc;
}

double mean(const Field& f, double power) {
  return weighted_mean_pow(quadrature_weights(f.grid), f.values, power);
}

double sup_norm(const Field& f) {
  if (f.values.empty()) {
    throw std::invalid_argument("empty field");
  }
  return *std::max_element(f.values.begin(), f.values.end());
}

double min_value(const Field& f) {
  if (f.values.empty()) {
    throw std::invalid_argument("empty field");
  }
  return *std::min_element(f.values.begin(), f.values.end());
}

std::string format_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

void write_snapshot_csv(const Field& f, std::ostream& os) {
  if (const auto* rect = std::get_if<RectGrid>(&f.grid)) {
    os << "nx,ny\n" << rect->nx << ',' << rect->ny << '\n';
    for (int j = 0; j < rect->ny; ++j) {
      for (int i = 0; i < rect->nx; ++i) {
        if (i) os << ',';
        os << format_number(f.values[static_cast<std::size_t>(j) * rect->nx + i]);
      }
      os << '\n';
    }
    return;
  }
  const auto& rad = std::get<RadialGrid>(f.grid);
  os << "R,value\n";
  for (int i = 0; i < rad.M; ++i) {
    os << format_number(rad.radius(i)) << ',' << format_number(f.values[i]) << '\n';
  }
}

void write_snapshot_csv(const Field& f, const std::string& path) {
  std::ofstream os(path);
  if (!os) {
    throw std::runtime_error("cannot open snapshot file " + path);
  }
  write_snapshot_csv(f, os);
}

}  // namespace gmshadow
