#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace gmshadow {

/// Uniform node grid on the unit square, node (i, j) at (i hx, j hy) stored
/// at index j * nx + i.
struct RectGrid {
  int nx = 128;
  int ny = 128;

  double hx() const { return 1.0 / (nx - 1); }
  double hy() const { return 1.0 / (ny - 1); }
  std::size_t size() const { return static_cast<std::size_t>(nx) * ny; }
  void validate() const;
};

/// Uniform radial grid on [0, 1] for radially symmetric functions on the unit
/// N-ball. Node 0 sits at R = 0, node M-1 at R = 1.
struct RadialGrid {
  int dim = 3;
  int M = 512;

  double h() const { return 1.0 / (M - 1); }
  double radius(int i) const { return i * h(); }
  std::size_t size() const { return static_cast<std::size_t>(M); }
  void validate() const;
};

using Grid = std::variant<RectGrid, RadialGrid>;

std::size_t node_count(const Grid& grid);
bool is_radial(const Grid& grid);

/// Nodal values of a concentration on a grid.
struct Field {
  Grid grid;
  std::vector<double> values;

  Field() = default;
  Field(Grid g, std::vector<double> v);
  Field(Grid g, double constant);
};

/// Precomputed Neumann Laplacian and normalized quadrature weights.
///
/// Rectangle: 5-point stencil with mirror ghost nodes, tensor trapezoid
/// weights. Radial: conservative finite-volume form of u_RR + (N-1)/R u_R on
/// the dual cells [R_{i-1/2}, R_{i+1/2}] clipped to [0, 1], with zero flux at
/// R = 1 and weights equal to the normalized cell volumes. At R = 0 the
/// scheme reduces to 2N (u_1 - u_0) / h^2, the N u_RR limit.
///
/// In both cases the weights sum to 1 and the weighted sum of the Laplacian
/// of any field vanishes up to rounding.
class Discretization {
 public:
  explicit Discretization(const Grid& grid);

  const Grid& grid() const { return grid_; }
  std::size_t size() const { return weights_.size(); }
  const std::vector<double>& weights() const { return weights_; }

  /// out = Laplacian(in). in and out must not alias.
  void apply_laplacian(const double* in, double* out) const;
  /// Largest diagonal magnitude of the Laplacian matrix; bounds the explicit
  /// Euler step as dt <= 1 / (D * max_diagonal).
  double max_diagonal() const { return max_diag_; }

 private:
  Grid grid_;
  std::vector<double> weights_;
  std::vector<double> lower_;  // radial coupling to node i-1
  std::vector<double> upper_;  // radial coupling to node i+1
  double max_diag_ = 0.0;
};

Field laplacian(const Field& f);
/// Same as laplacian() restricted to rectangle grids.
Field laplacian_rect(const Field& f);
/// Same as laplacian() restricted to radial grids.
Field laplacian_radial(const Field& f);

/// Normalized quadrature weights of the grid (sum to 1).
std::vector<double> quadrature_weights(const Grid& grid);

/// Domain average of f^power. Throws std::domain_error for a negative power
/// when any value is not positive.
double mean(const Field& f, double power = 1.0);
double weighted_mean_pow(const std::vector<double>& weights, const std::vector<double>& values,
                         double power);

double sup_norm(const Field& f);
double min_value(const Field& f);

/// Snapshot CSV. Rectangle: a header line "nx,ny", the counts, then ny rows of
/// nx values. Radial: header "R,value" and one row per node.
void write_snapshot_csv(const Field& f, std::ostream& os);
void write_snapshot_csv(const Field& f, const std::string& path);

/// %.17g formatting used by every text artifact.
std::string format_number(double x);

}  // namespace gmshadow
