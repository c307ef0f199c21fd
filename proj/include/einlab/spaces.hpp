#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "einlab/common.hpp"
#include "einlab/expression.hpp"
#include "einlab/tensor_core.hpp"

namespace einlab::spaces {

/// A coordinate-chart metric: expressions for the upper triangle of g in
/// row-major order ((1,1), (1,2), ..., (1,n), (2,2), ...) plus the sample
/// points curvature gets evaluated at.
struct ChartSpec {
  int n = 0;
  std::vector<MetricExpression> components;  // n(n+1)/2 entries
  std::vector<std::vector<double>> points;
};

/// A model geometry. Homogeneous kinds carry their curvature in closed form;
/// chart kinds go through finite differences.
class SpaceSpec {
 public:
  enum class Kind { SpaceForm, Product, SphereHyperbolic, Cylinder, Chart };

  /// Constant sectional curvature c on n >= 2 dimensions.
  static SpaceSpec space_form(int n, double c);
  /// Riemannian product of two homogeneous specs.
  static SpaceSpec product(SpaceSpec a, SpaceSpec b);
  /// S^{n-d-1}(+1) x H^{d+1}(-1); needs 1 <= d <= n-3.
  static SpaceSpec sphere_hyperbolic(int n, int d);
  /// S^{n-1}(+1) x R.
  static SpaceSpec cylinder(int n);
  static SpaceSpec chart(ChartSpec cs);

  Kind kind() const { return kind_; }
  int dim() const { return n_; }
  bool homogeneous() const { return kind_ != Kind::Chart; }

  double curv() const;                 // SpaceForm
  int d_param() const;                 // SphereHyperbolic
  const SpaceSpec& left() const;       // Product
  const SpaceSpec& right() const;      // Product
  const ChartSpec& chart_spec() const; // Chart

  /// Compact human-readable form, e.g. "sphere-hyperbolic(9, 2)".
  std::string describe() const;

 private:
  SpaceSpec() = default;

  Kind kind_ = Kind::SpaceForm;
  int n_ = 0;
  double c_ = 0.0;
  int d_ = 0;
  std::shared_ptr<const SpaceSpec> left_, right_;
  std::shared_ptr<const ChartSpec> chart_;
};

/// Closed-form curvature of a homogeneous spec at its representative point
/// (orthonormal frame). Chart specs are rejected; use the point overload.
CurvaturePoint curvature_of(const SpaceSpec& spec);

/// Curvature at a point: closed form for homogeneous kinds (point ignored),
/// finite differences for charts.
CurvaturePoint curvature_of(const SpaceSpec& spec, std::span<const double> point);

/// Evaluates the chart metric at a point (with a positive-definiteness check).
SymTensor2 chart_metric_at(const ChartSpec& chart, std::span<const double> point);

/// Curvature of a chart metric by central differences of the Christoffel
/// symbols at step h and h/2 with one Richardson pass. The result is
/// validated against the curvature symmetries at 1e-6 relative.
CurvaturePoint curvature_fd(const ChartSpec& chart, std::span<const double> point,
                            double step = 1e-3);

/// Parses the chart file format:
///   n = 3
///   g[1][1] = 4/(1+x1^2+x2^2+x3^2)^2     # one entry per i <= j
///   points = (0.1, -0.2, 0.3); (0, 0, 0)
/// Blank lines and # comments are skipped. Errors are prefixed
/// "<filename>:<line>:".
ChartSpec load_chart(const std::string& text, const std::string& filename = "<chart>");
ChartSpec load_chart_file(const std::string& path);

}  // namespace einlab::spaces
