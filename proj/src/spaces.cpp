#include "einlab/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <sstream>

namespace einlab::spaces {

namespace {

std::string fmt_double(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int triangle_index(int n, int i, int j) {  // 0-based, i <= j
  return i * n - i * (i - 1) / 2 + (j - i);
}

CurvaturePoint space_form_point(int n, double c) {
  SymTensor2 g = SymTensor2::identity(n);
  RiemannTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          const double v = c * ((i == k && j == l ? 1.0 : 0.0) - (i == l && j == k ? 1.0 : 0.0));
          r.set(i, j, k, l, v);
        }
  SymTensor2 ric = SymTensor2::identity(n) * (c * (n - 1));
  return CurvaturePoint::checked(g, r, ric, c * n * (n - 1));
}

CurvaturePoint flat_line_point() {
  return CurvaturePoint::checked(SymTensor2::identity(1), RiemannTensor(1), SymTensor2(1), 0.0);
}

CurvaturePoint product_point(const CurvaturePoint& a, const CurvaturePoint& b) {
  const int na = a.dim(), nb = b.dim(), n = na + nb;
  SymTensor2 g(n), ric(n);
  RiemannTensor r(n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) {
      g.set(i, j, a.g()(i, j));
      ric.set(i, j, a.ricci()(i, j));
    }
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) {
      g.set(na + i, na + j, b.g()(i, j));
      ric.set(na + i, na + j, b.ricci()(i, j));
    }
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j)
      for (int k = 0; k < na; ++k)
        for (int l = 0; l < na; ++l) r.set(i, j, k, l, a.riemann()(i, j, k, l));
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j)
      for (int k = 0; k < nb; ++k)
        for (int l = 0; l < nb; ++l)
          r.set(na + i, na + j, na + k, na + l, b.riemann()(i, j, k, l));
  return CurvaturePoint::checked(g, r, ric, a.scal() + b.scal());
}

}  // namespace

SpaceSpec SpaceSpec::space_form(int n, double c) {
  if (n < 2) throw error("space form needs dimension n >= 2, got " + std::to_string(n));
  SpaceSpec s;
  s.kind_ = Kind::SpaceForm;
  s.n_ = n;
  s.c_ = c;
  return s;
}

SpaceSpec SpaceSpec::product(SpaceSpec a, SpaceSpec b) {
  if (!a.homogeneous() || !b.homogeneous())
    throw error("product factors must be catalog spaces, not charts");
  SpaceSpec s;
  s.kind_ = Kind::Product;
  s.n_ = a.n_ + b.n_;
  s.left_ = std::make_shared<const SpaceSpec>(std::move(a));
  s.right_ = std::make_shared<const SpaceSpec>(std::move(b));
  return s;
}

SpaceSpec SpaceSpec::sphere_hyperbolic(int n, int d) {
  if (d < 1 || d > n - 3)
    throw error("sphere-hyperbolic needs 1 <= d <= n-3 (both factors at least surfaces), got n = " +
                std::to_string(n) + ", d = " + std::to_string(d));
  SpaceSpec s;
  s.kind_ = Kind::SphereHyperbolic;
  s.n_ = n;
  s.d_ = d;
  return s;
}

SpaceSpec SpaceSpec::cylinder(int n) {
  if (n < 3) throw error("cylinder needs dimension n >= 3, got " + std::to_string(n));
  SpaceSpec s;
  s.kind_ = Kind::Cylinder;
  s.n_ = n;
  return s;
}

SpaceSpec SpaceSpec::chart(ChartSpec cs) {
  if (cs.n < 2) throw error("chart dimension must be >= 2, got " + std::to_string(cs.n));
  const int want = cs.n * (cs.n + 1) / 2;
  if (static_cast<int>(cs.components.size()) != want)
    throw error("chart needs exactly n(n+1)/2 = " + std::to_string(want) +
                " metric components, got " + std::to_string(cs.components.size()));
  for (const auto& e : cs.components)
    if (e.n_vars() != cs.n) throw error("chart component parsed against wrong coordinate count");
  for (std::size_t i = 0; i < cs.points.size(); ++i) {
    if (static_cast<int>(cs.points[i].size()) != cs.n)
      throw error("sample point " + std::to_string(i + 1) + " has " +
                  std::to_string(cs.points[i].size()) + " coordinates, chart has n = " +
                  std::to_string(cs.n));
    chart_metric_at(cs, cs.points[i]);  // positive definiteness check
  }
  SpaceSpec s;
  s.kind_ = Kind::Chart;
  s.n_ = cs.n;
  s.chart_ = std::make_shared<const ChartSpec>(std::move(cs));
  return s;
}

double SpaceSpec::curv() const {
  if (kind_ != Kind::SpaceForm) throw error("curv() applies to space forms only");
  return c_;
}

int SpaceSpec::d_param() const {
  if (kind_ != Kind::SphereHyperbolic) throw error("d_param() applies to sphere-hyperbolic only");
  return d_;
}

const SpaceSpec& SpaceSpec::left() const {
  if (kind_ != Kind::Product) throw error("left() applies to products only");
  return *left_;
}

const SpaceSpec& SpaceSpec::right() const {
  if (kind_ != Kind::Product) throw error("right() applies to products only");
  return *right_;
}

const ChartSpec& SpaceSpec::chart_spec() const {
  if (kind_ != Kind::Chart) throw error("chart_spec() applies to charts only");
  return *chart_;
}

std::string SpaceSpec::describe() const {
  switch (kind_) {
    case Kind::SpaceForm:
      return "space-form(" + std::to_string(n_) + ", " + fmt_double(c_) + ")";
    case Kind::Product:
      return "product(" + left_->describe() + ", " + right_->describe() + ")";
    case Kind::SphereHyperbolic:
      return "sphere-hyperbolic(" + std::to_string(n_) + ", " + std::to_string(d_) + ")";
    case Kind::Cylinder:
      return "cylinder(" + std::to_string(n_) + ")";
    case Kind::Chart:
      return "chart(n=" + std::to_string(n_) + ", " + std::to_string(chart_->points.size()) +
             " points)";
  }
  return "?";
}

CurvaturePoint curvature_of(const SpaceSpec& spec) {
  switch (spec.kind()) {
    case SpaceSpec::Kind::SpaceForm:
      return space_form_point(spec.dim(), spec.curv());
    case SpaceSpec::Kind::Product:
      return product_point(curvature_of(spec.left()), curvature_of(spec.right()));
    case SpaceSpec::Kind::SphereHyperbolic: {
      const int d = spec.d_param();
      return product_point(space_form_point(spec.dim() - d - 1, 1.0),
                           space_form_point(d + 1, -1.0));
    }
    case SpaceSpec::Kind::Cylinder:
      return product_point(space_form_point(spec.dim() - 1, 1.0), flat_line_point());
    case SpaceSpec::Kind::Chart:
      throw error("chart spaces need a sample point; use the point overload");
  }
  throw error("unreachable space kind");
}

CurvaturePoint curvature_of(const SpaceSpec& spec, std::span<const double> point) {
  if (spec.homogeneous()) return curvature_of(spec);
  return curvature_fd(spec.chart_spec(), point);
}

SymTensor2 chart_metric_at(const ChartSpec& chart, std::span<const double> point) {
  if (static_cast<int>(point.size()) != chart.n)
    throw error("point has " + std::to_string(point.size()) + " coordinates, chart has n = " +
                std::to_string(chart.n));
  const int n = chart.n;
  SymTensor2 g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      g.set(i, j, chart.components[triangle_index(n, i, j)].eval(point));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.mat(), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo <= 1e-12 * std::max(1.0, es.eigenvalues().cwiseAbs().maxCoeff())) {
    std::string at;
    for (int i = 0; i < n; ++i) at += (i ? ", " : "") + fmt_double(point[i]);
    throw error("chart metric not positive definite at point (" + at + ")");
  }
  return g;
}

namespace {

Eigen::MatrixXd metric_mat(const ChartSpec& c, const std::vector<double>& x) {
  return chart_metric_at(c, x).mat();
}

// Gamma^k_{ij} at x, central differences of the metric at step h.
std::vector<Eigen::MatrixXd> christoffel(const ChartSpec& c, const std::vector<double>& x,
                                         double h) {
  const int n = c.n;
  const Eigen::MatrixXd ginv = metric_mat(c, x).inverse();
  std::vector<Eigen::MatrixXd> dg(n);
  std::vector<double> y = x;
  for (int i = 0; i < n; ++i) {
    y[i] = x[i] + h;
    Eigen::MatrixXd gp = metric_mat(c, y);
    y[i] = x[i] - h;
    Eigen::MatrixXd gm = metric_mat(c, y);
    y[i] = x[i];
    dg[i] = (gp - gm) / (2.0 * h);
  }
  std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd::Zero(n, n));
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double acc = 0.0;
        for (int l = 0; l < n; ++l) acc += ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma[k](i, j) = 0.5 * acc;
      }
  return gamma;
}

RiemannTensor riemann_once(const ChartSpec& c, const std::vector<double>& x, double h) {
  const int n = c.n;
  const auto gam = christoffel(c, x, h);
  std::vector<std::vector<Eigen::MatrixXd>> dgam(n);
  std::vector<double> y = x;
  for (int k = 0; k < n; ++k) {
    y[k] = x[k] + h;
    const auto gp = christoffel(c, y, h);
    y[k] = x[k] - h;
    const auto gm = christoffel(c, y, h);
    y[k] = x[k];
    dgam[k].reserve(n);
    for (int m = 0; m < n; ++m) dgam[k].push_back((gp[m] - gm[m]) / (2.0 * h));
  }
  const Eigen::MatrixXd g0 = metric_mat(c, x);
  RiemannTensor r(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          double v = 0.0;
          for (int m = 0; m < n; ++m) {
            double t = dgam[k][m](l, j) - dgam[l][m](k, j);
            for (int a = 0; a < n; ++a)
              t += gam[m](k, a) * gam[a](l, j) - gam[m](l, a) * gam[a](k, j);
            v += g0(i, m) * t;
          }
          r.set(i, j, k, l, v);
        }
  return r;
}

}  // namespace

CurvaturePoint curvature_fd(const ChartSpec& chart, std::span<const double> point, double step) {
  if (step <= 0.0) throw error("finite-difference step must be positive");
  std::vector<double> x(point.begin(), point.end());
  if (static_cast<int>(x.size()) != chart.n)
    throw error("point has " + std::to_string(x.size()) + " coordinates, chart has n = " +
                std::to_string(chart.n));
  const RiemannTensor rh = riemann_once(chart, x, step);
  const RiemannTensor rh2 = riemann_once(chart, x, step / 2.0);
  const RiemannTensor r = (rh2 * 4.0 - rh) * (1.0 / 3.0);
  const SymTensor2 g = chart_metric_at(chart, point);
  const SymTensor2 ric = ricci_from_riemann(g, r);
  return CurvaturePoint::checked(g, r, ric, scalar_from_ricci(g, ric), 1e-6);
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

[[noreturn]] void chart_fail(const std::string& file, int line, const std::string& msg) {
  throw error(file + ":" + std::to_string(line) + ": " + msg);
}

bool parse_int(const std::string& s, int& out) {
  const std::string t = trim(s);
  auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

bool parse_real(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

// "g[i][j]" -> (i, j), 1-based as written.
bool parse_entry_key(const std::string& key, int& i, int& j) {
  if (key.size() < 7 || key[0] != 'g' || key[1] != '[') return false;
  const std::size_t c1 = key.find(']', 2);
  if (c1 == std::string::npos || c1 + 1 >= key.size() || key[c1 + 1] != '[') return false;
  const std::size_t c2 = key.find(']', c1 + 2);
  if (c2 == std::string::npos || c2 + 1 != key.size()) return false;
  return parse_int(key.substr(2, c1 - 2), i) && parse_int(key.substr(c1 + 2, c2 - c1 - 2), j);
}

std::vector<std::vector<double>> parse_points(const std::string& file, int line,
                                              const std::string& value, int n) {
  std::vector<std::vector<double>> pts;
  std::size_t pos = 0;
  const std::string v = trim(value);
  if (v.empty()) chart_fail(file, line, "points list is empty");
  while (pos < v.size()) {
    while (pos < v.size() && (std::isspace(static_cast<unsigned char>(v[pos])) || v[pos] == ';'))
      ++pos;
    if (pos >= v.size()) break;
    if (v[pos] != '(') chart_fail(file, line, "expected '(' to start a coordinate tuple");
    const std::size_t close = v.find(')', pos);
    if (close == std::string::npos) chart_fail(file, line, "unclosed coordinate tuple");
    std::string body = v.substr(pos + 1, close - pos - 1);
    std::vector<double> pt;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = body.find(',', start);
      const std::string item = body.substr(start, comma == std::string::npos ? std::string::npos
                                                                             : comma - start);
      double d = 0.0;
      if (!parse_real(item, d)) chart_fail(file, line, "bad coordinate '" + trim(item) + "'");
      pt.push_back(d);
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (static_cast<int>(pt.size()) != n)
      chart_fail(file, line, "coordinate tuple has " + std::to_string(pt.size()) +
                                 " entries, chart has n = " + std::to_string(n));
    pts.push_back(std::move(pt));
    pos = close + 1;
  }
  if (pts.empty()) chart_fail(file, line, "points list is empty");
  return pts;
}

}  // namespace

ChartSpec load_chart(const std::string& text, const std::string& filename) {
  std::istringstream in(text);
  std::string raw;
  int ln = 0;
  int n = -1;
  std::vector<std::optional<MetricExpression>> slots;
  std::vector<std::vector<double>> points;

  while (std::getline(in, raw)) {
    ++ln;
    std::string line = raw;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) chart_fail(filename, ln, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "n") {
      if (n >= 0) chart_fail(filename, ln, "duplicate 'n'");
      if (!parse_int(value, n) || n < 2)
        chart_fail(filename, ln, "n must be an integer >= 2, got '" + value + "'");
      slots.assign(static_cast<std::size_t>(n) * (n + 1) / 2, std::nullopt);
      continue;
    }
    int i = 0, j = 0;
    if (parse_entry_key(key, i, j)) {
      if (n < 0) chart_fail(filename, ln, "'n' must be set before metric entries");
      if (i < 1 || j < i || j > n)
        chart_fail(filename, ln, "metric indices must satisfy 1 <= i <= j <= n (upper triangle)");
      auto& slot = slots[triangle_index(n, i - 1, j - 1)];
      if (slot) chart_fail(filename, ln, "duplicate entry g[" + std::to_string(i) + "][" +
                                             std::to_string(j) + "]");
      try {
        slot = MetricExpression::parse(value, n, ln);
      } catch (const ParseError& pe) {
        throw error(filename + ":" + std::to_string(ln) + ": in metric entry: " + pe.what());
      }
      continue;
    }
    if (key == "points") {
      if (n < 0) chart_fail(filename, ln, "'n' must be set before points");
      auto pts = parse_points(filename, ln, value, n);
      points.insert(points.end(), pts.begin(), pts.end());
      continue;
    }
    chart_fail(filename, ln, "unknown key '" + key + "'");
  }

  if (n < 0) chart_fail(filename, ln, "missing 'n'");
  std::string missing;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      if (!slots[triangle_index(n, i, j)]) {
        if (!missing.empty()) missing += ", ";
        missing += "g[" + std::to_string(i + 1) + "][" + std::to_string(j + 1) + "]";
      }
  if (!missing.empty()) chart_fail(filename, ln, "missing metric entries: " + missing);

  ChartSpec cs;
  cs.n = n;
  cs.components.reserve(slots.size());
  for (auto& s : slots) cs.components.push_back(std::move(*s));
  cs.points = std::move(points);
  return cs;
}

ChartSpec load_chart_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw error("cannot open chart file: " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return load_chart(buf.str(), path);
}

}  // namespace einlab::spaces
