#include "einlab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include "CLI11.hpp"

#include "einlab/common.hpp"
#include "einlab/conformal4d.hpp"
#include "einlab/constants.hpp"
#include "einlab/double_forms.hpp"
#include "einlab/report.hpp"
#include "einlab/spaces.hpp"
#include "einlab/tensor_core.hpp"

namespace einlab::cli {

namespace {

using report::json;

// ---- compact space expressions: space-form(3, 1), product(a, b), ... ----

class SpaceExprParser {
 public:
  explicit SpaceExprParser(const std::string& s) : s_(s) {}

  spaces::SpaceSpec parse() {
    spaces::SpaceSpec spec = parse_spec();
    skip_ws();
    if (pos_ != s_.size()) fail("trailing text");
    return spec;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw error("bad space expression at position " + std::to_string(pos_ + 1) + ": " + msg +
                " (in '" + s_ + "')");
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  std::string ident() {
    skip_ws();
    const std::size_t b = pos_;
    while (pos_ < s_.size() &&
           (std::isalpha(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '-'))
      ++pos_;
    if (b == pos_) fail("expected a space kind");
    return s_.substr(b, pos_ - b);
  }

  void expect(char ch) {
    skip_ws();
    if (pos_ >= s_.size() || s_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }

  double number() {
    skip_ws();
    const char* start = s_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(start, &end);
    if (end == start) fail("expected a number");
    pos_ += static_cast<std::size_t>(end - start);
    return v;
  }

  int integer() {
    const double v = number();
    const double r = std::round(v);
    if (std::abs(v - r) > 0.0) fail("expected an integer");
    return static_cast<int>(r);
  }

  spaces::SpaceSpec parse_spec() {
    const std::string kind = ident();
    expect('(');
    if (kind == "product") {
      spaces::SpaceSpec a = parse_spec();
      expect(',');
      spaces::SpaceSpec b = parse_spec();
      expect(')');
      return spaces::SpaceSpec::product(std::move(a), std::move(b));
    }
    if (kind == "space-form") {
      const int n = integer();
      expect(',');
      const double c = number();
      expect(')');
      return spaces::SpaceSpec::space_form(n, c);
    }
    if (kind == "sphere" || kind == "hyperbolic" || kind == "flat") {
      const int n = integer();
      expect(')');
      const double c = kind == "sphere" ? 1.0 : (kind == "hyperbolic" ? -1.0 : 0.0);
      return spaces::SpaceSpec::space_form(n, c);
    }
    if (kind == "sphere-hyperbolic") {
      const int n = integer();
      expect(',');
      const int d = integer();
      expect(')');
      return spaces::SpaceSpec::sphere_hyperbolic(n, d);
    }
    if (kind == "cylinder") {
      const int n = integer();
      expect(')');
      return spaces::SpaceSpec::cylinder(n);
    }
    fail("unknown space kind '" + kind + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

spaces::SpaceSpec parse_compact(const std::string& s) { return SpaceExprParser(s).parse(); }

struct SpaceOptions {
  std::string space;
  std::string chart_path;
  std::optional<int> n;
  std::optional<double> c;
  std::optional<int> d;
};

void add_space_flags(CLI::App* cmd, SpaceOptions& o) {
  cmd->add_option("--space", o.space,
                  "catalog space: a kind (with --n/--c/--d) or a compact expression like "
                  "product(space-form(3,1),space-form(2,-1))");
  cmd->add_option("--chart", o.chart_path, "chart metric file (see the documented format)");
  cmd->add_option("--n", o.n, "dimension for --space kinds");
  cmd->add_option("--c", o.c, "sectional curvature for --space space-form");
  cmd->add_option("--d", o.d, "hyperbolic parameter for --space sphere-hyperbolic");
}

spaces::SpaceSpec resolve_space(const SpaceOptions& o) {
  if (!o.chart_path.empty() && !o.space.empty())
    throw error("give either --space or --chart, not both");
  if (!o.chart_path.empty()) return spaces::SpaceSpec::chart(spaces::load_chart_file(o.chart_path));
  if (o.space.empty()) throw error("a space is required: --space <kind> or --chart <file>");
  if (o.space.find('(') != std::string::npos) return parse_compact(o.space);

  const auto need_n = [&]() {
    if (!o.n) throw error("--space " + o.space + " needs --n");
    return *o.n;
  };
  if (o.space == "space-form") {
    if (!o.c) throw error("--space space-form needs --c (or use sphere/hyperbolic/flat)");
    return spaces::SpaceSpec::space_form(need_n(), *o.c);
  }
  if (o.space == "sphere") return spaces::SpaceSpec::space_form(need_n(), 1.0);
  if (o.space == "hyperbolic") return spaces::SpaceSpec::space_form(need_n(), -1.0);
  if (o.space == "flat") return spaces::SpaceSpec::space_form(need_n(), 0.0);
  if (o.space == "sphere-hyperbolic") {
    if (!o.d) throw error("--space sphere-hyperbolic needs --d");
    return spaces::SpaceSpec::sphere_hyperbolic(need_n(), *o.d);
  }
  if (o.space == "cylinder") return spaces::SpaceSpec::cylinder(need_n());
  throw error("unknown space kind '" + o.space +
              "'; known: space-form, sphere, hyperbolic, flat, sphere-hyperbolic, cylinder, "
              "product(...)");
}

json spectrum_json(const Spectrum& s) {
  json a = json::array();
  for (std::size_t i = 0; i < s.size(); ++i) a.push_back(report::num(s[i]));
  return a;
}

std::string spectrum_text(const Spectrum& s) {
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += " ";
    out += report::fmt(s[i]);
  }
  return out;
}

json rational_json(const constants::Rational& r) {
  json j;
  j["value"] = report::num(r.value());
  j["exact"] = r.str();
  return j;
}

struct Rendered {
  json config;
  json result;
  std::string table;
  int status = 0;
};

// ---- spaces-list ----

Rendered do_spaces_list() {
  Rendered r;
  r.config = json::object();
  json catalog = json::array();
  const auto entry = [&](const char* form, const char* constraints, const char* notes) {
    json e;
    e["form"] = form;
    e["constraints"] = constraints;
    e["notes"] = notes;
    catalog.push_back(std::move(e));
  };
  entry("space-form(n, c)", "n >= 2", "constant sectional curvature c; sphere(n) / "
        "hyperbolic(n) / flat(n) abbreviate c = 1 / -1 / 0");
  entry("product(a, b)", "factors are catalog spaces", "block-diagonal curvature assembly");
  entry("sphere-hyperbolic(n, d)", "1 <= d <= n-3",
        "S^{n-d-1}(+1) x H^{d+1}(-1); class constants are exact for d < (n-2)/2");
  entry("cylinder(n)", "n >= 3", "S^{n-1}(+1) x R");
  entry("chart file (--chart)", "n >= 2; n(n+1)/2 metric entries; sample points",
        "finite-difference curvature at the listed points");
  r.result["catalog"] = catalog;

  std::ostringstream t;
  t << "catalog spaces\n";
  for (const auto& e : r.result["catalog"]) {
    t << "  " << e["form"].get<std::string>() << "\n";
    t << "      constraints: " << e["constraints"].get<std::string>() << "\n";
    t << "      " << e["notes"].get<std::string>() << "\n";
  }
  r.table = t.str();
  return r;
}

// ---- compute ----

Rendered do_compute(const SpaceOptions& so, std::optional<double> laplacian_scal) {
  const spaces::SpaceSpec spec = resolve_space(so);
  const constants::EinProfile profile = constants::ein_profile(spec);

  Rendered r;
  r.config["space"] = spec.describe();
  if (laplacian_scal) r.config["laplacian_scal"] = report::num(*laplacian_scal);

  r.result["space"] = spec.describe();
  r.result["profile"] = report::profile_json(profile);

  json analysis = json::array();
  for (const auto& e : profile.per_point) {
    const CurvaturePoint pt =
        spec.homogeneous() ? spaces::curvature_of(spec) : spaces::curvature_of(spec, e.coords);
    json a;
    a["point"] = e.point;
    a["scal"] = report::num(pt.scal());
    a["ricci_spectrum"] = spectrum_json(spectrum_rel(pt.g(), pt.ricci()));
    if (pt.dim() >= 3) {
      const SymTensor2 sch = schouten(pt);
      a["schouten_spectrum"] = spectrum_json(spectrum_rel(pt.g(), sch));
      const auto [s1, s2] = sigma_invariants(pt.g(), sch);
      a["sigma1"] = report::num(s1);
      a["sigma2"] = report::num(s2);
    }
    if (pt.dim() == 4) {
      if (spec.homogeneous())
        a["q_curvature"] = report::num(q_curvature(pt, 0.0));
      else if (laplacian_scal)
        a["q_curvature"] = report::num(q_curvature(pt, *laplacian_scal));
      else
        a["q_curvature_note"] = "supply --laplacian-scal to evaluate Q on a chart";
    }
    analysis.push_back(std::move(a));
  }
  r.result["analysis"] = std::move(analysis);

  std::ostringstream t;
  t << "space: " << spec.describe() << "\n";
  t << "n: " << profile.n << "\n";
  t << "Ein: " << report::fmt(profile.ein_upper) << "\n";
  t << "ein: " << report::fmt_ext(profile.ein_lower) << "\n";
  t << "convention_zero: " << (profile.convention_zero ? "true" : "false") << "\n";
  for (const auto& a : r.result["analysis"]) {
    t << "point " << a["point"].get<int>() << ":\n";
    t << "  scal: " << report::fmt(a["scal"].get<double>()) << "\n";
    if (a.contains("sigma1")) {
      t << "  sigma1: " << report::fmt(a["sigma1"].get<double>()) << "\n";
      t << "  sigma2: " << report::fmt(a["sigma2"].get<double>()) << "\n";
    }
    if (a.contains("q_curvature"))
      t << "  Q: " << report::fmt(a["q_curvature"].get<double>()) << "\n";
  }
  r.table = t.str();
  return r;
}

// ---- weitzenbock ----

Rendered do_weitzenbock(const SpaceOptions& so, int deg) {
  const spaces::SpaceSpec spec = resolve_space(so);
  CurvaturePoint pt = [&] {
    if (spec.homogeneous()) return spaces::curvature_of(spec);
    const auto& pts = spec.chart_spec().points;
    if (pts.empty()) throw error("the chart file lists no sample points");
    return spaces::curvature_of(spec, pts[0]);
  }();

  Rendered r;
  r.config["space"] = spec.describe();
  r.config["deg"] = deg;

  const dforms::PFormOperator gen = dforms::weitzenbock_general(pt, deg);
  const Spectrum gspec = gen.spectrum();
  const double scale = std::max({1.0, std::abs(gspec.min()), std::abs(gspec.max())});

  r.result["space"] = spec.describe();
  r.result["deg"] = deg;
  r.result["general_spectrum"] = spectrum_json(gspec);
  r.result["min_eigenvalue"] = report::num(gspec.min());
  r.result["positive_definite"] = gspec.min() > positivity_tolerance() * scale;
  r.result["weyl_residual"] = report::num(dforms::weyl_residual(pt));

  const constants::VanishingThresholds vt = constants::vanishing_thresholds(pt.dim(), deg);
  r.result["k1"] = rational_json(vt.k1);
  if (vt.k2) r.result["k2"] = rational_json(*vt.k2);

  std::string cflat_line;
  try {
    const dforms::PFormOperator cf = dforms::weitzenbock_cflat(pt, deg);
    r.result["cflat_spectrum"] = spectrum_json(cf.spectrum());
    const double resid = (gen.matrix - cf.matrix).cwiseAbs().maxCoeff();
    r.result["reduction_residual"] = report::num(resid);
    r.result["sum_lowest_ein_k1"] =
        report::num(dforms::sum_lowest_p(ein_k(pt, vt.k1.value()), pt.g(), deg));
    cflat_line = "cflat spectrum: " + spectrum_text(cf.spectrum()) +
                 "\nreduction residual: " + report::fmt(resid) + "\n";
  } catch (const error& e) {
    r.result["cflat_error"] = e.what();
    cflat_line = std::string("cflat path unavailable: ") + e.what() + "\n";
  }

  std::ostringstream t;
  t << "space: " << spec.describe() << "\n";
  t << "deg: " << deg << "\n";
  t << "general spectrum: " << spectrum_text(gspec) << "\n";
  t << "min eigenvalue: " << report::fmt(gspec.min()) << "\n";
  t << cflat_line;
  r.table = t.str();
  return r;
}

// ---- thresholds ----

std::vector<long long> parse_betti(const std::string& s, int n) {
  std::vector<long long> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const std::string item =
        s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    const std::string trimmed = [&] {
      std::size_t a = 0, b = item.size();
      while (a < b && std::isspace(static_cast<unsigned char>(item[a]))) ++a;
      while (b > a && std::isspace(static_cast<unsigned char>(item[b - 1]))) --b;
      return item.substr(a, b - a);
    }();
    long long v = 0;
    try {
      std::size_t used = 0;
      v = std::stoll(trimmed, &used);
      if (used != trimmed.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      throw error("bad Betti entry '" + trimmed + "'");
    }
    if (v < 0) throw error("Betti numbers are nonnegative, got " + trimmed);
    out.push_back(v);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (static_cast<int>(out.size()) != n + 1)
    throw error("--betti needs exactly n+1 = " + std::to_string(n + 1) +
                " entries b_0..b_n, got " + std::to_string(out.size()));
  return out;
}

Rendered do_thresholds(int n, std::optional<int> p, std::optional<double> ein_lb,
                       std::optional<double> ein_ub, const std::string& betti_str) {
  if (n < 3) throw error("thresholds need dimension n >= 3");
  Rendered r;
  r.config["n"] = n;
  if (p) r.config["p"] = *p;
  if (ein_lb) r.config["Ein_lower_bound"] = report::num(*ein_lb);
  if (ein_ub) r.config["ein_upper_bound"] = report::num(*ein_ub);

  json table = json::array();
  std::vector<int> degrees;
  if (p)
    degrees.push_back(*p);
  else
    for (int q = 2; q <= n - 1; ++q) degrees.push_back(q);
  for (int q : degrees) {
    const constants::VanishingThresholds t = constants::vanishing_thresholds(n, q);
    json row;
    row["p"] = q;
    row["k1"] = rational_json(t.k1);
    if (t.k2) row["k2"] = rational_json(*t.k2);
    table.push_back(std::move(row));
  }
  r.result["n"] = n;
  r.result["table"] = std::move(table);

  const std::vector<int> forced =
      constants::betti_vanishing_report(n, ein_lb.value_or(0.0), ein_ub.value_or(0.0));
  r.result["forced_zero"] = forced;

  std::vector<long long> betti;
  std::vector<int> contradictions;
  if (!betti_str.empty()) {
    betti = parse_betti(betti_str, n);
    for (int q : forced)
      if (betti[static_cast<std::size_t>(q)] != 0) contradictions.push_back(q);
    r.config["betti"] = betti;
    r.result["declared_betti"] = betti;
    r.result["contradictions"] = contradictions;
  }

  std::ostringstream t;
  t << "n: " << n << "\n";
  t << "p   k1            k2\n";
  for (const auto& row : r.result["table"]) {
    t << row["p"].get<int>() << "   " << row["k1"]["exact"].get<std::string>();
    if (row.contains("k2"))
      t << "   " << row["k2"]["exact"].get<std::string>();
    else
      t << "   -";
    t << "\n";
  }
  t << "forced zero degrees:";
  for (int q : forced) t << " " << q;
  t << "\n";
  if (!betti_str.empty()) {
    t << "contradictions:";
    for (int q : contradictions) t << " b_" << q;
    if (contradictions.empty()) t << " none";
    t << "\n";
  }
  r.table = t.str();
  return r;
}

// ---- theorem-c ----

Rendered do_theorem_c(double yamabe, double sigma2_integral, std::optional<double> oracle_grid) {
  const conformal4d::ConformalData4D data{yamabe, sigma2_integral};
  const conformal4d::BoundReport br = conformal4d::class_bounds(data);

  Rendered r;
  r.config["yamabe"] = report::num(yamabe);
  r.config["sigma2_integral"] = report::num(sigma2_integral);
  if (oracle_grid) r.config["oracle_grid"] = report::num(*oracle_grid);

  r.result = report::bounds_json(br);

  std::ostringstream t;
  t << "case: " << r.result["case"].get<std::string>() << "\n";
  t << "Ein bound: " << report::fmt(br.ein_bound) << (br.strict ? " (strict)" : "") << "\n";
  t << "ein bound: " << report::fmt_ext(br.ein_low_bound) << "\n";
  t << "c: " << report::fmt(br.c) << "\n";

  if (oracle_grid) {
    if (sigma2_integral < 0.0) {
      const conformal4d::BoundReport ob = conformal4d::optimize_alpha(data, *oracle_grid);
      json oj;
      oj["grid"] = report::num(*oracle_grid);
      oj["Ein_bound"] = report::num(ob.ein_bound);
      oj["ein_bound"] = report::ext(ob.ein_low_bound);
      const double tol_up = 2.0 * *oracle_grid * std::max(1.0, std::abs(br.ein_bound));
      const double low_closed = br.ein_low_bound.value();
      const double tol_low = 2.0 * *oracle_grid * std::max(1.0, std::abs(low_closed));
      const bool agree_up = std::abs(ob.ein_bound - br.ein_bound) <= tol_up;
      const bool agree_low = std::abs(ob.ein_low_bound.value() - low_closed) <= tol_low;
      oj["agrees"] = agree_up && agree_low;
      r.result["oracle"] = std::move(oj);
      t << "oracle (grid " << report::fmt(*oracle_grid)
        << "): Ein bound " << report::fmt(ob.ein_bound) << ", ein bound "
        << report::fmt_ext(ob.ein_low_bound) << ", "
        << (agree_up && agree_low ? "agrees" : "DISAGREES") << "\n";
    } else {
      r.result["oracle_note"] = "the alpha scan applies only to a negative sigma2 integral";
      t << "oracle: skipped (needs a negative sigma2 integral)\n";
    }
  }
  r.table = t.str();
  return r;
}

// ---- validate-chart ----

Rendered do_validate_chart(const std::string& file, const std::string& against) {
  const spaces::ChartSpec chart = spaces::load_chart_file(file);
  if (chart.points.empty()) throw error("the chart file lists no sample points");
  const spaces::SpaceSpec chart_spec = spaces::SpaceSpec::chart(chart);
  const spaces::SpaceSpec catalog = parse_compact(against);
  if (!catalog.homogeneous()) throw error("--against must name a catalog space");
  if (catalog.dim() != chart.n)
    throw error("dimension mismatch: chart has n = " + std::to_string(chart.n) +
                ", catalog space has n = " + std::to_string(catalog.dim()));

  const CurvaturePoint ref = spaces::curvature_of(catalog);
  const Spectrum ref_spec = spectrum_rel(ref.g(), ref.ricci());
  double ref_scale = 1.0;
  for (std::size_t i = 0; i < ref_spec.size(); ++i)
    ref_scale = std::max(ref_scale, std::abs(ref_spec[i]));
  const double tol = 1e-6 * ref_scale;

  Rendered r;
  r.config["file"] = file;
  r.config["against"] = catalog.describe();
  r.result["against"] = catalog.describe();
  r.result["reference_spectrum"] = spectrum_json(ref_spec);
  r.result["tolerance"] = report::num(tol);

  bool all_ok = true;
  json pts = json::array();
  std::ostringstream t;
  t << "against: " << catalog.describe() << "\n";
  t << "reference ricci spectrum: " << spectrum_text(ref_spec) << "\n";
  for (const auto& coords : chart.points) {
    const CurvaturePoint fd = spaces::curvature_fd(chart, coords);
    const Spectrum s = spectrum_rel(fd.g(), fd.ricci());
    double dev = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) dev = std::max(dev, std::abs(s[i] - ref_spec[i]));
    const bool ok = dev <= tol;
    all_ok = all_ok && ok;
    json pj;
    json cj = json::array();
    for (double x : coords) cj.push_back(report::num(x));
    pj["coords"] = std::move(cj);
    pj["max_deviation"] = report::num(dev);
    pj["ok"] = ok;
    pts.push_back(std::move(pj));
    t << "point (";
    for (std::size_t i = 0; i < coords.size(); ++i)
      t << (i ? ", " : "") << report::fmt(coords[i]);
    t << "): max deviation " << report::fmt(dev) << (ok ? " ok" : " FAIL") << "\n";
  }
  r.result["points"] = std::move(pts);
  r.result["all_ok"] = all_ok;
  t << (all_ok ? "all points within tolerance" : "deviations beyond tolerance") << "\n";
  r.table = t.str();
  r.status = all_ok ? 0 : 2;
  return r;
}

void emit_error(std::ostream& err, const std::string& message) {
  json j;
  j["version"] = kVersion;
  j["error"]["message"] = message;
  err << j.dump(2) << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"numerical curvature laboratory"};
  app.name("einlab");
  app.require_subcommand(1);
  app.fallthrough();

  std::string format = "json";
  std::string output_path;
  app.add_option("--format", format, "report format: json or table")
      ->check(CLI::IsMember({"json", "table"}));
  app.add_option("--output", output_path, "write the report to a file instead of stdout");

  auto* cmd_list = app.add_subcommand("spaces-list", "list the space catalog");

  SpaceOptions compute_space;
  std::optional<double> laplacian_scal;
  auto* cmd_compute =
      app.add_subcommand("compute", "Ein/ein profile with Schouten and sigma invariants");
  add_space_flags(cmd_compute, compute_space);
  cmd_compute->add_option("--laplacian-scal", laplacian_scal,
                          "Laplacian of Scal at chart points (for Q in dimension 4)");

  SpaceOptions wb_space;
  int wb_deg = 0;
  auto* cmd_wb = app.add_subcommand("weitzenbock", "form curvature term spectra");
  add_space_flags(cmd_wb, wb_space);
  cmd_wb->add_option("--p", wb_deg, "form degree, 2 <= p <= n-1")->required();

  int th_n = 0;
  std::optional<int> th_p;
  std::optional<double> th_ein_lb, th_ein_ub;
  std::string th_betti;
  auto* cmd_th = app.add_subcommand("thresholds", "k1/k2 tables and the vanishing report");
  cmd_th->add_option("--n", th_n, "dimension")->required();
  cmd_th->add_option("--p", th_p, "single form degree (default: all 2..n-1)");
  cmd_th->add_option("--Ein", th_ein_lb, "certified lower bound for Ein([g])");
  cmd_th->add_option("--ein", th_ein_ub, "certified upper bound for ein([g])");
  cmd_th->add_option("--betti", th_betti, "declared Betti numbers b_0,...,b_n (comma list)");

  double tc_yamabe = 0.0, tc_sigma2 = 0.0;
  std::optional<double> tc_oracle;
  auto* cmd_tc = app.add_subcommand("theorem-c", "4-dimensional class bounds from (Y, sigma2 integral)");
  cmd_tc->add_option("--yamabe", tc_yamabe, "Yamabe constant Y (positive)")->required();
  cmd_tc->add_option("--sigma2-integral", tc_sigma2, "integral of sigma2 of the Schouten tensor")
      ->required();
  cmd_tc->add_option("--oracle", tc_oracle, "run the alpha-scan cross-check at this grid resolution");

  std::string vc_file, vc_against;
  auto* cmd_vc = app.add_subcommand("validate-chart", "finite-difference comparison against the catalog");
  cmd_vc->add_option("--file", vc_file, "chart metric file")->required();
  cmd_vc->add_option("--against", vc_against, "catalog space expression to compare with")
      ->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    emit_error(err, std::string("argument error: ") + e.what());
    return 1;
  }

  try {
    Rendered r;
    std::string command;
    if (cmd_list->parsed()) {
      command = "spaces-list";
      r = do_spaces_list();
    } else if (cmd_compute->parsed()) {
      command = "compute";
      r = do_compute(compute_space, laplacian_scal);
    } else if (cmd_wb->parsed()) {
      command = "weitzenbock";
      r = do_weitzenbock(wb_space, wb_deg);
    } else if (cmd_th->parsed()) {
      command = "thresholds";
      r = do_thresholds(th_n, th_p, th_ein_lb, th_ein_ub, th_betti);
    } else if (cmd_tc->parsed()) {
      command = "theorem-c";
      r = do_theorem_c(tc_yamabe, tc_sigma2, tc_oracle);
    } else if (cmd_vc->parsed()) {
      command = "validate-chart";
      r = do_validate_chart(vc_file, vc_against);
    } else {
      throw error("no command given");
    }
    r.config["format"] = format;

    const std::string payload =
        format == "table" ? r.table : report::render(report::envelope(command, r.config, r.result));
    if (!output_path.empty()) {
      std::ofstream f(output_path);
      if (!f) throw error("cannot open output file: " + output_path);
      f << payload;
    } else {
      out << payload;
    }
    return r.status;
  } catch (const error& e) {
    emit_error(err, e.what());
    return 1;
  } catch (const std::exception& e) {
    emit_error(err, std::string("internal error: ") + e.what());
    return 1;
  }
}

}  // namespace einlab::cli
