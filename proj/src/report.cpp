#include "einlab/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace einlab::report {

double sig12(double v) {
  if (!std::isfinite(v)) return v;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return std::strtod(buf, nullptr);
}

json num(double v) { return json(sig12(v)); }

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

json ext(const ExtendedReal& v) {
  if (v.is_neg_infinity()) return json("-inf");
  return num(v.value());
}

std::string fmt_ext(const ExtendedReal& v) {
  if (v.is_neg_infinity()) return "-inf";
  return fmt(v.value());
}

json conventions() {
  json j;
  j["curvature_sign"] = "unit sphere has R[i][j][i][j] = +1 in an orthonormal frame";
  j["ricci_contraction"] = "ricci[j][l] = sum over i,k of ginv[i][k] * riemann[i][j][k][l]";
  j["wedge_normalization"] = "g^p/p! acts as the identity on p-forms";
  j["neg_infinity"] = "-inf";
  return j;
}

json tolerances() {
  json j;
  j["positivity"] = num(positivity_tolerance());
  j["einstein_spread"] = num(kEinsteinSpreadTolerance);
  j["fd_validation"] = num(1e-6);
  return j;
}

json envelope(const std::string& command, json config, json result) {
  json j;
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = std::move(config);
  j["conventions"] = conventions();
  j["tolerances"] = tolerances();
  j["result"] = std::move(result);
  return j;
}

json profile_json(const constants::EinProfile& p) {
  json j;
  j["n"] = p.n;
  j["Ein"] = num(p.ein_upper);
  j["ein"] = ext(p.ein_lower);
  json pts = json::array();
  for (const auto& e : p.per_point) {
    json pj;
    pj["point"] = e.point;
    if (!e.coords.empty()) {
      json c = json::array();
      for (double x : e.coords) c.push_back(num(x));
      pj["coords"] = std::move(c);
    }
    pj["Ein"] = num(e.thresholds.ein_up);
    pj["ein"] = ext(e.thresholds.ein_low);
    pj["einstein"] = e.thresholds.einstein;
    pts.push_back(std::move(pj));
  }
  j["per_point"] = std::move(pts);
  j["convention_zero"] = p.convention_zero;
  return j;
}

json bounds_json(const conformal4d::BoundReport& r) {
  json j;
  switch (r.s2_case) {
    case conformal4d::Sigma2Case::Positive:
      j["case"] = "positive";
      break;
    case conformal4d::Sigma2Case::Zero:
      j["case"] = "zero";
      break;
    case conformal4d::Sigma2Case::Negative:
      j["case"] = "negative";
      break;
  }
  j["Ein_bound"] = num(r.ein_bound);
  j["strict"] = r.strict;
  j["ein_bound"] = ext(r.ein_low_bound);
  j["c"] = num(r.c);
  return j;
}

std::string render(const json& j) { return j.dump(2) + "\n"; }

}  // namespace einlab::report
