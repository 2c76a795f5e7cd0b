#pragma once

// Profile sampling, CSV and SVG output.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "cnoidal/residual.hpp"

namespace cnoidal {

struct ProfileSample {
  double xi = 0.0;
  double eta = 0.0;
  double w = 0.0;
};

/// n_points samples over n_periods periods starting at xi = 0. At m = 1 the
/// window is centred on the crest and spans the residual window.
inline std::vector<ProfileSample> sample_profile(const SolutionParams& s, int n_periods = 2, int n_points = 801) {
  if (n_points < 2) throw UsageError("sample_profile: need at least 2 points");
  if (n_periods < 1) throw UsageError("sample_profile: need at least 1 period");
  double start = 0.0, width = 0.0;
  if (s.m < 1.0) {
    width = n_periods * profile_period(s);
  } else {
    width = 2.0 * detail::kSolitaryHalfWidth / s.lambda;
    start = -0.5 * width;
  }
  std::vector<ProfileSample> out;
  out.reserve(n_points);
  for (int i = 0; i < n_points; ++i) {
    const double xi = start + width * i / (n_points - 1);
    out.push_back({xi, profile_eta(s, xi), profile_w(s, xi)});
  }
  return out;
}

/// Header xi,eta,w; 17 significant digits; LF line endings.
inline void write_csv(std::ostream& os, const std::vector<ProfileSample>& samples) {
  os << "xi,eta,w\n";
  char line[96];
  for (const auto& p : samples) {
    std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g\n", p.xi, p.eta, p.w);
    os << line;
  }
}

namespace detail {

inline std::string fmt(double v, const char* spec = "%.4g") {
  char buf[32];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

// Roughly five ticks at 1, 2 or 5 times a power of ten.
inline std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  if (!(span > 0.0)) return {lo};
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double f : {2.0, 5.0, 10.0}) {
    if (step >= raw) break;
    step = f * mag;
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
  return out;
}

}  // namespace detail

/// Two polylines (eta solid blue, w dashed red) on a fixed 640x400 viewbox.
inline void write_svg(std::ostream& os, const std::vector<ProfileSample>& samples, const std::string& title = "") {
  constexpr double W = 640, H = 400, left = 60, right = 20, top = 30, bottom = 40;
  double x0 = samples.front().xi, x1 = samples.back().xi;
  double y0 = INFINITY, y1 = -INFINITY;
  for (const auto& p : samples) {
    y0 = std::min({y0, p.eta, p.w});
    y1 = std::max({y1, p.eta, p.w});
  }
  if (y1 - y0 < 1e-12) {
    y0 -= 1.0;
    y1 += 1.0;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (W - left - right); };
  auto py = [&](double y) { return top + (y1 - y) / (y1 - y0) * (H - top - bottom); };

  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W << ' ' << H << "\" width=\"" << W
     << "\" height=\"" << H << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) os << "<text x=\"" << W / 2 << "\" y=\"18\" text-anchor=\"middle\">" << title << "</text>\n";
  os << "<g stroke=\"black\" fill=\"none\"><rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << W - left - right
     << "\" height=\"" << H - top - bottom << "\"/></g>\n";
  os << "<g stroke=\"black\">\n";
  for (double t : detail::ticks(x0, x1)) {
    os << "<line x1=\"" << detail::fmt(px(t)) << "\" y1=\"" << H - bottom << "\" x2=\"" << detail::fmt(px(t))
       << "\" y2=\"" << H - bottom + 5 << "\"/>\n";
  }
  for (double t : detail::ticks(y0, y1)) {
    os << "<line x1=\"" << left - 5 << "\" y1=\"" << detail::fmt(py(t)) << "\" x2=\"" << left << "\" y2=\""
       << detail::fmt(py(t)) << "\"/>\n";
  }
  os << "</g>\n<g text-anchor=\"middle\">\n";
  for (double t : detail::ticks(x0, x1)) {
    os << "<text x=\"" << detail::fmt(px(t)) << "\" y=\"" << H - bottom + 17 << "\">" << detail::fmt(t) << "</text>\n";
  }
  os << "</g>\n<g text-anchor=\"end\">\n";
  for (double t : detail::ticks(y0, y1)) {
    os << "<text x=\"" << left - 8 << "\" y=\"" << detail::fmt(py(t) + 4) << "\">" << detail::fmt(t) << "</text>\n";
  }
  os << "</g>\n";

  auto polyline = [&](auto field, const char* style) {
    os << "<polyline fill=\"none\" " << style << " points=\"";
    for (const auto& p : samples) os << detail::fmt(px(p.xi), "%.2f") << ',' << detail::fmt(py(field(p)), "%.2f") << ' ';
    os << "\"/>\n";
  };
  polyline([](const ProfileSample& p) { return p.eta; }, "stroke=\"#1f4e9c\" stroke-width=\"1.5\"");
  polyline([](const ProfileSample& p) { return p.w; }, "stroke=\"#b22222\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"");
  os << "<text x=\"" << W - right - 70 << "\" y=\"" << top + 15 << "\" fill=\"#1f4e9c\">eta</text>\n";
  os << "<text x=\"" << W - right - 35 << "\" y=\"" << top + 15 << "\" fill=\"#b22222\">w</text>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 5 << "\" text-anchor=\"middle\">xi</text>\n";
  os << "</svg>\n";
}

}  // namespace cnoidal
