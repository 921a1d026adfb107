#include "strip.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>

#include "spline.hpp"

namespace bis {

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    std::size_t b = f.find_first_not_of(" \t\r");
    std::size_t e = f.find_last_not_of(" \t\r");
    f = (b == std::string::npos) ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

double parse_field(const std::string& s, int line_no) {
  const char* p = s.c_str();
  char* end = nullptr;
  double v = std::strtod(p, &end);
  if (end == p || *end != '\0' || !std::isfinite(v))
    throw Error(ErrorCode::IoError,
                "strip CSV line " + std::to_string(line_no) + ": bad number '" + s + "'");
  return v;
}

// Second-order derivative of samples (y, t): central in the interior,
// three-point one-sided at the ends.
Vec3 three_point_deriv(const std::vector<StripSample>& ss, std::size_t i) {
  const std::size_t n = ss.size();
  auto d = [&](std::size_t a, std::size_t b) { return ss[b].t - ss[a].t; };
  if (i > 0 && i + 1 < n) {
    const double h1 = d(i - 1, i), h2 = d(i, i + 1);
    const double w1 = -h2 / (h1 * (h1 + h2));
    const double w2 = (h2 - h1) / (h1 * h2);
    const double w3 = h1 / (h2 * (h1 + h2));
    return w1 * ss[i - 1].c + w2 * ss[i].c + w3 * ss[i + 1].c;
  }
  if (i == 0) {
    const double h1 = d(0, 1), h2 = d(1, 2);
    const double w1 = -(2.0 * h1 + h2) / (h1 * (h1 + h2));
    const double w2 = (h1 + h2) / (h1 * h2);
    const double w3 = -h1 / (h2 * (h1 + h2));
    return w1 * ss[0].c + w2 * ss[1].c + w3 * ss[2].c;
  }
  const double h1 = d(n - 3, n - 2), h2 = d(n - 2, n - 1);
  const double w1 = h2 / (h1 * (h1 + h2));
  const double w2 = -(h1 + h2) / (h1 * h2);
  const double w3 = (h1 + 2.0 * h2) / (h2 * (h1 + h2));
  return w1 * ss[n - 3].c + w2 * ss[n - 2].c + w3 * ss[n - 1].c;
}

}  // namespace

BjorlingStrip load_strip_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open strip CSV '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::IoError, "empty strip CSV '" + path + "'");
  const auto header = split_csv_line(line);
  const std::vector<std::string> base{"t", "c1", "c2", "c3", "n1", "n2", "n3"};
  const std::vector<std::string> ext{"dc1", "dc2", "dc3"};
  bool has_dc = false;
  if (header.size() == 7) {
    has_dc = false;
  } else if (header.size() == 10) {
    has_dc = true;
  } else {
    throw Error(ErrorCode::IoError, "strip CSV '" + path + "': expected 7 or 10 columns");
  }
  for (std::size_t i = 0; i < 7; ++i)
    if (header[i] != base[i])
      throw Error(ErrorCode::IoError, "strip CSV '" + path + "': bad header column '" + header[i] + "'");
  if (has_dc)
    for (std::size_t i = 0; i < 3; ++i)
      if (header[7 + i] != ext[i])
        throw Error(ErrorCode::IoError, "strip CSV '" + path + "': bad header column '" + header[7 + i] + "'");

  BjorlingStrip strip;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != (has_dc ? 10u : 7u))
      throw Error(ErrorCode::IoError, "strip CSV line " + std::to_string(line_no) + ": wrong field count");
    StripSample s;
    s.t = parse_field(f[0], line_no);
    s.c = {parse_field(f[1], line_no), parse_field(f[2], line_no), parse_field(f[3], line_no)};
    s.n = {parse_field(f[4], line_no), parse_field(f[5], line_no), parse_field(f[6], line_no)};
    if (has_dc)
      s.cdot = {parse_field(f[7], line_no), parse_field(f[8], line_no), parse_field(f[9], line_no)};
    strip.samples.push_back(s);
  }
  if (strip.samples.size() < 3)
    throw Error(ErrorCode::IoError, "strip CSV '" + path + "': need at least 3 samples");
  if (!has_dc)
    for (std::size_t i = 0; i < strip.samples.size(); ++i)
      strip.samples[i].cdot = three_point_deriv(strip.samples, i);
  strip.t_min = strip.samples.front().t;
  strip.t_max = strip.samples.back().t;
  return strip;
}

void write_strip_csv(const BjorlingStrip& strip, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write strip CSV '" + path + "'");
  out << "t,c1,c2,c3,n1,n2,n3,dc1,dc2,dc3\n";
  for (const auto& s : strip.samples) {
    out << format_double(s.t) << ',' << format_double(s.c.x1) << ',' << format_double(s.c.x2)
        << ',' << format_double(s.c.x3) << ',' << format_double(s.n.x1) << ','
        << format_double(s.n.x2) << ',' << format_double(s.n.x3) << ','
        << format_double(s.cdot.x1) << ',' << format_double(s.cdot.x2) << ','
        << format_double(s.cdot.x3) << '\n';
  }
}

BjorlingStrip strip_from_exprs(const std::array<Expr, 3>& c, const std::array<Expr, 3>& n,
                               double a, double b, int n_samples) {
  if (!(a < b) || n_samples < 3)
    throw Error(ErrorCode::InvalidArgument, "strip_from_exprs: need a < b and at least 3 samples");
  std::array<Expr, 3> dc{c[0].derivative(), c[1].derivative(), c[2].derivative()};
  BjorlingStrip strip;
  strip.t_min = a;
  strip.t_max = b;
  for (int i = 0; i < n_samples; ++i) {
    const double t = a + (b - a) * i / (n_samples - 1);
    StripSample s;
    s.t = t;
    s.c = {c[0].eval(t), c[1].eval(t), c[2].eval(t)};
    s.cdot = {dc[0].eval(t), dc[1].eval(t), dc[2].eval(t)};
    s.n = {n[0].eval(t), n[1].eval(t), n[2].eval(t)};
    strip.samples.push_back(s);
  }
  return strip;
}

BjorlingStrip diagonal_strip(const Surface& surf, double a, double b, int n_samples) {
  if (!(a < b) || n_samples < 3)
    throw Error(ErrorCode::InvalidArgument, "diagonal_strip: need a < b and at least 3 samples");
  BjorlingStrip strip;
  strip.t_min = a;
  strip.t_max = b;
  std::vector<double> ts(n_samples);
  for (int i = 0; i < n_samples; ++i) ts[i] = a + (b - a) * i / (n_samples - 1);
  GridEvaluator g(surf, ts, ts);
  for (int i = 0; i < n_samples; ++i) {
    StripSample s;
    s.t = ts[i];
    s.c = g.at(i, i);
    const FrameReport fr = surf.tangents({ts[i], ts[i]});
    s.cdot = fr.Xalpha;
    s.n = surf.unit_normal({ts[i], ts[i]});
    strip.samples.push_back(s);
  }
  return strip;
}

StripReport validate_strip(BjorlingStrip& strip, double tol) {
  if (strip.samples.size() < 3)
    throw Error(ErrorCode::InvalidArgument, "strip needs at least 3 samples");
  StripReport rep;
  rep.t_increasing = true;
  for (std::size_t i = 1; i < strip.samples.size(); ++i)
    if (!(strip.samples[i - 1].t < strip.samples[i].t)) rep.t_increasing = false;

  rep.min_abs_n3 = std::numeric_limits<double>::infinity();
  bool n3_pos = false, n3_neg = false;
  for (std::size_t i = 0; i < strip.samples.size(); ++i) {
    const auto& s = strip.samples[i];
    const double unit = std::fabs(inner(s.n, s.n, Signature::B3) - 1.0);
    const double orth = std::fabs(inner(s.n, s.cdot, Signature::B3));
    if (unit > rep.worst_unit) {
      rep.worst_unit = unit;
      rep.worst_unit_index = i;
    }
    if (orth > rep.worst_orth) {
      rep.worst_orth = orth;
      rep.worst_orth_index = i;
    }
    rep.min_abs_n3 = std::min(rep.min_abs_n3, std::fabs(s.n.x3));
    if (s.n.x3 > 0) n3_pos = true;
    if (s.n.x3 < 0) n3_neg = true;
  }
  rep.unit_ok = rep.worst_unit <= tol;
  rep.orthogonal_ok = rep.worst_orth <= tol;
  rep.n3_ok = rep.min_abs_n3 > tol && !(n3_pos && n3_neg);

  if (rep.n3_ok && n3_pos) {
    for (auto& s : strip.samples) s.n = -s.n;
    rep.flipped = true;
  }
  return rep;
}

ParamCurve param_curve(const BjorlingStrip& strip, double tol) {
  const std::size_t n = strip.samples.size();
  if (n < 3) throw Error(ErrorCode::InvalidArgument, "strip needs at least 3 samples");

  // Work on an orientation-normalized view.
  double sign = 0.0;
  for (const auto& s : strip.samples) {
    if (std::fabs(s.n.x3) <= tol)
      throw Error(ErrorCode::NormalThirdComponentZero,
                  "param_curve: n3 vanishes at t = " + format_double(s.t));
    const double sg = s.n.x3 < 0 ? 1.0 : -1.0;
    if (sign == 0.0) sign = sg;
    if (sg != sign)
      throw Error(ErrorCode::NormalThirdComponentZero,
                  "param_curve: n3 changes sign at t = " + format_double(s.t));
  }

  ParamCurve pc;
  pc.t.resize(n);
  pc.r.resize(n);
  pc.s.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& smp = strip.samples[i];
    const Vec3 m = sign * smp.n;
    const double den = 1.0 - m.x3;
    pc.t[i] = smp.t;
    pc.r[i] = (m.x1 + m.x2) / den;
    pc.s[i] = (m.x1 - m.x2) / den;
  }

  CubicSpline sr(pc.t, pc.r), ss(pc.t, pc.s);
  pc.rdot.resize(n);
  pc.sdot.resize(n);
  double max_rdot = 0.0, max_sdot = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    pc.rdot[i] = sr.deriv(pc.t[i]);
    pc.sdot[i] = ss.deriv(pc.t[i]);
    max_rdot = std::max(max_rdot, std::fabs(pc.rdot[i]));
    max_sdot = std::max(max_sdot, std::fabs(pc.sdot[i]));
  }
  pc.degenerate.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const bool r_deg = std::fabs(pc.rdot[i]) <= tol * (1.0 + max_rdot);
    const bool s_deg = std::fabs(pc.sdot[i]) <= tol * (1.0 + max_sdot);
    pc.degenerate[i] = (r_deg || s_deg) ? 1 : 0;
  }
  return pc;
}

}  // namespace bis
