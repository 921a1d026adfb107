// C interface over the core library.  Exceptions are converted to status
// codes; the failing call's message is kept in thread-local storage.

#include "bisoliton.h"

#include <cstring>
#include <new>
#include <string>
#include <utility>
#include <vector>

#include "bjorling.hpp"
#include "error.hpp"
#include "expr.hpp"
#include "geometry.hpp"
#include "quadrature.hpp"
#include "splitcomplex.hpp"
#include "strip.hpp"
#include "surface.hpp"

struct bis_expr {
  bis::Expr e;
};

struct bis_surface {
  bis::Surface s;
};

struct bis_strip {
  bis::BjorlingStrip s;
};

struct bis_fg {
  bis::ReconstructedFG fg;
};

struct bis_tms {
  bis::TmsSolution t;

  template <typename... Args>
  explicit bis_tms(Args&&... args) : t(std::forward<Args>(args)...) {}
};

namespace {

thread_local std::string g_error;
thread_local size_t g_offset = static_cast<size_t>(-1);

// Thrown when a user callback reports failure, so the original status
// survives the trip through the core.
struct CallbackFailure {
  bis_status st;
};

bis_status map_code(bis::ErrorCode c) {
  switch (c) {
    case bis::ErrorCode::SyntaxError: return BIS_ERR_SYNTAX;
    case bis::ErrorCode::UnknownIdentifier: return BIS_ERR_UNKNOWN_IDENTIFIER;
    case bis::ErrorCode::DomainError: return BIS_ERR_DOMAIN;
    case bis::ErrorCode::QuadratureNonConvergence: return BIS_ERR_QUADRATURE_NON_CONVERGENCE;
    case bis::ErrorCode::NonRegularPoint: return BIS_ERR_NON_REGULAR_POINT;
    case bis::ErrorCode::DegenerateFirstForm: return BIS_ERR_DEGENERATE_FIRST_FORM;
    case bis::ErrorCode::NormalThirdComponentZero: return BIS_ERR_NORMAL_THIRD_COMPONENT_ZERO;
    case bis::ErrorCode::NotUnitNormal: return BIS_ERR_NOT_UNIT_NORMAL;
    case bis::ErrorCode::ProjectionSingular: return BIS_ERR_PROJECTION_SINGULAR;
    case bis::ErrorCode::GraphInversionFailure: return BIS_ERR_GRAPH_INVERSION_FAILURE;
    case bis::ErrorCode::NonMonotoneParamCurve: return BIS_ERR_NON_MONOTONE_PARAM_CURVE;
    case bis::ErrorCode::DomainViolation: return BIS_ERR_DOMAIN_VIOLATION;
    case bis::ErrorCode::ConsistencyFailure: return BIS_ERR_CONSISTENCY_FAILURE;
    case bis::ErrorCode::IntervalOverlapsData: return BIS_ERR_INTERVAL_OVERLAPS_DATA;
    case bis::ErrorCode::AmplitudeUnachievable: return BIS_ERR_AMPLITUDE_UNACHIEVABLE;
    case bis::ErrorCode::MixedCausalCharacter: return BIS_ERR_MIXED_CAUSAL_CHARACTER;
    case bis::ErrorCode::NotOrthogonal: return BIS_ERR_NOT_ORTHOGONAL;
    case bis::ErrorCode::InvalidArgument: return BIS_ERR_INVALID_ARGUMENT;
    case bis::ErrorCode::IoError: return BIS_ERR_IO;
  }
  return BIS_ERR_INTERNAL;
}

bis_status fail(bis_status st, std::string msg, size_t offset = static_cast<size_t>(-1)) {
  g_error = std::move(msg);
  g_offset = offset;
  return st;
}

template <typename F>
bis_status guard(F&& body) {
  try {
    return body();
  } catch (const bis::Error& e) {
    std::string msg = e.what();
    if (!e.detail().empty()) msg += " [" + e.detail() + "]";
    return fail(map_code(e.code()), std::move(msg), e.offset());
  } catch (const CallbackFailure& cb) {
    return fail(cb.st, "surface callback reported failure");
  } catch (const std::bad_alloc&) {
    return fail(BIS_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(BIS_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(BIS_ERR_INTERNAL, "unknown error");
  }
}

void require(bool cond, const char* what) {
  if (!cond) throw bis::Error(bis::ErrorCode::InvalidArgument, what);
}

bis::Vec3 to_vec(const double p[3]) { return {p[0], p[1], p[2]}; }

void put_vec(const bis::Vec3& v, double out[3]) {
  out[0] = v.x1;
  out[1] = v.x2;
  out[2] = v.x3;
}

bis::Signature to_sig(bis_signature sig) {
  return sig == BIS_SIG_L3 ? bis::Signature::L3 : bis::Signature::B3;
}

bis::QuadOptions to_quad(const bis_quad_opts* opts) {
  bis::QuadOptions q;
  if (opts) {
    q.abs_tol = opts->abs_tol;
    q.rel_tol = opts->rel_tol;
    q.max_subdivisions = opts->max_subdivisions;
  }
  if (!(q.abs_tol > 0.0) || !(q.rel_tol >= 0.0) || q.max_subdivisions <= 0)
    throw bis::Error(bis::ErrorCode::InvalidArgument, "invalid quadrature options");
  return q;
}

char* dup_string(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::array<bis::Expr, 3> parse_triple(const char* e1, const char* e2, const char* e3,
                                      const char* variable) {
  require(e1 && e2 && e3 && variable, "null expression string");
  return {bis::Expr::parse(e1, variable), bis::Expr::parse(e2, variable),
          bis::Expr::parse(e3, variable)};
}

void fill_jacobian_report(const bis::JacobianReport& rep, bis_jacobian_report* out,
                          double* samples) {
  if (out) {
    out->criterion_i = rep.criterion_i ? 1 : 0;
    out->criterion_ii = rep.criterion_ii ? 1 : 0;
    out->zero_diag_ambiguity = rep.zero_diag_ambiguity ? 1 : 0;
    out->min_abs_j11 = rep.min_abs_j11;
    out->min_abs_j22 = rep.min_abs_j22;
    out->min_abs_det = rep.min_abs_det;
    out->witness_i[0] = rep.witness_i.t;
    out->witness_i[1] = rep.witness_i.s;
    out->witness_ii[0] = rep.witness_ii.t;
    out->witness_ii[1] = rep.witness_ii.s;
  }
  if (samples) {
    size_t k = 0;
    for (const auto& sm : rep.samples) {
      samples[k++] = sm.t;
      samples[k++] = sm.s;
      samples[k++] = sm.j11;
      samples[k++] = sm.j12;
      samples[k++] = sm.j21;
      samples[k++] = sm.j22;
      samples[k++] = sm.det;
    }
  }
}

}  // namespace

extern "C" {

const char* bis_version(void) { return "1.0.0"; }

const char* bis_status_name(bis_status st) {
  switch (st) {
    case BIS_OK: return "Ok";
    case BIS_ERR_SYNTAX: return "SyntaxError";
    case BIS_ERR_UNKNOWN_IDENTIFIER: return "UnknownIdentifier";
    case BIS_ERR_DOMAIN: return "DomainError";
    case BIS_ERR_QUADRATURE_NON_CONVERGENCE: return "QuadratureNonConvergence";
    case BIS_ERR_NON_REGULAR_POINT: return "NonRegularPoint";
    case BIS_ERR_DEGENERATE_FIRST_FORM: return "DegenerateFirstForm";
    case BIS_ERR_NORMAL_THIRD_COMPONENT_ZERO: return "NormalThirdComponentZero";
    case BIS_ERR_NOT_UNIT_NORMAL: return "NotUnitNormal";
    case BIS_ERR_PROJECTION_SINGULAR: return "ProjectionSingular";
    case BIS_ERR_GRAPH_INVERSION_FAILURE: return "GraphInversionFailure";
    case BIS_ERR_NON_MONOTONE_PARAM_CURVE: return "NonMonotoneParamCurve";
    case BIS_ERR_DOMAIN_VIOLATION: return "DomainViolation";
    case BIS_ERR_CONSISTENCY_FAILURE: return "ConsistencyFailure";
    case BIS_ERR_INTERVAL_OVERLAPS_DATA: return "IntervalOverlapsData";
    case BIS_ERR_AMPLITUDE_UNACHIEVABLE: return "AmplitudeUnachievable";
    case BIS_ERR_MIXED_CAUSAL_CHARACTER: return "MixedCausalCharacter";
    case BIS_ERR_NOT_ORTHOGONAL: return "NotOrthogonal";
    case BIS_ERR_INVALID_ARGUMENT: return "InvalidArgument";
    case BIS_ERR_IO: return "IoError";
    case BIS_ERR_INTERNAL: return "InternalError";
  }
  return "UnknownStatus";
}

const char* bis_last_error(void) { return g_error.c_str(); }

size_t bis_last_error_offset(void) { return g_offset; }

/* ------------------------------------------------------------------ */

double bis_inner(const double u[3], const double v[3], bis_signature sig) {
  return bis::inner(to_vec(u), to_vec(v), to_sig(sig));
}

void bis_cross(const double u[3], const double v[3], bis_signature sig, double out[3]) {
  put_vec(bis::cross(to_vec(u), to_vec(v), to_sig(sig)), out);
}

bis_causal bis_causal_type(const double v[3], bis_signature sig, double tol) {
  switch (bis::causal_type(to_vec(v), to_sig(sig), tol)) {
    case bis::CausalType::Spacelike: return BIS_CAUSAL_SPACELIKE;
    case bis::CausalType::Timelike: return BIS_CAUSAL_TIMELIKE;
    case bis::CausalType::Lightlike: break;
  }
  return BIS_CAUSAL_LIGHTLIKE;
}

void bis_b3_to_l3(const double p[3], double out[3]) { put_vec(bis::b3_to_l3(to_vec(p)), out); }

void bis_l3_to_b3(const double p[3], double out[3]) { put_vec(bis::l3_to_b3(to_vec(p)), out); }

/* ------------------------------------------------------------------ */

bis_status bis_expr_parse(const char* src, const char* variable, bis_expr** out) {
  return guard([&] {
    require(src && variable && out, "null argument to bis_expr_parse");
    *out = new bis_expr{bis::Expr::parse(src, variable)};
    return BIS_OK;
  });
}

bis_status bis_expr_eval(const bis_expr* e, double x, double* out) {
  return guard([&] {
    require(e && out, "null argument to bis_expr_eval");
    *out = e->e.eval(x);
    return BIS_OK;
  });
}

bis_status bis_expr_derivative(const bis_expr* e, bis_expr** out) {
  return guard([&] {
    require(e && out, "null argument to bis_expr_derivative");
    *out = new bis_expr{e->e.derivative()};
    return BIS_OK;
  });
}

bis_status bis_expr_str(const bis_expr* e, char** out) {
  return guard([&] {
    require(e && out, "null argument to bis_expr_str");
    *out = dup_string(e->e.str());
    return BIS_OK;
  });
}

void bis_string_free(char* s) { delete[] s; }

void bis_expr_free(bis_expr* e) { delete e; }

/* ------------------------------------------------------------------ */

void bis_quad_opts_default(bis_quad_opts* opts) {
  if (!opts) return;
  bis::QuadOptions q;
  opts->abs_tol = q.abs_tol;
  opts->rel_tol = q.rel_tol;
  opts->max_subdivisions = q.max_subdivisions;
}

bis_status bis_antiderivative(const bis_expr* f, double a, double x,
                              const bis_quad_opts* opts, double* out) {
  return guard([&] {
    require(f && out, "null argument to bis_antiderivative");
    const bis::Expr& e = f->e;
    *out = bis::integrate([&e](double u) { return e.eval(u); }, a, x, to_quad(opts));
    return BIS_OK;
  });
}

/* ------------------------------------------------------------------ */

bis_status bis_surface_create(const bis_expr* F, const bis_expr* G, double r0, double s0,
                              const double base_value[3], const bis_quad_opts* opts,
                              bis_surface** out) {
  return guard([&] {
    require(F && G && base_value && out, "null argument to bis_surface_create");
    *out = new bis_surface{bis::Surface::from_exprs(F->e, G->e, {r0, s0},
                                                    to_vec(base_value), to_quad(opts))};
    return BIS_OK;
  });
}

void bis_surface_free(bis_surface* s) { delete s; }

bis_status bis_surface_eval(const bis_surface* s, double r, double sv, double out[3]) {
  return guard([&] {
    require(s && out, "null argument to bis_surface_eval");
    put_vec(s->s.eval({r, sv}), out);
    return BIS_OK;
  });
}

bis_status bis_surface_eval_grid(const bis_surface* s, const double* rs, int nr,
                                 const double* ss, int ns, double* out_xyz) {
  return guard([&] {
    require(s && rs && ss && out_xyz, "null argument to bis_surface_eval_grid");
    require(nr >= 1 && ns >= 1, "grid needs at least one coordinate per axis");
    std::vector<double> rv(rs, rs + nr), sv(ss, ss + ns);
    for (int i = 1; i < nr; ++i)
      require(rv[i] > rv[i - 1], "r coordinates must be strictly increasing");
    for (int j = 1; j < ns; ++j)
      require(sv[j] > sv[j - 1], "s coordinates must be strictly increasing");
    bis::GridEvaluator ev = s->s.grid(std::move(rv), std::move(sv));
    for (int i = 0; i < nr; ++i)
      for (int j = 0; j < ns; ++j)
        put_vec(ev.at(static_cast<size_t>(i), static_cast<size_t>(j)),
                out_xyz + (static_cast<size_t>(i) * ns + j) * 3);
    return BIS_OK;
  });
}

bis_status bis_surface_frame(const bis_surface* s, double r, double sv, bis_frame* out) {
  return guard([&] {
    require(s && out, "null argument to bis_surface_frame");
    bis::FrameReport fr = s->s.tangents({r, sv});
    put_vec(fr.Xr, out->Xr);
    put_vec(fr.Xs, out->Xs);
    put_vec(fr.Xalpha, out->Xalpha);
    put_vec(fr.Xbeta, out->Xbeta);
    out->Eaa = fr.Eaa;
    out->Ebb = fr.Ebb;
    out->Eab = fr.Eab;
    out->regular = fr.regular ? 1 : 0;
    return BIS_OK;
  });
}

int bis_surface_is_regular(const bis_surface* s, double r, double sv, double tol) {
  if (!s) return 0;
  try {
    return s->s.is_regular({r, sv}, tol) ? 1 : 0;
  } catch (...) {
    return 0;
  }
}

bis_status bis_surface_normal(const bis_surface* s, double r, double sv, double out[3]) {
  return guard([&] {
    require(s && out, "null argument to bis_surface_normal");
    put_vec(s->s.unit_normal({r, sv}), out);
    return BIS_OK;
  });
}

bis_status bis_surface_mean_curvature(const bis_surface* s, double r, double sv, double h,
                                      double* out) {
  return guard([&] {
    require(s && out, "null argument to bis_surface_mean_curvature");
    require(h > 0.0, "step must be positive");
    *out = s->s.mean_curvature_fd({r, sv}, h);
    return BIS_OK;
  });
}

bis_status bis_surface_wave_residual(const bis_surface* s, double r, double sv, double h,
                                     double out[3]) {
  return guard([&] {
    require(s && out, "null argument to bis_surface_wave_residual");
    require(h > 0.0, "step must be positive");
    put_vec(s->s.wave_residual({r, sv}, h), out);
    return BIS_OK;
  });
}

void bis_nhat(double r, double s, double out[3]) { put_vec(bis::nhat({r, s}), out); }

bis_status bis_normal_to_param(const double n[3], double tol, double* r, double* s) {
  return guard([&] {
    require(n && r && s, "null argument to bis_normal_to_param");
    bis::ParamPoint p = bis::normal_to_param(to_vec(n), tol);
    *r = p.r;
    *s = p.s;
    return BIS_OK;
  });
}

bis_status bis_stereographic(double alpha, double beta, double out[3]) {
  return guard([&] {
    require(out, "null argument to bis_stereographic");
    put_vec(bis::stereographic(alpha, beta), out);
    return BIS_OK;
  });
}

bis_status bis_surface_pde_sample(const bis_surface* s, double r, double sv, double h,
                                  bis_pde_sample* out) {
  return guard([&] {
    require(s && out, "null argument to bis_surface_pde_sample");
    require(h > 0.0, "step must be positive");
    bis::PdeSample ps = bis::bi_pde_sample(s->s, {r, sv}, h);
    out->in_domain = ps.in_domain ? 1 : 0;
    out->residual = ps.residual;
    out->hyperbolicity = ps.hyperbolicity;
    out->u = ps.u;
    out->v = ps.v;
    out->r_rec = ps.r_rec;
    out->s_rec = ps.s_rec;
    return BIS_OK;
  });
}

/* ------------------------------------------------------------------ */

bis_status bis_strip_load_csv(const char* path, bis_strip** out) {
  return guard([&] {
    require(path && out, "null argument to bis_strip_load_csv");
    *out = new bis_strip{bis::load_strip_csv(path)};
    return BIS_OK;
  });
}

bis_status bis_strip_from_exprs(const char* c1, const char* c2, const char* c3,
                                const char* n1, const char* n2, const char* n3,
                                const char* variable, double t_min, double t_max,
                                int samples, bis_strip** out) {
  return guard([&] {
    require(out, "null argument to bis_strip_from_exprs");
    require(samples >= 3, "a strip needs at least three samples");
    auto c = parse_triple(c1, c2, c3, variable);
    auto n = parse_triple(n1, n2, n3, variable);
    *out = new bis_strip{bis::strip_from_exprs(c, n, t_min, t_max, samples)};
    return BIS_OK;
  });
}

void bis_strip_free(bis_strip* s) { delete s; }

int bis_strip_size(const bis_strip* s) {
  return s ? static_cast<int>(s->s.size()) : 0;
}

bis_status bis_strip_data(const bis_strip* s, double* t, double* c, double* cdot,
                          double* n) {
  return guard([&] {
    require(s, "null argument to bis_strip_data");
    for (size_t i = 0; i < s->s.size(); ++i) {
      const bis::StripSample& sm = s->s.samples[i];
      if (t) t[i] = sm.t;
      if (c) put_vec(sm.c, c + 3 * i);
      if (cdot) put_vec(sm.cdot, cdot + 3 * i);
      if (n) put_vec(sm.n, n + 3 * i);
    }
    return BIS_OK;
  });
}

bis_status bis_strip_validate(bis_strip* s, double tol, bis_strip_report* out) {
  return guard([&] {
    require(s, "null argument to bis_strip_validate");
    bis::StripReport rep = bis::validate_strip(s->s, tol);
    if (out) {
      out->unit_ok = rep.unit_ok ? 1 : 0;
      out->orthogonal_ok = rep.orthogonal_ok ? 1 : 0;
      out->n3_ok = rep.n3_ok ? 1 : 0;
      out->t_increasing = rep.t_increasing ? 1 : 0;
      out->flipped = rep.flipped ? 1 : 0;
      out->worst_unit = rep.worst_unit;
      out->worst_orth = rep.worst_orth;
      out->min_abs_n3 = rep.min_abs_n3;
      out->worst_unit_index = static_cast<int>(rep.worst_unit_index);
      out->worst_orth_index = static_cast<int>(rep.worst_orth_index);
      out->passed = rep.passed() ? 1 : 0;
    }
    return BIS_OK;
  });
}

bis_status bis_strip_param_curve(const bis_strip* s, double tol, double* r, double* sv,
                                 double* rdot, double* sdot, int* degenerate) {
  return guard([&] {
    require(s, "null argument to bis_strip_param_curve");
    bis::ParamCurve pc = bis::param_curve(s->s, tol);
    for (size_t i = 0; i < pc.t.size(); ++i) {
      if (r) r[i] = pc.r[i];
      if (sv) sv[i] = pc.s[i];
      if (rdot) rdot[i] = pc.rdot[i];
      if (sdot) sdot[i] = pc.sdot[i];
      if (degenerate) degenerate[i] = pc.degenerate[i] ? 1 : 0;
    }
    return BIS_OK;
  });
}

/* ------------------------------------------------------------------ */

bis_status bis_bjorling_reconstruct(const bis_strip* s, double consistency_tol, double tol,
                                    bis_fg** out) {
  return guard([&] {
    require(s && out, "null argument to bis_bjorling_reconstruct");
    *out = new bis_fg{bis::reconstruct_fg(s->s, consistency_tol, tol)};
    return BIS_OK;
  });
}

void bis_fg_free(bis_fg* fg) { delete fg; }

int bis_fg_size(const bis_fg* fg) {
  return fg ? static_cast<int>(fg->fg.r_knots().size()) : 0;
}

bis_status bis_fg_tables(const bis_fg* fg, double* r, double* fprime, double* fval,
                         double* sv, double* gprime, double* gval) {
  return guard([&] {
    require(fg, "null argument to bis_fg_tables");
    const auto& rk = fg->fg.r_knots();
    const auto& fpk = fg->fg.fprime_knots();
    const auto& sk = fg->fg.s_knots();
    const auto& gpk = fg->fg.gprime_knots();
    std::vector<double> fk, gk;
    if (fval) fk = fg->fg.f_knots();
    if (gval) gk = fg->fg.g_knots();
    for (size_t i = 0; i < rk.size(); ++i) {
      if (r) r[i] = rk[i];
      if (fprime) fprime[i] = fpk[i];
      if (fval) fval[i] = fk[i];
      if (sv) sv[i] = sk[i];
      if (gprime) gprime[i] = gpk[i];
      if (gval) gval[i] = gk[i];
    }
    return BIS_OK;
  });
}

bis_status bis_fg_domain(const bis_fg* fg, double i1[2], double i2[2]) {
  return guard([&] {
    require(fg, "null argument to bis_fg_domain");
    if (i1) {
      auto d = fg->fg.I1();
      i1[0] = d[0];
      i1[1] = d[1];
    }
    if (i2) {
      auto d = fg->fg.I2();
      i2[0] = d[0];
      i2[1] = d[1];
    }
    return BIS_OK;
  });
}

bis_status bis_fg_eval(const bis_fg* fg, double x, double* fprime, double* gprime) {
  return guard([&] {
    require(fg, "null argument to bis_fg_eval");
    if (fprime) *fprime = fg->fg.fprime(x);
    if (gprime) *gprime = fg->fg.gprime(x);
    return BIS_OK;
  });
}

bis_status bis_fg_set_extension(bis_fg* fg, bis_extend_policy policy, double width) {
  return guard([&] {
    require(fg, "null argument to bis_fg_set_extension");
    require(policy == BIS_EXTEND_CONSTANT || policy == BIS_EXTEND_TAPER,
            "unknown extension policy");
    require(policy == BIS_EXTEND_CONSTANT || width > 0.0,
            "taper width must be positive");
    fg->fg.set_extension(policy == BIS_EXTEND_TAPER ? bis::ExtendPolicy::Taper
                                                    : bis::ExtendPolicy::Constant,
                         width);
    return BIS_OK;
  });
}

bis_status bis_fg_perturb(const bis_fg* fg, double lo, double hi, double amplitude,
                          bis_fg** out) {
  return guard([&] {
    require(fg && out, "null argument to bis_fg_perturb");
    *out = new bis_fg{fg->fg.perturbed(lo, hi, amplitude)};
    return BIS_OK;
  });
}

double bis_fg_bump_amplitude(const bis_fg* fg) {
  return fg ? fg->fg.bump_amplitude() : 0.0;
}

bis_status bis_fg_bump_value(const bis_fg* fg, double x, double* out) {
  return guard([&] {
    require(fg && out, "null argument to bis_fg_bump_value");
    *out = fg->fg.bump_value(x);
    return BIS_OK;
  });
}

bis_status bis_fg_make_surface(const bis_fg* fg, const bis_quad_opts* opts,
                               bis_surface** out) {
  return guard([&] {
    require(fg && out, "null argument to bis_fg_make_surface");
    *out = new bis_surface{fg->fg.make_surface(to_quad(opts))};
    return BIS_OK;
  });
}

bis_status bis_verify_solution(const bis_surface* s, const bis_strip* strip, double tol,
                               double* curve_sup, double* normal_sup) {
  return guard([&] {
    require(s && strip, "null argument to bis_verify_solution");
    bis::SolutionResidual res = bis::verify_solution(s->s, strip->s, tol);
    if (curve_sup) *curve_sup = res.curve_sup;
    if (normal_sup) *normal_sup = res.normal_sup;
    return BIS_OK;
  });
}

/* ------------------------------------------------------------------ */

bis_status bis_tms_solve(const char* c1, const char* c2, const char* c3, const char* n1,
                         const char* n2, const char* n3, const char* variable,
                         double t_min, double t_max, double t0, const bis_quad_opts* opts,
                         bis_tms** out) {
  return guard([&] {
    require(out, "null argument to bis_tms_solve");
    require(t_min < t_max, "t_min must be below t_max");
    require(t_min <= t0 && t0 <= t_max, "t0 must lie in [t_min, t_max]");
    auto c = parse_triple(c1, c2, c3, variable);
    auto n = parse_triple(n1, n2, n3, variable);
    *out = new bis_tms(std::move(c), std::move(n), t_min, t_max, t0, to_quad(opts));
    return BIS_OK;
  });
}

void bis_tms_free(bis_tms* t) { delete t; }

bis_status bis_tms_eval(const bis_tms* t, double tv, double sv, double out[3]) {
  return guard([&] {
    require(t && out, "null argument to bis_tms_eval");
    put_vec(t->t.eval(tv, sv), out);
    return BIS_OK;
  });
}

int bis_tms_data_axis(const bis_tms* t) { return t ? t->t.data_axis() : 0; }

bis_status bis_tms_curve(const bis_tms* t, double tv, double out[3]) {
  return guard([&] {
    require(t && out, "null argument to bis_tms_curve");
    put_vec(t->t.curve(tv), out);
    return BIS_OK;
  });
}

bis_status bis_tms_normal(const bis_tms* t, double tv, double out[3]) {
  return guard([&] {
    require(t && out, "null argument to bis_tms_normal");
    put_vec(t->t.normal_field(tv), out);
    return BIS_OK;
  });
}

bis_status bis_gale_nikaido(bis_surface_fn fn, void* user, double t_lo, double t_hi,
                            double s_lo, double s_hi, int nt, int ns, int comp_a,
                            int comp_b, double fd_step, double tol,
                            bis_jacobian_report* out, double* samples) {
  return guard([&] {
    require(fn != nullptr, "null callback to bis_gale_nikaido");
    auto X = [fn, user](double t, double s) -> bis::Vec3 {
      double buf[3] = {0.0, 0.0, 0.0};
      bis_status st = fn(user, t, s, buf);
      if (st != BIS_OK) throw CallbackFailure{st};
      return {buf[0], buf[1], buf[2]};
    };
    bis::JacobianReport rep =
        bis::gale_nikaido_check(X, t_lo, t_hi, s_lo, s_hi, nt, ns, comp_a, comp_b,
                                fd_step, tol);
    fill_jacobian_report(rep, out, samples);
    return BIS_OK;
  });
}

bis_status bis_tms_gale_nikaido(const bis_tms* t, double t_lo, double t_hi, double s_lo,
                                double s_hi, int nt, int ns, int comp_a, int comp_b,
                                double fd_step, double tol, bis_jacobian_report* out,
                                double* samples) {
  return guard([&] {
    require(t, "null argument to bis_tms_gale_nikaido");
    const bis::TmsSolution& sol = t->t;
    auto X = [&sol](double tv, double sv) { return sol.eval(tv, sv); };
    bis::JacobianReport rep =
        bis::gale_nikaido_check(X, t_lo, t_hi, s_lo, s_hi, nt, ns, comp_a, comp_b,
                                fd_step, tol);
    fill_jacobian_report(rep, out, samples);
    return BIS_OK;
  });
}

}  // extern "C"
