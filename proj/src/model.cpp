#include "fluxatom/model.hpp"

#include <algorithm>
#include <cmath>

namespace fluxatom {

namespace {

void check_unitary(const CMat& s, const char* name) {
  const int n = static_cast<int>(s.rows());
  const double defect = (s.adjoint() * s - CMat::Identity(n, n)).norm();
  if (!(defect <= 1e-10)) {
    fail(Errc::NonUnitaryS, std::string(name) + " unitarity defect " + std::to_string(defect));
  }
}

}  // namespace

void validate_model(const HPModel& m) {
  if (m.n < 1) fail(Errc::DimensionMismatch, "model dimension must be >= 1");
  if (m.alpha.size() != m.n) fail(Errc::DimensionMismatch, "alpha length != n");
  if (m.S_plus.rows() != m.n || m.S_plus.cols() != m.n) {
    fail(Errc::DimensionMismatch, "S_plus shape != n x n");
  }
  if (m.S_minus.rows() != m.n || m.S_minus.cols() != m.n) {
    fail(Errc::DimensionMismatch, "S_minus shape != n x n");
  }
  require_finite(m.alpha, "alpha");
  require_finite(m.S_plus, "S_plus");
  require_finite(m.S_minus, "S_minus");
  if (!std::isfinite(m.omega0)) fail(Errc::NonFinite, "omega0");
  if (!(m.alpha.norm() > 0.0)) fail(Errc::ZeroAlpha, "alpha must be nonzero");
  if (!(m.omega0 > 0.0)) fail(Errc::NonPositiveFrequency, "omega0 must be positive");
  check_unitary(m.S_plus, "S_plus");
  check_unitary(m.S_minus, "S_minus");
}

void validate_drive(const Drive& d, const HPModel& m) {
  if (d.lambda.size() != m.n) fail(Errc::DimensionMismatch, "lambda length != n");
  require_finite(d.lambda, "lambda");
  if (!std::isfinite(d.omega)) fail(Errc::NonFinite, "omega");
  if (!(d.omega > 0.0)) fail(Errc::NonPositiveFrequency, "omega must be positive");
}

HPModel make_model(double omega0, CVec alpha, CMat S_plus, CMat S_minus) {
  HPModel m;
  m.n = static_cast<int>(alpha.size());
  m.omega0 = omega0;
  m.alpha = std::move(alpha);
  m.S_plus = std::move(S_plus);
  m.S_minus = std::move(S_minus);
  validate_model(m);
  return m;
}

Drive make_drive(CVec lambda, double omega) {
  Drive d;
  d.lambda = std::move(lambda);
  d.omega = omega;
  require_finite(d.lambda, "lambda");
  if (!(omega > 0.0)) fail(Errc::NonPositiveFrequency, "omega must be positive");
  return d;
}

RotatingGenerators rotating_generators(const HPModel& m, const Drive& d) {
  validate_model(m);
  validate_drive(d, m);

  const CVec p = m.S_plus * d.lambda - d.lambda;
  const CVec q = m.S_minus * d.lambda - d.lambda;

  RotatingGenerators gen;
  gen.R.resize(static_cast<std::size_t>(m.n));
  for (int j = 0; j < m.n; ++j) {
    Mat2 r;
    r << p(j), 0.0, m.alpha(j), q(j);
    gen.R[static_cast<std::size_t>(j)] = r;
  }

  const double half_det = 0.5 * (m.omega0 - d.omega);
  const double hp = half_det - (d.lambda.dot(m.S_plus * d.lambda)).imag();
  const double hm = -half_det - (d.lambda.dot(m.S_minus * d.lambda)).imag();
  const cx h01 = cx(0.0, -0.5) * m.alpha.dot(m.S_minus * d.lambda + d.lambda);
  gen.H << hp, h01, std::conj(h01), hm;

  Mat2 rr = Mat2::Zero();
  for (const Mat2& r : gen.R) rr += r.adjoint() * r;
  gen.K = gen.H - cx(0.0, 0.5) * rr;
  return gen;
}

GSystem g_system(const HPModel& m, const Drive& d, bool crosscheck) {
  validate_model(m);
  validate_drive(d, m);

  GSystem gs;
  gs.alpha_norm2 = m.alpha.squaredNorm();
  gs.lambda_norm2 = d.lambda.squaredNorm();
  const double a2 = gs.alpha_norm2;

  const CVec spl = m.S_plus * d.lambda;
  const CVec sml = m.S_minus * d.lambda;
  gs.z_plus = m.alpha.dot(spl);
  gs.z_minus = m.alpha.dot(sml);

  gs.alpha_hat = m.alpha / m.alpha.norm();
  gs.P_alpha = gs.alpha_hat * gs.alpha_hat.adjoint();
  gs.P_perp = CMat::Identity(m.n, m.n) - gs.P_alpha;
  gs.DeltaS = m.S_plus - m.S_minus;

  const CVec dsl = spl - sml;
  const CVec dsl_perp = dsl - gs.alpha_hat * gs.alpha_hat.dot(dsl);
  gs.mu2 = a2 + dsl_perp.squaredNorm();
  gs.kappa2 = gs.mu2 + std::norm(gs.z_plus - gs.z_minus) / a2;

  const CVec sml_perp = sml - gs.alpha_hat * gs.alpha_hat.dot(sml);
  gs.delta_omega = d.omega - m.omega0 - spl.dot(sml_perp).imag();
  gs.J = (std::conj(gs.z_plus) * gs.z_minus).imag() / a2;
  gs.b = cx(0.5 * gs.kappa2, -(gs.delta_omega - gs.J));

  const cx zsum = gs.z_plus + gs.z_minus;
  gs.G << cx(-a2), -std::conj(gs.z_minus), -gs.z_minus,
          zsum, -gs.b, cx(0.0),
          std::conj(zsum), cx(0.0), -std::conj(gs.b);
  gs.w << cx(0.0), gs.z_minus, std::conj(gs.z_minus);

  // Sum-of-squares form, numerically the safer of the two.
  const double t1 = gs.mu2 + 2.0 * std::norm(gs.z_minus) / a2 -
                    2.0 * (std::conj(gs.z_plus) * gs.z_minus).real() / a2;
  const double t2 = std::norm(zsum) / a2;
  const double t3 = 2.0 * gs.mu2 + std::norm(gs.z_plus - gs.z_minus) / a2;
  gs.Gamma2 = t1 * t1 + t2 * t3;
  gs.Gamma2_alt = gs.kappa2 * gs.kappa2 +
                  4.0 * gs.kappa2 * (std::conj(gs.z_minus) * zsum).real() / a2 -
                  4.0 * gs.J * gs.J;

  if (crosscheck) {
    const double scale = std::max({1.0, std::abs(gs.Gamma2), std::abs(gs.Gamma2_alt)});
    if (!(std::abs(gs.Gamma2_alt - gs.Gamma2) <= 1e-10 * scale)) {
      fail(Errc::Gamma2Mismatch, "two line-width formulas disagree: " +
                                     std::to_string(gs.Gamma2) + " vs " + std::to_string(gs.Gamma2_alt));
    }
  }
  return gs;
}

}  // namespace fluxatom
