#include "fluxatom/numerics.hpp"

#include <cmath>

namespace fluxatom {

Mat2 pauli_z() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

Mat2 pauli_plus() {
  Mat2 m;
  m << 0.0, 1.0, 0.0, 0.0;
  return m;
}

Mat2 pauli_minus() {
  Mat2 m;
  m << 0.0, 0.0, 1.0, 0.0;
  return m;
}

Mat2 proj_up() {
  Mat2 m;
  m << 1.0, 0.0, 0.0, 0.0;
  return m;
}

Mat2 proj_down() {
  Mat2 m;
  m << 0.0, 0.0, 0.0, 1.0;
  return m;
}

bool all_finite(const CVec& v) { return v.allFinite(); }
bool all_finite(const CMat& m) { return m.allFinite(); }

void require_finite(const CVec& v, const char* what) {
  if (!v.allFinite()) fail(Errc::NonFinite, what);
}

void require_finite(const CMat& m, const char* what) {
  if (!m.allFinite()) fail(Errc::NonFinite, what);
}

double trace_distance(const Mat2& a, const Mat2& b) {
  const Mat2 d = a - b;
  const double p = d(0, 0).real();
  const double q = d(1, 1).real();
  const double mean = 0.5 * (p + q);
  const double s = std::sqrt(0.25 * (p - q) * (p - q) + std::norm(d(0, 1)));
  return 0.5 * (std::abs(mean + s) + std::abs(mean - s));
}

Vec3 solve_linear3(const Mat3& A, const Vec3& b) {
  require_finite(CMat(A), "solve_linear3 matrix");
  const double nA = A.norm();
  Eigen::PartialPivLU<Mat3> lu(A);
  const double adet = std::abs(lu.determinant());
  if (!(adet > 1e-14 * nA * nA * nA)) {
    fail(Errc::SingularMatrix, "pivot threshold |det| <= 1e-14 ||A||^3");
  }
  const Vec3 x = lu.solve(b);
  const double resid = (A * x - b).norm();
  if (!(resid <= 1e-10 * (nA * x.norm() + b.norm()))) {
    fail(Errc::SingularMatrix, "solution residual exceeds 1e-10 (||A|| ||x|| + ||b||)");
  }
  return x;
}

double legendre_p(int l, double x) {
  if (l < 0) fail(Errc::StateOutOfDomain, "legendre_p: negative degree");
  if (l == 0) return 1.0;
  double pm1 = 1.0;
  double p = x;
  for (int k = 2; k <= l; ++k) {
    const double pk = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
    pm1 = p;
    p = pk;
  }
  return p;
}

QuadratureRule gauss_legendre(int order) {
  if (order < 1) fail(Errc::StateOutOfDomain, "gauss_legendre: order must be >= 1");
  QuadratureRule rule;
  rule.order = order;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Tricomi-style initial guess, then Newton on P_order.
    double x = std::cos(pi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double pm1 = 1.0;
      double p = x;
      for (int k = 2; k <= order; ++k) {
        const double pk = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
        pm1 = p;
        p = pk;
      }
      dp = order * (x * p - pm1) / (x * x - 1.0);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) {
        pm1 = 1.0;
        p = x;
        for (int k = 2; k <= order; ++k) {
          const double pk = ((2 * k - 1) * x * p - (k - 1) * pm1) / k;
          pm1 = p;
          p = pk;
        }
        dp = order * (x * p - pm1) / (x * x - 1.0);
        break;
      }
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.weights[i] = w;
    rule.nodes[order - 1 - i] = x;
    rule.weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) {
    // Central node of an odd rule is exactly zero.
    rule.nodes[order / 2] = 0.0;
  }
  return rule;
}

std::uint64_t SplitMix64::next() {
  state_ += 0x9E3779B97F4A7C15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - uniform01();  // (0, 1], keeps the log finite
  const double u2 = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * pi * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

std::uint64_t splitmix_hash(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

CMat haar_unitary(int n, std::uint64_t seed) {
  if (n < 1) fail(Errc::DimensionMismatch, "haar_unitary: n must be >= 1");
  SplitMix64 rng(seed);
  CMat g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      g(i, j) = cx(rng.normal(), rng.normal());
    }
  }
  Eigen::HouseholderQR<CMat> qr(g);
  CMat u = qr.householderQ() * CMat::Identity(n, n);
  const CMat r = qr.matrixQR();
  for (int j = 0; j < n; ++j) {
    const cx rjj = r(j, j);
    const double a = std::abs(rjj);
    // Fixing the R-diagonal phases makes the distribution exactly Haar.
    u.col(j) *= (a > 0.0) ? rjj / a : cx(1.0, 0.0);
  }
  return u;
}

std::vector<Rk4Sample> rk4_evolve(const std::function<CVec(double, const CVec&)>& deriv,
                                  const CVec& y0, double t_end, double h) {
  if (!(h > 0.0)) fail(Errc::StateOutOfDomain, "rk4_evolve: step must be positive");
  if (!(t_end >= 0.0)) fail(Errc::StateOutOfDomain, "rk4_evolve: t_end must be >= 0");
  require_finite(y0, "rk4_evolve initial state");

  std::vector<Rk4Sample> out;
  out.reserve(static_cast<std::size_t>(t_end / h) + 2);
  CVec y = y0;
  double t = 0.0;
  out.push_back({t, y});
  const double edge = t_end * (1.0 - 1e-14);
  while (t < edge) {
    const double step = std::min(h, t_end - t);
    const CVec k1 = deriv(t, y);
    const CVec k2 = deriv(t + 0.5 * step, y + (0.5 * step) * k1);
    const CVec k3 = deriv(t + 0.5 * step, y + (0.5 * step) * k2);
    const CVec k4 = deriv(t + step, y + step * k3);
    y = y + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!y.allFinite()) fail(Errc::NonFinite, "rk4_evolve: state left the finite domain");
    t = (t_end - t <= h * (1.0 + 1e-12)) ? t_end : t + step;
    out.push_back({t, y});
  }
  // accumulated rounding can stop a relative 1e-14 short of the horizon
  out.back().t = t_end;
  return out;
}

}  // namespace fluxatom
