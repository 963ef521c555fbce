#include "fluxatom/jump.hpp"

#include <algorithm>
#include <cmath>

namespace fluxatom {

namespace {

struct Channels {
  std::vector<cx> top;  // coefficients multiplying the upper amplitude
  std::vector<cx> mid;  // lower-row contribution from the upper amplitude
  std::vector<cx> bot;  // coefficients multiplying the lower amplitude
  cx z_minus = 0.0;
  double a2 = 0.0;
  double l2 = 0.0;
};

// Output-field jump channels, drive included: the j-th channel has upper row
// (S+ lambda)_j and lower row alpha_j, (S- lambda)_j.  The Hamiltonian below
// carries the matching linear compensation, so the ensemble mean obeys the
// same master equation while jumps count photons of the full output field.
Channels make_channels(const HPModel& m, const Drive& d) {
  Channels ch;
  const CVec spl = m.S_plus * d.lambda;
  const CVec sml = m.S_minus * d.lambda;
  const int n = m.n;
  ch.top.resize(n);
  ch.mid.resize(n);
  ch.bot.resize(n);
  for (int j = 0; j < n; ++j) {
    ch.top[j] = spl(j);
    ch.mid[j] = m.alpha(j);
    ch.bot[j] = sml(j);
  }
  ch.z_minus = m.alpha.dot(sml);
  ch.a2 = m.alpha.squaredNorm();
  ch.l2 = d.lambda.squaredNorm();
  return ch;
}

double max_channel_norm(const Channels& ch) {
  double worst = 0.0;
  for (std::size_t j = 0; j < ch.top.size(); ++j) {
    const double p00 = std::norm(ch.top[j]) + std::norm(ch.mid[j]);
    const double p11 = std::norm(ch.bot[j]);
    const double off = std::abs(std::conj(ch.mid[j]) * ch.bot[j]);
    const double mean = 0.5 * (p00 + p11);
    const double split = std::sqrt(0.25 * (p00 - p11) * (p00 - p11) + off * off);
    worst = std::max(worst, mean + split);
  }
  return worst;
}

}  // namespace

double default_jump_dt(const HPModel& m, const Drive& d) {
  validate_model(m);
  validate_drive(d, m);
  const double worst = max_channel_norm(make_channels(m, d));
  return 0.01 * (0.05 / worst);
}

TrajectoryEnsemble jump_monte_carlo(const HPModel& m, const Drive& d, const BlochState& initial,
                                    double t_end, double dt, int n_traj, std::uint64_t seed,
                                    int n_samples) {
  validate_model(m);
  validate_drive(d, m);
  validate_state(initial);
  if (n_traj < 1) fail(Errc::StateOutOfDomain, "n_traj must be >= 1");
  if (n_samples < 1) fail(Errc::StateOutOfDomain, "n_samples must be >= 1");
  if (!(t_end >= 0.0)) fail(Errc::StateOutOfDomain, "t_end must be >= 0");

  const Channels ch = make_channels(m, d);
  const double worst = max_channel_norm(ch);
  if (dt <= 0.0) dt = 0.01 * (0.05 / worst);
  if (!(worst * dt <= 0.05 * (1.0 + 1e-12))) {
    fail(Errc::StepTooLarge, "step violates max_j ||C_j^dag C_j|| dt <= 0.05");
  }

  const long n_steps = (t_end > 0.0) ? static_cast<long>(std::ceil(t_end / dt - 1e-9)) : 0;
  const double dtn = (n_steps > 0) ? t_end / static_cast<double>(n_steps) : dt;

  // Sample at the step grid points nearest to an even division of [0, t_end].
  std::vector<long> sample_idx;
  sample_idx.reserve(n_samples + 1);
  for (int k = 0; k <= n_samples; ++k) {
    const long idx = std::lround(static_cast<double>(k) * static_cast<double>(n_steps) /
                                 static_cast<double>(n_samples));
    if (sample_idx.empty() || idx > sample_idx.back()) sample_idx.push_back(idx);
  }
  const std::size_t n_rec = sample_idx.size();

  const int n = m.n;
  std::vector<double> acc_uu(n_rec, 0.0), acc_dd(n_rec, 0.0);
  std::vector<double> acc_vre(n_rec, 0.0), acc_vim(n_rec, 0.0);
  std::vector<double> acc_tot(n_rec, 0.0);
  std::vector<std::vector<double>> acc_chan(n_rec, std::vector<double>(n, 0.0));

  // Initial mixture: decompose rho(0) and let each trajectory draw its branch.
  Eigen::SelfAdjointEigenSolver<Mat2> es(initial.rho());
  double p_lo = std::min(1.0, std::max(0.0, es.eigenvalues()(0)));
  double p_hi = std::min(1.0, std::max(0.0, es.eigenvalues()(1)));
  const double psum = p_lo + p_hi;
  p_lo /= psum;
  p_hi /= psum;
  const Eigen::Vector2cd vec_lo = es.eigenvectors().col(0);
  const Eigen::Vector2cd vec_hi = es.eigenvectors().col(1);
  const bool mixed = std::min(p_lo, p_hi) > 1e-14;

  // Compensated non-Hermitian step generator K = H' - (i/2) sum_j C_j^dag C_j.
  // Its lower-left entry cancels between the two parts.
  const double half_det = 0.5 * (m.omega0 - d.omega);
  const cx K00 = cx(half_det, -0.5 * (ch.l2 + ch.a2));
  const cx K01 = cx(0.0, -1.0) * ch.z_minus;
  const cx K10 = 0.0;
  const cx K11 = cx(-half_det, -0.5 * ch.l2);

  std::vector<double> pbuf(n, 0.0);
  std::vector<long> counts(n, 0);

  for (int i = 0; i < n_traj; ++i) {
    SplitMix64 rng(splitmix_hash(seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(i + 1)));
    cx up, dn;
    if (mixed) {
      const Eigen::Vector2cd& pick = (rng.uniform01() < p_hi) ? vec_hi : vec_lo;
      up = pick(0);
      dn = pick(1);
    } else {
      const Eigen::Vector2cd& pick = (p_hi >= p_lo) ? vec_hi : vec_lo;
      up = pick(0);
      dn = pick(1);
    }
    std::fill(counts.begin(), counts.end(), 0L);

    std::size_t rec = 0;
    for (long s = 0; s <= n_steps; ++s) {
      if (rec < n_rec && sample_idx[rec] == s) {
        const double uu = std::norm(up);
        const double dd = std::norm(dn);
        if (!std::isfinite(uu) || !std::isfinite(dd)) {
          fail(Errc::NonFinite, "trajectory state left the finite domain");
        }
        acc_uu[rec] += uu;
        acc_dd[rec] += dd;
        const cx v = up * std::conj(dn);
        acc_vre[rec] += v.real();
        acc_vim[rec] += v.imag();
        double tot = 0.0;
        for (int j = 0; j < n; ++j) {
          acc_chan[rec][j] += static_cast<double>(counts[j]);
          tot += static_cast<double>(counts[j]);
        }
        acc_tot[rec] += tot;
        ++rec;
      }
      if (s == n_steps) break;

      double ptot = 0.0;
      for (int j = 0; j < n; ++j) {
        const cx tj = ch.top[j] * up;
        const cx bj = ch.mid[j] * up + ch.bot[j] * dn;
        const double pj = dtn * (std::norm(tj) + std::norm(bj));
        pbuf[j] = pj;
        ptot += pj;
      }
      const double xi = rng.uniform01();
      if (xi < ptot) {
        int k = n - 1;
        double c = 0.0;
        for (int j = 0; j < n; ++j) {
          c += pbuf[j];
          if (xi < c) {
            k = j;
            break;
          }
        }
        const cx nu = ch.top[k] * up;
        const cx nd = ch.mid[k] * up + ch.bot[k] * dn;
        const double nrm = std::sqrt(std::norm(nu) + std::norm(nd));
        up = nu / nrm;
        dn = nd / nrm;
        ++counts[k];
      } else {
        const cx nu = up - cx(0.0, dtn) * (K00 * up + K01 * dn);
        const cx nd = dn - cx(0.0, dtn) * (K10 * up + K11 * dn);
        const double nrm = std::sqrt(std::norm(nu) + std::norm(nd));
        up = nu / nrm;
        dn = nd / nrm;
      }
    }
  }

  TrajectoryEnsemble ens;
  ens.n_traj = n_traj;
  ens.seed = seed;
  ens.dt = dtn;
  ens.t.resize(n_rec);
  ens.rho.resize(n_rec);
  ens.jumps_total.resize(n_rec);
  ens.jumps_channel.assign(n_rec, std::vector<double>(n, 0.0));
  const double inv = 1.0 / static_cast<double>(n_traj);
  for (std::size_t k = 0; k < n_rec; ++k) {
    ens.t[k] = static_cast<double>(sample_idx[k]) * dtn;
    const cx v(acc_vre[k] * inv, acc_vim[k] * inv);
    ens.rho[k] << acc_uu[k] * inv, v, std::conj(v), acc_dd[k] * inv;
    ens.jumps_total[k] = acc_tot[k] * inv;
    for (int j = 0; j < n; ++j) ens.jumps_channel[k][j] = acc_chan[k][j] * inv;
  }
  return ens;
}

}  // namespace fluxatom
