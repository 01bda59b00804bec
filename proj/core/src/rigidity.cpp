#include "pinchlab/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pinchlab {

RadialCurvatureProfile constant_profile(double k, double R) {
  return {k, k, [k](double) { return k; }, R};
}

RadialCurvatureProfile linear_profile(double mu, double delta, double R) {
  return {mu, delta, [mu, delta, R](double t) { return mu + (delta - mu) * t / R; }, R};
}

RadialCurvatureProfile bump_profile(double mu, double delta, double R) {
  return {mu, delta,
          [mu, delta, R](double t) {
            const double u = (t - 0.5 * R) / (0.125 * R);
            return delta - (delta - mu) * std::exp(-u * u);
          },
          R};
}

namespace {

void check_profile(const RadialCurvatureProfile& p, double dt) {
  if (!(p.R > 0.0)) throw std::invalid_argument("profile needs R > 0");
  if (!(p.mu <= p.delta)) throw std::invalid_argument("profile needs mu <= delta");
  if (!p.k) throw std::invalid_argument("profile needs a curvature callable");
  if (p.delta > 0.0 && !(p.R < M_PI / std::sqrt(p.delta)))
    throw std::invalid_argument("profile needs R < pi/sqrt(delta)");
  if (!(dt > 0.0) || dt > p.R / 1000.0)
    throw std::invalid_argument("integrate_riccati needs 0 < dt <= R/1000");
}

}  // namespace

RiccatiSolution integrate_riccati(const RadialCurvatureProfile& profile, double dt) {
  check_profile(profile, dt);
  const double R = profile.R;
  const double d0 = std::max(10.0 * dt, 1e-4 * R);

  RiccatiSolution sol;
  sol.d0 = d0;
  sol.delta = profile.delta;
  sol.mu = profile.mu;
  sol.R = R;

  // Desingularized variable w = rho - 1/t (smooth through t = 0):
  //   w' = -k(t) - 2 w / t - w^2,  w(d0) = -k(d0) d0 / 3,
  // with J = J0 (t/d0) exp(int w), J0 = s_delta(d0), so constant-curvature
  // profiles reproduce J = s_delta(t) to integrator accuracy.
  auto w_dot = [&](double t, double w) { return -profile.k(t) - 2.0 * w / t - w * w; };

  double t = d0;
  double w = -profile.k(d0) * d0 / 3.0;
  double iw = 0.0;  // int_{d0}^t w
  const double j0 = s_delta(profile.delta, d0);
  const double s0 = j0;

  auto push = [&](double tt, double ww, double ii) {
    const double kval = profile.k(tt);
    if (kval < profile.mu - 1e-9 || kval > profile.delta + 1e-9)
      throw std::domain_error("integrate_riccati: k(t) escapes [mu, delta]");
    const double rr = 1.0 / tt + ww;
    sol.grid.push_back(tt);
    sol.rho.push_back(rr);
    const double jj = j0 * (tt / d0) * std::exp(ii);
    sol.J.push_back(jj);
    const double phi = cot_delta(profile.delta, tt);
    // F = (rho - phi) exp(int rho + phi) = (rho - phi) J s_delta(t) / s0^2
    sol.F_aux.push_back((rr - phi) * jj * s_delta(profile.delta, tt) / (s0 * s0));
    sol.sandwich_violation =
        std::max({sol.sandwich_violation, phi - rr, rr - cot_delta(profile.mu, tt)});
  };
  push(t, w, iw);

  while (t < R - 1e-15 * R) {
    const double h = std::min(dt, R - t);
    const double k1 = w_dot(t, w);
    const double w2 = w + 0.5 * h * k1;
    const double k2 = w_dot(t + 0.5 * h, w2);
    const double w3 = w + 0.5 * h * k2;
    const double k3 = w_dot(t + 0.5 * h, w3);
    const double w4 = w + h * k3;
    const double k4 = w_dot(t + h, w4);
    iw += h / 6.0 * (w + 2.0 * w2 + 2.0 * w3 + w4);
    w += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += h;
    if (!std::isfinite(w) || std::abs(w) > 1e8) {
      std::ostringstream msg;
      msg << "integrate_riccati: focal blow-up near t = " << t;
      throw std::runtime_error(msg.str());
    }
    push(t, w, iw);
  }
  return sol;
}

RigidityCertificate rigidity_certificate(const RiccatiSolution& sol, double eps) {
  if (eps < 0.0) throw std::invalid_argument("rigidity_certificate needs eps >= 0");
  if (sol.grid.empty()) throw std::invalid_argument("empty solution");
  const double delta = sol.delta, mu = sol.mu, R = sol.R;
  const int n = sol.n;

  const double phiR = cot_delta(delta, R);
  if (sol.rho.back() > phiR + n * eps + 1e-7 * (1.0 + std::abs(phiR)))
    throw std::runtime_error("rigidity_certificate: boundary hypothesis fails");

  RigidityCertificate cert;
  cert.F_monotone = true;
  for (std::size_t i = 1; i < sol.F_aux.size(); ++i)
    if (sol.F_aux[i] < sol.F_aux[i - 1] - 1e-9 * (1.0 + std::abs(sol.F_aux[i - 1])))
      cert.F_monotone = false;

  cert.min_ratio = 1e300;
  for (std::size_t i = 0; i < sol.grid.size(); ++i) {
    const double ratio = sol.J[i] / s_delta(delta, sol.grid[i]);
    cert.min_ratio = std::min(cert.min_ratio, ratio);
    cert.max_ratio = std::max(cert.max_ratio, ratio);
  }

  // Proof-chain constant: split at d0c ~ eps^{1/4}, bound the log-ratio by the
  // initial-segment term sqrt(eps) plus the integrated F-transport term.
  double d0c = 0.5 * R;
  if (delta - mu > 1e-12)
    d0c = std::sqrt(6.0 / (delta - mu)) * std::pow(eps, 0.25);
  d0c = std::clamp(d0c, sol.d0, 0.5 * R);
  const double transport = s_delta(mu, R) * s_delta(delta, R) /
                           (s_delta(mu, d0c) * s_delta(delta, d0c));
  const double sd0 = s_delta(delta, d0c);
  const double tail = sd0 * sd0 * (cot_delta(delta, d0c) - phiR);
  const double log_bound = std::sqrt(eps) + n * eps * transport * tail;
  cert.d0_cert = d0c;

  if (eps > 0.0) {
    cert.C_explicit = log_bound / std::sqrt(eps);
    cert.ok = cert.min_ratio >= 1.0 - 1e-9 &&
              cert.max_ratio <= std::exp(log_bound) * (1.0 + 1e-7);
  } else {
    cert.C_explicit = 0.0;
    cert.ok = cert.min_ratio >= 1.0 - 1e-9 && cert.max_ratio - 1.0 <= 1e-6;
  }
  return cert;
}

MonotonicityResult volume_monotonicity_check(const SurfaceMesh& mesh, const Vec& x0,
                                             double Lambda, double r0, int samples) {
  if (samples < 2) throw std::invalid_argument("volume_monotonicity_check needs samples >= 2");
  if (!(r0 > 0.0)) throw std::invalid_argument("volume_monotonicity_check needs r0 > 0");
  const double delta = mesh.ambient.delta;
  const int n = mesh.ambient.dim - 1;
  const double rate = n * Lambda + std::sqrt(std::max(0.0, -delta));

  MonotonicityResult res;
  res.s.resize(samples);
  res.F.resize(samples);
  for (int j = 0; j < samples; ++j) {
    const double s = r0 * static_cast<double>(j + 1) / samples;
    const double sd = s_delta(delta, s);
    res.s[j] = s;
    res.F[j] = extrinsic_ball_area(mesh, x0, s) / std::pow(sd, n);
  }
  res.worst_margin = 1e300;
  for (int i = 0; i < samples; ++i) {
    if (res.F[i] <= 0.0) continue;
    for (int j = i + 1; j < samples; ++j) {
      const double bound = res.F[j] * std::exp(rate * (res.s[j] - res.s[i])) * 1.03;
      res.worst_margin = std::min(res.worst_margin, bound / res.F[i]);
    }
  }
  res.ok = res.worst_margin >= 1.0;
  return res;
}

}  // namespace pinchlab
