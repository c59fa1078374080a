#include "sparsedom/integrals.hpp"

#include <cmath>
#include <numbers>
#include <vector>

namespace sparsedom {

namespace {

double simpson_panel(const std::function<double(double)>& fn, double a, double fa,
                     double b, double fb, double fm, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = fn(lm), frm = fn(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol)
    return left + right + delta / 15.0;
  return simpson_panel(fn, a, fa, m, fm, flm, left, 0.5 * tol, depth - 1) +
         simpson_panel(fn, m, fm, b, fb, frm, right, 0.5 * tol, depth - 1);
}

// mass[j] ~ c j^-p over the last octaves; returns the fitted p
double fit_decay(const std::vector<double>& mass, int k) {
  return std::log(mass[static_cast<size_t>(k - 6)] / mass[static_cast<size_t>(k)]) /
         std::log(static_cast<double>(k + 1) / static_cast<double>(k - 5));
}

double tail_from_fit(const std::vector<double>& mass, int k, double p) {
  double kk = static_cast<double>(k + 1);
  return mass[static_cast<size_t>(k)] * std::pow(kk, p) * std::pow(kk + 0.5, 1.0 - p) /
         (p - 1.0);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& fn, double a, double b,
                        double rel_tol) {
  if (!(b > a)) return 0.0;
  double fa = fn(a), fb = fn(b), fm = fn(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  double scale = std::abs(whole) > 0.0 ? std::abs(whole) : 1.0;
  return simpson_panel(fn, a, fa, b, fb, fm, whole, rel_tol * scale, 40);
}

TailIntegral integrate_to_infinity(const std::function<double(double)>& g) {
  // s = log t; segment k covers t in [2^k, 2^(k+1)).  500 octaves keeps
  // every intermediate inside double range.
  constexpr int kMaxSeg = 500;
  constexpr double kL = std::numbers::ln2;
  auto in_s = [&](double s) {
    double t = std::exp(s);
    return g(t) * t;
  };
  TailIntegral out;
  std::vector<double> mass;
  double acc = 0.0;
  for (int k = 0; k < kMaxSeg; ++k) {
    double seg = adaptive_simpson(in_s, k * kL, (k + 1) * kL, 1e-12);
    if (!std::isfinite(seg) || seg < 0.0)
      throw DataError("improper integrand produced a non-finite or negative segment");
    acc += seg;
    mass.push_back(seg);
    if (k < 8) continue;
    if (mass[static_cast<size_t>(k)] <= 0.0) {
      // integrand ran out below double precision
      out.converged = true;
      out.value = acc;
      out.segments = k + 1;
      return out;
    }
    double p = fit_decay(mass, k);
    if (p > 1.05) {
      double tail = tail_from_fit(mass, k, p);
      if (tail <= 1e-10 * acc) {
        out.converged = true;
        out.value = acc + tail;
        out.tail = tail;
        out.segments = k + 1;
        out.decay_exponent = p;
        return out;
      }
    }
  }
  // segment budget spent: complete the tail from the fit when the decay
  // clears 1, otherwise report divergence
  int k = kMaxSeg - 1;
  double p = fit_decay(mass, k);
  out.segments = kMaxSeg;
  out.decay_exponent = p;
  if (p > 1.05) {
    out.converged = true;
    out.tail = tail_from_fit(mass, k, p);
    out.value = acc + out.tail;
  } else {
    out.converged = false;
    out.value = acc;
  }
  return out;
}

// Division order matters below: t*t alone can overflow to inf for the large
// octaves and silently zero the integrand.

TailIntegral c_phi(const YoungFunction& phi) {
  constexpr double e = std::numbers::e;
  return integrate_to_infinity([&](double t) {
    return phi.inverse(t) / t / t / std::log(e + t);
  });
}

TailIntegral k_phi(const YoungFunction& phi) {
  constexpr double e = std::numbers::e;
  return integrate_to_infinity([&](double t) {
    return phi.inverse(t) / t / t * std::log(std::log(e * e + t)) / std::log(e + t);
  });
}

TailIntegral composed_tail_integral(const YoungFunction& phi) {
  auto llogl = young_llogl();
  return integrate_to_infinity([&](double t) {
    return phi.inverse(llogl->inverse(t)) / t / t;
  });
}

}  // namespace sparsedom
