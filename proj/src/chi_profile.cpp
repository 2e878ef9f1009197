#include "ewild/chi_profile.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ewild {

ChiProfile ChiProfile::constant(double chi0) {
  if (!(chi0 > 0.0)) throw std::invalid_argument("ChiProfile: chi0 must be positive");
  ChiProfile p;
  p.kind_ = Kind::Constant;
  p.chi0_ = chi0;
  return p;
}

ChiProfile ChiProfile::ode(double chi0, double C1, double C2) {
  if (!(chi0 > 0.0)) throw std::invalid_argument("ChiProfile: chi0 must be positive");
  if (C1 < 0.0 || C2 < 0.0) throw std::invalid_argument("ChiProfile: C1, C2 must be >= 0");
  ChiProfile p;
  p.kind_ = Kind::Ode;
  p.chi0_ = chi0;
  p.C1_ = C1;
  p.C2_ = C2;
  const double w0 = std::sqrt(chi0);
  if (C1 == 0.0 && C2 == 0.0) {
    p.horizon_ = std::numeric_limits<double>::infinity();
  } else if (C2 == 0.0) {
    p.horizon_ = 2.0 * w0 / C1;
  } else if (C1 == 0.0) {
    p.horizon_ = std::numeric_limits<double>::infinity();  // w ~ 1/t, never zero
  } else {
    p.horizon_ = 2.0 * std::atan(w0 * std::sqrt(C2 / C1)) / std::sqrt(C1 * C2);
  }
  return p;
}

ChiProfile ChiProfile::sampled(std::vector<double> times, std::vector<double> values) {
  if (times.size() < 2 || times.size() != values.size())
    throw std::invalid_argument("ChiProfile: need matched samples (>= 2)");
  ChiProfile p;
  p.kind_ = Kind::Sampled;
  p.ts_ = std::move(times);
  p.vs_ = std::move(values);
  p.horizon_ = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p.vs_.size(); ++i) {
    if (p.vs_[i] <= 0.0) {
      p.horizon_ = p.ts_[i];
      break;
    }
  }
  return p;
}

double ChiProfile::chi(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return chi0_;
    case Kind::Ode: {
      if (t >= horizon_) return 0.0;
      if (t <= 0.0 && t > -1e-300) t = 0.0;
      const double w0 = std::sqrt(chi0_);
      double w;
      if (C1_ == 0.0 && C2_ == 0.0) {
        w = w0;
      } else if (C2_ == 0.0) {
        w = w0 - 0.5 * C1_ * t;
      } else if (C1_ == 0.0) {
        w = w0 / (1.0 + 0.5 * w0 * C2_ * t);
      } else {
        const double r = std::sqrt(C1_ / C2_);
        w = r * std::tan(std::atan(w0 / r) - 0.5 * std::sqrt(C1_ * C2_) * t);
      }
      return w > 0.0 ? w * w : 0.0;
    }
    case Kind::Sampled: {
      if (t <= ts_.front()) return vs_.front();
      if (t >= ts_.back()) return vs_.back();
      std::size_t i = 1;
      while (i < ts_.size() && ts_[i] < t) ++i;
      const double u = (t - ts_[i - 1]) / (ts_[i] - ts_[i - 1]);
      return (1.0 - u) * vs_[i - 1] + u * vs_[i];
    }
  }
  return 0.0;
}

double ChiProfile::dchi(double t) const {
  switch (kind_) {
    case Kind::Constant:
      return 0.0;
    case Kind::Ode: {
      if (t >= horizon_) return 0.0;
      const double c = chi(t);
      return -C1_ * std::sqrt(c) - C2_ * c * std::sqrt(c);
    }
    case Kind::Sampled: {
      if (t <= ts_.front() || t >= ts_.back()) return 0.0;
      std::size_t i = 1;
      while (i < ts_.size() && ts_[i] < t) ++i;
      return (vs_[i] - vs_[i - 1]) / (ts_[i] - ts_[i - 1]);
    }
  }
  return 0.0;
}

ChiOdeResult solve_chi_ode(double chi0, double C1, double C2, double T) {
  ChiOdeResult out;
  out.profile = ChiProfile::ode(chi0, C1, C2);
  out.horizon = out.profile.horizon();

  // Adaptive RK4 (step doubling) on w' = -(C1 + C2 w^2)/2, cross-checked
  // against the closed form until w reaches 0 or t = T.
  auto f = [&](double w) { return -0.5 * (C1 + C2 * w * w); };
  auto rk4 = [&](double w, double h) {
    const double k1 = f(w);
    const double k2 = f(w + 0.5 * h * k1);
    const double k3 = f(w + 0.5 * h * k2);
    const double k4 = f(w + h * k3);
    return w + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };
  double t = 0.0, w = std::sqrt(chi0);
  double h = std::min(T, 1e-2 * (1.0 + T));
  double worst = 0.0;
  const double t_end = std::min(T, out.horizon);
  int guard = 0;
  while (t < t_end && w > 1e-12 * std::sqrt(chi0) && ++guard < 2000000) {
    h = std::min(h, t_end - t);
    const double w_full = rk4(w, h);
    const double w_half = rk4(rk4(w, 0.5 * h), 0.5 * h);
    const double err = std::abs(w_full - w_half);
    const double tol = 1e-11 * (1.0 + std::abs(w));
    if (err > tol && h > 1e-12 * (1.0 + T)) {
      h *= 0.5;
      continue;
    }
    w = w_half + (w_half - w_full) / 15.0;
    t += h;
    if (err < 0.0625 * tol) h *= 2.0;
    const double chi_exact = out.profile.chi(t);
    const double chi_num = w > 0.0 ? w * w : 0.0;
    const double denom = std::max(chi_exact, 1e-10 * chi0);
    // Skip the immediate vicinity of the horizon where chi -> 0.
    if (chi_exact > 1e-6 * chi0)
      worst = std::max(worst, std::abs(chi_num - chi_exact) / denom);
  }
  out.agreement_rel = worst;
  return out;
}

double maximal_time(const ChiProfile& chi, const std::vector<double>& times,
                    const std::vector<double>& lambda, int n) {
  if (times.size() != lambda.size() || times.size() < 2)
    throw std::invalid_argument("maximal_time: need matched time/lambda samples");
  auto lam = [&](double t) -> double {
    if (t <= times.front()) return lambda.front();
    if (t >= times.back()) return lambda.back();
    std::size_t i = 1;
    while (i < times.size() && times[i] < t) ++i;
    const double u = (t - times[i - 1]) / (times[i] - times[i - 1]);
    return (1.0 - u) * lambda[i - 1] + u * lambda[i];
  };
  auto gap = [&](double t) { return chi.chi(t) - n * lam(t); };

  if (!(gap(0.0) > 0.0)) {
    std::ostringstream os;
    os << "maximal_time: chi(0) = " << chi.chi(0.0) << " <= n*lambda(0) = "
       << n * lam(0.0) << "; need chi0 > " << n * lam(0.0);
    throw std::runtime_error(os.str());
  }

  bool lambda_zero = true;
  for (double l : lambda)
    if (l != 0.0) lambda_zero = false;
  if (lambda_zero) return chi.horizon();

  double t_end = times.back();
  if (std::isfinite(chi.horizon())) t_end = std::min(t_end, chi.horizon());

  // Refined scan, then bisection across the first sign change.
  const int refine = 64;
  double prev_t = 0.0;
  for (std::size_t i = 1; i < times.size(); ++i) {
    const double t0 = times[i - 1], t1 = std::min(times[i], t_end);
    if (!(t1 > t0)) break;
    for (int k = 1; k <= refine; ++k) {
      const double t = t0 + (t1 - t0) * k / refine;
      if (gap(t) <= 0.0) {
        double lo = prev_t, hi = t;
        for (int it = 0; it < 200; ++it) {
          const double mid = 0.5 * (lo + hi);
          (gap(mid) > 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
      }
      prev_t = t;
    }
    if (t1 >= t_end) break;
  }
  return t_end;
}

}  // namespace ewild
