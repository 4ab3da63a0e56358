#include "dap/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include <fmt/format.h>

#include "dap/errors.hpp"
#include "dap/math.hpp"
#include "dap/quadrature.hpp"

namespace dap {

LognormalParams lognormal_from_moments(double e1, double e2) {
  if (!(e1 > 0.0)) throw ValidationError("lognormal_from_moments requires E1 > 0");
  const double ratio = e2 / (e1 * e1);
  if (ratio < 1.0 - 1e-12) {
    throw ValidationError("lognormal_from_moments requires E2 >= E1^2 (inconsistent moments)");
  }
  LognormalParams p;
  p.m = 2.0 * std::log(e1) - 0.5 * std::log(e2);
  p.sigma = std::sqrt(std::log(std::max(ratio, 1.0)));
  return p;
}

// ---------------------------------------------------------------------------
// Position measure

namespace {

// ln of the deterministic (chi = 0) path gain.
double log_gain(double d, double b, double log_h) {
  const double exponent = (d <= b) ? 2.0 : 4.0;
  return log_h + exponent * std::log(b / d);
}

}  // namespace

struct PositionMeasure::Impl {
  SystemParams params;
  UserDistribution dist;
  double disc_area = 0.0;  // clipped disc area, when a hotspot component exists
  bool disc_clipped = false;

  mutable bool all_converged = true;

  double half() const { return params.region_side_L / 2.0; }

  bool inside_square(double x, double y) const {
    return std::abs(x) <= half() && std::abs(y) <= half();
  }

  // Nested adaptive integral over [ax,bx] x [ay,by] of f (no density), with
  // presplits at the base abscissae where the integrand has ridges.
  double box_integral(const std::function<double(double, double)>& f, double abs_tol) const {
    const double h = half();
    const std::vector<double> xsplits = {-h, 0.0, params.base_separation_D, h};
    const std::vector<double> ysplits = {-h, 0.0, h};
    const double width = 2.0 * h;
    const double inner_tol = 0.5 * abs_tol / width;

    double total = 0.0;
    for (std::size_t yi = 0; yi + 1 < ysplits.size(); ++yi) {
      const double seg_frac = (ysplits[yi + 1] - ysplits[yi]) / width;
      auto outer = [&](double y) {
        double row = 0.0;
        for (std::size_t xi = 0; xi + 1 < xsplits.size(); ++xi) {
          const QuadratureResult r = integrate_adaptive(
              [&](double x) { return f(x, y); }, xsplits[xi], xsplits[xi + 1],
              inner_tol * (xsplits[xi + 1] - xsplits[xi]) / width);
          if (!r.converged) all_converged = false;
          row += r.value;
        }
        return row;
      };
      const QuadratureResult r =
          integrate_adaptive(outer, ysplits[yi], ysplits[yi + 1], 0.5 * abs_tol * seg_frac);
      if (!r.converged) all_converged = false;
      total += r.value;
    }
    return total;
  }

  // Polar integral over the (clipped) disc of f (no density).
  double disc_integral(const std::function<double(double, double)>& f, double abs_tol) const {
    const double R = dist.hotspot_radius;
    const double cx = params.base_separation_D;
    const double two_pi = 2.0 * std::acos(-1.0);
    const double inner_tol = 0.5 * abs_tol / R;
    auto outer = [&](double rho) {
      const QuadratureResult r = integrate_adaptive(
          [&](double theta) {
            const double x = cx + rho * std::cos(theta);
            const double y = rho * std::sin(theta);
            if (disc_clipped && !inside_square(x, y)) return 0.0;
            return f(x, y) * rho;
          },
          0.0, two_pi, inner_tol * two_pi / R);
      if (!r.converged) all_converged = false;
      return r.value;
    };
    const QuadratureResult r = integrate_adaptive(outer, 0.0, R, 0.5 * abs_tol);
    if (!r.converged) all_converged = false;
    return r.value;
  }

  double integrate(const std::function<double(double, double)>& f, double abs_tol,
                   bool throw_on_fail = true) const {
    all_converged = true;
    const double area = params.region_side_L * params.region_side_L;
    double value = 0.0;
    const double uniform_weight =
        dist.kind == UserDistribution::Kind::Hotspot ? 1.0 - dist.hotspot_fraction : 1.0;
    if (uniform_weight > 0.0) {
      value += uniform_weight * box_integral(f, abs_tol / (2.0 * uniform_weight) * area) / area;
    }
    if (dist.kind == UserDistribution::Kind::Hotspot && dist.hotspot_fraction > 0.0) {
      value += dist.hotspot_fraction *
               disc_integral(f, abs_tol / (2.0 * dist.hotspot_fraction) * disc_area) / disc_area;
    }
    if (!all_converged && throw_on_fail) {
      throw NumericalError(NumericalError::Kind::QuadratureNonConvergence,
                           fmt::format("position integral did not reach tolerance {:.3e}", abs_tol));
    }
    return value;
  }
};

PositionMeasure::PositionMeasure(const SystemParams& params, const UserDistribution& dist)
    : impl_(std::make_unique<Impl>()) {
  params.validate();
  dist.validate();
  impl_->params = params;
  impl_->dist = dist;
  if (dist.kind == UserDistribution::Kind::Hotspot && dist.hotspot_fraction > 0.0) {
    const double h = impl_->half();
    const double R = dist.hotspot_radius;
    const double cx = params.base_separation_D;
    impl_->disc_clipped = (cx + R > h) || (cx - R < -h) || (R > h);
    if (impl_->disc_clipped) {
      impl_->disc_area = 1.0;  // placeholder so disc_integral normalizes by 1
      impl_->disc_area = impl_->disc_integral([](double, double) { return 1.0; }, 1e-4 * R * R);
      if (!(impl_->disc_area > 0.0)) {
        throw ValidationError("hotspot disc lies entirely outside the region");
      }
    } else {
      impl_->disc_area = std::acos(-1.0) * R * R;
    }
  }
}

PositionMeasure::~PositionMeasure() = default;
PositionMeasure::PositionMeasure(PositionMeasure&&) noexcept = default;
PositionMeasure& PositionMeasure::operator=(PositionMeasure&&) noexcept = default;

double PositionMeasure::integrate(const std::function<double(double, double)>& f,
                                  double abs_tol) const {
  return impl_->integrate(f, abs_tol);
}

double PositionMeasure::integrate_rel(const std::function<double(double, double)>& f,
                                      double rel_tol) const {
  const double coarse = impl_->integrate(f, 1e-6, /*throw_on_fail=*/false);
  const double abs_tol = std::max(rel_tol * std::abs(coarse), 1e-14);
  if (abs_tol >= 1e-6) return coarse;
  return impl_->integrate(f, abs_tol);
}

// ---------------------------------------------------------------------------
// Selection probability and conditional interference moments

namespace {

struct SelectionGeometry {
  SystemParams params;
  double log_delta;
  double s_ln;  // natural-log sd of the per-position gain ratio

  explicit SelectionGeometry(const SystemParams& p)
      : params(p),
        log_delta(std::log(p.delta())),
        s_ln(kLn10Over10 * std::hypot(p.shadow_sigma_macro, p.shadow_sigma_micro)) {}

  // ln(Tmu_bar / TM_bar) at a position, chi = 0.
  double log_ratio(double x, double y) const {
    const double d_macro = std::max(1.0, std::hypot(x, y));
    const double d_micro = std::max(1.0, std::hypot(x - params.base_separation_D, y));
    return log_gain(d_micro, params.breakpoint_micro_bmu, 0.0) -
           log_gain(d_macro, params.breakpoint_macro_bM, std::log(params.gain_ratio_h));
  }

  // P(Micro | position): the dB selection margin is Gaussian.
  double p_micro(double x, double y) const {
    return normal_cdf((log_delta + log_ratio(x, y)) / s_ln);
  }
};

}  // namespace

double selection_probability(const SystemParams& params, const UserDistribution& dist) {
  const PositionMeasure measure(params, dist);
  const SelectionGeometry geo(params);
  return measure.integrate([&](double x, double y) { return geo.p_micro(x, y); }, 1e-5);
}

ConditionalTermMoments conditional_term_moments(const SystemParams& params,
                                                const UserDistribution& dist) {
  const PositionMeasure measure(params, dist);
  const SelectionGeometry geo(params);

  ConditionalTermMoments result;
  result.q =
      measure.integrate_rel([&](double x, double y) { return geo.p_micro(x, y); }, 1e-6);
  result.q = std::clamp(result.q, 0.0, 1.0);

  const double delta = params.delta();
  auto im_partial = [&](int k) {
    return measure.integrate_rel(
        [&](double x, double y) {
          // I_M = 1/t is lognormal(-m_t, s) at each position, truncated at delta.
          return lognormal_partial_moment(k, -geo.log_ratio(x, y), geo.s_ln, delta);
        },
        1e-5);
  };
  auto term_partial = [&](int k) {
    return measure.integrate_rel(
        [&](double x, double y) {
          // t is lognormal(m_t, s), truncated at 1/delta for Macro users.
          return lognormal_partial_moment(k, geo.log_ratio(x, y), geo.s_ln, 1.0 / delta);
        },
        1e-5);
  };

  if (result.q < 1e-12) {
    throw NumericalError(NumericalError::Kind::Degenerate,
                         "Micro conditioning probability vanishes (q < 1e-12)");
  }
  if (1.0 - result.q < 1e-12) {
    throw NumericalError(NumericalError::Kind::Degenerate,
                         "Macro conditioning probability vanishes (1 - q < 1e-12)");
  }
  result.i_m = {im_partial(1) / result.q, im_partial(2) / result.q};
  result.macro_term = {term_partial(1) / (1.0 - result.q), term_partial(2) / (1.0 - result.q)};
  return result;
}

TermMoments compose_imu_moments(int n_macro, const TermMoments& term) {
  if (n_macro < 0) throw ValidationError("compose_imu_moments requires N_M >= 0");
  const double nm = static_cast<double>(n_macro);
  return {nm * term.e1, nm * term.e2 + nm * (nm - 1.0) * term.e1 * term.e1};
}

TierCountDistribution binomial_tier_counts(int n_total, double q) {
  if (n_total < 1) throw ValidationError("binomial_tier_counts requires N >= 1");
  if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("binomial_tier_counts requires q in [0, 1]");
  TierCountDistribution dist;
  dist.q = q;
  dist.p.resize(static_cast<std::size_t>(n_total) + 1, 0.0);
  if (q == 0.0) {
    dist.p[0] = 1.0;
    return dist;
  }
  if (q == 1.0) {
    dist.p.back() = 1.0;
    return dist;
  }
  const double lq = std::log(q);
  const double l1q = std::log1p(-q);
  const double lgn = std::lgamma(n_total + 1.0);
  for (int n = 0; n <= n_total; ++n) {
    const double lp = lgn - std::lgamma(n + 1.0) - std::lgamma(n_total - n + 1.0) + n * lq +
                      (n_total - n) * l1q;
    dist.p[static_cast<std::size_t>(n)] = std::exp(lp);
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Conditional rate distribution

double RateDistribution::cdf(double r) const {
  switch (kind) {
    case Kind::ZeroMass:
      return r >= 0.0 ? 1.0 : 0.0;
    case Kind::UnitMass:
      return r >= 1.0 ? 1.0 : 0.0;
    case Kind::Step:
      return r >= std::exp(mu_z) ? 1.0 : 0.0;
    case Kind::TruncatedLognormal:
      break;
  }
  if (r <= 0.0) return 0.0;
  if (r >= 1.0) return 1.0;
  return normal_cdf((std::log(r) - mu_z) / sigma_z);
}

double RateDistribution::cdf_left(double r) const {
  switch (kind) {
    case Kind::ZeroMass:
      return r > 0.0 ? 1.0 : 0.0;
    case Kind::UnitMass:
      return r > 1.0 ? 1.0 : 0.0;
    case Kind::Step:
      return r > std::exp(mu_z) ? 1.0 : 0.0;
    case Kind::TruncatedLognormal:
      break;
  }
  if (r <= 0.0) return 0.0;
  if (r > 1.0) return 1.0;
  return normal_cdf((std::log(r) - mu_z) / sigma_z);  // continuous below the atom at 1
}

double RateDistribution::atom_at_one() const {
  switch (kind) {
    case Kind::ZeroMass:
      return 0.0;
    case Kind::UnitMass:
      return 1.0;
    case Kind::Step:
      return 0.0;  // callers map e^mu >= 1 to UnitMass
    case Kind::TruncatedLognormal:
      break;
  }
  return 1.0 - normal_cdf(-mu_z / sigma_z);
}

double RateDistribution::mean() const {
  switch (kind) {
    case Kind::ZeroMass:
      return 0.0;
    case Kind::UnitMass:
      return 1.0;
    case Kind::Step:
      return std::exp(mu_z);
    case Kind::TruncatedLognormal:
      break;
  }
  return lognormal_partial_moment(1, mu_z, sigma_z, 1.0) + atom_at_one();
}

RateDistribution rate_cdf_given_n(const SystemParams& params, int n, const LognormalParams& ln_im,
                                  const LognormalParams& ln_imu) {
  if (n < 1 || n > params.n_total) throw ValidationError("rate_cdf_given_n requires 1 <= n <= N");
  RateDistribution dist;
  const double load = params.pole_capacity() - params.n_total + n;
  if (load <= 0.0) {
    dist.kind = RateDistribution::Kind::ZeroMass;
    return dist;
  }
  if (n == params.n_total) {
    dist.kind = RateDistribution::Kind::UnitMass;  // I_mu = 0, zero interference
    return dist;
  }
  dist.mu_z = std::log(load / params.gamma_micro) - ln_im.m - ln_imu.m;
  dist.sigma_z = std::hypot(ln_im.sigma, ln_imu.sigma);
  if (dist.sigma_z == 0.0) {
    dist.kind = dist.mu_z >= 0.0 ? RateDistribution::Kind::UnitMass : RateDistribution::Kind::Step;
  } else {
    dist.kind = RateDistribution::Kind::TruncatedLognormal;
  }
  return dist;
}

// ---------------------------------------------------------------------------
// Mixtures and expectations

MixtureCdf::MixtureCdf(std::vector<Component> components) : components_(std::move(components)) {}

double MixtureCdf::cdf(double x) const {
  double sum = 0.0;
  for (const Component& c : components_) sum += c.weight * c.dist.cdf(c.scale * x);
  return sum;
}

double MixtureCdf::cdf_left(double x) const {
  double sum = 0.0;
  for (const Component& c : components_) sum += c.weight * c.dist.cdf_left(c.scale * x);
  return sum;
}

std::vector<double> MixtureCdf::atoms() const {
  std::vector<double> pts;
  for (const Component& c : components_) {
    switch (c.dist.kind) {
      case RateDistribution::Kind::ZeroMass:
        pts.push_back(0.0);
        break;
      case RateDistribution::Kind::UnitMass:
      case RateDistribution::Kind::TruncatedLognormal:
        pts.push_back(1.0 / c.scale);
        break;
      case RateDistribution::Kind::Step:
        pts.push_back(std::exp(c.dist.mu_z) / c.scale);
        break;
    }
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

DistributionCdf MixtureCdf::as_distribution() const {
  return {[m = *this](double x) { return m.cdf(x); },
          [m = *this](double x) { return m.cdf_left(x); }, atoms()};
}

namespace {

std::vector<MixtureCdf::Component> mixture_components(const TierCountDistribution& pn,
                                                      std::span<const RateDistribution> per_n,
                                                      bool throughput_scaling) {
  const int n_total = static_cast<int>(pn.p.size()) - 1;
  if (static_cast<int>(per_n.size()) != n_total) {
    throw ValidationError("per_n must hold one RateDistribution for each n in 1..N");
  }
  const double p0 = pn.p[0];
  if (!(p0 < 1.0)) {
    throw NumericalError(NumericalError::Kind::NoDapUsers,
                         "p_0 = 1: no user ever selects the microcell");
  }
  std::vector<MixtureCdf::Component> components;
  components.reserve(per_n.size());
  for (int n = 1; n <= n_total; ++n) {
    components.push_back({pn.p[static_cast<std::size_t>(n)] / (1.0 - p0),
                          throughput_scaling ? static_cast<double>(n) : 1.0,
                          per_n[static_cast<std::size_t>(n - 1)]});
  }
  return components;
}

}  // namespace

MixtureCdf mixture_rate_cdf(const TierCountDistribution& pn,
                            std::span<const RateDistribution> per_n) {
  return MixtureCdf(mixture_components(pn, per_n, false));
}

MixtureCdf user_throughput_cdf(const TierCountDistribution& pn,
                               std::span<const RateDistribution> per_n) {
  return MixtureCdf(mixture_components(pn, per_n, true));
}

ExpectedThroughputs expected_throughputs(const TierCountDistribution& pn,
                                         std::span<const RateDistribution> per_n) {
  ExpectedThroughputs result;
  if (pn.p.empty() || !(pn.p[0] < 1.0)) return result;  // no DAP user ever: both 0
  const MixtureCdf tau_cdf = user_throughput_cdf(pn, per_n);  // also validates inputs
  const int n_total = static_cast<int>(pn.p.size()) - 1;
  for (int n = 1; n <= n_total; ++n) {
    result.tau_d += pn.p[static_cast<std::size_t>(n)] * per_n[static_cast<std::size_t>(n - 1)].mean();
  }
  std::vector<double> cuts = tau_cdf.atoms();
  cuts.push_back(0.0);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(), [](double c) { return c < 0.0 || c > 1.0; }),
             cuts.end());

  // E{tau_u} as the integral of the survival function, split at the atoms.
  const double seg_tol = 1e-6 / static_cast<double>(cuts.size());
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    result.tau_u += integrate_or_throw([&](double t) { return 1.0 - tau_cdf.cdf(t); }, cuts[i],
                                       cuts[i + 1], seg_tol);
  }
  return result;
}

AnalyticModel analyze(const SystemParams& params, const UserDistribution& dist) {
  params.validate();
  dist.validate();
  AnalyticModel model;
  try {
    model.moments = conditional_term_moments(params, dist);
  } catch (const NumericalError& e) {
    if (e.kind() == NumericalError::Kind::Degenerate) {
      throw NumericalError(NumericalError::Kind::NoDapUsers,
                           std::string("p_0 = 1 within quadrature tolerance: ") + e.what());
    }
    throw;
  }
  model.q = model.moments.q;
  model.pn = binomial_tier_counts(params.n_total, model.q);

  const LognormalParams ln_im =
      lognormal_from_moments(model.moments.i_m.e1, model.moments.i_m.e2);
  model.per_n.resize(static_cast<std::size_t>(params.n_total));
  for (int n = 1; n <= params.n_total; ++n) {
    LognormalParams ln_imu;  // unused for n = N (I_mu = 0 handled inside)
    if (n < params.n_total) {
      const TermMoments imu = compose_imu_moments(params.n_total - n, model.moments.macro_term);
      ln_imu = lognormal_from_moments(imu.e1, imu.e2);
    }
    model.per_n[static_cast<std::size_t>(n - 1)] = rate_cdf_given_n(params, n, ln_im, ln_imu);
  }
  model.expected = expected_throughputs(model.pn, model.per_n);
  return model;
}

}  // namespace dap
