#include "coverspectra/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "coverspectra/errors.hpp"
#include "coverspectra/numerics.hpp"

namespace coverspectra {

namespace {

constexpr double kQCap = 1024.0;  // clamp for runaway half-line infima

// Weights w_i = lambda_i^P (p_i e^alpha)^q at a given P. At the pressure
// root they form a probability vector.
void eval_weights(const IfsSpec& spec, double alpha, double q, double P,
                  std::vector<double>& w) {
  const size_t n = spec.alphabet_size();
  w.resize(n);
  for (size_t i = 0; i < n; ++i)
    w[i] = std::exp(P * spec.log_lambda(i) +
                    q * (spec.log_prob(i) + alpha));
}

// log of sum_i lambda_i^P (p_i e^alpha)^q, max-shifted.
double log_equation(const IfsSpec& spec, double alpha, double q, double P) {
  const size_t n = spec.alphabet_size();
  double mx = kNegInf;
  for (size_t i = 0; i < n; ++i) {
    double t = P * spec.log_lambda(i) + q * (spec.log_prob(i) + alpha);
    if (t > mx) mx = t;
  }
  double s = 0.0;
  for (size_t i = 0; i < n; ++i)
    s += std::exp(P * spec.log_lambda(i) + q * (spec.log_prob(i) + alpha) -
                  mx);
  return mx + std::log(s);
}

double solve_pressure(const IfsSpec& spec, double alpha, double q) {
  auto f = [&](double P) { return log_equation(spec, alpha, q, P); };
  double s0_guess = 1.0;
  RootResult r = bisect_decreasing(f, -5.0, s0_guess + 5.0, 1e-13, 200);
  double P = r.x;
  // Newton polish on log form: d/dP log(sum) = sum w log(lambda) / sum w
  std::vector<double> w;
  for (int it = 0; it < 3; ++it) {
    eval_weights(spec, alpha, q, P, w);
    double sw = 0.0, swl = 0.0;
    for (size_t i = 0; i < w.size(); ++i) {
      sw += w[i];
      swl += w[i] * spec.log_lambda(i);
    }
    if (!(sw > 0.0) || !std::isfinite(sw)) break;
    P -= std::log(sw) * sw / swl;
  }
  return P;
}

// dP/dq at the root: sum w (log p + alpha) / (-sum w log lambda).
double derivative_at(const IfsSpec& spec, double alpha, double q, double P) {
  std::vector<double> w;
  eval_weights(spec, alpha, q, P, w);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    num += w[i] * (spec.log_prob(i) + alpha);
    den -= w[i] * spec.log_lambda(i);
  }
  return num / den;
}

double pressure_derivative(const IfsSpec& spec, double alpha, double q) {
  return derivative_at(spec, alpha, q, solve_pressure(spec, alpha, q));
}

// Interior minimizer of q |-> P_alpha(q) on [qlo, qhi], assuming
// P'(qlo) < 0 < P'(qhi): golden-section to 1e-10 then one Newton step on P'.
double interior_qstar(const IfsSpec& spec, double alpha, double qlo,
                      double qhi) {
  auto value = [&](double q) { return solve_pressure(spec, alpha, q); };
  double q = golden_section_min(value, qlo, qhi, 1e-10);
  double d1 = pressure_derivative(spec, alpha, q);
  double d2 = pressure_second_derivative(spec, alpha, q);
  if (d2 > 0.0 && std::isfinite(d1)) {
    double qn = q - d1 / d2;
    if (qn > qlo && qn < qhi) q = qn;
  }
  return q;
}

}  // namespace

PressureValue pressure_root(const IfsSpec& spec, double alpha, double q) {
  PressureValue out;
  out.alpha = alpha;
  out.q = q;
  out.value = solve_pressure(spec, alpha, q);
  out.derivative = derivative_at(spec, alpha, q, out.value);
  out.residual = std::abs(std::expm1(log_equation(spec, alpha, q, out.value)));
  return out;
}

double pressure_second_derivative(const IfsSpec& spec, double alpha,
                                  double q) {
  double P = solve_pressure(spec, alpha, q);
  double Pd = derivative_at(spec, alpha, q, P);
  std::vector<double> w;
  eval_weights(spec, alpha, q, P, w);
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < w.size(); ++i) {
    double r = spec.log_prob(i) + alpha + Pd * spec.log_lambda(i);
    num += w[i] * r * r;
    den -= w[i] * spec.log_lambda(i);
  }
  return num / den;
}

CriticalAlphas critical_alphas(const IfsSpec& spec) {
  CriticalAlphas out;
  out.alpha2 = -std::log(spec.p_min());
  if (spec.probs_all_equal()) {
    out.degenerate = true;
    out.alpha0 = out.alpha1 = out.alpha2;
    return out;
  }
  double s0 = similarity_dimension(spec);
  double a1 = 0.0;
  for (size_t i = 0; i < spec.alphabet_size(); ++i)
    a1 -= std::exp(s0 * spec.log_lambda(i)) * spec.log_prob(i);
  out.alpha1 = a1;

  // alpha0: root of g(alpha) = alpha + sum lambda^{P_alpha(1)} p e^alpha log p.
  // g < 0 near zero and g(alpha1) >= 0, and the root is unique.
  auto g = [&](double a) {
    double P = solve_pressure(spec, a, 1.0);
    double s = a;
    for (size_t i = 0; i < spec.alphabet_size(); ++i)
      s += std::exp(P * spec.log_lambda(i) + spec.log_prob(i) + a) *
           spec.log_prob(i);
    return s;
  };
  double lo = std::min(1e-12, 0.5 * out.alpha1);
  double hi = out.alpha1;
  double glo = g(lo), ghi = g(hi);
  int guard = 0;
  while (ghi < 0.0) {  // not expected; alpha0 <= alpha1 analytically
    hi += out.alpha1;
    ghi = g(hi);
    if (++guard > 8)
      throw Error(Errc::BracketFailure, "no sign change locating alpha0");
  }
  if (glo >= 0.0)
    throw Error(Errc::BracketFailure, "g positive at the left bracket end");
  for (int it = 0; it < 200 && hi - lo > 1e-14; ++it) {
    double mid = 0.5 * (lo + hi);
    if (g(mid) < 0.0)
      lo = mid;
    else
      hi = mid;
  }
  out.alpha0 = 0.5 * (lo + hi);
  return out;
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::PressurePart: return "PressurePart";
    case Regime::SpectralPart: return "SpectralPart";
    case Regime::MeasureFull: return "MeasureFull";
    case Regime::FullCover: return "FullCover";
  }
  return "?";
}

RegimeLabel classify_regime(const IfsSpec& spec, double alpha) {
  if (!(alpha > 0.0))
    throw Error(Errc::AlphaNonPositive, "alpha must be positive");
  CriticalAlphas c = critical_alphas(spec);
  auto near = [](double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(b));
  };
  if (alpha <= c.alpha0 || near(alpha, c.alpha0))
    return {Regime::PressurePart, false};
  if (alpha < c.alpha1 || near(alpha, c.alpha1))
    return {Regime::SpectralPart, near(alpha, c.alpha1)};
  if (alpha < c.alpha2 || near(alpha, c.alpha2))
    return {Regime::MeasureFull, near(alpha, c.alpha2)};
  return {Regime::FullCover, false};
}

double spectrum_s(const IfsSpec& spec, double alpha) {
  if (!(alpha > 0.0))
    throw Error(Errc::AlphaNonPositive, "alpha must be positive");
  double d1 = pressure_derivative(spec, alpha, 1.0);
  if (d1 <= 0.0) return solve_pressure(spec, alpha, 1.0);
  double d0 = pressure_derivative(spec, alpha, 0.0);
  if (d0 >= 0.0) return solve_pressure(spec, alpha, 0.0);  // = s0
  double q = interior_qstar(spec, alpha, 0.0, 1.0);
  return solve_pressure(spec, alpha, q);
}

std::optional<double> spectrum_t(const IfsSpec& spec, double alpha) {
  if (!(alpha > 0.0))
    throw Error(Errc::AlphaNonPositive, "alpha must be positive");
  double alpha2 = -std::log(spec.p_min());
  if (alpha > alpha2 * (1.0 + 1e-15)) return std::nullopt;
  double d0 = pressure_derivative(spec, alpha, 0.0);
  if (d0 <= 0.0) return solve_pressure(spec, alpha, 0.0);  // s0, q -> 0-
  double qlo = -1.0;
  while (pressure_derivative(spec, alpha, qlo) > 0.0) {
    qlo *= 2.0;
    if (qlo < -kQCap) return solve_pressure(spec, alpha, -kQCap);
  }
  double q = interior_qstar(spec, alpha, qlo, 0.0);
  return solve_pressure(spec, alpha, q);
}

VariationalOptimum variational_optimum(const IfsSpec& spec, double alpha,
                                       ConstraintSide side) {
  VariationalOptimum out;
  double d0 = pressure_derivative(spec, alpha, 0.0);
  double q = 0.0;
  bool interior = false;
  if (side == ConstraintSide::UpperConstraint) {
    if (d0 < 0.0) {
      double qhi = 1.0;
      while (pressure_derivative(spec, alpha, qhi) < 0.0) {
        qhi *= 2.0;
        if (qhi > kQCap) break;
      }
      if (qhi > kQCap) {
        q = kQCap;  // clamped boundary optimum
      } else {
        q = interior_qstar(spec, alpha, 0.0, qhi);
        interior = true;
      }
    }
  } else {
    if (d0 > 0.0) {
      double qlo = -1.0;
      while (pressure_derivative(spec, alpha, qlo) > 0.0) {
        qlo *= 2.0;
        if (qlo < -kQCap) break;
      }
      if (qlo < -kQCap) {
        q = -kQCap;
      } else {
        q = interior_qstar(spec, alpha, qlo, 0.0);
        interior = true;
      }
    }
  }
  out.q_star = q;
  out.interior = interior;
  out.value = solve_pressure(spec, alpha, q);
  eval_weights(spec, alpha, q, out.value, out.weights);
  return out;
}

SpectrumPoint spectrum_point(const IfsSpec& spec, double alpha) {
  SpectrumPoint pt;
  pt.alpha = alpha;
  RegimeLabel label = classify_regime(spec, alpha);
  pt.regime = label.regime;
  pt.boundary = label.boundary;
  pt.s_alpha = spectrum_s(spec, alpha);
  pt.t_alpha = spectrum_t(spec, alpha);
  if (pt.regime == Regime::SpectralPart && !pt.boundary) {
    double d1 = pressure_derivative(spec, alpha, 1.0);
    double d0 = pressure_derivative(spec, alpha, 0.0);
    if (d0 < 0.0 && d1 > 0.0) {
      double q = interior_qstar(spec, alpha, 0.0, 1.0);
      pt.q_star = q;
      std::vector<double> w;
      eval_weights(spec, alpha, q, solve_pressure(spec, alpha, q), w);
      pt.optimizer_weights = std::move(w);
    }
  }
  return pt;
}

}  // namespace coverspectra
