#ifndef COVERSPECTRA_PRESSURE_HPP
#define COVERSPECTRA_PRESSURE_HPP

#include <optional>
#include <string>
#include <vector>

#include "coverspectra/ifs.hpp"

namespace coverspectra {

/// P_alpha(q): the unique P with sum_i lambda_i^P (p_i e^alpha)^q = 1,
/// together with the closed-form derivative dP/dq and the equation residual.
struct PressureValue {
  double alpha = 0.0;
  double q = 0.0;
  double value = 0.0;
  double derivative = 0.0;
  double residual = 0.0;
};

/// Solves the pressure equation. The defining map is strictly decreasing in
/// P, so a bracketed bisection always terminates; three Newton steps with the
/// closed-form derivative polish the root. Residual <= 1e-11.
PressureValue pressure_root(const IfsSpec& spec, double alpha, double q);

/// d^2P/dq^2 from the closed-form quotient; >= 0, and == 0 iff
/// log(p_i e^alpha)/(-log lambda_i) is constant in i (the affine case).
double pressure_second_derivative(const IfsSpec& spec, double alpha, double q);

/// Phase-transition thresholds. alpha2 = -log p_min and
/// alpha1 = -sum lambda_i^{s0} log p_i are closed forms; alpha0 solves
/// alpha = -sum lambda_i^{P_alpha(1)} p_i e^alpha log p_i by bisection.
/// All three coincide (= log N) iff the probabilities are equal.
struct CriticalAlphas {
  double alpha0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  bool degenerate = false;
};

CriticalAlphas critical_alphas(const IfsSpec& spec);

enum class Regime { PressurePart, SpectralPart, MeasureFull, FullCover };

const char* regime_name(Regime r);

struct RegimeLabel {
  Regime regime;
  bool boundary = false;  // alpha sits exactly on alpha1 or alpha2
};

/// Half-open dispatch: PressurePart for alpha <= alpha0, SpectralPart on
/// (alpha0, alpha1], MeasureFull on (alpha1, alpha2], FullCover above; the
/// points alpha1, alpha2 map to the lower regime with boundary = true.
RegimeLabel classify_regime(const IfsSpec& spec, double alpha);

/// s(alpha) = inf_{q in [0,1]} P_alpha(q), by regime dispatch:
/// P_alpha(1) in the pressure part, interior minimum in the spectral part,
/// s0 otherwise. Always in (0, s0].
double spectrum_s(const IfsSpec& spec, double alpha);

/// t(alpha) = inf_{q<0} P_alpha(q): s0 for alpha <= alpha1 (the infimum is
/// approached at q -> 0-), the interior minimum on (alpha1, alpha2), and
/// nullopt for alpha > alpha2 (the complement is a.s. empty).
std::optional<double> spectrum_t(const IfsSpec& spec, double alpha);

enum class ConstraintSide { UpperConstraint, LowerConstraint };

/// Entropy-ratio variational principle. Returns the optimal value of
/// inf P_alpha(q) over the chosen q half-line, the optimizer q*, and the
/// probability vector w_i = lambda_i^{P(q*)} (p_i e^alpha)^{q*}; at an
/// interior q* the constraint sum w_i log p_i + alpha vanishes.
struct VariationalOptimum {
  double value = 0.0;
  double q_star = 0.0;
  bool interior = false;
  std::vector<double> weights;
};

VariationalOptimum variational_optimum(const IfsSpec& spec, double alpha,
                                       ConstraintSide side);

/// Full evaluation at one alpha, as emitted by the CLI.
struct SpectrumPoint {
  double alpha = 0.0;
  double s_alpha = 0.0;
  std::optional<double> t_alpha;  // nullopt encodes the empty complement
  Regime regime = Regime::PressurePart;
  bool boundary = false;
  std::optional<double> q_star;                       // interior argmin only
  std::optional<std::vector<double>> optimizer_weights;
};

SpectrumPoint spectrum_point(const IfsSpec& spec, double alpha);

}  // namespace coverspectra

#endif
