#pragma once
// Gradient transforms for descent on the simplex.
//
// One descent step multiplies each weight by Gamma(b_j + kappa) and
// renormalizes, where b is the gradient of the objective. Two families:
//
//   Exponential:  Gamma(v) = exp(-eta v)                  (mirror descent)
//   Power:        Gamma(v) = [(a-1) v + 1]^(eta/(1-a))    (power descent)
//
// Validation is two-tier. The monotonicity tier encodes the per-step
// decrease conditions:
//
//   Exponential, a = 1:  eta in (0, 1], any kappa
//   Power, a != 1:       eta in (0, 1], (a-1) kappa >= 0
//   Exponential, a != 1: depends on the gradient range -> "conditional"
//
// The convergence tier encodes the stronger conditions under which the
// iterates provably reach the infimum:
//
//   Exponential, a = 1:  eta in (0, 1)
//   Exponential, a != 1: eta in (0, 1/(|a-1| b_inf + 1)), b_inf finite
//   Power, a > 1:        eta in (0, 1], kappa > 0
//   Power, a < 1:        eta in (0, 1], kappa <= 0
//
// The Power transform's domain requires (a-1) v + 1 > 0; evaluations outside
// it throw PowerDomainError carrying the offending index rather than
// clamping, since clamping would silently void the decrease guarantees.

#include <cstddef>
#include <stdexcept>
#include <string>

#include "agd/alpha.hpp"

namespace agd {

enum class TransformFamily { Exponential, Power };
enum class RatePolicy { Constant, InverseSqrtN, InverseSqrtHorizon };

struct TransformConfig {
    AlphaParam alpha{};
    TransformFamily family{TransformFamily::Exponential};
    double eta0{1.0};
    double kappa{0.0};
    RatePolicy rate_policy{RatePolicy::Constant};
};

class PowerDomainError : public std::runtime_error {
public:
    PowerDomainError(double v, std::ptrdiff_t index)
        : std::runtime_error(
              "power transform argument outside domain: (alpha-1)*v+1 <= 0 at "
              "v=" +
              std::to_string(v) +
              (index >= 0 ? " (atom " + std::to_string(index) + ")" : "")),
          value(v),
          atom_index(index) {}

    double value;
    std::ptrdiff_t atom_index;  // -1 when not tied to an atom
};

// log Gamma(v); Power family throws PowerDomainError outside its domain.
double log_gamma_eval(double v, const TransformConfig& config, double eta,
                      std::ptrdiff_t atom_index = -1);

// Gamma(v) in linear domain.
double gamma_eval(double v, const TransformConfig& config, double eta);

// Analytic derivatives, used by the diagnostics constants.
double gamma_derivative(double v, const TransformConfig& config, double eta);
double log_gamma_derivative(double v, const TransformConfig& config,
                            double eta);

// Left-hand side of the monotonicity inequality
//   [(a-1)(v-kappa) + 1] (log Gamma)'(v) + 1 >= 0.
double a2_expression(double v, const TransformConfig& config, double eta);

enum class Admissibility { Ok, Conditional, Violation };

struct ValidationReport {
    Admissibility verdict{Admissibility::Ok};
    std::string detail;

    bool ok() const { return verdict == Admissibility::Ok; }
};

// Static per-step decrease check (see table above). Exponential with
// a != 1 returns Conditional: its inequality involves the gradient range,
// which validate_convergence checks against a supplied bound.
ValidationReport validate_monotonicity(const TransformConfig& config);

// Convergence-tier check; b_infty is a caller-supplied bound on |b|
// (infinity allowed, which fails the exponential a != 1 row).
ValidationReport validate_convergence(const TransformConfig& config,
                                      double b_infty);

// Step-size schedule: Constant -> eta0, InverseSqrtN -> eta0/sqrt(n),
// InverseSqrtHorizon -> eta0/sqrt(horizon). n is 1-based.
double learning_rate(const TransformConfig& config, int n, int horizon);

}  // namespace agd
