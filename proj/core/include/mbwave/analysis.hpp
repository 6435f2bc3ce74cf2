#pragma once

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbwave/delay_profile.hpp"
#include "mbwave/profile.hpp"

namespace mbwave {

// ---------------------------------------------------------------------------
// Damped Neumann problem: regimes and energy
// ---------------------------------------------------------------------------

enum class NeumannRegimeKind {
    IncreasingPolynomialOnly,
    Conserved,
    DecayExactlyFirstOrder,
    DecayAtLeastFirstOrder,
    DecayAtMostFirstOrder,
    ExponentiallyStable, // vocabulary only; the classifier never produces it
};

std::string to_string(NeumannRegimeKind kind);
std::optional<NeumannRegimeKind> neumann_regime_from_string(const std::string& s);

struct NeumannRegime {
    NeumannRegimeKind kind;
    double a1, a2; // conservation gains, roots of k a^2 - 2a + k
    double b1, b2; // exact first-order decay gains, k and 1/k

    // +1 energy increasing, 0 conserved, -1 decreasing
    int rate_sign() const;
};

// Exact comparisons against the thresholds; callers probing near a threshold
// must perturb deliberately.
NeumannRegime classify_neumann_regime(double expansion_rate, double gain);

// E(t) = 1/2 integral of (u_t^2 + u_x^2), computed through the reduced
// identity E(t) = integral of f'^2 over [t - l(t), t + l(t)].
double energy(const NeumannProfile& p, double t);

// Same energy straight from the two-term quadrature in x; reference path for
// validating the reduced identity.
double energy_direct(const NeumannProfile& p, double t);

// Exact rate E'(t) = (k a^2 - 2a + k)/2 * u_t(l,t)^2.
double energy_rate(const NeumannProfile& p, double t);

// First-order sandwich at the exact-decay gains a = k and a = 1/k:
//   (1-k)/((1+k)(1+kT)) E0 <= E(T) <= (1+k)/((1-k)(1+kT)) E0.
std::pair<double, double> first_order_decay_bounds(double expansion_rate, double T,
                                                   double E0);

// ---------------------------------------------------------------------------
// Closed-form self-similar solutions
// ---------------------------------------------------------------------------

enum class SelfSimilarKind {
    Example1, // a = k: logarithmic generator, exact first-order decay
    Example2, // a = a1: square-root generator, conserved energy
    Example3, // general -1 < a < 1 (a != k, a != a1): power-law generator
};

struct SelfSimilarSolution {
    InitialData data;
    double gain;                          // the damping gain the family solves
    double exponent;                      // g_k(a): E(t) ~ (t + 1/k)^exponent
    std::function<double(double)> energy; // closed-form E(t)
};

SelfSimilarSolution self_similar_solution(SelfSimilarKind kind, double expansion_rate,
                                          std::optional<double> gain = std::nullopt);

// g_k(a) = 2 ln((1-a)/(1+a)) / ln((1+k)/(1-k)) + 1, strictly decreasing on (-1, 1).
double energy_exponent(double expansion_rate, double gain);

// ---------------------------------------------------------------------------
// Delayed Dirichlet problem: regimes and energy
// ---------------------------------------------------------------------------

enum class DelayRegimeKind {
    DecreasingWithWindow,
    IncreasingWithWindow,
    Indeterminate,
};

std::string to_string(DelayRegimeKind kind);
std::optional<DelayRegimeKind> delay_regime_from_string(const std::string& s);

struct TauWindow {
    double lower = 0.0;
    double upper = 0.0;
    bool closed = false; // endpoints admissible (increase case) or strict (decrease)
};

struct DelayRegime {
    DelayRegimeKind kind = DelayRegimeKind::Indeterminate;
    std::optional<TauWindow> tau_window;    // clipped to (0, 1/k)
    std::optional<double> rate_constant;    // c (decrease) or c' (increase) at a given tau
    double mu2_decrease_bound = 0.0;        // strict |mu2| bound for guaranteed decrease
    double mu2_increase_bound = 0.0;        // inclusive |mu2| bound for guaranteed increase
};

// Three-case Cauchy estimate of the energy rate. The windows are sufficient,
// not necessary; parameters between the two |mu2| bounds are Indeterminate.
// When `delay` is supplied and lies in the reported window, rate_constant is
// filled with the constant valid at that delay.
DelayRegime classify_delay_regime(double expansion_rate, double gain_now,
                                  double gain_delayed, double history_weight,
                                  std::optional<double> delay = std::nullopt);

// E2 = field energy + (xi/2) * mean-square delayed boundary velocity.
double energy(const DelayProfile& p, double t);
double energy_field(const DelayProfile& p, double t);
double energy_history(const DelayProfile& p, double t);

// Exact rate from the boundary traces p = u_t(l,t), q = u_t(l(t-tau), t-tau):
//   [k(1+mu1^2)/2 - mu1 + xi/(2 tau)] p^2 + [k mu2^2/2 - xi/(2 tau)] q^2
//   + (k mu1 - 1) mu2 p q.
double energy_rate(const DelayProfile& p, double t);

// ---------------------------------------------------------------------------
// Sampled traces
// ---------------------------------------------------------------------------

struct EnergyTrace {
    std::vector<double> times;
    std::vector<double> energy;
    std::vector<double> rate;              // analytic rate
    std::vector<double> boundary_velocity;
    std::vector<double> delayed_velocity;  // empty for the Neumann problem
    std::string regime;
};

EnergyTrace energy_trace(const NeumannProfile& p, double t_max, int samples);
EnergyTrace energy_trace(const DelayProfile& p, double t_max, int samples);

} // namespace mbwave
