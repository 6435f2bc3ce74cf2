#include "mbwave/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mbwave {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

// ---------------------------------------------------------------------------
// Neumann regimes
// ---------------------------------------------------------------------------

std::string to_string(NeumannRegimeKind kind) {
    switch (kind) {
        case NeumannRegimeKind::IncreasingPolynomialOnly: return "IncreasingPolynomialOnly";
        case NeumannRegimeKind::Conserved: return "Conserved";
        case NeumannRegimeKind::DecayExactlyFirstOrder: return "DecayExactlyFirstOrder";
        case NeumannRegimeKind::DecayAtLeastFirstOrder: return "DecayAtLeastFirstOrder";
        case NeumannRegimeKind::DecayAtMostFirstOrder: return "DecayAtMostFirstOrder";
        case NeumannRegimeKind::ExponentiallyStable: return "ExponentiallyStable";
    }
    return "?";
}

std::optional<NeumannRegimeKind> neumann_regime_from_string(const std::string& s) {
    for (auto kind : {NeumannRegimeKind::IncreasingPolynomialOnly, NeumannRegimeKind::Conserved,
                      NeumannRegimeKind::DecayExactlyFirstOrder,
                      NeumannRegimeKind::DecayAtLeastFirstOrder,
                      NeumannRegimeKind::DecayAtMostFirstOrder,
                      NeumannRegimeKind::ExponentiallyStable})
        if (to_string(kind) == s) return kind;
    return std::nullopt;
}

int NeumannRegime::rate_sign() const {
    switch (kind) {
        case NeumannRegimeKind::IncreasingPolynomialOnly: return 1;
        case NeumannRegimeKind::Conserved: return 0;
        default: return -1;
    }
}

NeumannRegime classify_neumann_regime(double expansion_rate, double gain) {
    const double k = expansion_rate;
    if (!(k > 0.0 && k < 1.0))
        throw ValidationError("expansion rate k must satisfy 0 < k < 1");
    NeumannRegime r;
    const double root = std::sqrt(1.0 - k * k);
    r.a1 = (1.0 - root) / k;
    r.a2 = (1.0 + root) / k;
    r.b1 = k;
    r.b2 = 1.0 / k;

    if (gain < r.a1 || gain > r.a2) r.kind = NeumannRegimeKind::IncreasingPolynomialOnly;
    else if (gain == r.a1 || gain == r.a2) r.kind = NeumannRegimeKind::Conserved;
    else if (gain == r.b1 || gain == r.b2) r.kind = NeumannRegimeKind::DecayExactlyFirstOrder;
    else if (gain > r.b1 && gain < r.b2) r.kind = NeumannRegimeKind::DecayAtLeastFirstOrder;
    else r.kind = NeumannRegimeKind::DecayAtMostFirstOrder;
    return r;
}

// ---------------------------------------------------------------------------
// Neumann energy
// ---------------------------------------------------------------------------

double energy(const NeumannProfile& p, double t) {
    if (!(t >= 0.0)) throw ValidationError("energy requested at t < 0");
    const double k = p.geometry().expansion_rate();
    return p.slope_square_integral((1.0 - k) * t - 1.0, (1.0 + k) * t + 1.0);
}

double energy_direct(const NeumannProfile& p, double t) {
    if (!(t >= 0.0)) throw ValidationError("energy requested at t < 0");
    const double l = p.geometry().boundary_position(t);
    // map slope breakpoints into x through both characteristic arguments
    std::vector<double> xb;
    for (double b : p.breakpoints(t - l, t + l)) {
        const double x1 = b - t, x2 = t - b;
        if (x1 > 0.0 && x1 < l) xb.push_back(x1);
        if (x2 > 0.0 && x2 < l) xb.push_back(x2);
    }
    std::sort(xb.begin(), xb.end());
    return integrate(
        [&](double x) {
            const double fp = p.slope(t + x), fm = p.slope(t - x);
            const double ut = fp + fm, ux = fp - fm;
            return 0.5 * (ut * ut + ux * ux);
        },
        0.0, l, xb, p.quadrature());
}

double energy_rate(const NeumannProfile& p, double t) {
    const double k = p.geometry().expansion_rate();
    const double a = p.gain();
    const double ut = p.boundary_velocity(t);
    return 0.5 * (k * a * a - 2.0 * a + k) * ut * ut;
}

std::pair<double, double> first_order_decay_bounds(double expansion_rate, double T,
                                                   double E0) {
    const double k = expansion_rate;
    if (!(k > 0.0 && k < 1.0))
        throw ValidationError("expansion rate k must satisfy 0 < k < 1");
    if (!(T >= 0.0)) throw ValidationError("horizon T must be nonnegative");
    const double growth = 1.0 + k * T;
    return {(1.0 - k) / ((1.0 + k) * growth) * E0, (1.0 + k) / ((1.0 - k) * growth) * E0};
}

// ---------------------------------------------------------------------------
// Self-similar solutions
// ---------------------------------------------------------------------------

double energy_exponent(double expansion_rate, double gain) {
    const double k = expansion_rate;
    if (!(k > 0.0 && k < 1.0))
        throw ValidationError("expansion rate k must satisfy 0 < k < 1");
    if (!(gain > -1.0 && gain < 1.0))
        throw ValidationError("the self-similar family needs -1 < a < 1");
    const double mu = (1.0 - gain) / (1.0 + gain);
    const double theta = (1.0 + k) / (1.0 - k);
    return 2.0 * std::log(mu) / std::log(theta) + 1.0;
}

SelfSimilarSolution self_similar_solution(SelfSimilarKind kind, double expansion_rate,
                                          std::optional<double> gain) {
    const double k = expansion_rate;
    if (!(k > 0.0 && k < 1.0))
        throw ValidationError("expansion rate k must satisfy 0 < k < 1");
    const double inv_k = 1.0 / k;
    const double a1 = (1.0 - std::sqrt(1.0 - k * k)) / k;

    double a;
    switch (kind) {
        case SelfSimilarKind::Example1: a = k; break;
        case SelfSimilarKind::Example2: a = a1; break;
        case SelfSimilarKind::Example3:
            if (!gain)
                throw ValidationError("the general power-law family needs a gain");
            a = *gain;
            if (!(a > -1.0 && a < 1.0) || a == k || a == a1)
                throw ValidationError(
                    "the general power-law family needs -1 < a < 1, a != k, a != a1");
            break;
        default: throw ValidationError("unknown self-similar kind");
    }

    // generator slope f'(z) = z^p with p = ln(mu_a)/ln(theta_k); in profile
    // coordinates (shifted by 1/k) the base slope is (y + 1/k)^p
    const double p = 0.5 * (energy_exponent(k, a) - 1.0);
    const double g = 2.0 * p + 1.0;

    SelfSimilarSolution sol;
    sol.gain = a;
    sol.exponent = g;

    sol.data.u1 = [inv_k, p](double x) {
        return std::pow(inv_k + x, p) + std::pow(inv_k - x, p);
    };
    sol.data.u0_prime = [inv_k, p](double x) {
        return std::pow(inv_k + x, p) - std::pow(inv_k - x, p);
    };
    if (kind == SelfSimilarKind::Example1) {
        sol.data.u0 = [inv_k](double x) { return std::log(inv_k + x) + std::log(inv_k - x); };
        const double coef = k * (1.0 / (1.0 - k) - 1.0 / (1.0 + k));
        sol.energy = [coef, k](double t) { return coef / (1.0 + k * t); };
    } else {
        const double q = p + 1.0;
        sol.data.u0 = [inv_k, q](double x) {
            return (std::pow(inv_k + x, q) + std::pow(inv_k - x, q)) / q;
        };
        if (kind == SelfSimilarKind::Example2) {
            const double value = std::log((1.0 + k) / (1.0 - k));
            sol.energy = [value](double) { return value; };
        } else {
            const double coef = (std::pow(1.0 + k, g) - std::pow(1.0 - k, g)) / g;
            sol.energy = [coef, g, inv_k](double t) { return coef * std::pow(t + inv_k, g); };
        }
    }
    return sol;
}

// ---------------------------------------------------------------------------
// Delay regimes
// ---------------------------------------------------------------------------

std::string to_string(DelayRegimeKind kind) {
    switch (kind) {
        case DelayRegimeKind::DecreasingWithWindow: return "DecreasingWithWindow";
        case DelayRegimeKind::IncreasingWithWindow: return "IncreasingWithWindow";
        case DelayRegimeKind::Indeterminate: return "Indeterminate";
    }
    return "?";
}

std::optional<DelayRegimeKind> delay_regime_from_string(const std::string& s) {
    for (auto kind : {DelayRegimeKind::DecreasingWithWindow, DelayRegimeKind::IncreasingWithWindow,
                      DelayRegimeKind::Indeterminate})
        if (to_string(kind) == s) return kind;
    return std::nullopt;
}

namespace {

// Coefficients of p^2 and q^2 after the Cauchy split of the cross term.
// sign = +1 amplifies (decrease estimate), sign = -1 diminishes (increase).
struct RateCoefficients {
    double trace; // coefficient of u_t(l,t)^2
    double delayed; // coefficient of u_t(l(t-tau),t-tau)^2
};

RateCoefficients cauchy_coefficients(double k, double m1, double m2, double xi, double tau,
                                     int sign) {
    const double cross = 0.5 * std::abs(k * m1 - 1.0) * std::abs(m2);
    RateCoefficients c;
    c.trace = 0.5 * k * (1.0 + m1 * m1) - m1 + sign * cross + 0.5 * xi / tau;
    c.delayed = 0.5 * k * m2 * m2 + sign * cross - 0.5 * xi / tau;
    return c;
}

} // namespace

DelayRegime classify_delay_regime(double expansion_rate, double gain_now,
                                  double gain_delayed, double history_weight,
                                  std::optional<double> delay) {
    const double k = expansion_rate;
    if (!(k > 0.0 && k < 1.0))
        throw ValidationError("expansion rate k must satisfy 0 < k < 1");
    if (!(history_weight > 0.0)) throw ValidationError("xi must be positive");

    const double m1 = gain_now, m2 = std::abs(gain_delayed), xi = history_weight;
    const double drift = std::abs(k * m1 - 1.0); // |k mu1 - 1|
    const double root = std::sqrt(1.0 - k * k);

    DelayRegime r;
    r.mu2_decrease_bound = (root - drift) / k;
    r.mu2_increase_bound = (root + drift) / k;

    const double tau_cap = 1.0 / k;
    auto clip = [&](TauWindow w) -> std::optional<TauWindow> {
        w.upper = std::min(w.upper, tau_cap);
        if (!(w.lower < w.upper) && !(w.closed && w.lower == w.upper)) return std::nullopt;
        return w;
    };

    if (m2 < r.mu2_decrease_bound) {
        // both Cauchy-amplified coefficients strictly negative
        r.kind = DelayRegimeKind::DecreasingWithWindow;
        const double lo_den = 2.0 * m1 - k * (1.0 + m1 * m1) - drift * m2;
        const double hi_den = k * m2 * m2 + drift * m2;
        TauWindow w;
        w.lower = xi / lo_den;
        w.upper = hi_den > 0.0 ? xi / hi_den : kInf;
        w.closed = false;
        r.tau_window = clip(w);
    } else if (m2 >= r.mu2_increase_bound) {
        // both Cauchy-diminished coefficients nonnegative
        r.kind = DelayRegimeKind::IncreasingWithWindow;
        const double lo_den = k * m2 * m2 - drift * m2;
        const double hi_den = 2.0 * m1 - k * (1.0 + m1 * m1) + drift * m2;
        TauWindow w;
        w.lower = xi / lo_den;
        w.upper = hi_den > 0.0 ? xi / hi_den : kInf;
        w.closed = true;
        r.tau_window = clip(w);
    } else {
        // one coefficient of each sign: unresolved fluctuation
        r.kind = DelayRegimeKind::Indeterminate;
    }

    if (delay && r.tau_window) {
        const double tau = *delay;
        const bool inside = r.tau_window->closed
                                ? (tau >= r.tau_window->lower && tau <= r.tau_window->upper)
                                : (tau > r.tau_window->lower && tau < r.tau_window->upper);
        if (inside) {
            if (r.kind == DelayRegimeKind::DecreasingWithWindow) {
                const auto c = cauchy_coefficients(k, m1, gain_delayed, xi, tau, +1);
                r.rate_constant = -std::max(c.trace, c.delayed);
            } else {
                const auto c = cauchy_coefficients(k, m1, gain_delayed, xi, tau, -1);
                r.rate_constant = std::min(c.trace, c.delayed);
            }
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Delay energy
// ---------------------------------------------------------------------------

double energy_field(const DelayProfile& p, double t) {
    if (!(t >= 0.0)) throw ValidationError("energy requested at t < 0");
    const double k = p.geometry().expansion_rate();
    return p.slope_square_integral((1.0 - k) * t - 1.0, (1.0 + k) * t + 1.0);
}

double energy_history(const DelayProfile& p, double t) {
    if (!(t >= 0.0)) throw ValidationError("energy requested at t < 0");
    const double k = p.geometry().expansion_rate();
    const double tau = p.params().delay;
    const double xi = p.params().history_weight;

    // (xi / 2 tau) * integral of trace(s)^2 over [t - tau, t], where the trace
    // is g0 for s < 0 and the boundary velocity afterwards
    auto trace = [&](double s) {
        return s >= 0.0 ? p.boundary_velocity(s) : p.history().g0(std::max(s, -tau));
    };

    std::vector<double> sb{0.0};
    for (double s : p.history().kinks) sb.push_back(s);
    for (double b : p.breakpoints(std::max(0.0, t - tau) * (1.0 - k) - 1.0,
                                  (1.0 + k) * t + 1.0)) {
        const double s1 = (b - 1.0) / (1.0 + k);
        const double s2 = (b + 1.0) / (1.0 - k);
        if (s1 > t - tau && s1 < t) sb.push_back(s1);
        if (s2 > t - tau && s2 < t) sb.push_back(s2);
    }
    std::sort(sb.begin(), sb.end());

    const double integral = integrate(
        [&](double s) {
            const double v = trace(s);
            return v * v;
        },
        t - tau, t, sb, p.quadrature());
    return 0.5 * xi / tau * integral;
}

double energy(const DelayProfile& p, double t) {
    return energy_field(p, t) + energy_history(p, t);
}

double energy_rate(const DelayProfile& p, double t) {
    const double k = p.geometry().expansion_rate();
    const double m1 = p.params().gain_now;
    const double m2 = p.params().gain_delayed;
    const double xi = p.params().history_weight;
    const double tau = p.params().delay;
    const double pt = p.boundary_velocity(t);
    const double qt = p.delayed_boundary_velocity(t);
    return (0.5 * k * (1.0 + m1 * m1) - m1 + 0.5 * xi / tau) * pt * pt +
           (0.5 * k * m2 * m2 - 0.5 * xi / tau) * qt * qt +
           (k * m1 - 1.0) * m2 * pt * qt;
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

EnergyTrace energy_trace(const NeumannProfile& p, double t_max, int samples) {
    if (samples < 1) throw ValidationError("sample count must be positive");
    const auto regime =
        classify_neumann_regime(p.geometry().expansion_rate(), p.gain());
    EnergyTrace tr;
    tr.regime = to_string(regime.kind);
    for (int i = 0; i <= samples; ++i) {
        const double t = t_max * double(i) / double(samples);
        tr.times.push_back(t);
        tr.energy.push_back(energy(p, t));
        tr.rate.push_back(energy_rate(p, t));
        tr.boundary_velocity.push_back(p.boundary_velocity(t));
    }
    return tr;
}

EnergyTrace energy_trace(const DelayProfile& p, double t_max, int samples) {
    if (samples < 1) throw ValidationError("sample count must be positive");
    const auto& par = p.params();
    const auto regime = classify_delay_regime(p.geometry().expansion_rate(), par.gain_now,
                                              par.gain_delayed, par.history_weight,
                                              par.delay);
    EnergyTrace tr;
    tr.regime = to_string(regime.kind);
    for (int i = 0; i <= samples; ++i) {
        const double t = t_max * double(i) / double(samples);
        tr.times.push_back(t);
        tr.energy.push_back(energy(p, t));
        tr.rate.push_back(energy_rate(p, t));
        tr.boundary_velocity.push_back(p.boundary_velocity(t));
        tr.delayed_velocity.push_back(p.delayed_boundary_velocity(t));
    }
    return tr;
}

} // namespace mbwave
