#include "mbwave/profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mbwave {

namespace {
constexpr double kEdgeSlack = 1e-12;
}

NeumannProfile::NeumannProfile(const DomainGeometry& geom, double gain, InitialData data,
                               QuadratureOptions quad)
    : geom_(geom), gain_(gain), data_(std::move(data)), quad_(quad) {
    if (gain_ == -1.0)
        throw ValidationError("degenerate feedback: only the trivial solution exists at a = -1");
    if (!std::isfinite(gain_))
        throw ValidationError("feedback gain must be finite");
    data_.validate();
    mu_ = (1.0 - gain_) / (1.0 + gain_);
    anchor_ = 0.5 * data_.u0(0.0);
}

double NeumannProfile::ipow(double b, long n) const {
    double acc = 1.0;
    for (long i = 0; i < n; ++i) acc *= b;
    return acc;
}

double NeumannProfile::base_slope(double z) const {
    z = std::clamp(z, -1.0, 1.0);
    if (z >= 0.0) return 0.5 * (data_.u0_prime(z) + data_.u1(z));
    return 0.5 * (data_.u1(-z) - data_.u0_prime(-z));
}

std::vector<double> NeumannProfile::base_kinks() const {
    std::vector<double> ks{0.0};
    for (double x : data_.kinks) {
        ks.push_back(x);
        ks.push_back(-x);
    }
    std::sort(ks.begin(), ks.end());
    return ks;
}

double NeumannProfile::base_prefix(double z) const {
    const auto ks = base_kinks();
    return integrate([this](double s) { return base_slope(s); }, 0.0, z, ks, quad_);
}

double NeumannProfile::base_square_prefix(double z) const {
    const auto ks = base_kinks();
    return integrate([this](double s) { const double v = base_slope(s); return v * v; },
                     -1.0, z, ks, quad_);
}

double NeumannProfile::full_slope_integral() const {
    std::call_once(full_once_, [this] {
        full_integral_ = base_prefix(1.0) - base_prefix(-1.0);
    });
    return full_integral_;
}

void NeumannProfile::freeze() const { full_slope_integral(); }

double NeumannProfile::slope(double y) const {
    const long n = geom_.interval_index(y);
    if (n == 0) return base_slope(y);
    if (mu_ == 0.0) return 0.0; // a = 1: constant beyond the first reflection
    return ipow(mu_, n) * base_slope(geom_.reflect(y, -n));
}

double NeumannProfile::value(double y) const {
    const long n = geom_.interval_index(y);
    if (n == 0) return anchor_ + base_prefix(y);

    const double w = mu_ * geom_.reflection_ratio();
    double acc = anchor_ + base_prefix(1.0);
    double factor = 1.0;
    for (long m = 1; m < n; ++m) {
        factor *= w;
        acc += factor * full_slope_integral();
    }
    factor *= w;
    const double z = std::clamp(geom_.reflect(y, -n), -1.0, 1.0);
    acc += factor * (base_prefix(z) - base_prefix(-1.0));
    return acc;
}

WaveState NeumannProfile::state(double x, double t) const {
    if (!(t >= 0.0) || !(x >= -kEdgeSlack))
        throw OutOfDomainError("state requested outside the closure of the cone");
    const double l = geom_.boundary_position(t);
    if (x > l * (1.0 + kEdgeSlack) + kEdgeSlack)
        throw OutOfDomainError("state requested beyond the moving boundary x = " +
                               std::to_string(l));
    x = std::clamp(x, 0.0, l);
    WaveState s;
    s.u = value(t + x) + value(t - x);
    s.ut = slope(t + x) + slope(t - x);
    s.ux = slope(t + x) - slope(t - x);
    return s;
}

double NeumannProfile::boundary_velocity(double t) const {
    const double k = geom_.expansion_rate();
    return slope((1.0 + k) * t + 1.0) + slope((1.0 - k) * t - 1.0);
}

double NeumannProfile::boundary_feedback_residual(double t) const {
    const double k = geom_.expansion_rate();
    const double plus = slope((1.0 + k) * t + 1.0);
    const double minus = slope((1.0 - k) * t - 1.0);
    return (1.0 + gain_) * plus - (1.0 - gain_) * minus;
}

double NeumannProfile::slope_square_integral(double lo, double hi) const {
    if (hi <= lo) return 0.0;
    lo = std::max(lo, -1.0);
    const long n_lo = geom_.interval_index(lo);
    const long n_hi = geom_.interval_index(hi);
    const double w = mu_ * mu_ * geom_.reflection_ratio();

    double total = 0.0;
    for (long n = n_lo; n <= n_hi; ++n) {
        const double seg_lo = std::max(lo, geom_.interval_left(n));
        const double seg_hi = std::min(hi, geom_.interval_right(n));
        if (seg_hi <= seg_lo) continue;
        const double weight = ipow(w, n);
        if (weight == 0.0) continue;
        const double z_lo = std::clamp(geom_.reflect(seg_lo, -n), -1.0, 1.0);
        const double z_hi = std::clamp(geom_.reflect(seg_hi, -n), -1.0, 1.0);
        total += weight * (base_square_prefix(z_hi) - base_square_prefix(z_lo));
    }
    return total;
}

std::vector<double> NeumannProfile::breakpoints(double lo, double hi) const {
    std::vector<double> out;
    std::vector<double> seeds = base_kinks();
    seeds.push_back(-1.0);
    seeds.push_back(1.0);
    for (double b : seeds) {
        for (long n = 0; n < 512; ++n) {
            const double y = geom_.reflect(b, n);
            if (y > hi) break;
            if (y >= lo) out.push_back(y);
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace mbwave
