#include "mbwave/delay_profile.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>
#include <unordered_set>

namespace mbwave {

namespace {
constexpr double kEdgeSlack = 1e-12;
}

DelayProfile::DelayProfile(const DomainGeometry& geom, const DelayParams& params,
                           InitialData data, HistoryData history)
    : DelayProfile(geom, params, std::move(data), std::move(history), Options{}) {}

DelayProfile::DelayProfile(const DomainGeometry& geom, const DelayParams& params,
                           InitialData data, HistoryData history, Options opt)
    : geom_(geom), params_(params), data_(std::move(data)), history_(std::move(history)),
      opt_(opt) {
    const double k = geom_.expansion_rate();
    if (!(params_.delay > 0.0) || !(params_.delay < 1.0 / k))
        throw ValidationError("tau must satisfy 0 < tau < 1/k (got tau = " +
                              std::to_string(params_.delay) + ", 1/k = " +
                              std::to_string(1.0 / k) + ")");
    if (!(params_.history_weight > 0.0))
        throw ValidationError("xi must be positive");
    data_.validate();
    history_.validate(params_.delay);
    if (std::abs(data_.u0(0.0)) > 1e-12)
        throw ValidationError("u0(0) = " + std::to_string(data_.u0(0.0)) +
                              " violates the left boundary trace u(0,t) = 0");
    left_end_ = -(1.0 - k) * params_.delay - 1.0;

    if (params_.gain_now == -1.0) {
        if (params_.gain_delayed == 0.0)
            throw ValidationError("mu1 = -1 with mu2 = 0 leaves the rightward extension "
                                  "undefined");
        // compatibility: mu2 g0(t - tau) + 2 f'((1-k)t - 1) must vanish on (0, tau)
        const double t_hi = std::min(params_.delay, 2.0 / (1.0 - k) - kEdgeSlack);
        double worst = 0.0;
        for (int i = 1; i <= opt_.compatibility_samples; ++i) {
            const double t = t_hi * double(i) / double(opt_.compatibility_samples + 1);
            const double r = params_.gain_delayed * history_.g0(t - params_.delay) +
                             2.0 * base_slope((1.0 - k) * t - 1.0);
            worst = std::max(worst, std::abs(r));
        }
        if (worst > opt_.compatibility_tol)
            throw ValidationError("mu1 = -1 requires compatible (u0, u1, g0); residual " +
                                  std::to_string(worst) + " exceeds tolerance " +
                                  std::to_string(opt_.compatibility_tol));
    }
}

double DelayProfile::base_slope(double z) const {
    z = std::clamp(z, -1.0, 1.0);
    if (z >= 0.0) return 0.5 * (data_.u0_prime(z) + data_.u1(z));
    return 0.5 * (data_.u0_prime(-z) - data_.u1(-z));
}

double DelayProfile::memo_lookup(double y, bool& hit) const {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    auto it = memo_.find(y);
    hit = it != memo_.end();
    return hit ? it->second : 0.0;
}

void DelayProfile::memo_store(double y, double v) const {
    std::lock_guard<std::mutex> lock(memo_mutex_);
    memo_.emplace(y, v);
}

double DelayProfile::slope(double y) const {
    if (y < left_end_ - kEdgeSlack)
        throw OutOfDomainError("characteristic coordinate " + std::to_string(y) +
                               " lies below the history segment at " +
                               std::to_string(left_end_));
    return slope_impl(std::max(y, left_end_), 0);
}

double DelayProfile::slope_impl(double y, std::size_t depth) const {
    if (depth > opt_.max_recursion_depth)
        throw NumericalError("slope recursion exceeded its depth budget at y = " +
                             std::to_string(y));
    const double k = geom_.expansion_rate();
    const double tau = params_.delay;

    if (y >= 1.0) {
        bool hit = false;
        const double cached = memo_lookup(y, hit);
        if (hit) return cached;

        const double t = (y - 1.0) / (1.0 + k);
        const double reflected = (1.0 - k) * t - 1.0; // F^{-1}(y)
        double v;
        if (params_.gain_now == -1.0) {
            // time-shifted feedback relation; the construction verified
            // compatibility on (0, tau)
            v = slope_impl(reflected, depth + 1) -
                (2.0 / params_.gain_delayed) *
                    slope_impl(reflected + (1.0 - k) * tau, depth + 1);
        } else {
            v = (params_.gain_now - 1.0) * slope_impl(reflected, depth + 1);
            if (params_.gain_delayed != 0.0)
                v += params_.gain_delayed *
                     (slope_impl(reflected - (1.0 - k) * tau, depth + 1) -
                      slope_impl(y - (1.0 + k) * tau, depth + 1));
            v /= 1.0 + params_.gain_now;
        }
        memo_store(y, v);
        return v;
    }

    if (y >= -1.0) return base_slope(y);

    // history segment: f'(y) = f'(theta (y+1) + 1) - g0((y+1)/(1-k))
    bool hit = false;
    const double cached = memo_lookup(y, hit);
    if (hit) return cached;
    const double s = std::max((y + 1.0) / (1.0 - k), -tau);
    const double v =
        slope_impl(geom_.reflection_ratio() * (y + 1.0) + 1.0, depth + 1) - history_.g0(s);
    memo_store(y, v);
    return v;
}

WaveState DelayProfile::state(double x, double t) const {
    if (!(t >= 0.0) || !(x >= -kEdgeSlack))
        throw OutOfDomainError("state requested outside the closure of the cone");
    const double l = geom_.boundary_position(t);
    if (x > l * (1.0 + kEdgeSlack) + kEdgeSlack)
        throw OutOfDomainError("state requested beyond the moving boundary x = " +
                               std::to_string(l));
    x = std::clamp(x, 0.0, l);
    WaveState s;
    s.u = slope_integral(t - x, t + x); // f(t+x) - f(t-x)
    s.ut = slope(t + x) - slope(t - x);
    s.ux = slope(t + x) + slope(t - x);
    return s;
}

double DelayProfile::boundary_velocity(double t) const {
    if (!(t >= 0.0)) throw ValidationError("boundary velocity requested at t < 0");
    const double k = geom_.expansion_rate();
    return slope((1.0 + k) * t + 1.0) - slope((1.0 - k) * t - 1.0);
}

double DelayProfile::delayed_boundary_velocity(double t) const {
    const double shifted = t - params_.delay;
    if (shifted >= 0.0) return boundary_velocity(shifted);
    return history_.g0(std::max(shifted, -params_.delay));
}

double DelayProfile::boundary_feedback_residual(double t) const {
    const double k = geom_.expansion_rate();
    const double plus = slope((1.0 + k) * t + 1.0);
    const double minus = slope((1.0 - k) * t - 1.0);
    const double ux = plus + minus;
    const double ut = plus - minus;
    return ux + params_.gain_now * ut + params_.gain_delayed * delayed_boundary_velocity(t);
}

double DelayProfile::slope_integral(double lo, double hi) const {
    const auto bp = breakpoints(lo, hi);
    return integrate([this](double s) { return slope(s); }, lo, hi, bp, opt_.quad);
}

double DelayProfile::slope_square_integral(double lo, double hi) const {
    const auto bp = breakpoints(lo, hi);
    return integrate([this](double s) { const double v = slope(s); return v * v; }, lo, hi,
                     bp, opt_.quad);
}

std::vector<double> DelayProfile::breakpoints(double lo, double hi) const {
    {
        std::lock_guard<std::mutex> lock(memo_mutex_);
        if (hi > bp_horizon_) {
            bp_cache_ = build_breakpoints(std::max(hi * 1.25, 4.0));
            bp_horizon_ = std::max(hi * 1.25, 4.0);
        }
        std::vector<double> out;
        for (double b : bp_cache_)
            if (b >= lo && b <= hi) out.push_back(b);
        return out;
    }
}

std::vector<double> DelayProfile::build_breakpoints(double hi) const {
    const double k = geom_.expansion_rate();
    const double tau = params_.delay;
    const double theta = geom_.reflection_ratio();
    const double shift = (1.0 + k) * tau;

    std::vector<double> seeds{left_end_, -1.0, 0.0, 1.0};
    for (double x : data_.kinks) {
        seeds.push_back(x);
        seeds.push_back(-x);
    }
    for (double s : history_.kinks) seeds.push_back((1.0 - k) * s - 1.0);
    // pull base/history kinks back through the history-segment relation
    const std::size_t n_seeds = seeds.size();
    for (std::size_t i = 0; i < n_seeds; ++i) {
        double b = seeds[i];
        for (int iter = 0; iter < 64; ++iter) {
            b = (b - 1.0) / theta - 1.0;
            if (b < left_end_) break;
            seeds.push_back(b);
        }
    }

    std::vector<double> all;
    std::unordered_set<long long> visited;
    std::deque<double> queue(seeds.begin(), seeds.end());
    auto key = [](double y) { return static_cast<long long>(std::llround(y * 0x1p32)); };
    auto push = [&](double y) {
        if (y <= hi + kEdgeSlack && y >= left_end_ - kEdgeSlack &&
            queue.size() < opt_.max_breakpoints)
            queue.push_back(y);
    };
    while (!queue.empty() && all.size() < opt_.max_breakpoints) {
        const double b = queue.front();
        queue.pop_front();
        if (b > hi + kEdgeSlack) continue;
        if (!visited.insert(key(b)).second) continue;
        all.push_back(b);
        const double fb = geom_.reflect(b, 1);
        push(fb);
        push(b + shift);
        if (params_.gain_now == -1.0) push(fb - shift);
    }

    std::sort(all.begin(), all.end());
    all.erase(std::unique(all.begin(), all.end(),
                          [](double a, double b) { return std::abs(a - b) < 1e-13; }),
              all.end());
    return all;
}

void DelayProfile::freeze(double horizon, int grid) const {
    for (double b : breakpoints(left_end_, horizon)) slope(b);
    for (int i = 0; i <= grid; ++i)
        slope(left_end_ + (horizon - left_end_) * double(i) / double(grid));
}

} // namespace mbwave
