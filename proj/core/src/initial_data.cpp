#include "mbwave/initial_data.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace mbwave {

namespace {

struct PiecewiseLinear {
    std::vector<double> x, v;
    double operator()(double q) const {
        if (q <= x.front()) return v.front();
        if (q >= x.back()) return v.back();
        auto it = std::upper_bound(x.begin(), x.end(), q);
        const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
        const double w = (q - x[i]) / (x[i + 1] - x[i]);
        return v[i] + w * (v[i + 1] - v[i]);
    }
};

struct PiecewiseConstant {
    std::vector<double> x, v; // v[i] on [x[i], x[i+1])
    double operator()(double q) const {
        if (q <= x.front()) return v.front();
        if (q >= x[x.size() - 2]) return v.back();
        auto it = std::upper_bound(x.begin(), x.end(), q);
        const std::size_t i = static_cast<std::size_t>(it - x.begin()) - 1;
        return v[std::min(i, v.size() - 1)];
    }
};

void check_finite(const std::function<double(double)>& f, double lo, double hi,
                  const char* what) {
    for (int i = 0; i <= 128; ++i) {
        const double x = lo + (hi - lo) * i / 128.0;
        if (!std::isfinite(f(x)))
            throw ValidationError(std::string(what) + " is non-finite at x = " +
                                  std::to_string(x));
    }
}

} // namespace

InitialData InitialData::zero() {
    InitialData d;
    d.u0 = [](double) { return 0.0; };
    d.u0_prime = [](double) { return 0.0; };
    d.u1 = [](double) { return 0.0; };
    return d;
}

InitialData InitialData::from_samples(const std::vector<double>& u0_samples,
                                      const std::vector<double>& u1_samples) {
    if (u0_samples.size() < 2 || u1_samples.size() < 2)
        throw ValidationError("sampled initial data needs at least two nodes");
    auto nodes = [](std::size_t n) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) x[i] = double(i) / double(n - 1);
        return x;
    };

    PiecewiseLinear u0{nodes(u0_samples.size()), u0_samples};
    PiecewiseLinear u1{nodes(u1_samples.size()), u1_samples};
    PiecewiseConstant du0;
    du0.x = u0.x;
    du0.v.resize(u0_samples.size() - 1);
    for (std::size_t i = 0; i + 1 < u0_samples.size(); ++i)
        du0.v[i] = (u0_samples[i + 1] - u0_samples[i]) / (u0.x[i + 1] - u0.x[i]);

    InitialData d;
    d.u0 = u0;
    d.u0_prime = du0;
    d.u1 = u1;
    for (std::size_t i = 1; i + 1 < u0.x.size(); ++i) d.kinks.push_back(u0.x[i]);
    for (std::size_t i = 1; i + 1 < u1.x.size(); ++i) d.kinks.push_back(u1.x[i]);
    std::sort(d.kinks.begin(), d.kinks.end());
    d.kinks.erase(std::unique(d.kinks.begin(), d.kinks.end()), d.kinks.end());
    d.validate();
    return d;
}

void InitialData::validate() const {
    if (!u0 || !u0_prime || !u1)
        throw ValidationError("initial data has unset components");
    check_finite(u0, 0.0, 1.0, "u0");
    check_finite(u0_prime, 0.0, 1.0, "u0'");
    check_finite(u1, 0.0, 1.0, "u1");
}

HistoryData HistoryData::zero() {
    HistoryData h;
    h.g0 = [](double) { return 0.0; };
    return h;
}

HistoryData HistoryData::from_samples(const std::vector<double>& samples, double delay) {
    if (samples.size() < 2)
        throw ValidationError("sampled history needs at least two nodes");
    if (!(delay > 0.0)) throw ValidationError("history samples need a positive delay");
    std::vector<double> x(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i)
        x[i] = -delay + delay * double(i) / double(samples.size() - 1);
    PiecewiseLinear g{x, samples};
    HistoryData h;
    h.g0 = g;
    for (std::size_t i = 1; i + 1 < x.size(); ++i) h.kinks.push_back(x[i]);
    return h;
}

void HistoryData::validate(double delay) const {
    if (!g0) throw ValidationError("history has no g0");
    check_finite(g0, -delay, 0.0, "g0");
}

namespace presets {

InitialData neumann(const std::string& name) {
    InitialData d;
    if (name == "zero") return InitialData::zero();
    if (name == "sine") {
        d.u0 = [](double x) { return std::sin(M_PI * x); };
        d.u0_prime = [](double x) { return M_PI * std::cos(M_PI * x); };
        d.u1 = [](double x) { return 0.5 * std::cos(0.5 * M_PI * x); };
        return d;
    }
    if (name == "poly") {
        d.u0 = [](double x) { return x * x * (1.0 - x); };
        d.u0_prime = [](double x) { return 2.0 * x - 3.0 * x * x; };
        d.u1 = [](double x) { return 1.0 - x * x; };
        return d;
    }
    if (name == "gauss") {
        d.u0 = [](double x) { return std::exp(-8.0 * (x - 0.4) * (x - 0.4)); };
        d.u0_prime = [](double x) {
            return -16.0 * (x - 0.4) * std::exp(-8.0 * (x - 0.4) * (x - 0.4));
        };
        d.u1 = [](double x) { return x * std::exp(-4.0 * x * x); };
        return d;
    }
    throw ValidationError("unknown Neumann initial-data preset '" + name + "'");
}

InitialData dirichlet(const std::string& name) {
    InitialData d;
    if (name == "zero") return InitialData::zero();
    if (name == "dsine") {
        d.u0 = [](double x) { return std::sin(0.5 * M_PI * x); };
        d.u0_prime = [](double x) { return 0.5 * M_PI * std::cos(0.5 * M_PI * x); };
        d.u1 = [](double x) { return std::cos(M_PI * x); };
        return d;
    }
    if (name == "dpoly") {
        d.u0 = [](double x) { return 0.5 * x * (1.0 - x * x); };
        d.u0_prime = [](double x) { return 0.5 - 1.5 * x * x; };
        d.u1 = [](double x) { return 0.25 * (1.0 + x); };
        return d;
    }
    if (name == "dgauss") {
        d.u0 = [](double x) { return x * std::exp(-2.0 * x * x); };
        d.u0_prime = [](double x) { return (1.0 - 4.0 * x * x) * std::exp(-2.0 * x * x); };
        d.u1 = [](double x) { return std::exp(-x) - 0.5; };
        return d;
    }
    throw ValidationError("unknown Dirichlet initial-data preset '" + name + "'");
}

HistoryData history(const std::string& name, double amplitude, double frequency) {
    HistoryData h;
    if (name == "zero") return HistoryData::zero();
    if (name == "cosine") {
        h.g0 = [amplitude, frequency](double s) { return amplitude * std::cos(frequency * s); };
        return h;
    }
    if (name == "linear") {
        h.g0 = [amplitude, frequency](double s) { return amplitude + frequency * s; };
        return h;
    }
    throw ValidationError("unknown history preset '" + name + "'");
}

namespace {

// phi and its derivatives as a degree-5 polynomial.
double poly_eval(const std::array<double, 6>& c, double z, int deriv) {
    double acc = 0.0;
    for (int i = 5; i >= deriv; --i) {
        double coef = c[static_cast<std::size_t>(i)];
        for (int d = 0; d < deriv; ++d) coef *= double(i - d);
        acc = acc * z + coef;
    }
    return acc;
}

} // namespace

SmoothDelayData smooth_delay(double expansion_rate, double delay, double gain_now,
                             double gain_delayed) {
    const double k = expansion_rate;
    if (!(k > 0.0 && k < 1.0)) throw ValidationError("smooth_delay: bad expansion rate");
    if (!(delay > 0.0 && delay <= 2.0 / (1.0 + k)))
        throw ValidationError("smooth_delay preset requires 0 < tau <= 2/(1+k)");
    if (gain_now == -1.0)
        throw ValidationError("smooth_delay preset does not support mu1 = -1");

    const double left = -(1.0 - k) * delay - 1.0;   // history segment endpoint
    const double cut = 1.0 - (1.0 + k) * delay;     // where the delayed argument enters the base

    // Seam conditions at y = 1: the right-extension relation and its first two
    // t-derivatives must hold with base values substituted on both sides, so
    // the extended slope is C^2 across the seam.
    //   (1+m1) kp^l phi^(l)(1) - (m1-1) km^l phi^(l)(-1)
    //     - m2 km^l phi^(l)(left) + m2 kp^l phi^(l)(cut) = 0,  l = 0, 1, 2
    const double kp = 1.0 + k, km = 1.0 - k;
    const double m1 = gain_now, m2 = gain_delayed;

    std::array<double, 6> c{0.3, -0.2, 0.15, 0.0, 0.0, 0.0};
    double A[3][3];
    double rhs[3];
    for (int l = 0; l < 3; ++l) {
        auto row = [&](int i) {
            std::array<double, 6> basis{};
            basis[static_cast<std::size_t>(i)] = 1.0;
            return (1.0 + m1) * std::pow(kp, l) * poly_eval(basis, 1.0, l) -
                   (m1 - 1.0) * std::pow(km, l) * poly_eval(basis, -1.0, l) -
                   m2 * std::pow(km, l) * poly_eval(basis, left, l) +
                   m2 * std::pow(kp, l) * poly_eval(basis, cut, l);
        };
        for (int j = 0; j < 3; ++j) A[l][j] = row(3 + j);
        rhs[l] = -(c[0] * row(0) + c[1] * row(1) + c[2] * row(2));
    }

    // 3x3 Gaussian elimination with partial pivoting
    int perm[3] = {0, 1, 2};
    for (int col = 0; col < 3; ++col) {
        int piv = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(A[perm[r]][col]) > std::abs(A[perm[piv]][col])) piv = r;
        std::swap(perm[col], perm[piv]);
        const double p = A[perm[col]][col];
        if (std::abs(p) < 1e-12)
            throw ValidationError("smooth_delay: singular seam-matching system");
        for (int r = col + 1; r < 3; ++r) {
            const double m = A[perm[r]][col] / p;
            for (int cc = col; cc < 3; ++cc) A[perm[r]][cc] -= m * A[perm[col]][cc];
            rhs[perm[r]] -= m * rhs[perm[col]];
        }
    }
    for (int col = 2; col >= 0; --col) {
        double s = rhs[perm[col]];
        for (int cc = col + 1; cc < 3; ++cc) s -= A[perm[col]][cc] * c[static_cast<std::size_t>(3 + cc)];
        c[static_cast<std::size_t>(3 + col)] = s / A[perm[col]][col];
    }

    auto phi = [c](double z) { return poly_eval(c, z, 0); };

    SmoothDelayData out;
    out.phi = phi;
    out.initial.u0 = [c](double x) {
        // integral of phi(s) + phi(-s): only even powers survive
        double acc = 0.0;
        for (int i = 0; i <= 5; i += 2)
            acc += 2.0 * c[static_cast<std::size_t>(i)] * std::pow(x, i + 1) / double(i + 1);
        return acc;
    };
    out.initial.u0_prime = [phi](double x) { return phi(x) + phi(-x); };
    out.initial.u1 = [phi](double x) { return phi(x) - phi(-x); };
    out.history.g0 = [phi, kp, km](double s) { return phi(kp * s + 1.0) - phi(km * s - 1.0); };
    return out;
}

} // namespace presets

} // namespace mbwave
