#include "mbwave/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mbwave {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double fc = f(center);
    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = kWgk[7] * std::abs(fc);

    double fv1[7], fv2[7];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        fv1[j] = f(center - dx);
        fv2[j] = f(center + dx);
        const double sum = fv1[j] + fv2[j];
        resk += kWgk[j] * sum;
        resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
        if (j % 2 == 1) resg += kWg[j / 2] * sum;
    }

    const double mean = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - mean);
    for (int j = 0; j < 7; ++j)
        resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));
    resasc *= std::abs(half);

    const double value = resk * half;
    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    return {value, err};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth, int max_depth) {
    const PanelResult r = gk15(f, a, b);
    if (r.error <= tol || r.error <= 1e-15 * std::abs(r.value)) return r.value;
    if (depth >= max_depth) {
        if (r.error > std::max(1e3 * tol, 1e-6))
            throw NumericalError("quadrature failed to converge on [" + std::to_string(a) +
                                 ", " + std::to_string(b) + "], error estimate " +
                                 std::to_string(r.error));
        return r.value;
    }
    const double mid = 0.5 * (a + b);
    const double half_tol = std::max(0.5 * tol, 1e-300);
    return adapt(f, a, mid, half_tol, depth + 1, max_depth) +
           adapt(f, mid, b, half_tol, depth + 1, max_depth);
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, opt);
    return adapt(f, a, b, opt.abs_tol, 0, opt.max_depth);
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 std::span<const double> breakpoints, const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    if (b < a) return -integrate(f, b, a, breakpoints, opt);

    std::vector<double> edges;
    edges.reserve(breakpoints.size() + 2);
    edges.push_back(a);
    for (double p : breakpoints)
        if (p > a && p < b) edges.push_back(p);
    edges.push_back(b);
    std::sort(edges.begin(), edges.end());

    double total = 0.0;
    const double span = b - a;
    for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        const double lo = edges[i], hi = edges[i + 1];
        if (hi - lo <= 1e-14 * std::max(1.0, std::abs(lo))) continue;
        const double tol = std::max(opt.abs_tol * (hi - lo) / span, 1e-300);
        total += adapt(f, lo, hi, tol, 0, opt.max_depth);
    }
    return total;
}

} // namespace mbwave
