#include "mbwave/oracle_fdm.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mbwave {

namespace {

struct Stepper {
    const DomainGeometry& geom;
    double h;
    int ny;
    bool dirichlet_left;

    // right-boundary feedback: v_y(1, s) = -l * (gain_now * w(1,s) + gain_delayed * q)
    double gain_now;
    double gain_delayed;

    void derivative(double s, const std::vector<double>& v, const std::vector<double>& w,
                    double q_delayed, std::vector<double>& dv, std::vector<double>& dw) const {
        const double k = geom.expansion_rate();
        const double l = 1.0 + k * s;
        const double inv_l = 1.0 / l;
        const double inv_l2 = inv_l * inv_l;
        const double inv_h = 1.0 / h;
        const double inv_h2 = inv_h * inv_h;

        for (int i = 1; i < ny; ++i) {
            const double y = h * i;
            const double adv = k * y * inv_l;
            const double vy = 0.5 * inv_h * (v[i + 1] - v[i - 1]);
            const double wy = 0.5 * inv_h * (w[i + 1] - w[i - 1]);
            const double vyy = inv_h2 * (v[i + 1] - 2.0 * v[i] + v[i - 1]);
            dv[i] = adv * vy + w[i];
            dw[i] = adv * wy + vyy * inv_l2;
        }

        if (dirichlet_left) {
            dv[0] = 0.0;
            dw[0] = 0.0;
        } else {
            // u_x(0, t) = 0: even reflection across y = 0
            dv[0] = w[0];
            dw[0] = 2.0 * inv_h2 * (v[1] - v[0]) * inv_l2;
        }

        // right boundary: the feedback fixes v_y(1, s), which advances v by an
        // ODE and supplies a ghost value for v_yy
        const double vy1 = -l * (gain_now * w[ny] + gain_delayed * q_delayed);
        dv[ny] = k * inv_l * vy1 + w[ny];
        const double ghost = v[ny - 1] + 2.0 * h * vy1;
        const double vyy1 = inv_h2 * (ghost - 2.0 * v[ny] + v[ny - 1]);
        const double wy1 = 0.5 * inv_h * (3.0 * w[ny] - 4.0 * w[ny - 1] + w[ny - 2]);
        dw[ny] = k * inv_l * wy1 + vyy1 * inv_l2;
    }
};

double field_energy(const DomainGeometry& geom, double s, double h, int ny,
                    const std::vector<double>& v, const std::vector<double>& w) {
    const double k = geom.expansion_rate();
    const double l = 1.0 + k * s;
    const double inv_l = 1.0 / l;
    double sum = 0.0;
    for (int i = 0; i <= ny; ++i) {
        double vy;
        if (i == 0)
            vy = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
        else if (i == ny)
            vy = (3.0 * v[ny] - 4.0 * v[ny - 1] + v[ny - 2]) / (2.0 * h);
        else
            vy = (v[i + 1] - v[i - 1]) / (2.0 * h);
        const double ux = vy * inv_l;
        const double density = w[i] * w[i] + ux * ux;
        sum += (i == 0 || i == ny) ? 0.5 * density : density;
    }
    return 0.5 * l * sum * h;
}

struct DelayBuffer {
    std::vector<double> values; // boundary trace at multiples of dt
    double dt = 0.0;
    const HistoryData* history = nullptr;
    double tau = 0.0;

    double at(double s) const {
        if (s <= 0.0) return history->g0(std::max(s, -tau));
        const double last = double(values.size() - 1);
        const double pos = std::min(s / dt, last);
        if (values.size() < 4) {
            // not enough samples for the cubic yet; linear is fine this early
            const std::size_t j = static_cast<std::size_t>(std::floor(pos));
            if (j + 1 >= values.size()) return values.back();
            const double wgt = pos - double(j);
            return values[j] + wgt * (values[j + 1] - values[j]);
        }
        long j = static_cast<long>(std::floor(pos)) - 1;
        j = std::clamp<long>(j, 0, static_cast<long>(values.size()) - 4);
        // cubic Lagrange through four stored trace samples
        double acc = 0.0;
        for (long m = 0; m < 4; ++m) {
            double weight = 1.0;
            for (long n = 0; n < 4; ++n)
                if (n != m) weight *= (pos - double(j + n)) / double(m - n);
            acc += weight * values[static_cast<std::size_t>(j + m)];
        }
        return acc;
    }
};

FdmResult run(const DomainGeometry& geom, const Stepper& st, const InitialData& data,
              const HistoryData* history, double tau, double xi, const FdmGrid& grid,
              int energy_samples) {
    if (grid.ny < 16) throw ValidationError("FDM grid needs ny >= 16");
    if (!(grid.cfl > 0.0) || grid.cfl > 0.9)
        throw ValidationError("Courant ratio must lie in (0, 0.9]");
    if (!(grid.t_max > 0.0)) throw ValidationError("FDM horizon must be positive");

    const int ny = grid.ny;
    const std::size_t n_nodes = static_cast<std::size_t>(ny) + 1;
    const double h = 1.0 / ny;
    const double k = geom.expansion_rate();
    const double speed = 1.0 + k; // fastest mapped characteristic, at s = 0

    double dt = grid.cfl * h / speed;
    const bool delayed = history != nullptr;
    if (delayed) {
        // a whole number of steps per delay keeps the ring buffer aligned
        const long per_delay = std::max<long>(4, static_cast<long>(std::ceil(tau / dt)));
        dt = tau / double(per_delay);
    }
    const long steps = static_cast<long>(std::ceil(grid.t_max / dt - 1e-12));

    std::vector<double> v(n_nodes), w(n_nodes);
    std::vector<double> k1v(n_nodes), k1w(n_nodes), k2v(n_nodes), k2w(n_nodes);
    std::vector<double> k3v(n_nodes), k3w(n_nodes), k4v(n_nodes), k4w(n_nodes);
    std::vector<double> sv(n_nodes), sw(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) {
        const double y = h * double(i);
        v[i] = data.u0(y);
        w[i] = data.u1(y);
    }
    if (st.dirichlet_left) {
        v[0] = 0.0;
        w[0] = 0.0;
    }

    DelayBuffer buffer;
    if (delayed) {
        buffer.dt = dt;
        buffer.history = history;
        buffer.tau = tau;
        buffer.values.push_back(w.back());
    }

    FdmResult out;
    out.dt = dt;
    out.steps = steps;
    out.nodes.resize(n_nodes);
    for (std::size_t i = 0; i < n_nodes; ++i) out.nodes[i] = h * double(i);

    const long energy_every = std::max<long>(1, steps / std::max(1, energy_samples));
    auto record_energy = [&](double s) {
        out.energy.times.push_back(s);
        double e = field_energy(geom, s, h, ny, v, w);
        if (delayed) {
            // trapezoid over one delay span of squared trace values
            const long per_delay = static_cast<long>(std::llround(tau / dt));
            double sum = 0.0;
            for (long j = 0; j <= per_delay; ++j) {
                const double sj = s - tau + dt * double(j);
                const double q = buffer.at(std::min(sj, s));
                const double weight = (j == 0 || j == per_delay) ? 0.5 : 1.0;
                sum += weight * q * q;
            }
            e += 0.5 * xi / tau * sum * dt;
        }
        out.energy.energy.push_back(e);
    };

    double s = 0.0;
    record_energy(s);
    const long snapshot_every = std::max<long>(1, steps / 10);

    auto stage = [&](double at, const std::vector<double>& cv, const std::vector<double>& cw,
                     std::vector<double>& odv, std::vector<double>& odw) {
        const double q = delayed ? buffer.at(at - tau) : 0.0;
        st.derivative(at, cv, cw, q, odv, odw);
    };
    auto blend = [&](const std::vector<double>& base, const std::vector<double>& slope,
                     double factor, std::vector<double>& into) {
        for (std::size_t i = 0; i < n_nodes; ++i) into[i] = base[i] + factor * slope[i];
    };

    for (long n = 0; n < steps; ++n) {
        const double step = std::min(dt, grid.t_max - s);

        stage(s, v, w, k1v, k1w);
        blend(v, k1v, 0.5 * step, sv);
        blend(w, k1w, 0.5 * step, sw);
        stage(s + 0.5 * step, sv, sw, k2v, k2w);
        blend(v, k2v, 0.5 * step, sv);
        blend(w, k2w, 0.5 * step, sw);
        stage(s + 0.5 * step, sv, sw, k3v, k3w);
        blend(v, k3v, step, sv);
        blend(w, k3w, step, sw);
        stage(s + step, sv, sw, k4v, k4w);

        double norm = 0.0;
        for (std::size_t i = 0; i < n_nodes; ++i) {
            v[i] += step / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]);
            w[i] += step / 6.0 * (k1w[i] + 2.0 * k2w[i] + 2.0 * k3w[i] + k4w[i]);
            norm = std::max(norm, std::abs(v[i]));
        }
        s += step;
        if (norm > 1e12)
            throw NumericalError("FDM field norm exceeded 1e12 at t = " + std::to_string(s) +
                                 "; the run diverged");

        if (delayed) buffer.values.push_back(w.back());
        if ((n + 1) % energy_every == 0 || n + 1 == steps) record_energy(s);
        if ((n + 1) % snapshot_every == 0 || n + 1 == steps) {
            out.snapshot_times.push_back(s);
            out.field.push_back(v);
        }
    }

    out.final_u = v;
    out.final_ut = w;
    return out;
}

} // namespace

FdmResult solve_fdm_neumann(const DomainGeometry& geom, double gain, const InitialData& data,
                            const FdmGrid& grid, int energy_samples) {
    Stepper st{geom, 1.0 / grid.ny, grid.ny, /*dirichlet_left=*/false, gain, 0.0};
    return run(geom, st, data, nullptr, 0.0, 0.0, grid, energy_samples);
}

FdmResult solve_fdm_delay(const DomainGeometry& geom, const DelayParams& params,
                          const InitialData& data, const HistoryData& history,
                          const FdmGrid& grid, int energy_samples) {
    if (!(params.delay > 0.0) || !(params.delay < 1.0 / geom.expansion_rate()))
        throw ValidationError("tau must satisfy 0 < tau < 1/k");
    Stepper st{geom,          1.0 / grid.ny,      grid.ny, /*dirichlet_left=*/true,
               params.gain_now, params.gain_delayed};
    return run(geom, st, data, &history, params.delay, params.history_weight, grid,
               energy_samples);
}

} // namespace mbwave
