#pragma once

#include "mbwave/errors.hpp"

namespace mbwave {

// Expanding interval 0 < x < 1 + k t with subluminal rate 0 < k < 1.
//
// A right-going characteristic with departure coordinate y = t - x returns
// from the moving boundary with arrival coordinate F(y) = ((1+k)y + 2)/(1-k).
// F is affine and conjugate to scaling by theta = (1+k)/(1-k) about its fixed
// point -1/k, so F^n(y) = theta^n (y + 1/k) - 1/k for every integer n.
// The half-open intervals I_n = [F^n(-1), F^n(1)) tile [-1, inf).
class DomainGeometry {
public:
    explicit DomainGeometry(double expansion_rate);

    double expansion_rate() const { return k_; }
    double reflection_ratio() const { return theta_; } // theta = (1+k)/(1-k)
    double fixed_point() const { return -inv_k_; }     // -1/k

    // Boundary position 1 + k t. Rejects t < 0.
    double boundary_position(double t) const;

    // n-fold reflection F^n(y); n may be negative or zero.
    double reflect(double y, long n = 1) const;

    // Unique n >= 0 with F^n(-1) <= y < F^n(1). Rejects y < -1.
    long interval_index(double y) const;

    double interval_left(long n) const { return reflect(-1.0, n); }
    double interval_right(long n) const { return reflect(1.0, n); }

private:
    double k_;
    double theta_;
    double inv_k_;
};

} // namespace mbwave
