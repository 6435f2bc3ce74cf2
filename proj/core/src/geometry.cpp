#include "mbwave/geometry.hpp"

#include <cmath>
#include <string>

namespace mbwave {

DomainGeometry::DomainGeometry(double expansion_rate) : k_(expansion_rate) {
    if (!std::isfinite(k_) || !(k_ > 0.0) || !(k_ < 1.0))
        throw ValidationError("expansion rate k must satisfy 0 < k < 1, got " +
                              std::to_string(expansion_rate));
    theta_ = (1.0 + k_) / (1.0 - k_);
    inv_k_ = 1.0 / k_;
}

double DomainGeometry::boundary_position(double t) const {
    if (!(t >= 0.0))
        throw ValidationError("boundary position requested at t < 0");
    return 1.0 + k_ * t;
}

double DomainGeometry::reflect(double y, long n) const {
    if (n == 0) return y;
    return std::pow(theta_, static_cast<double>(n)) * (y + inv_k_) - inv_k_;
}

long DomainGeometry::interval_index(double y) const {
    if (!(y >= -1.0))
        throw OutOfDomainError("characteristic coordinate " + std::to_string(y) +
                               " lies below -1, outside the cone");
    const double scaled = (y + inv_k_) * k_ / (1.0 - k_); // theta^n at the left endpoint
    long n = 0;
    if (scaled > 1.0)
        n = static_cast<long>(std::floor(std::log(scaled) / std::log(theta_)));
    // absorb log round-off by comparing against exact endpoints
    while (n > 0 && y < interval_left(n)) --n;
    while (y >= interval_right(n)) ++n;
    return n;
}

} // namespace mbwave
