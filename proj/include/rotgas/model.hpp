#pragma once

// Physical parameters and points of the Gibbs set. Conventions: k_B = 1,
// so3 identified with R^3 through the hat map, flat coordinates (beta, r)
// with r = -beta * omega.

#include <cmath>
#include <stdexcept>

#include "rotgas/linalg.hpp"

namespace rotgas {

struct GasParameters {
    double m = 1.0; // particle mass
    double R = 1.0; // confinement radius

    void validate() const {
        if (!(m > 0.0)) throw std::domain_error("GasParameters: mass must be positive");
        if (!(R > 0.0)) throw std::domain_error("GasParameters: radius must be positive");
    }
};

// A point of the Gibbs set: inverse temperature and angular velocity.
struct GeneralizedTemperature {
    double beta = 1.0;
    Vec3 omega{};

    double theta() const { return beta * omega.norm2(); } // beta omega^2

    void validate() const {
        if (!(beta > 0.0)) throw std::domain_error("GeneralizedTemperature: beta must be positive");
    }
};

// Flat coordinates (beta, r), r = -beta*omega; the embedding chart in which
// the affine connection D has vanishing coefficients.
struct FlatPoint {
    double beta = 1.0;
    Vec3 r{};

    Vec4 coords() const { return {beta, r.x, r.y, r.z}; }
    static FlatPoint from_coords(const Vec4& x) { return {x[0], {x[1], x[2], x[3]}}; }

    double theta() const { return r.norm2() / beta; }
};

inline FlatPoint to_flat(const GeneralizedTemperature& p) {
    p.validate();
    return {p.beta, -p.beta * p.omega};
}

inline GeneralizedTemperature from_flat(const FlatPoint& x) {
    if (!(x.beta > 0.0)) throw std::domain_error("from_flat: beta must be positive");
    return {x.beta, (-1.0 / x.beta) * x.r};
}

} // namespace rotgas
