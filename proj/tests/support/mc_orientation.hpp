#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>

namespace oracle {

// Degree-4 monomials u_x^a u_y^b u_z^c (a + b + c = 4), 15 of them.
using Monomials = Eigen::Matrix<double, 15, 1>;

int monomial_index(int a, int b, int c);

// Coefficients of (v1.u)(v2.u)(v3.u)(v4.u) in the monomial basis.
Monomials product_coefficients(const Eigen::Vector3d& v1, const Eigen::Vector3d& v2, const Eigen::Vector3d& v3,
                               const Eigen::Vector3d& v4);

// Sample mean and covariance of the monomials of a unit vector drawn
// uniformly from the sphere (equivalently R^T z for uniform rotations R).
struct SphereMoments {
    Monomials mean = Monomials::Zero();
    Eigen::Matrix<double, 15, 15> covariance = Eigen::Matrix<double, 15, 15>::Zero();
    std::size_t samples = 0;

    double expectation(const Monomials& c) const { return c.dot(mean); }
    double standard_error(const Monomials& c) const {
        return std::sqrt(std::max(0.0, c.dot(covariance * c)) / static_cast<double>(samples));
    }
};

SphereMoments sample_sphere_moments(std::size_t samples, std::uint64_t seed);

}  // namespace oracle
