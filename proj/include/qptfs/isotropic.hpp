#pragma once

#include <Eigen/Dense>

#include <array>

namespace qptfs {

// Fourth-rank isotropic tensor I^(4): weights (1/30) [[4,-1,-1],[-1,4,-1],[-1,-1,4]]
// coupling the three pairings of lab polarizations to the three pairings of
// molecular vectors.
struct IsoTensor {
    static Eigen::Matrix3d weights();
};

// Orientational average of (a.e1)(b.e2)(c.e3)(d.e4) over uniformly random
// molecular orientations.
double iso_average_four(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                        const Eigen::Vector3d& d, const Eigen::Vector3d& e1, const Eigen::Vector3d& e2,
                        const Eigen::Vector3d& e3, const Eigen::Vector3d& e4);

// Collinear z polarization: (1/15)[(a.b)(c.d) + (a.c)(b.d) + (a.d)(b.c)].
double iso_average_four_zzzz(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                             const Eigen::Vector3d& d);

}  // namespace qptfs
