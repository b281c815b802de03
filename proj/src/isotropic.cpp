#include "qptfs/isotropic.hpp"

namespace qptfs {

Eigen::Matrix3d IsoTensor::weights() {
    Eigen::Matrix3d w;
    w << 4, -1, -1, -1, 4, -1, -1, -1, 4;
    return w / 30.0;
}

double iso_average_four(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                        const Eigen::Vector3d& d, const Eigen::Vector3d& e1, const Eigen::Vector3d& e2,
                        const Eigen::Vector3d& e3, const Eigen::Vector3d& e4) {
    const Eigen::Vector3d lab(e1.dot(e2) * e3.dot(e4), e1.dot(e3) * e2.dot(e4), e1.dot(e4) * e2.dot(e3));
    const Eigen::Vector3d mol(a.dot(b) * c.dot(d), a.dot(c) * b.dot(d), a.dot(d) * b.dot(c));
    return lab.dot(IsoTensor::weights() * mol);
}

double iso_average_four_zzzz(const Eigen::Vector3d& a, const Eigen::Vector3d& b, const Eigen::Vector3d& c,
                             const Eigen::Vector3d& d) {
    return (a.dot(b) * c.dot(d) + a.dot(c) * b.dot(d) + a.dot(d) * b.dot(c)) / 15.0;
}

}  // namespace qptfs
