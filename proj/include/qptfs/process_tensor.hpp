#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

#include "qptfs/levels.hpp"

namespace qptfs {

using cplx = std::complex<double>;

// Process tensor chi_{nm,nu mu}(T) restricted to the single-exciton manifold,
// <n|rho(T)|m> = sum_{nu mu} chi_{nm nu mu} <nu|rho(0)|mu>, plus the ground row
// chi_{gg nu mu}. The ground state is stationary: chi_{ab gg} = delta_ag delta_bg.
class ProcessTensor {
public:
    double waiting_time_T = 0.0;
    std::array<cplx, 16> elements{};
    std::array<cplx, 4> ground_row{};

    static ProcessTensor identity(double T = 0.0);

    cplx& operator()(Exciton n, Exciton m, Exciton nu, Exciton mu) {
        return elements[pack4(n, m, nu, mu)];
    }
    const cplx& operator()(Exciton n, Exciton m, Exciton nu, Exciton mu) const {
        return elements[pack4(n, m, nu, mu)];
    }
    cplx& ground(Exciton nu, Exciton mu) { return ground_row[index(nu) * 2 + index(mu)]; }
    const cplx& ground(Exciton nu, Exciton mu) const {
        return ground_row[index(nu) * 2 + index(mu)];
    }

    // Element over the three-level space {g, e, e'}. Inputs that are optical
    // coherences (g with an exciton) are not characterized and map to zero.
    cplx element(Level n, Level m, Level nu, Level mu) const;

    // chi_{gg nu mu} = delta_{nu mu} - chi_{ee nu mu} - chi_{e'e' nu mu}.
    void close_ground_row();
};

// (later o earlier): the map obtained by applying `earlier` then `later`.
ProcessTensor compose(const ProcessTensor& later, const ProcessTensor& earlier);

// 9x9 Choi matrix over (input, output) pairs in {g, e, e'}.
Eigen::Matrix<cplx, 9, 9> choi_matrix(const ProcessTensor& chi);

// The sixteen real unknowns in block order: chi^{ee} (4), chi^{e'e'} (4),
// chi^{ee'} (8), each following the listing
//   ee   : chi_eeee, chi_e'e'ee, Re chi_ee'ee, Im chi_ee'ee
//   e'e' : chi_eee'e', chi_e'e'e'e', Re chi_ee'e'e', Im chi_ee'e'e'
//   ee'  : Re of chi_eeee', chi_e'e'ee', chi_ee'ee', chi_e'eee', then Im of the same.
using ChiVector = Eigen::Matrix<double, 16, 1>;

ChiVector to_chi_vector(const ProcessTensor& chi);

// Inverse of to_chi_vector; Hermiticity fills the conjugate partners and the
// ground row is closed by trace preservation.
ProcessTensor from_chi_vector(const ChiVector& x, double T = 0.0);

}  // namespace qptfs
