#include "qptfs/process_tensor.hpp"

namespace qptfs {

namespace {
constexpr Exciton E = Exciton::e;
constexpr Exciton P = Exciton::ep;

bool is_exciton(Level l) { return l == Level::e || l == Level::ep; }
Exciton as_exciton(Level l) { return l == Level::e ? E : P; }
}  // namespace

ProcessTensor ProcessTensor::identity(double T) {
    ProcessTensor chi;
    chi.waiting_time_T = T;
    for (auto n : kExcitons)
        for (auto m : kExcitons) chi(n, m, n, m) = 1.0;
    chi.close_ground_row();
    return chi;
}

cplx ProcessTensor::element(Level n, Level m, Level nu, Level mu) const {
    if (nu == Level::g && mu == Level::g) {
        return (n == Level::g && m == Level::g) ? 1.0 : 0.0;
    }
    if (!is_exciton(nu) || !is_exciton(mu)) return 0.0;
    if (is_exciton(n) && is_exciton(m)) {
        return (*this)(as_exciton(n), as_exciton(m), as_exciton(nu), as_exciton(mu));
    }
    if (n == Level::g && m == Level::g) return ground(as_exciton(nu), as_exciton(mu));
    return 0.0;
}

void ProcessTensor::close_ground_row() {
    for (auto nu : kExcitons)
        for (auto mu : kExcitons) {
            ground(nu, mu) = (nu == mu ? 1.0 : 0.0) - (*this)(E, E, nu, mu) - (*this)(P, P, nu, mu);
        }
}

ProcessTensor compose(const ProcessTensor& later, const ProcessTensor& earlier) {
    ProcessTensor out;
    out.waiting_time_T = later.waiting_time_T + earlier.waiting_time_T;
    for (auto nu : kExcitons)
        for (auto mu : kExcitons) {
            for (auto n : kExcitons)
                for (auto m : kExcitons) {
                    cplx acc = 0.0;
                    for (auto a : kExcitons)
                        for (auto b : kExcitons) acc += later(n, m, a, b) * earlier(a, b, nu, mu);
                    out(n, m, nu, mu) = acc;
                }
            cplx g = earlier.ground(nu, mu);
            for (auto a : kExcitons)
                for (auto b : kExcitons) g += later.ground(a, b) * earlier(a, b, nu, mu);
            out.ground(nu, mu) = g;
        }
    return out;
}

Eigen::Matrix<cplx, 9, 9> choi_matrix(const ProcessTensor& chi) {
    constexpr std::array<Level, 3> levels{Level::g, Level::e, Level::ep};
    Eigen::Matrix<cplx, 9, 9> L;
    for (int nu = 0; nu < 3; ++nu)
        for (int n = 0; n < 3; ++n)
            for (int mu = 0; mu < 3; ++mu)
                for (int m = 0; m < 3; ++m)
                    L(nu * 3 + n, mu * 3 + m) = chi.element(levels[n], levels[m], levels[nu], levels[mu]);
    return L;
}

ChiVector to_chi_vector(const ProcessTensor& chi) {
    ChiVector x;
    x << chi(E, E, E, E).real(), chi(P, P, E, E).real(), chi(E, P, E, E).real(), chi(E, P, E, E).imag(),
        chi(E, E, P, P).real(), chi(P, P, P, P).real(), chi(E, P, P, P).real(), chi(E, P, P, P).imag(),
        chi(E, E, E, P).real(), chi(P, P, E, P).real(), chi(E, P, E, P).real(), chi(P, E, E, P).real(),
        chi(E, E, E, P).imag(), chi(P, P, E, P).imag(), chi(E, P, E, P).imag(), chi(P, E, E, P).imag();
    return x;
}

ProcessTensor from_chi_vector(const ChiVector& x, double T) {
    ProcessTensor chi;
    chi.waiting_time_T = T;
    // Populations and coherences generated from the diagonal inputs.
    for (auto [nu, off] : {std::pair{E, 0}, std::pair{P, 4}}) {
        chi(E, E, nu, nu) = x(off + 0);
        chi(P, P, nu, nu) = x(off + 1);
        chi(E, P, nu, nu) = cplx(x(off + 2), x(off + 3));
        chi(P, E, nu, nu) = std::conj(chi(E, P, nu, nu));
    }
    // Inputs |e><e'|; the |e'><e| column follows by Hermiticity.
    const std::array<std::pair<Exciton, Exciton>, 4> outs{{{E, E}, {P, P}, {E, P}, {P, E}}};
    for (int k = 0; k < 4; ++k) {
        auto [n, m] = outs[k];
        chi(n, m, E, P) = cplx(x(8 + k), x(12 + k));
    }
    for (auto n : kExcitons)
        for (auto m : kExcitons) chi(m, n, P, E) = std::conj(chi(n, m, E, P));
    chi.close_ground_row();
    return chi;
}

}  // namespace qptfs
