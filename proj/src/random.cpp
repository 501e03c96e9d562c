#include "weilkit/random.hpp"

#include <cmath>

namespace weil {

double uniform(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

RMat random_matrix(int n, double scale, Rng& rng) {
    std::normal_distribution<double> nd(0.0, scale);
    RMat M(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M(i, j) = nd(rng);
    return M;
}

RMat random_symmetric(int n, double scale, Rng& rng) {
    const RMat M = random_matrix(n, scale, rng);
    return (M + M.transpose()) / std::sqrt(2.0);
}

QuadraticHamiltonian random_hamiltonian(int n, double scale, Rng& rng, bool positive_kinetic) {
    const RMat a = random_symmetric(n, scale, rng);
    const RMat b = random_matrix(n, scale, rng);
    RMat c = random_symmetric(n, scale, rng);
    if (positive_kinetic) {
        const RMat G = random_matrix(n, scale, rng);
        c = RMat::Identity(n, n) + G * G.transpose() / n;
    }
    return QuadraticHamiltonian(a, b, c);
}

SiegelPoint random_siegel(int n, Rng& rng, double re_scale, double im_lo, double im_hi) {
    const RMat re = random_symmetric(n, re_scale, rng);
    Eigen::HouseholderQR<RMat> qr(random_matrix(n, 1.0, rng));
    const RMat Q = qr.householderQ();
    RVec lam(n);
    for (int i = 0; i < n; ++i) lam(i) = uniform(rng, im_lo, im_hi);
    const RMat im = Q * lam.asDiagonal() * Q.transpose();
    return SiegelPoint::make(re, RMat((im + im.transpose()) / 2.0));
}

MetaplecticElement random_generator_element(int n, Rng& rng) {
    MetaplecticElement m = mp_identity(n);
    switch (std::uniform_int_distribution<int>(0, 3)(rng)) {
        case 0: m = mp_shear(random_symmetric(n, 0.7, rng)); break;
        case 1: m = mp_fourier(n); break;
        case 2: {
            RMat A = RMat::Identity(n, n) + random_matrix(n, 0.4, rng);
            while (std::abs(A.determinant()) < 0.2) A = RMat::Identity(n, n) + random_matrix(n, 0.4, rng);
            m = mp_gl(A);
            break;
        }
        default: m = mp_rotation(n, uniform(rng, -pi, pi)); break;
    }
    if (std::bernoulli_distribution(0.5)(rng)) m = mp_mul(mp_center(n), m);
    return m;
}

MetaplecticElement random_flow_element(int n, Rng& rng, double scale) {
    const QuadraticHamiltonian H = random_hamiltonian(n, scale, rng);
    MetaplecticElement m = mp_flow(H, uniform(rng, 0.3, 1.5));
    if (std::bernoulli_distribution(0.3)(rng)) m = mp_mul(mp_fourier(n), m);
    return m;
}

HeisenbergVector random_heisenberg(int n, Rng& rng) {
    std::normal_distribution<double> nd(0.0, 1.0);
    HeisenbergVector h{RVec(n), RVec(n)};
    for (int i = 0; i < n; ++i) {
        h.v(i) = nd(rng);
        h.w(i) = nd(rng);
    }
    return h;
}

}  // namespace weil
