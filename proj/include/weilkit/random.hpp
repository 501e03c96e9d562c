#pragma once

#include <random>
#include <vector>

#include "weilkit/siegel.hpp"

namespace weil {

using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo, double hi);
/// Symmetric matrix with N(0, scale^2) entries.
RMat random_symmetric(int n, double scale, Rng& rng);
RMat random_matrix(int n, double scale, Rng& rng);
/// Random quadratic Hamiltonian; c is shifted to be positive definite when
/// `positive_kinetic` is set.
QuadraticHamiltonian random_hamiltonian(int n, double scale, Rng& rng, bool positive_kinetic = true);
/// Re Z entries N(0, re_scale^2); Im Z = Q diag(lambda) Q^T with eigenvalues
/// uniform in [im_lo, im_hi].
SiegelPoint random_siegel(int n, Rng& rng, double re_scale = 0.5, double im_lo = 0.5,
                          double im_hi = 2.0);
/// One of: shear, Fourier, GL, rotation, each lifted with a random sign.
MetaplecticElement random_generator_element(int n, Rng& rng);
/// Lift of a random quadratic flow, optionally multiplied by Fourier.
MetaplecticElement random_flow_element(int n, Rng& rng, double scale = 0.5);
/// Heisenberg vector with N(0, 1) entries.
HeisenbergVector random_heisenberg(int n, Rng& rng);

}  // namespace weil
