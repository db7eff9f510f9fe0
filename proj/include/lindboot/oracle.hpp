// oracle.hpp: Dense finite-chain realizations used to check the symbolic layer

#pragma once

#include "lindboot/lindblad_model.hpp"

#include <Eigen/Dense>

#include <vector>

namespace lindboot::oracle {

enum class Boundary { Open, Periodic };

inline constexpr int kMaxDenseSites = 6;
inline constexpr int kMaxModeSites = 5;

/// Matrix of L^ acting on row-major vectorized operators of n sites:
/// column vec(E) holds vec(L^(E)) with E(r, c) indexed in the operator-algebra convention.
struct DenseSuperoperator {
    int n_sites;
    Boundary boundary;
    Eigen::MatrixXcd matrix;
};

/// Dense n-site Hamiltonian and the jump matrix embedded at one site.
Eigen::MatrixXcd dense_hamiltonian(const LindbladModel& model, int n_sites, Boundary boundary);
Eigen::MatrixXcd dense_site_operator(const SiteMatrix& m, int site, int n_sites);

DenseSuperoperator dense_adjoint_lindbladian(const LindbladModel& model, int n_sites, Boundary boundary);

/// The same matrix assembled column by column from bond_commutator / dissipator expansions.
Eigen::MatrixXcd symbolic_superoperator(const LindbladModel& model, int n_sites, Boundary boundary);

struct ModeOverlap {
    Complex eigenvalue;
    /// Tr(O rho_k) for the Frobenius-normalized right eigenmode rho_k of the Schrodinger generator.
    Complex overlap;
};

/// Eigenmodes of the finite open chain and the coefficient B_O each one induces on the observable.
std::vector<ModeOverlap> mode_overlap_check(const LindbladModel& model, int n_sites, const OperatorSum& observable,
                                            Boundary boundary = Boundary::Open);

} // namespace lindboot::oracle
