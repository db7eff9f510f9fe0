// oracle.cpp: Dense Kronecker-product reference for the adjoint Lindbladian

#include "lindboot/oracle.hpp"

#include "lindboot/errors.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include <algorithm>

namespace lindboot::oracle {

namespace {

using Matrix = Eigen::MatrixXcd;

void check_size(int n_sites, int limit)
{
    if (n_sites < 1 || n_sites > limit) {
        throw Error(ErrorCode::TooLarge, "dense oracle supports 1.." + std::to_string(limit) + " sites, got " +
                                             std::to_string(n_sites));
    }
}

std::vector<std::pair<int, int>> bonds(int n_sites, Boundary boundary)
{
    std::vector<std::pair<int, int>> out;
    for (int k = 0; k + 1 < n_sites; ++k) out.emplace_back(k, k + 1);
    if (boundary == Boundary::Periodic && n_sites >= 2) out.emplace_back(n_sites - 1, 0);
    return out;
}

} // namespace

Matrix dense_site_operator(const SiteMatrix& m, int site, int n_sites)
{
    const Matrix left = Matrix::Identity(Eigen::Index(1) << site, Eigen::Index(1) << site);
    const int rest = n_sites - site - 1;
    const Matrix right = Matrix::Identity(Eigen::Index(1) << rest, Eigen::Index(1) << rest);
    const Matrix mid = m;
    return Eigen::kroneckerProduct(Eigen::kroneckerProduct(left, mid).eval(), right).eval();
}

Matrix dense_hamiltonian(const LindbladModel& model, int n_sites, Boundary boundary)
{
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    Matrix h = Matrix::Zero(dim, dim);
    for (const auto& [a, b] : bonds(n_sites, boundary)) {
        for (const auto& term : model.bond_terms()) {
            h += term.coefficient * dense_site_operator(site_matrix(term.left), a, n_sites) *
                 dense_site_operator(site_matrix(term.right), b, n_sites);
        }
    }
    return h;
}

DenseSuperoperator dense_adjoint_lindbladian(const LindbladModel& model, int n_sites, Boundary boundary)
{
    check_size(n_sites, kMaxDenseSites);
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    const Matrix id = Matrix::Identity(dim, dim);
    const Complex i1(0.0, 1.0);

    const Matrix h = dense_hamiltonian(model, n_sites, boundary);
    // Row-major vectorization: vec(A O B) = (A kron B^T) vec(O).
    Matrix super = i1 * (Eigen::kroneckerProduct(h, id).eval() - Eigen::kroneckerProduct(id, h.transpose()).eval());
    if (model.gamma() != 0.0) {
        for (int k = 0; k < n_sites; ++k) {
            const Matrix l = dense_site_operator(model.jump_matrix(), k, n_sites);
            const Matrix ld = l.adjoint();
            const Matrix ldl = ld * l;
            super += model.gamma() * (Eigen::kroneckerProduct(ld, l.transpose()).eval() -
                                      0.5 * Eigen::kroneckerProduct(ldl, id).eval() -
                                      0.5 * Eigen::kroneckerProduct(id, ldl.transpose()).eval());
        }
    }
    return DenseSuperoperator{n_sites, boundary, std::move(super)};
}

Matrix symbolic_superoperator(const LindbladModel& model, int n_sites, Boundary boundary)
{
    check_size(n_sites, kMaxDenseSites);
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    Matrix super = Matrix::Zero(dim * dim, dim * dim);
    const auto bond_list = bonds(n_sites, boundary);
    for (std::uint32_t ket = 0; ket < static_cast<std::uint32_t>(dim); ++ket) {
        for (std::uint32_t bra = 0; bra < static_cast<std::uint32_t>(dim); ++bra) {
            const KetBraString s(0, ket, bra, n_sites);
            OperatorSum image;
            for (const auto& [a, b] : bond_list) image += bond_commutator(model, a, b, s);
            for (int k = 0; k < n_sites; ++k) image += dissipator(model, k, s);
            const Matrix dense = to_dense(image, 0, n_sites);
            const Eigen::Index column = Eigen::Index(rdm_index(ket, n_sites)) * dim + rdm_index(bra, n_sites);
            for (Eigen::Index r = 0; r < dim; ++r) {
                for (Eigen::Index c = 0; c < dim; ++c) super(r * dim + c, column) = dense(r, c);
            }
        }
    }
    return super;
}

std::vector<ModeOverlap> mode_overlap_check(const LindbladModel& model, int n_sites, const OperatorSum& observable,
                                            Boundary boundary)
{
    check_size(n_sites, kMaxModeSites);
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    const Matrix obs = to_dense(observable, observable.empty() ? 0 : observable.support().first, n_sites);
    const DenseSuperoperator heisenberg = dense_adjoint_lindbladian(model, n_sites, boundary);
    const Matrix schrodinger = heisenberg.matrix.adjoint();
    Eigen::ComplexEigenSolver<Matrix> solver(schrodinger);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::InvalidArgument, "eigen-decomposition of the dense generator failed");
    }
    std::vector<ModeOverlap> modes;
    modes.reserve(static_cast<std::size_t>(dim * dim));
    for (Eigen::Index k = 0; k < dim * dim; ++k) {
        Eigen::VectorXcd v = solver.eigenvectors().col(k);
        v.normalize();
        Complex overlap = 0.0;
        for (Eigen::Index r = 0; r < dim; ++r) {
            for (Eigen::Index c = 0; c < dim; ++c) overlap += obs(r, c) * v(c * dim + r);
        }
        modes.push_back({solver.eigenvalues()(k), overlap});
    }
    std::sort(modes.begin(), modes.end(), [](const ModeOverlap& a, const ModeOverlap& b) {
        if (a.eigenvalue.real() != b.eigenvalue.real()) return a.eigenvalue.real() > b.eigenvalue.real();
        return a.eigenvalue.imag() > b.eigenvalue.imag();
    });
    return modes;
}

} // namespace lindboot::oracle
