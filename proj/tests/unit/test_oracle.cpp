#include "doctest.h"

#include "lindboot/errors.hpp"
#include "lindboot/oracle.hpp"

#include <algorithm>

using namespace lindboot;
using namespace lindboot::oracle;

namespace {

Eigen::VectorXcd identity_vector(int n_sites)
{
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim * dim);
    for (Eigen::Index a = 0; a < dim; ++a) v(a * dim + a) = 1.0;
    return v;
}

} // namespace

TEST_CASE("single-site amplitude damping spectrum")
{
    const auto sup = dense_adjoint_lindbladian(quantum_contact_process(3.0), 1, Boundary::Open);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(sup.matrix);
    std::vector<double> ev;
    for (Eigen::Index k = 0; k < 4; ++k) {
        CHECK(std::abs(es.eigenvalues()(k).imag()) < 1e-12);
        ev.push_back(es.eigenvalues()(k).real());
    }
    std::sort(ev.begin(), ev.end());
    CHECK(ev[0] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(ev[1] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(ev[2] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(std::abs(ev[3]) < 1e-12);
}

TEST_CASE("dense superoperator annihilates the identity")
{
    for (auto b : {Boundary::Open, Boundary::Periodic}) {
        const auto sup = dense_adjoint_lindbladian(quantum_contact_process(1.5), 3, b);
        CHECK((sup.matrix * identity_vector(3)).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("symbolic and dense superoperators agree")
{
    for (double omega : {0.0, 1.0, 2.5}) {
        const auto qcp = quantum_contact_process(omega);
        for (auto b : {Boundary::Periodic, Boundary::Open}) {
            const auto dense = dense_adjoint_lindbladian(qcp, 4, b);
            const auto symbolic = symbolic_superoperator(qcp, 4, b);
            CHECK((dense.matrix - symbolic).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("open-chain padding of the infinite-lattice generator")
{
    // An operator on sites 1..2 of an open 4-site chain only feels bonds inside the chain.
    const auto qcp = quantum_contact_process(1.2);
    const auto dense = dense_adjoint_lindbladian(qcp, 4, Boundary::Open);
    for (std::uint32_t ket = 0; ket < 4; ++ket) {
        for (std::uint32_t bra = 0; bra < 4; ++bra) {
            const KetBraString s(1, ket, bra, 2);
            const Eigen::MatrixXcd op = to_dense(pad_to(s, 0, 3), 0, 4);
            Eigen::VectorXcd v(256);
            for (int r = 0; r < 16; ++r)
                for (int c = 0; c < 16; ++c) v(r * 16 + c) = op(r, c);
            const Eigen::VectorXcd image = dense.matrix * v;
            const Eigen::MatrixXcd expected = to_dense(adjoint_lindbladian(qcp, s), 0, 4);
            double worst = 0.0;
            for (int r = 0; r < 16; ++r)
                for (int c = 0; c < 16; ++c) worst = std::max(worst, std::abs(image(r * 16 + c) - expected(r, c)));
            CHECK(worst < 1e-12);
        }
    }
}

TEST_CASE("dissipativity")
{
    const auto sup = dense_adjoint_lindbladian(quantum_contact_process(2.0), 4, Boundary::Periodic);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(sup.matrix, false);
    CHECK(es.eigenvalues().real().maxCoeff() < 1e-10);
}

TEST_CASE("size limits")
{
    CHECK_THROWS_AS(dense_adjoint_lindbladian(quantum_contact_process(1.0), 7, Boundary::Open), Error);
    CHECK_THROWS_AS(mode_overlap_check(quantum_contact_process(1.0), 6,
                                       act_left(site_matrix(SiteOperator::Z), 0, identity_on(0, 1))),
                    Error);
}

TEST_CASE("mode overlaps at zero coupling")
{
    const auto z1 = act_left(site_matrix(SiteOperator::Z), 0, identity_on(0, 1));
    const auto modes = mode_overlap_check(quantum_contact_process(0.0), 3, z1);
    double at_half = 0.0;
    double at_one = 0.0;
    for (const auto& m : modes) {
        if (std::abs(m.eigenvalue - Complex(-0.5)) < 1e-8) at_half = std::max(at_half, std::abs(m.overlap));
        if (std::abs(m.eigenvalue - Complex(-1.0)) < 1e-8) at_one = std::max(at_one, std::abs(m.overlap));
    }
    CHECK(at_half < 1e-10);
    CHECK(at_one > 1e-2);
    // The stationary mode is the absorbing state: unit-norm projector, overlap -1.
    REQUIRE(std::abs(modes.front().eigenvalue) < 1e-10);
    CHECK(std::abs(std::abs(modes.front().overlap) - 1.0) < 1e-10);
}
