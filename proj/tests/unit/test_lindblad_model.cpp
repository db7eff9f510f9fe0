#include "doctest.h"

#include "lindboot/errors.hpp"
#include "lindboot/lindblad_model.hpp"

using namespace lindboot;

namespace {

Eigen::Matrix4cd kron2(const SiteMatrix& a, const SiteMatrix& b)
{
    Eigen::Matrix4cd out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
    return out;
}

OperatorSum product(std::initializer_list<std::pair<SiteOperator, int>> factors, int first, int last)
{
    OperatorSum s = identity_on(first, last - first + 1);
    for (const auto& [op, site] : factors) s = act_left(site_matrix(op), site, s);
    return s;
}

} // namespace

TEST_CASE("contact process construction")
{
    const auto qcp = quantum_contact_process(2.0);
    const SiteMatrix x = site_matrix(SiteOperator::X);
    const SiteMatrix n = site_matrix(SiteOperator::n);
    const Eigen::Matrix4cd expected = 2.0 * (kron2(x, n) + kron2(n, x));
    CHECK((qcp.bond_matrix() - expected).cwiseAbs().maxCoeff() == 0.0);
    CHECK((qcp.bond_matrix() - qcp.bond_matrix().transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(qcp.bond_matrix().imag().cwiseAbs().maxCoeff() == 0.0);
    CHECK(qcp.jump_matrix() == site_matrix(SiteOperator::Sm));
    CHECK(qcp.gamma() == 1.0);
    CHECK(qcp.real_frame() == RealFrame::ExcitationPhase);

    CHECK_NOTHROW(quantum_contact_process(0.0));
    try {
        quantum_contact_process(-1.0);
        FAIL("negative coupling accepted");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositiveCoupling);
    }
}

TEST_CASE("model validation")
{
    CHECK_THROWS_AS(LindbladModel("bad", {{SiteOperator::Sp, SiteOperator::I, 1.0}}, {{SiteOperator::Sm, 1.0}}, 1.0),
                    Error);
    CHECK_THROWS_AS(LindbladModel("bad", {}, {{SiteOperator::Sm, 1.0}}, -0.5), Error);
    const LindbladModel xy("xz", {{SiteOperator::X, SiteOperator::Z, 1.0}}, {{SiteOperator::Sm, 1.0}}, 1.0);
    CHECK(xy.real_frame().has_value());
    const LindbladModel y("y", {{SiteOperator::Y, SiteOperator::Z, 1.0}, {SiteOperator::X, SiteOperator::Z, 1.0}},
                          {{SiteOperator::Sm, 1.0}}, 1.0);
    CHECK_FALSE(y.real_frame().has_value());
}

TEST_CASE("trace preservation on identity expansions")
{
    const auto qcp = quantum_contact_process(1.7);
    for (int k = 1; k <= 3; ++k) CHECK(adjoint_lindbladian(qcp, identity_on(1, k)).empty());
}

TEST_CASE("occupation equation of motion")
{
    const double omega = 1.3;
    const auto qcp = quantum_contact_process(omega);
    const auto lhs = adjoint_lindbladian(qcp, product({{SiteOperator::n, 2}}, 2, 2));
    OperatorSum rhs = Complex(omega) * product({{SiteOperator::n, 1}, {SiteOperator::Y, 2}}, 1, 3);
    rhs += Complex(omega) * product({{SiteOperator::Y, 2}, {SiteOperator::n, 3}}, 1, 3);
    rhs -= product({{SiteOperator::n, 2}}, 1, 3);
    CHECK((to_dense(lhs, 1, 3) - to_dense(rhs, 1, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dissipator on a single-site coherence")
{
    const auto qcp = quantum_contact_process(0.0);
    const auto s = KetBraString::from_labels("1", "0");
    const auto d = dissipator(qcp, 1, s);
    REQUIRE(d.size() == 1);
    CHECK(std::abs(d.coefficient(s) - Complex(-0.5)) < 1e-15);
    CHECK(dissipator(qcp, 5, s).empty());
    CHECK(dissipator(qcp, 0, KetBraString::from_labels("11", "01", 1)).empty());
}

TEST_CASE("support growth contract")
{
    const auto qcp = quantum_contact_process(2.0);
    for (std::uint32_t ket = 0; ket < 8; ++ket) {
        for (std::uint32_t bra = 0; bra < 8; ++bra) {
            const KetBraString s(4, ket, bra, 3);
            for (const auto& [t, c] : adjoint_lindbladian(qcp, s)) {
                CHECK(t.offset() >= s.offset() - 1);
                CHECK(t.right() <= s.right() + 1);
                CHECK_FALSE((t.offset() < s.offset() && t.right() > s.right()));
            }
        }
    }
}

TEST_CASE("absorbing state")
{
    const auto r1 = absorbing_state_rdm(1);
    Eigen::Matrix2cd expected;
    expected << 0, 0, 0, 1;
    CHECK(r1.matrix == Eigen::MatrixXcd(expected));

    const auto r2 = absorbing_state_rdm(2);
    CHECK(r2.matrix(3, 3) == Complex(1.0));
    CHECK(r2.matrix.cwiseAbs().sum() == 1.0);

    OperatorSum z1 = act_left(site_matrix(SiteOperator::Z), 1, identity_on(1, 1));
    CHECK(std::abs(embed_functional(z1, 1).apply(r1.matrix) - Complex(-1.0)) < 1e-15);
}

TEST_CASE("absorbing state is stationary for every string shorter than the level")
{
    for (double omega : {0.0, 1.0, 3.5}) {
        const auto qcp = quantum_contact_process(omega);
        for (int level = 2; level <= 4; ++level) {
            const auto rho0 = absorbing_state_rdm(level);
            double worst = 0.0;
            for (int k = 1; k < level; ++k) {
                for (std::uint32_t ket = 0; ket < (1U << k); ++ket) {
                    for (std::uint32_t bra = 0; bra < (1U << k); ++bra) {
                        const auto image = adjoint_lindbladian(qcp, KetBraString(1, ket, bra, k));
                        worst = std::max(worst, std::abs(embed_functional(image, level).apply(rho0.matrix)));
                    }
                }
            }
            CHECK(worst < 1e-12);
        }
    }
}

TEST_CASE("frame phases")
{
    const auto p = frame_phases(RealFrame::ExcitationPhase, 2);
    CHECK(p(0) == Complex(-1, 0)); // |11>
    CHECK(p(1) == Complex(0, 1));  // |10>
    CHECK(p(3) == Complex(1, 0));  // |00>
    CHECK(frame_phases(RealFrame::Computational, 3) == Eigen::VectorXcd::Ones(8));
}
