#include "doctest.h"

#include "lindboot/errors.hpp"
#include "lindboot/operator_algebra.hpp"

#include <random>

using namespace lindboot;

namespace {

Eigen::MatrixXcd random_density(int n_sites, std::mt19937& rng)
{
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r)
        for (Eigen::Index c = 0; c < dim; ++c) a(r, c) = Complex(g(rng), g(rng));
    Eigen::MatrixXcd rho = a * a.adjoint();
    return rho / rho.trace().real();
}

OperatorSum random_sum(int length, int terms, std::mt19937& rng)
{
    std::uniform_int_distribution<std::uint32_t> bits(0, (1U << length) - 1U);
    std::normal_distribution<double> g;
    OperatorSum s;
    for (int t = 0; t < terms; ++t) s.accumulate(KetBraString(1, bits(rng), bits(rng), length), Complex(g(rng), g(rng)));
    s.prune();
    return s;
}

// Marginal on the first k sites by explicit partial trace over the rest.
Eigen::MatrixXcd leading_marginal(const Eigen::MatrixXcd& rho, int n_sites, int k)
{
    const Eigen::Index keep = Eigen::Index(1) << k;
    const Eigen::Index rest = Eigen::Index(1) << (n_sites - k);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(keep, keep);
    for (Eigen::Index a = 0; a < keep; ++a)
        for (Eigen::Index b = 0; b < keep; ++b)
            for (Eigen::Index j = 0; j < rest; ++j) out(a, b) += rho(a * rest + j, b * rest + j);
    return out;
}

} // namespace

TEST_CASE("site matrices use the (|1>, |0>) ordering")
{
    CHECK(site_matrix(SiteOperator::I) == SiteMatrix::Identity());
    SiteMatrix n;
    n << 1, 0, 0, 0;
    CHECK(site_matrix(SiteOperator::n) == n);
    SiteMatrix sm;
    sm << 0, 0, 1, 0;
    CHECK(site_matrix(SiteOperator::Sm) == sm);
    CHECK(site_matrix(SiteOperator::Sp) * site_matrix(SiteOperator::Sm) == n);
    CHECK((site_matrix(SiteOperator::Z) - (2.0 * n - SiteMatrix::Identity())).norm() == 0.0);
    for (auto op : {SiteOperator::I, SiteOperator::X, SiteOperator::Y, SiteOperator::Z, SiteOperator::Sp,
                    SiteOperator::Sm, SiteOperator::n}) {
        CHECK((site_matrix(site_adjoint(op)) - site_matrix(op).adjoint()).norm() == 0.0);
    }
}

TEST_CASE("act_left examples")
{
    const auto s = KetBraString::from_labels("1", "0", 1);
    const auto out = act_left(SiteOperator::X, 1, s);
    REQUIRE(out.size() == 1);
    CHECK(out.coefficient(KetBraString::from_labels("0", "0", 1)) == Complex(1.0));

    CHECK(act_left(SiteOperator::n, 1, KetBraString::from_labels("0", "1", 1)).empty());

    const auto grown = act_left(SiteOperator::X, 0, KetBraString::from_labels("1", "1", 1));
    REQUIRE(grown.size() == 2);
    CHECK(grown.coefficient(KetBraString::from_labels("01", "11", 0)) == Complex(1.0));
    CHECK(grown.coefficient(KetBraString::from_labels("11", "01", 0)) == Complex(1.0));

    const auto id = act_left(SiteOperator::I, 7, s);
    REQUIRE(id.size() == 1);
    CHECK(id.coefficient(s) == Complex(1.0));
}

TEST_CASE("act_right examples")
{
    const auto s = KetBraString::from_labels("1", "0", 1);
    const auto out = act_right(SiteOperator::X, 1, s);
    REQUIRE(out.size() == 1);
    CHECK(out.coefficient(KetBraString::from_labels("1", "1", 1)) == Complex(1.0));
    CHECK(act_right(SiteOperator::n, 1, s).empty());
    CHECK(act_right(SiteOperator::Sm, 1, KetBraString::from_labels("1", "1", 1)).empty());
}

TEST_CASE("single-site products match dense matrix algebra")
{
    std::mt19937 rng(7);
    const auto s = random_sum(2, 6, rng);
    for (auto op : {SiteOperator::X, SiteOperator::Y, SiteOperator::Z, SiteOperator::Sp, SiteOperator::Sm,
                    SiteOperator::n}) {
        for (int site = 0; site <= 3; ++site) {
            const Eigen::MatrixXcd base = to_dense(s, 0, 4);
            Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
            for (int k = 0; k < 4; ++k) {
                const Eigen::MatrixXcd f = (k == site) ? Eigen::MatrixXcd(site_matrix(op))
                                                       : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2));
                Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
                for (Eigen::Index a = 0; a < m.rows(); ++a)
                    for (Eigen::Index b = 0; b < m.cols(); ++b) next.block(2 * a, 2 * b, 2, 2) = m(a, b) * f;
                m = next;
            }
            CHECK((to_dense(act_left(site_matrix(op), site, s), 0, 4) - m * base).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((to_dense(act_right(site_matrix(op), site, s), 0, 4) - base * m).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("act_left is linear")
{
    std::mt19937 rng(11);
    const auto a = random_sum(3, 4, rng);
    const auto b = random_sum(3, 4, rng);
    const auto lhs = act_left(site_matrix(SiteOperator::Y), 2, a + b);
    const auto rhs = act_left(site_matrix(SiteOperator::Y), 2, a) + act_left(site_matrix(SiteOperator::Y), 2, b);
    CHECK((lhs - rhs).empty());
}

TEST_CASE("dagger")
{
    const OperatorSum s(KetBraString::from_labels("1", "0"));
    CHECK(dagger(s).coefficient(KetBraString::from_labels("0", "1")) == Complex(1.0));

    const OperatorSum t(KetBraString::from_labels("10", "01"), Complex(0, 1));
    const auto td = dagger(t);
    REQUIRE(td.size() == 1);
    CHECK(td.coefficient(KetBraString::from_labels("01", "10")) == Complex(0, -1));

    std::mt19937 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = random_sum(2, 8, rng);
        CHECK((dagger(dagger(r)) - r).empty());
        CHECK((to_dense(dagger(r), 1, 2) - to_dense(r, 1, 2).adjoint()).cwiseAbs().maxCoeff() < 1e-14);
    }
}

TEST_CASE("shift")
{
    const auto s = KetBraString::from_labels("1", "0", 0);
    CHECK(shift(s, 1) == KetBraString::from_labels("1", "0", 1));
    const auto t = KetBraString::from_labels("101", "011", 4);
    CHECK(shift(shift(t, 3), -3) == t);
}

TEST_CASE("embed_functional examples")
{
    const auto f1 = embed_functional(KetBraString::from_labels("1", "1"), 1);
    REQUIRE(f1.entries().size() == 1);
    CHECK(f1.entries().begin()->first == RdmFunctional::Key{0, 0});

    const auto f2 = embed_functional(KetBraString::from_labels("1", "1"), 2);
    REQUIRE(f2.entries().size() == 2);
    CHECK(f2.entries().count({0, 0}) == 1); // |11>
    CHECK(f2.entries().count({1, 1}) == 1); // |10>

    CHECK_THROWS_AS(embed_functional(KetBraString::from_labels("11", "11"), 1), Error);
    try {
        embed_functional(KetBraString::from_labels("11", "11"), 1);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::WindowTooLarge);
    }
}

TEST_CASE("embedded functionals agree with dense partial traces")
{
    std::mt19937 rng(5);
    for (int level = 1; level <= 5; ++level) {
        const Eigen::MatrixXcd rho = random_density(level, rng);
        for (int k = 1; k <= std::min(3, level); ++k) {
            const auto s = random_sum(k, 3, rng);
            const Eigen::MatrixXcd marginal = leading_marginal(rho, level, k);
            const Complex direct = (marginal * to_dense(s, 1, k)).trace();
            CHECK(std::abs(embed_functional(s, level).apply(rho) - direct) < 1e-12);
        }
    }
}

TEST_CASE("window_functional places strings inside the level window")
{
    std::mt19937 rng(9);
    const Eigen::MatrixXcd rho = random_density(4, rng);
    const auto s = random_sum(2, 4, rng);
    for (int first = 1; first <= 3; ++first) {
        OperatorSum placed;
        for (const auto& [t, c] : s) placed.accumulate(shift(t, first - 1), c);
        const Eigen::MatrixXcd op = to_dense(placed, 1, 4);
        Complex viaw = 0.0;
        for (const auto& [t, c] : s) viaw += c * window_functional(t, 4, first).apply(rho);
        CHECK(std::abs(viaw - (rho * op).trace()) < 1e-12);
    }
}

TEST_CASE("out-of-window padding equals dense product on a 4-site chain")
{
    std::mt19937 rng(13);
    const auto s = random_sum(2, 5, rng); // sites 1..2
    const auto prod = act_left(site_matrix(SiteOperator::X), 3, s);
    const Eigen::MatrixXcd rho = random_density(4, rng);
    Eigen::MatrixXcd x3 = Eigen::MatrixXcd::Identity(1, 1);
    for (int k = 0; k < 4; ++k) {
        const Eigen::MatrixXcd f = (k == 3) ? Eigen::MatrixXcd(site_matrix(SiteOperator::X))
                                            : Eigen::MatrixXcd(Eigen::MatrixXcd::Identity(2, 2));
        Eigen::MatrixXcd next(x3.rows() * 2, x3.cols() * 2);
        for (Eigen::Index a = 0; a < x3.rows(); ++a)
            for (Eigen::Index b = 0; b < x3.cols(); ++b) next.block(2 * a, 2 * b, 2, 2) = x3(a, b) * f;
        x3 = next;
    }
    const Eigen::MatrixXcd dense = x3 * to_dense(s, 0, 4);
    CHECK(std::abs(embed_functional(prod, 4).apply(rho) - (rho * to_dense(prod, 1, 4)).trace()) < 1e-12);
    CHECK((to_dense(prod, 0, 4) - dense).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pruning removes exact cancellations")
{
    OperatorSum s(KetBraString::from_labels("1", "0"), 1.0);
    s -= OperatorSum(KetBraString::from_labels("1", "0"), 1.0);
    CHECK(s.empty());
    s.accumulate(KetBraString::from_labels("1", "0"), 1e-15);
    s.prune();
    CHECK(s.empty());
}
