#include "doctest.h"

#include "lindboot/errors.hpp"
#include "lindboot/search_drivers.hpp"

#include <cmath>

using namespace lindboot;

namespace {

ScanRequest max_z1(int n, std::vector<double> grid = {})
{
    ScanRequest r;
    r.grid = std::move(grid);
    r.n = n;
    r.objective = z_site();
    r.direction = Direction::Max;
    return r;
}

} // namespace

TEST_CASE("scan keeps grid order and max <Z1> grows with the coupling at N=3")
{
    const auto recs = scan_omega(contact_process_family(), max_z1(3, {0.0, 1.0, 2.0, 3.0, 4.0}));
    REQUIRE(recs.size() == 5);
    for (std::size_t k = 0; k < recs.size(); ++k) {
        CHECK(recs[k].error.empty());
        CHECK(recs[k].report.status == SolveStatus::Optimal);
        CHECK(recs[k].omega == doctest::Approx(static_cast<double>(k)));
        if (k > 0) CHECK(recs[k].bound >= recs[k - 1].bound - 1e-7);
    }
    CHECK(recs[0].bound == doctest::Approx(-1.0).epsilon(1e-7));
    CHECK(recs[2].bound == doctest::Approx(0.42048948).epsilon(1e-7));
}

TEST_CASE("scan rejects empty and unsorted grids")
{
    CHECK_THROWS_AS(scan_omega(contact_process_family(), max_z1(3)), Error);
    CHECK_THROWS_AS(scan_omega(contact_process_family(), max_z1(3, {1.0, 0.5})), Error);
}

TEST_CASE("a failing point is recorded instead of thrown")
{
    ScanRequest r = max_z1(3);
    r.objective = OperatorSum();
    const BoundsRecord rec = bound_point(contact_process_family(), 1.0, r);
    CHECK_FALSE(rec.error.empty());
    CHECK(std::isnan(rec.bound));
}

TEST_CASE("critical coupling at N=3")
{
    CriticalOptions opt;
    opt.tol = 1e-3;
    const CriticalResult r = critical_coupling_lower_bound(contact_process_family(), 3, opt);
    CHECK(r.omega == doctest::Approx(0.93317).epsilon(1.5e-3));
    CHECK(r.omega_hi - r.omega <= opt.tol);
    CHECK(r.evaluations == static_cast<int>(r.trace.size()));
}

TEST_CASE("critical coupling bracket failures")
{
    CriticalOptions opt;
    opt.tol = 1e-2;
    opt.omega_hi = 0.5;
    try {
        critical_coupling_lower_bound(contact_process_family(), 3, opt);
        FAIL("expected BracketFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BracketFailure);
    }
    opt.omega_lo = 2.0;
    opt.omega_hi = 4.0;
    try {
        critical_coupling_lower_bound(contact_process_family(), 3, opt);
        FAIL("expected BracketFailure");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::BracketFailure);
    }
}

TEST_CASE("navigator excludes a huge gap candidate")
{
    const NavigatorPoint p = navigator(quantum_contact_process(1.0), 4, 1e3);
    CHECK(p.value > 0.0);
}

TEST_CASE("gap window at zero coupling contains the free decay rate")
{
    const GapRecord g = gap_window(quantum_contact_process(0.0), 3);
    REQUIRE(g.status == GapStatus::Allowed);
    CHECK(g.delta_lb <= 1.0);
    CHECK(g.delta_ub >= 1.0);
    CHECK(g.delta_lb > 0.5);
    CHECK(gap_status_name(g.status) == "Allowed");
}

TEST_CASE("gap search is deterministic")
{
    GapSearchOptions opt;
    opt.grid_points = 9;
    const LindbladModel m = quantum_contact_process(2.0);
    const GapRecord a = gap_window(m, 4, opt);
    const GapRecord b = gap_window(m, 4, opt);
    REQUIRE(a.probes.size() == b.probes.size());
    for (std::size_t k = 0; k < a.probes.size(); ++k) {
        CHECK(a.probes[k].delta == b.probes[k].delta);
        CHECK(a.probes[k].value == b.probes[k].value);
    }
    CHECK(a.delta_lb == b.delta_lb);
    CHECK(a.delta_ub == b.delta_ub);
}

TEST_CASE("gap search validates its options")
{
    GapSearchOptions opt;
    opt.delta_min = -1.0;
    CHECK_THROWS_AS(gap_window(quantum_contact_process(1.0), 3, opt), Error);
    opt = {};
    opt.grid_points = 1;
    CHECK_THROWS_AS(gap_window(quantum_contact_process(1.0), 3, opt), Error);
}
