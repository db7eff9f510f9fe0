// search_drivers.cpp: Omega scans, critical-coupling bisection, navigator and gap-window search

#include "lindboot/search_drivers.hpp"

#include "lindboot/errors.hpp"

#include <boost/math/tools/toms748_solve.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>

namespace lindboot {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

} // namespace

ModelFamily contact_process_family()
{
    return [](double omega) { return quantum_contact_process(omega); };
}

BoundsRecord bound_point(const ModelFamily& family, double omega, const ScanRequest& request,
                         const SolverSettings& settings, const BuildOptions& options)
{
    BoundsRecord rec;
    rec.omega = omega;
    rec.n = request.n;
    rec.objective = request.objective_name;
    rec.direction = request.direction;
    rec.kind = request.kind;
    rec.bound = std::numeric_limits<double>::quiet_NaN();
    try {
        const LindbladModel model = family(omega);
        const ConicProblem p = request.kind == ProblemKind::Ratio
                                   ? build_ratio_sdp(model, request.n, request.objective, request.direction, options)
                                   : build_steady_state_sdp(model, request.n, request.objective, request.direction,
                                                            options);
        const SolveResult r = solve(p, settings);
        rec.report = r.report;
        rec.bound = r.bound();
    } catch (const Error& e) {
        rec.error = e.what();
    }
    return rec;
}

std::vector<BoundsRecord> scan_omega(const ModelFamily& family, const ScanRequest& request,
                                     const SolverSettings& settings, const BuildOptions& options)
{
    if (request.grid.empty()) throw Error(ErrorCode::InvalidArgument, "omega grid is empty");
    if (!std::is_sorted(request.grid.begin(), request.grid.end())) {
        throw Error(ErrorCode::InvalidArgument, "omega grid must be ascending");
    }
    std::vector<BoundsRecord> out;
    out.reserve(request.grid.size());
    for (double om : request.grid) out.push_back(bound_point(family, om, request, settings, options));
    return out;
}

CriticalResult critical_coupling_lower_bound(const ModelFamily& family, int n, const CriticalOptions& opt,
                                             const SolverSettings& settings, const BuildOptions& build)
{
    if (!(opt.tol > 0.0) || !(opt.eps > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol and eps must be > 0");
    if (!(opt.omega_hi > opt.omega_lo) || opt.omega_lo < 0.0) {
        throw Error(ErrorCode::InvalidArgument, "bad coupling bracket");
    }
    ScanRequest req;
    req.n = n;
    req.objective = z_site();
    req.objective_name = "Z1";
    req.direction = Direction::Max;
    req.kind = opt.method == CriticalMethod::Ratio ? ProblemKind::Ratio : ProblemKind::SteadyState;

    CriticalResult res;
    auto active = [&](double omega) {
        BoundsRecord rec = bound_point(family, omega, req, settings, build);
        ++res.evaluations;
        if (!rec.error.empty()) throw Error(ErrorCode::InvalidArgument, rec.error);
        bool on = false;
        if (opt.method == CriticalMethod::Ratio) {
            on = rec.report.status != SolveStatus::PrimalInfeasible;
        } else {
            on = rec.report.status != SolveStatus::PrimalInfeasible && rec.bound > -1.0 + opt.eps;
        }
        res.trace.push_back(std::move(rec));
        return on;
    };

    double lo = opt.omega_lo;
    double hi = opt.omega_hi;
    const bool at_lo = active(lo);
    const bool at_hi = active(hi);
    if (at_lo == at_hi) {
        throw Error(ErrorCode::BracketFailure, "predicate is constant on [" + std::to_string(lo) + ", " +
                                                   std::to_string(hi) + "]");
    }
    if (at_lo) {
        throw Error(ErrorCode::BracketFailure, "bound is already nontrivial at the lower end of the bracket");
    }
    while (hi - lo > opt.tol) {
        const double mid = 0.5 * (lo + hi);
        if (active(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    res.omega = lo;
    res.omega_hi = hi;
    return res;
}

NavigatorPoint navigator(const LindbladModel& model, int n, double delta, const SolverSettings& settings,
                         const BuildOptions& options)
{
    NavigatorPoint pt;
    pt.delta = delta;
    const SolveResult r = solve(build_gap_sdp(model, n, delta, options), settings);
    pt.report = r.report;
    switch (r.report.status) {
    case SolveStatus::PrimalInfeasible: pt.value = kInf; break;
    case SolveStatus::DualInfeasible: pt.value = -kInf; break;
    case SolveStatus::Optimal: pt.value = r.bound(); break;
    case SolveStatus::NumericalLimit:
        pt.value = std::isfinite(r.report.dual_objective) ? r.report.dual_objective : r.report.primal_objective;
        break;
    }
    return pt;
}

std::string_view gap_status_name(GapStatus s)
{
    return s == GapStatus::Allowed ? "Allowed" : "NoAllowedRegion";
}

GapRecord gap_window(const LindbladModel& model, int n, const GapSearchOptions& search,
                     const SolverSettings& settings, const BuildOptions& options)
{
    if (!(search.delta_min >= 0.0)) throw Error(ErrorCode::NegativeDelta, "delta bracket must start at >= 0");
    if (!(search.delta_max > search.delta_min)) throw Error(ErrorCode::InvalidArgument, "empty delta bracket");
    if (search.grid_points < 2) throw Error(ErrorCode::InvalidArgument, "grid needs at least 2 points");
    if (!(search.golden_width > 0.0) || !(search.brent_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "search widths must be > 0");
    }

    GapRecord rec;
    rec.omega = model.coupling();
    rec.n = n;
    const double thr = -search.g_thresh;
    auto eval = [&](double d) {
        NavigatorPoint pt = navigator(model, n, d, settings, options);
        rec.probes.push_back(pt);
        return pt;
    };
    auto allowed = [thr](double v) { return v < thr; };

    // Phase 1: coarse grid with early exit.
    const double lo = search.delta_min;
    const double hi = search.delta_max;
    const int g = search.grid_points;
    auto grid_at = [&](int k) { return k == g - 1 ? hi : lo + (hi - lo) * k / (g - 1); };
    int found = -1;
    for (int k = 0; k < g; ++k) {
        rec.grid.push_back(eval(grid_at(k)));
        if (allowed(rec.grid.back().value)) {
            found = k;
            break;
        }
    }
    double feasible = std::numeric_limits<double>::quiet_NaN();
    if (found >= 0) {
        feasible = grid_at(found);
    } else {
        // Golden section on the cell pair around the smallest grid value.
        const auto best = std::min_element(rec.grid.begin(), rec.grid.end(),
                                           [](const auto& a, const auto& b) { return a.value < b.value; });
        const int k = static_cast<int>(best - rec.grid.begin());
        double a = grid_at(std::max(0, k - 1));
        double b = grid_at(std::min(g - 1, k + 1));
        const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
        double c = b - ratio * (b - a);
        double d = a + ratio * (b - a);
        NavigatorPoint fc = eval(c);
        NavigatorPoint fd = eval(d);
        while (!allowed(fc.value) && !allowed(fd.value) && b - a > search.golden_width) {
            if (fc.value < fd.value) {
                b = d;
                d = c;
                fd = fc;
                c = b - ratio * (b - a);
                fc = eval(c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + ratio * (b - a);
                fd = eval(d);
            }
        }
        if (allowed(fc.value)) {
            feasible = c;
        } else if (allowed(fd.value)) {
            feasible = d;
        }
    }

    auto finish_minimum = [&] {
        const auto best = std::min_element(rec.probes.begin(), rec.probes.end(),
                                           [](const auto& a, const auto& b) { return a.value < b.value; });
        rec.navigator_min = best->value;
        rec.argmin = best->delta;
        rec.precision_warning = std::abs(rec.navigator_min) <= 10.0 * settings.tol_feas;
    };

    if (std::isnan(feasible)) {
        rec.status = GapStatus::NoAllowedRegion;
        rec.delta_lb = rec.delta_ub = std::numeric_limits<double>::quiet_NaN();
        finish_minimum();
        return rec;
    }
    rec.status = GapStatus::Allowed;

    // Phase 2: zero crossings of N(delta) + g_thresh on each side.
    auto shifted = [&](double v) { return std::clamp(v - thr, -1.0, 1.0); };
    auto root = [&](double a, double fa, double b, double fb) {
        std::uintmax_t iters = 200;
        const double tol = search.brent_tol;
        const auto r = boost::math::tools::toms748_solve(
            [&](double d) { return shifted(eval(d).value); }, a, b, shifted(fa), shifted(fb),
            [tol](double x, double y) { return std::abs(y - x) <= tol; }, iters);
        return r;
    };
    auto nearest = [&](bool left_side, bool want_allowed, double from) {
        const NavigatorPoint* pick = nullptr;
        for (const auto& p : rec.probes) {
            if (allowed(p.value) != want_allowed) continue;
            if (left_side ? !(p.delta < from) : !(p.delta > from)) continue;
            if (!pick || (left_side ? p.delta > pick->delta : p.delta < pick->delta)) pick = &p;
        }
        return pick ? std::optional<NavigatorPoint>(*pick) : std::nullopt;
    };

    // The first allowed point is the reference for both sides.
    if (auto left = nearest(true, false, feasible)) {
        const auto inner = nearest(false, true, left->delta);
        const auto r = root(left->delta, left->value, inner->delta, inner->value);
        rec.delta_lb = r.first;
    } else {
        rec.delta_lb = lo;
    }

    auto right = nearest(false, false, feasible);
    if (!right) {
        for (int k = found >= 0 ? found + 1 : 0; k < g; ++k) {
            const double d = grid_at(k);
            if (d <= feasible) continue;
            rec.grid.push_back(eval(d));
            if (!allowed(rec.grid.back().value)) {
                right = rec.grid.back();
                break;
            }
        }
    }
    if (right) {
        const auto inner = nearest(true, true, right->delta);
        const auto r = root(inner->delta, inner->value, right->delta, right->value);
        rec.delta_ub = r.second;
    } else {
        rec.delta_ub = hi;
    }
    finish_minimum();
    return rec;
}

} // namespace lindboot
