// search_drivers.hpp: Omega scans, critical-coupling bisection, navigator and gap-window search

#pragma once

#include "lindboot/problem_builders.hpp"
#include "lindboot/sdp_backend.hpp"

#include <functional>
#include <string>
#include <vector>

namespace lindboot {

/// Model as a function of the coupling.
using ModelFamily = std::function<LindbladModel(double omega)>;

ModelFamily contact_process_family();

struct BoundsRecord {
    double omega = 0.0;
    int n = 0;
    std::string objective;
    Direction direction = Direction::Max;
    ProblemKind kind = ProblemKind::SteadyState;
    double bound = 0.0;
    SolveReport report;
    /// Non-empty when the point failed before or inside the solve.
    std::string error;
};

struct ScanRequest {
    std::vector<double> grid;
    int n = 3;
    OperatorSum objective;
    std::string objective_name = "Z1";
    Direction direction = Direction::Max;
    ProblemKind kind = ProblemKind::SteadyState; // SteadyState or Ratio
};

BoundsRecord bound_point(const ModelFamily& family, double omega, const ScanRequest& request,
                         const SolverSettings& settings = {}, const BuildOptions& options = {});

/// One record per grid point, in grid order; point failures never abort the scan.
std::vector<BoundsRecord> scan_omega(const ModelFamily& family, const ScanRequest& request,
                                     const SolverSettings& settings = {}, const BuildOptions& options = {});

enum class CriticalMethod { SteadyState, Ratio };

struct CriticalOptions {
    double tol = 1e-6;
    /// Upper bound on <Z1> counts as nontrivial above -1 + eps.
    double eps = 1e-6;
    double omega_lo = 0.0;
    double omega_hi = 16.0;
    CriticalMethod method = CriticalMethod::SteadyState;
};

struct CriticalResult {
    double omega = 0.0; // largest coupling known to give a trivial bound
    double omega_hi = 0.0;
    int evaluations = 0;
    std::vector<BoundsRecord> trace;
};

/// Bisection of the predicate "bootstrap admits an active steady state" on [omega_lo, omega_hi].
/// SteadyState: max <Z1> > -1 + eps. Ratio: the ratio problem is not primal infeasible.
CriticalResult critical_coupling_lower_bound(const ModelFamily& family, int n, const CriticalOptions& options = {},
                                             const SolverSettings& settings = {},
                                             const BuildOptions& build = {});

struct NavigatorPoint {
    double delta = 0.0;
    /// g_min; +inf when the gap problem is infeasible.
    double value = 0.0;
    SolveReport report;
};

NavigatorPoint navigator(const LindbladModel& model, int n, double delta, const SolverSettings& settings = {},
                         const BuildOptions& options = {});

enum class GapStatus { Allowed, NoAllowedRegion };

std::string_view gap_status_name(GapStatus s);

struct GapSearchOptions {
    double delta_min = 0.0;
    double delta_max = 2.0;
    int grid_points = 33;
    double golden_width = 1e-3;
    double brent_tol = 1e-6;
    double g_thresh = 0.0;
};

struct GapRecord {
    double omega = 0.0;
    int n = 0;
    double delta_lb = 0.0;
    double delta_ub = 0.0;
    double navigator_min = 0.0;
    double argmin = 0.0;
    std::vector<NavigatorPoint> grid;   // phase-1 grid points actually evaluated
    std::vector<NavigatorPoint> probes; // every evaluation in call order
    GapStatus status = GapStatus::NoAllowedRegion;
    /// |navigator_min| within 10x the feasibility tolerance.
    bool precision_warning = false;
};

/// Phase 1 looks for a negative navigator value (grid, then golden section around the
/// smallest grid value); phase 2 isolates the zero crossings on both sides.
GapRecord gap_window(const LindbladModel& model, int n, const GapSearchOptions& search = {},
                     const SolverSettings& settings = {}, const BuildOptions& options = {});

} // namespace lindboot
