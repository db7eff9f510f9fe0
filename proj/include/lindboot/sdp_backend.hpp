// sdp_backend.hpp: Primal-dual interior-point solver, Hermitian embedding and SDPA I/O

#pragma once

#include "lindboot/conic_problem.hpp"

#include <Eigen/Dense>

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace lindboot {

struct SolverSettings {
    double tol_feas = 1e-9;
    double tol_gap = 1e-9;
    long max_iter = 100000;
    /// Carried to the builders; the solver itself handles either block type.
    bool realness = true;
    int verbosity = 0;

    void validate() const;
};

enum class SolveStatus { Optimal, PrimalInfeasible, DualInfeasible, NumericalLimit };

std::string_view solve_status_name(SolveStatus s);

struct SolveReport {
    SolveStatus status = SolveStatus::NumericalLimit;
    double primal_objective = 0.0;
    double dual_objective = 0.0;
    long iterations = 0;
    double seconds = 0.0;
    /// Largest |a_i x - b_i| / |a_i| over the original rows.
    double max_residual = 0.0;
};

struct SolveResult {
    SolveReport report;
    /// Primal scalars in the problem's own layout.
    std::vector<double> x;
    /// One multiplier per problem row (zero for rows removed as dependent).
    std::vector<double> y;
    /// PSD block of the real form that was solved (2n x 2n for complex problems).
    Eigen::MatrixXd primal_block;
    Eigen::MatrixXd dual_slack;

    /// Rigorous side of the sandwich: the dual objective, in the problem's sense.
    double bound() const { return report.dual_objective; }
};

SolveResult solve(const ConicProblem& problem, const SolverSettings& settings = {});

/// Real form of a complex-block problem: n -> 2n via [[Re, -Im], [Im, Re]]; real problems pass through.
ConicProblem hermitian_embedding(const ConicProblem& problem);

/// Scalars of the complex problem recovered from a solution of its embedding.
std::vector<double> hermitian_restrict(const ConicProblem& complex_problem, const std::vector<double>& embedded_x);

/// PSD block of a real or complex problem as a Hermitian matrix.
Eigen::MatrixXcd block_matrix(const ConicProblem& problem, const std::vector<double>& x);

struct CertificateCheck {
    double min_eigenvalue = 0.0;
    double max_residual = 0.0;
    bool passed = false;
};

/// Recomputes PSD-ness and row residuals of result.x from the problem data alone.
CertificateCheck verify_certificate(const ConicProblem& problem, const SolveResult& result,
                                    const SolverSettings& settings = {});

/// Sparse SDPA data in the convention: maximize tr(F0 Y) s.t. tr(Fi Y) = c_i, Y block-diagonal PSD.
struct SdpaData {
    struct Entry {
        int matrix;
        int block;
        int i;
        int j;
        double value;

        auto operator<=>(const Entry&) const = default;
    };

    int num_constraints = 0;
    std::vector<int> block_sizes;
    std::vector<double> rhs;
    std::vector<Entry> entries; // sorted, 1-based upper triangle

    bool operator==(const SdpaData&) const = default;
};

/// Free scalars f = f+ - f- become a diagonal block of size -2k. Requires a real problem.
SdpaData to_sdpa(const ConicProblem& problem);
void write_sdpa(const SdpaData& data, std::ostream& out);
SdpaData read_sdpa(std::istream& in);

void export_sdpa(const ConicProblem& problem, const std::string& path);
SdpaData import_sdpa(const std::string& path);

} // namespace lindboot
