// conic_problem.hpp: Solver-agnostic SDP: one PSD block, free scalars, sparse equalities

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace lindboot {

enum class ProblemKind { SteadyState, Ratio, Gap };
enum class Direction { Min, Max };

std::string_view problem_kind_name(ProblemKind kind);
std::string_view direction_name(Direction d);

enum class RowKind { Trace, Translation, Motion, Normalization };

using SparseTerms = std::vector<std::pair<int, double>>;

struct ConstraintRow {
    SparseTerms terms; // sorted by scalar index, no duplicates
    double rhs = 0.0;
    RowKind kind = RowKind::Motion;
};

/// Scalars are laid out as PSD-block scalars followed by free scalars.
///
/// Real block of dimension n: x_ij for i <= j, row-major over the upper triangle,
/// each scalar equal to the matrix entry X_ij. Complex block: Re X_ij (i <= j)
/// first, then Im X_ij (i < j) in the same order.
struct ConicProblem {
    ProblemKind kind = ProblemKind::SteadyState;
    int level = 0;
    double omega = 0.0;
    double delta = 0.0;
    Direction sense = Direction::Min;

    int block_dim = 0;
    bool complex_block = false;
    int num_free = 0;

    SparseTerms objective;
    std::vector<ConstraintRow> rows;

    /// Rows generated before duplicate removal, by kind (diagnostics).
    int raw_motion_rows = 0;
    int raw_translation_rows = 0;

    int num_psd_scalars() const;
    int num_scalars() const { return num_psd_scalars() + num_free; }
    int count_rows(RowKind kind) const;
};

/// Index of the real scalar x_ij (i <= j) of a real symmetric block of dimension n.
inline int sym_index(int n, int i, int j)
{
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

/// Index of Im X_ij (i < j) counted from the start of the imaginary scalars.
inline int strict_index(int n, int i, int j)
{
    if (i > j) std::swap(i, j);
    return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Inverse of sym_index.
std::pair<int, int> sym_pair(int n, int index);

double objective_value(const ConicProblem& p, const std::vector<double>& x);

/// max_i |a_i x - b_i| / |a_i|_2 over all rows.
double max_row_residual(const ConicProblem& p, const std::vector<double>& x);

} // namespace lindboot
