// conic_problem.cpp

#include "lindboot/conic_problem.hpp"

#include "lindboot/errors.hpp"

#include <algorithm>
#include <cmath>

namespace lindboot {

std::string_view problem_kind_name(ProblemKind kind)
{
    switch (kind) {
    case ProblemKind::SteadyState: return "steady";
    case ProblemKind::Ratio: return "ratio";
    case ProblemKind::Gap: return "gap";
    }
    return "?";
}

std::string_view direction_name(Direction d) { return d == Direction::Max ? "max" : "min"; }

int ConicProblem::num_psd_scalars() const
{
    const int tri = block_dim * (block_dim + 1) / 2;
    return complex_block ? tri + block_dim * (block_dim - 1) / 2 : tri;
}

int ConicProblem::count_rows(RowKind k) const
{
    return static_cast<int>(std::count_if(rows.begin(), rows.end(), [k](const ConstraintRow& r) { return r.kind == k; }));
}

std::pair<int, int> sym_pair(int n, int index)
{
    if (index < 0 || index >= n * (n + 1) / 2) throw Error(ErrorCode::InvalidArgument, "scalar index out of range");
    int i = 0;
    while (index >= n - i) {
        index -= n - i;
        ++i;
    }
    return {i, i + index};
}

double objective_value(const ConicProblem& p, const std::vector<double>& x)
{
    double v = 0.0;
    for (const auto& [k, c] : p.objective) v += c * x.at(static_cast<std::size_t>(k));
    return v;
}

double max_row_residual(const ConicProblem& p, const std::vector<double>& x)
{
    double worst = 0.0;
    for (const auto& row : p.rows) {
        double v = -row.rhs;
        double norm2 = 0.0;
        for (const auto& [k, c] : row.terms) {
            v += c * x.at(static_cast<std::size_t>(k));
            norm2 += c * c;
        }
        worst = std::max(worst, norm2 > 0.0 ? std::abs(v) / std::sqrt(norm2) : std::abs(v));
    }
    return worst;
}

} // namespace lindboot
