// problem_builders.hpp: Steady-state, ratio and gap bootstrap problems over the level-N carrier

#pragma once

#include "lindboot/conic_problem.hpp"
#include "lindboot/lindblad_model.hpp"

#include <Eigen/Dense>

#include <optional>
#include <vector>

namespace lindboot {

inline constexpr double kDefaultNullTolerance = 1e-10;
inline constexpr double kNullGapRatio = 1e3;
inline constexpr int kMaxLevel = 10;

/// Orthonormal kernel basis; `indices` is filled when every vector is a standard basis vector.
struct NullSpaceBasis {
    Eigen::MatrixXcd vectors;
    std::vector<std::uint32_t> indices;
    bool coordinate = false;

    int size() const { return static_cast<int>(vectors.cols()); }
};

NullSpaceBasis null_space(const AbsorbingState& rho0, double tol = kDefaultNullTolerance);
NullSpaceBasis null_space(const Eigen::MatrixXcd& hermitian, double tol = kDefaultNullTolerance);

struct BuildOptions {
    /// Restrict to the model's real frame when it has one.
    bool realness = true;
    double null_tol = kDefaultNullTolerance;
    /// Normalization observable of the ratio and gap problems; empty means Z at site 1.
    OperatorSum reference;
};

/// Maps entries of the 2^N x 2^N carrier matrix onto the problem's real scalars.
///
/// Entries with both indices in `psd_indices` live in the PSD block (in that order),
/// all other entries are free scalars. With `diagonal_shift` one more free scalar g
/// is appended and the carrier diagonal on the PSD indices reads X_ii - g.
class CarrierLayout {
public:
    CarrierLayout(int level, std::optional<RealFrame> frame, std::vector<std::uint32_t> psd_indices,
                  bool diagonal_shift);

    int level() const noexcept { return level_; }
    int carrier_dim() const noexcept { return dim_; }
    int block_dim() const noexcept { return static_cast<int>(psd_.size()); }
    bool complex_block() const noexcept { return !frame_.has_value(); }
    std::optional<RealFrame> frame() const noexcept { return frame_; }
    int num_psd_scalars() const noexcept { return psd_scalars_; }
    int num_free() const noexcept { return num_free_; }
    int num_scalars() const noexcept { return psd_scalars_ + num_free_; }
    /// Scalar index of g, or -1.
    int shift_index() const noexcept { return shift_; }

    /// Real and imaginary parts of f(carrier) as real forms over the scalars.
    std::pair<SparseTerms, SparseTerms> map(const RdmFunctional& f) const;

    /// Scalars representing a carrier matrix (real frame: the real part of D^dag rho D is used).
    std::vector<double> scalars(const Eigen::MatrixXcd& carrier) const;
    /// Carrier matrix from scalars; the PSD-diagonal shift g is applied.
    Eigen::MatrixXcd carrier(const std::vector<double>& x) const;

private:
    int re_scalar(int u, int v) const;
    int im_scalar(int u, int v) const;

    int level_;
    int dim_;
    std::optional<RealFrame> frame_;
    std::vector<std::uint32_t> psd_;
    std::vector<int> position_; // carrier index -> PSD position or -1
    Eigen::VectorXcd phases_;
    int psd_scalars_ = 0;
    int num_free_ = 0;
    int shift_ = -1;
    std::vector<int> free_re_; // dim x dim, u <= v
    std::vector<int> free_im_;
};

/// Layout used by the builder of the given kind.
CarrierLayout make_layout(const LindbladModel& model, int level, ProblemKind kind, const BuildOptions& options = {});

/// Real objective over the layout's scalars.
SparseTerms objective_functional(const OperatorSum& obs, const CarrierLayout& layout);
/// Same, on a full real symmetric carrier (no frame).
SparseTerms objective_functional(const OperatorSum& obs, int level);

/// f(carrier) = <L^(s)> + delta <s>, every L^-term left-aligned.
RdmFunctional motion_functional(const LindbladModel& model, const KetBraString& s, int level, double delta = 0.0);

ConicProblem build_steady_state_sdp(const LindbladModel& model, int level, const OperatorSum& objective,
                                    Direction direction, const BuildOptions& options = {});
ConicProblem build_ratio_sdp(const LindbladModel& model, int level, const OperatorSum& objective, Direction direction,
                             const BuildOptions& options = {});
ConicProblem build_gap_sdp(const LindbladModel& model, int level, double delta, const BuildOptions& options = {});

/// Z at site 1 on a one-site window.
OperatorSum z_site(int site = 1);

} // namespace lindboot
