// lindblad_model.hpp: Translation-invariant Lindblad models and the adjoint Lindbladian

#pragma once

#include "lindboot/operator_algebra.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace lindboot {

/// coefficient * (left at site k) (right at site k+1)
struct BondTerm {
    SiteOperator left;
    SiteOperator right;
    double coefficient;
};

/// coefficient * op, summed into the single jump operator of every site.
struct JumpTerm {
    SiteOperator op;
    Complex coefficient;
};

/// Local basis change in which the adjoint Lindbladian has real matrix elements.
///
/// Computational: the identity. ExcitationPhase: every active state |1> picks up
/// a factor i, i.e. rho = D R D^dagger with D = diag(i^{#active}).
enum class RealFrame { Computational, ExcitationPhase };

/// Uniform 2-site Hamiltonian bond h, one jump L per site, and rate gamma:
///   L^(O) = i[H, O] + gamma sum_k (L_k^dag O L_k - 1/2 {L_k^dag L_k, O}).
class LindbladModel {
public:
    LindbladModel(std::string name, std::vector<BondTerm> bond, std::vector<JumpTerm> jump, double gamma,
                  double coupling = 0.0);

    const std::string& name() const noexcept { return name_; }
    const std::vector<BondTerm>& bond_terms() const noexcept { return bond_; }
    const std::vector<JumpTerm>& jump_terms() const noexcept { return jump_; }
    double gamma() const noexcept { return gamma_; }
    /// Model parameter recorded for reports (Omega for the contact process).
    double coupling() const noexcept { return coupling_; }

    /// 4x4 bond operator on two sites, left site most significant.
    Eigen::Matrix4cd bond_matrix() const;
    SiteMatrix jump_matrix() const;

    /// First frame, if any, in which the adjoint Lindbladian maps real operators to real operators.
    std::optional<RealFrame> real_frame() const { return real_frame_; }

private:
    std::string name_;
    std::vector<BondTerm> bond_;
    std::vector<JumpTerm> jump_;
    double gamma_;
    double coupling_;
    std::optional<RealFrame> real_frame_;
};

/// H = omega sum_k (X_k n_{k+1} + n_k X_{k+1}), L = sigma_minus, gamma = 1.
/// omega = 0 is accepted (pure decay); negative couplings are rejected.
LindbladModel quantum_contact_process(double omega);

/// i [h_{left_site, right_site}, s] for one bond; sites need not be adjacent.
OperatorSum bond_commutator(const LindbladModel& model, int left_site, int right_site, const KetBraString& s);

/// gamma (L^dag s L - 1/2 {L^dag L, s}) for the jump at one site.
OperatorSum dissipator(const LindbladModel& model, int site, const KetBraString& s);

/// L^(s) on the infinite chain: bonds overlapping the window and jumps inside it.
OperatorSum adjoint_lindbladian(const LindbladModel& model, const KetBraString& s);
OperatorSum adjoint_lindbladian(const LindbladModel& model, const OperatorSum& s);

/// Projector onto |0...0> at level N.
struct AbsorbingState {
    int level;
    Eigen::MatrixXcd matrix;
};

AbsorbingState absorbing_state_rdm(int level);

/// Diagonal frame phases for a level-N index set: phase(a) multiplies basis state a.
Eigen::VectorXcd frame_phases(RealFrame frame, int level);

} // namespace lindboot
