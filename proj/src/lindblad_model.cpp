// lindblad_model.cpp: Adjoint Lindbladian on ket-bra strings

#include "lindboot/lindblad_model.hpp"

#include "lindboot/errors.hpp"

#include <bit>
#include <cmath>

namespace lindboot {

namespace {

constexpr double kHermiticityTolerance = 1e-12;

SiteMatrix frame_site_matrix(RealFrame frame)
{
    SiteMatrix d = SiteMatrix::Identity();
    if (frame == RealFrame::ExcitationPhase) d(0, 0) = Complex(0.0, 1.0);
    return d;
}

bool real_up_to_phase(const SiteMatrix& m)
{
    Eigen::Index r = 0;
    Eigen::Index c = 0;
    const double largest = m.cwiseAbs().maxCoeff(&r, &c);
    if (largest == 0.0) return true;
    const Complex phase = m(r, c) / largest;
    return (m / phase).imag().cwiseAbs().maxCoeff() < kHermiticityTolerance * largest;
}

bool frame_is_real(const Eigen::Matrix4cd& bond, const SiteMatrix& jump, RealFrame frame)
{
    const SiteMatrix d = frame_site_matrix(frame);
    Eigen::Matrix4cd bond_frame_unitary;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            bond_frame_unitary.block<2, 2>(2 * a, 2 * b) = d(a, b) * d;
        }
    }
    const Eigen::Matrix4cd h = bond_frame_unitary.adjoint() * bond * bond_frame_unitary;
    // i[h, O] is real for real O iff Re(h) is a multiple of the identity.
    const Eigen::Matrix4d re = h.real();
    const double shift = re.trace() / 4.0;
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((re - shift * Eigen::Matrix4d::Identity()).cwiseAbs().maxCoeff() > kHermiticityTolerance * scale) {
        return false;
    }
    return real_up_to_phase(d.adjoint() * jump * d);
}

} // namespace

LindbladModel::LindbladModel(std::string name, std::vector<BondTerm> bond, std::vector<JumpTerm> jump,
                             double gamma, double coupling)
    : name_(std::move(name)), bond_(std::move(bond)), jump_(std::move(jump)), gamma_(gamma),
      coupling_(coupling)
{
    if (!(gamma_ >= 0.0) || !std::isfinite(gamma_)) {
        throw Error(ErrorCode::InvalidArgument, "rate gamma must be finite and nonnegative");
    }
    const Eigen::Matrix4cd h = bond_matrix();
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kHermiticityTolerance * scale) {
        throw Error(ErrorCode::InvalidArgument, "bond Hamiltonian is not Hermitian");
    }
    const SiteMatrix l = jump_matrix();
    for (RealFrame frame : {RealFrame::Computational, RealFrame::ExcitationPhase}) {
        if (frame_is_real(h, l, frame)) {
            real_frame_ = frame;
            break;
        }
    }
}

Eigen::Matrix4cd LindbladModel::bond_matrix() const
{
    Eigen::Matrix4cd h = Eigen::Matrix4cd::Zero();
    for (const auto& term : bond_) {
        const SiteMatrix a = site_matrix(term.left);
        const SiteMatrix b = site_matrix(term.right);
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) h.block<2, 2>(2 * i, 2 * j) += term.coefficient * a(i, j) * b;
        }
    }
    return h;
}

SiteMatrix LindbladModel::jump_matrix() const
{
    SiteMatrix l = SiteMatrix::Zero();
    for (const auto& term : jump_) l += term.coefficient * site_matrix(term.op);
    return l;
}

LindbladModel quantum_contact_process(double omega)
{
    if (!(omega >= 0.0) || !std::isfinite(omega)) {
        throw Error(ErrorCode::NonPositiveCoupling, "contact-process coupling must be finite and >= 0");
    }
    return LindbladModel("qcp",
                         {{SiteOperator::X, SiteOperator::n, omega}, {SiteOperator::n, SiteOperator::X, omega}},
                         {{SiteOperator::Sm, 1.0}}, 1.0, omega);
}

OperatorSum bond_commutator(const LindbladModel& model, int left_site, int right_site, const KetBraString& s)
{
    const Complex i1(0.0, 1.0);
    OperatorSum out;
    for (const auto& term : model.bond_terms()) {
        if (term.coefficient == 0.0) continue;
        const SiteMatrix a = site_matrix(term.left);
        const SiteMatrix b = site_matrix(term.right);
        const OperatorSum left = act_left(a, left_site, act_left(b, right_site, s));
        const OperatorSum right = act_right(a, left_site, act_right(b, right_site, OperatorSum(s)));
        for (const auto& [t, c] : left) out.accumulate(t, i1 * term.coefficient * c);
        for (const auto& [t, c] : right) out.accumulate(t, -i1 * term.coefficient * c);
    }
    out.prune();
    return out;
}

OperatorSum dissipator(const LindbladModel& model, int site, const KetBraString& s)
{
    OperatorSum out;
    if (model.gamma() == 0.0) return out;
    const SiteMatrix l = model.jump_matrix();
    const SiteMatrix ld = l.adjoint();
    const SiteMatrix ldl = ld * l;
    const double g = model.gamma();
    for (const auto& [t, c] : act_left(ld, site, act_right(l, site, s))) out.accumulate(t, g * c);
    for (const auto& [t, c] : act_left(ldl, site, s)) out.accumulate(t, -0.5 * g * c);
    for (const auto& [t, c] : act_right(ldl, site, s)) out.accumulate(t, -0.5 * g * c);
    out.prune();
    return out;
}

OperatorSum adjoint_lindbladian(const LindbladModel& model, const KetBraString& s)
{
    OperatorSum out;
    for (int j = s.offset() - 1; j <= s.right(); ++j) {
        for (const auto& [t, c] : bond_commutator(model, j, j + 1, s)) out.accumulate(t, c);
    }
    for (int j = s.offset(); j <= s.right(); ++j) {
        for (const auto& [t, c] : dissipator(model, j, s)) out.accumulate(t, c);
    }
    out.prune();
    return out;
}

OperatorSum adjoint_lindbladian(const LindbladModel& model, const OperatorSum& s)
{
    OperatorSum out;
    for (const auto& [t, c] : s) {
        for (const auto& [u, d] : adjoint_lindbladian(model, t)) out.accumulate(u, c * d);
    }
    out.prune();
    return out;
}

AbsorbingState absorbing_state_rdm(int level)
{
    if (level < 1 || level > KetBraString::kMaxLength) {
        throw Error(ErrorCode::InvalidArgument, "absorbing-state level must be in [1, 24]");
    }
    const Eigen::Index dim = Eigen::Index(1) << level;
    AbsorbingState state{level, Eigen::MatrixXcd::Zero(dim, dim)};
    const std::uint32_t vacuum = rdm_index(0U, level);
    state.matrix(vacuum, vacuum) = 1.0;
    return state;
}

Eigen::VectorXcd frame_phases(RealFrame frame, int level)
{
    const Eigen::Index dim = Eigen::Index(1) << level;
    Eigen::VectorXcd phases = Eigen::VectorXcd::Ones(dim);
    if (frame == RealFrame::Computational) return phases;
    static const Complex powers[4] = {Complex(1, 0), Complex(0, 1), Complex(-1, 0), Complex(0, -1)};
    for (Eigen::Index a = 0; a < dim; ++a) {
        const int active = level - std::popcount(static_cast<std::uint32_t>(a));
        phases(a) = powers[active % 4];
    }
    return phases;
}

} // namespace lindboot
