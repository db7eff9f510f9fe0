// problem_builders.cpp: Bootstrap SDP assembly

#include "lindboot/problem_builders.hpp"

#include "lindboot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace lindboot {

namespace {

constexpr double kRowPrune = 1e-13;
constexpr double kDedupTolerance = 1e-12;

void check_level(int level)
{
    if (level < 1 || level > kMaxLevel) {
        throw Error(ErrorCode::InvalidArgument, "level must be in [1, " + std::to_string(kMaxLevel) + "]");
    }
}

SparseTerms to_terms(const std::map<int, double>& acc)
{
    SparseTerms out;
    out.reserve(acc.size());
    for (const auto& [k, v] : acc) {
        if (std::abs(v) > kRowPrune) out.emplace_back(k, v);
    }
    return out;
}

// Appends rows, dropping exact scalar multiples of rows already present.
class RowSet {
public:
    void add(SparseTerms terms, double rhs, RowKind kind)
    {
        if (terms.empty()) {
            if (std::abs(rhs) > kRowPrune) rows_.push_back({std::move(terms), rhs, kind});
            return;
        }
        const double pivot = terms.front().second;
        std::size_t h = terms.size();
        for (const auto& [k, v] : terms) {
            const auto q = static_cast<long long>(std::llround(v / pivot * 1e9));
            h ^= std::hash<long long>()(q * 1000003LL + k) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        auto [lo, hi] = buckets_.equal_range(h);
        for (auto it = lo; it != hi; ++it) {
            if (same_row(rows_[it->second], terms, rhs, pivot)) return;
        }
        buckets_.emplace(h, rows_.size());
        rows_.push_back({std::move(terms), rhs, kind});
    }

    std::vector<ConstraintRow> take() { return std::move(rows_); }

private:
    static bool same_row(const ConstraintRow& row, const SparseTerms& terms, double rhs, double pivot)
    {
        if (row.terms.size() != terms.size()) return false;
        const double other = row.terms.front().second;
        for (std::size_t i = 0; i < terms.size(); ++i) {
            if (row.terms[i].first != terms[i].first) return false;
            const double a = row.terms[i].second / other;
            const double b = terms[i].second / pivot;
            if (std::abs(a - b) > kDedupTolerance * std::max(1.0, std::abs(a))) return false;
        }
        const double ra = row.rhs / other;
        const double rb = rhs / pivot;
        return std::abs(ra - rb) <= kDedupTolerance * std::max(1.0, std::abs(ra));
    }

    std::vector<ConstraintRow> rows_;
    std::unordered_multimap<std::size_t, std::size_t> buckets_;
};

NullSpaceBasis coordinate_basis(std::vector<std::uint32_t> indices, Eigen::Index dim)
{
    NullSpaceBasis basis;
    basis.vectors = Eigen::MatrixXcd::Zero(dim, static_cast<Eigen::Index>(indices.size()));
    for (std::size_t k = 0; k < indices.size(); ++k) basis.vectors(indices[k], static_cast<Eigen::Index>(k)) = 1.0;
    basis.indices = std::move(indices);
    basis.coordinate = true;
    return basis;
}

} // namespace

// ---------------------------------------------------------------------------
// Null space

NullSpaceBasis null_space(const AbsorbingState& rho0, double tol)
{
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "null-space tolerance must be positive");
    const Eigen::MatrixXcd& m = rho0.matrix;
    const Eigen::Index dim = m.rows();
    // Fast path: a projector onto one basis state.
    Eigen::Index hot = -1;
    bool coordinate = true;
    for (Eigen::Index r = 0; r < dim && coordinate; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            const double a = std::abs(m(r, c));
            if (r == c && std::abs(m(r, c) - Complex(1.0)) <= tol) {
                if (hot >= 0) coordinate = false;
                hot = r;
            } else if (a > tol) {
                coordinate = false;
                break;
            }
        }
    }
    if (coordinate && hot >= 0) {
        std::vector<std::uint32_t> idx;
        for (Eigen::Index a = 0; a < dim; ++a) {
            if (a != hot) idx.push_back(static_cast<std::uint32_t>(a));
        }
        return coordinate_basis(std::move(idx), dim);
    }
    return null_space(m, tol);
}

NullSpaceBasis null_space(const Eigen::MatrixXcd& a, double tol)
{
    if (!(tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "null-space tolerance must be positive");
    if (a.rows() != a.cols() || a.rows() == 0) throw Error(ErrorCode::InvalidArgument, "square matrix required");
    const double scale = std::max(1.0, a.cwiseAbs().maxCoeff());
    if ((a - a.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw Error(ErrorCode::InvalidArgument, "null_space expects a Hermitian matrix");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a);
    const Eigen::VectorXd mags = es.eigenvalues().cwiseAbs();
    const double zero_cut = tol * scale;
    double max_zero = 0.0;
    double min_nonzero = std::numeric_limits<double>::infinity();
    std::vector<Eigen::Index> kernel;
    for (Eigen::Index k = 0; k < mags.size(); ++k) {
        if (mags(k) <= zero_cut) {
            kernel.push_back(k);
            max_zero = std::max(max_zero, mags(k));
        } else {
            min_nonzero = std::min(min_nonzero, mags(k));
        }
    }
    if (min_nonzero < kNullGapRatio * zero_cut || (!kernel.empty() && min_nonzero < kNullGapRatio * max_zero)) {
        throw Error(ErrorCode::DegenerateTolerance, "no clear spectral gap at tolerance " + std::to_string(tol));
    }
    NullSpaceBasis basis;
    basis.vectors.resize(a.rows(), static_cast<Eigen::Index>(kernel.size()));
    for (std::size_t k = 0; k < kernel.size(); ++k) {
        basis.vectors.col(static_cast<Eigen::Index>(k)) = es.eigenvectors().col(kernel[k]);
    }
    // Recognize kernels spanned by standard basis vectors.
    std::vector<std::uint32_t> idx;
    for (Eigen::Index k = 0; k < basis.vectors.cols(); ++k) {
        Eigen::Index arg = 0;
        const double peak = basis.vectors.col(k).cwiseAbs().maxCoeff(&arg);
        if (std::abs(peak - 1.0) > 1e-12) {
            idx.clear();
            break;
        }
        idx.push_back(static_cast<std::uint32_t>(arg));
    }
    if (!kernel.empty() && idx.size() == kernel.size()) {
        std::sort(idx.begin(), idx.end());
        return coordinate_basis(std::move(idx), a.rows());
    }
    return basis;
}

// ---------------------------------------------------------------------------
// CarrierLayout

CarrierLayout::CarrierLayout(int level, std::optional<RealFrame> frame, std::vector<std::uint32_t> psd_indices,
                             bool diagonal_shift)
    : level_(level), dim_(1 << level), frame_(frame), psd_(std::move(psd_indices))
{
    check_level(level);
    std::sort(psd_.begin(), psd_.end());
    psd_.erase(std::unique(psd_.begin(), psd_.end()), psd_.end());
    position_.assign(static_cast<std::size_t>(dim_), -1);
    for (std::size_t k = 0; k < psd_.size(); ++k) {
        if (psd_[k] >= static_cast<std::uint32_t>(dim_)) throw Error(ErrorCode::InvalidArgument, "PSD index out of range");
        position_[psd_[k]] = static_cast<int>(k);
    }
    phases_ = frame_ ? frame_phases(*frame_, level) : Eigen::VectorXcd::Ones(dim_);
    const int n = block_dim();
    psd_scalars_ = n * (n + 1) / 2 + (frame_ ? 0 : n * (n - 1) / 2);

    const auto cells = static_cast<std::size_t>(dim_) * static_cast<std::size_t>(dim_);
    free_re_.assign(cells, -1);
    free_im_.assign(cells, -1);
    for (int u = 0; u < dim_; ++u) {
        for (int v = u; v < dim_; ++v) {
            if (position_[u] < 0 || position_[v] < 0) free_re_[u * dim_ + v] = psd_scalars_ + num_free_++;
        }
    }
    if (!frame_) {
        for (int u = 0; u < dim_; ++u) {
            for (int v = u + 1; v < dim_; ++v) {
                if (position_[u] < 0 || position_[v] < 0) free_im_[u * dim_ + v] = psd_scalars_ + num_free_++;
            }
        }
    }
    if (diagonal_shift) shift_ = psd_scalars_ + num_free_++;
}

int CarrierLayout::re_scalar(int u, int v) const
{
    if (u > v) std::swap(u, v);
    const int pu = position_[u];
    const int pv = position_[v];
    if (pu >= 0 && pv >= 0) return sym_index(block_dim(), pu, pv);
    return free_re_[u * dim_ + v];
}

int CarrierLayout::im_scalar(int u, int v) const
{
    if (u > v) std::swap(u, v);
    const int pu = position_[u];
    const int pv = position_[v];
    const int n = block_dim();
    if (pu >= 0 && pv >= 0) return n * (n + 1) / 2 + strict_index(n, pu, pv);
    return free_im_[u * dim_ + v];
}

std::pair<SparseTerms, SparseTerms> CarrierLayout::map(const RdmFunctional& f) const
{
    if (f.level() != level_) throw Error(ErrorCode::InvalidArgument, "functional level does not match the layout");
    const Complex i1(0.0, 1.0);
    std::map<int, Complex> acc;
    for (const auto& [key, a] : f.entries()) {
        const int r = static_cast<int>(key.first);
        const int c = static_cast<int>(key.second);
        if (r == c) {
            acc[re_scalar(r, r)] += a;
            if (shift_ >= 0 && position_[r] >= 0) acc[shift_] -= a;
        } else if (frame_) {
            acc[re_scalar(r, c)] += a * phases_(r) * std::conj(phases_(c));
        } else {
            acc[re_scalar(r, c)] += a;
            acc[im_scalar(r, c)] += (r < c) ? i1 * a : -i1 * a;
        }
    }
    std::map<int, double> re;
    std::map<int, double> im;
    for (const auto& [k, v] : acc) {
        re[k] = v.real();
        im[k] = v.imag();
    }
    return {to_terms(re), to_terms(im)};
}

std::vector<double> CarrierLayout::scalars(const Eigen::MatrixXcd& rho) const
{
    if (rho.rows() != dim_ || rho.cols() != dim_) throw Error(ErrorCode::InvalidArgument, "carrier size mismatch");
    std::vector<double> x(static_cast<std::size_t>(num_scalars()), 0.0);
    for (int u = 0; u < dim_; ++u) {
        for (int v = u; v < dim_; ++v) {
            const Complex e = frame_ ? std::conj(phases_(u)) * rho(u, v) * phases_(v) : rho(u, v);
            x[static_cast<std::size_t>(re_scalar(u, v))] = e.real();
            if (!frame_ && u != v) x[static_cast<std::size_t>(im_scalar(u, v))] = e.imag();
        }
    }
    return x;
}

Eigen::MatrixXcd CarrierLayout::carrier(const std::vector<double>& x) const
{
    if (static_cast<int>(x.size()) != num_scalars()) throw Error(ErrorCode::InvalidArgument, "scalar count mismatch");
    Eigen::MatrixXcd rho(dim_, dim_);
    const double g = shift_ >= 0 ? x[static_cast<std::size_t>(shift_)] : 0.0;
    for (int u = 0; u < dim_; ++u) {
        for (int v = u; v < dim_; ++v) {
            Complex e = x[static_cast<std::size_t>(re_scalar(u, v))];
            if (!frame_ && u != v) e += Complex(0.0, x[static_cast<std::size_t>(im_scalar(u, v))]);
            if (u == v && position_[u] >= 0) e -= g;
            if (frame_) e = phases_(u) * e * std::conj(phases_(v));
            rho(u, v) = e;
            rho(v, u) = std::conj(e);
        }
    }
    return rho;
}

CarrierLayout make_layout(const LindbladModel& model, int level, ProblemKind kind, const BuildOptions& options)
{
    check_level(level);
    const std::optional<RealFrame> frame = options.realness ? model.real_frame() : std::nullopt;
    if (kind == ProblemKind::SteadyState) {
        std::vector<std::uint32_t> all(static_cast<std::size_t>(1) << level);
        for (std::size_t a = 0; a < all.size(); ++a) all[a] = static_cast<std::uint32_t>(a);
        return CarrierLayout(level, frame, std::move(all), false);
    }
    const NullSpaceBasis ns = null_space(absorbing_state_rdm(level), options.null_tol);
    if (!ns.coordinate) {
        throw Error(ErrorCode::InvalidArgument, "deviation problems need a kernel spanned by basis states");
    }
    return CarrierLayout(level, frame, ns.indices, kind == ProblemKind::Gap);
}

// ---------------------------------------------------------------------------
// Functionals

OperatorSum z_site(int site)
{
    return act_left(site_matrix(SiteOperator::Z), site, identity_on(site, 1));
}

SparseTerms objective_functional(const OperatorSum& obs, const CarrierLayout& layout)
{
    if (obs.empty()) throw Error(ErrorCode::EmptyObjective, "objective has no terms");
    for (const auto& [t, c] : obs) {
        if (t.length() > layout.level()) {
            throw Error(ErrorCode::WindowTooLarge, "objective term " + t.to_string() + " exceeds level " +
                                                       std::to_string(layout.level()));
        }
    }
    OperatorSum anti = obs - dagger(obs);
    anti.prune(1e-12);
    if (!anti.empty()) throw Error(ErrorCode::NonHermitianObjective, "objective differs from its adjoint");
    const auto [re, im] = layout.map(embed_functional(obs, layout.level()));
    for (const auto& [k, v] : im) {
        if (std::abs(v) > 1e-12) throw Error(ErrorCode::RealnessViolation, "objective is complex on the real carrier");
    }
    return re;
}

SparseTerms objective_functional(const OperatorSum& obs, int level)
{
    std::vector<std::uint32_t> all(static_cast<std::size_t>(1) << level);
    for (std::size_t a = 0; a < all.size(); ++a) all[a] = static_cast<std::uint32_t>(a);
    return objective_functional(obs, CarrierLayout(level, RealFrame::Computational, std::move(all), false));
}

RdmFunctional motion_functional(const LindbladModel& model, const KetBraString& s, int level, double delta)
{
    RdmFunctional f = embed_functional(adjoint_lindbladian(model, s), level);
    if (delta != 0.0) {
        RdmFunctional d = embed_functional(s, level);
        d *= delta;
        f += d;
    }
    return f;
}

// ---------------------------------------------------------------------------
// Builders

namespace {

void add_split(RowSet& rows, const CarrierLayout& layout, const RdmFunctional& f, double rhs, RowKind kind,
               int* raw_count = nullptr)
{
    auto [re, im] = layout.map(f);
    if (raw_count) *raw_count += (re.empty() ? 0 : 1) + (im.empty() ? 0 : 1);
    rows.add(std::move(re), rhs, kind);
    if (!im.empty()) rows.add(std::move(im), 0.0, kind);
}

ConicProblem assemble(ProblemKind kind, const LindbladModel& model, int level, const CarrierLayout& layout,
                      Direction sense, SparseTerms objective, double delta, double trace_rhs,
                      const OperatorSum* reference)
{
    ConicProblem p;
    p.kind = kind;
    p.level = level;
    p.omega = model.coupling();
    p.delta = delta;
    p.sense = sense;
    p.block_dim = layout.block_dim();
    p.complex_block = layout.complex_block();
    p.num_free = layout.num_free();
    p.objective = std::move(objective);

    RowSet rows;
    const std::uint32_t dim = 1U << level;

    RdmFunctional trace(level);
    for (std::uint32_t a = 0; a < dim; ++a) trace.accumulate(a, a, 1.0);
    add_split(rows, layout, trace, trace_rhs, RowKind::Trace);

    if (reference) add_split(rows, layout, embed_functional(*reference, level), 1.0, RowKind::Normalization);

    if (level >= 2) {
        // Tr_1 = Tr_N entrywise; lower levels follow.
        const std::uint32_t half = dim / 2;
        for (std::uint32_t a = 0; a < half; ++a) {
            for (std::uint32_t b = 0; b < half; ++b) {
                RdmFunctional f(level);
                for (std::uint32_t j = 0; j < 2; ++j) {
                    f.accumulate(j * half + a, j * half + b, 1.0);
                    f.accumulate(2 * a + j, 2 * b + j, -1.0);
                }
                f.prune();
                add_split(rows, layout, f, 0.0, RowKind::Translation, &p.raw_translation_rows);
            }
        }
        const int k = level - 1;
        for (std::uint32_t ket = 0; ket < (1U << k); ++ket) {
            for (std::uint32_t bra = 0; bra < (1U << k); ++bra) {
                const RdmFunctional f = motion_functional(model, KetBraString(1, ket, bra, k), level, delta);
                add_split(rows, layout, f, 0.0, RowKind::Motion, &p.raw_motion_rows);
            }
        }
    }
    p.rows = rows.take();
    return p;
}

OperatorSum resolve_reference(const BuildOptions& options)
{
    return options.reference.empty() ? z_site(1) : options.reference;
}

} // namespace

ConicProblem build_steady_state_sdp(const LindbladModel& model, int level, const OperatorSum& objective,
                                    Direction direction, const BuildOptions& options)
{
    const CarrierLayout layout = make_layout(model, level, ProblemKind::SteadyState, options);
    SparseTerms obj = objective_functional(objective, layout);
    return assemble(ProblemKind::SteadyState, model, level, layout, direction, std::move(obj), 0.0, 1.0, nullptr);
}

ConicProblem build_ratio_sdp(const LindbladModel& model, int level, const OperatorSum& objective, Direction direction,
                             const BuildOptions& options)
{
    const CarrierLayout layout = make_layout(model, level, ProblemKind::Ratio, options);
    SparseTerms obj = objective_functional(objective, layout);
    const OperatorSum reference = resolve_reference(options);
    objective_functional(reference, layout); // same validation as the objective
    return assemble(ProblemKind::Ratio, model, level, layout, direction, std::move(obj), 0.0, 0.0, &reference);
}

ConicProblem build_gap_sdp(const LindbladModel& model, int level, double delta, const BuildOptions& options)
{
    if (!(delta >= 0.0) || !std::isfinite(delta)) {
        throw Error(ErrorCode::NegativeDelta, "gap candidate must be finite and >= 0");
    }
    const CarrierLayout layout = make_layout(model, level, ProblemKind::Gap, options);
    const OperatorSum reference = resolve_reference(options);
    objective_functional(reference, layout);
    SparseTerms obj{{layout.shift_index(), 1.0}};
    return assemble(ProblemKind::Gap, model, level, layout, Direction::Min, std::move(obj), delta, 0.0, &reference);
}

} // namespace lindboot
