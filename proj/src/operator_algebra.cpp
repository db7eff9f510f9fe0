// operator_algebra.cpp: Ket-bra string algebra and marginal embeddings

#include "lindboot/operator_algebra.hpp"

#include "lindboot/errors.hpp"

#include <algorithm>
#include <sstream>

namespace lindboot {

namespace {

// Matrix index of an occupation label in the (|1>, |0>) ordering.
constexpr int label_index(int label) { return 1 - label; }

std::uint32_t mask_of(int length) { return (length >= 32) ? ~0U : ((1U << length) - 1U); }

} // namespace

SiteMatrix site_matrix(SiteOperator op)
{
    const Complex i1(0.0, 1.0);
    SiteMatrix m = SiteMatrix::Zero();
    switch (op) {
    case SiteOperator::I: m << 1.0, 0.0, 0.0, 1.0; break;
    case SiteOperator::X: m << 0.0, 1.0, 1.0, 0.0; break;
    case SiteOperator::Y: m << 0.0, -i1, i1, 0.0; break;
    case SiteOperator::Z: m << 1.0, 0.0, 0.0, -1.0; break;
    case SiteOperator::Sp: m << 0.0, 1.0, 0.0, 0.0; break; // |1><0|
    case SiteOperator::Sm: m << 0.0, 0.0, 1.0, 0.0; break; // |0><1|
    case SiteOperator::n: m << 1.0, 0.0, 0.0, 0.0; break;
    }
    return m;
}

SiteOperator site_adjoint(SiteOperator op)
{
    switch (op) {
    case SiteOperator::Sp: return SiteOperator::Sm;
    case SiteOperator::Sm: return SiteOperator::Sp;
    default: return op;
    }
}

std::string_view site_operator_name(SiteOperator op)
{
    switch (op) {
    case SiteOperator::I: return "I";
    case SiteOperator::X: return "X";
    case SiteOperator::Y: return "Y";
    case SiteOperator::Z: return "Z";
    case SiteOperator::Sp: return "Sp";
    case SiteOperator::Sm: return "Sm";
    case SiteOperator::n: return "n";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// KetBraString

KetBraString::KetBraString(int offset, std::uint32_t ket_mask, std::uint32_t bra_mask, int length)
    : offset_(offset), length_(length), ket_(ket_mask), bra_(bra_mask)
{
    if (length < 1 || length > kMaxLength) {
        throw Error(ErrorCode::InvalidArgument,
                    "ket-bra string length must be in [1, " + std::to_string(kMaxLength) + "]");
    }
    if ((ket_mask & ~mask_of(length)) != 0 || (bra_mask & ~mask_of(length)) != 0) {
        throw Error(ErrorCode::InvalidArgument, "label mask has bits outside the window");
    }
}

KetBraString KetBraString::from_labels(std::string_view ket, std::string_view bra, int offset)
{
    if (ket.size() != bra.size()) {
        throw Error(ErrorCode::InvalidArgument, "ket and bra label strings differ in length");
    }
    auto parse = [](std::string_view labels) {
        std::uint32_t mask = 0;
        for (char ch : labels) {
            if (ch != '0' && ch != '1') {
                throw Error(ErrorCode::InvalidArgument, "labels must be 0 or 1");
            }
            mask = (mask << 1U) | static_cast<std::uint32_t>(ch - '0');
        }
        return mask;
    };
    return KetBraString(offset, parse(ket), parse(bra), static_cast<int>(ket.size()));
}

KetBraString KetBraString::with_ket_label(int i, int label) const
{
    const std::uint32_t bit = 1U << (length_ - 1 - i);
    return KetBraString(offset_, label ? (ket_ | bit) : (ket_ & ~bit), bra_, length_);
}

KetBraString KetBraString::with_bra_label(int i, int label) const
{
    const std::uint32_t bit = 1U << (length_ - 1 - i);
    return KetBraString(offset_, ket_, label ? (bra_ | bit) : (bra_ & ~bit), length_);
}

std::string KetBraString::to_string() const
{
    std::string ket(static_cast<std::size_t>(length_), '0');
    std::string bra(static_cast<std::size_t>(length_), '0');
    for (int i = 0; i < length_; ++i) {
        ket[static_cast<std::size_t>(i)] = static_cast<char>('0' + ket_label(i));
        bra[static_cast<std::size_t>(i)] = static_cast<char>('0' + bra_label(i));
    }
    return "|" + ket + "><" + bra + "|@" + std::to_string(offset_);
}

// ---------------------------------------------------------------------------
// OperatorSum

OperatorSum::OperatorSum(const KetBraString& s, Complex coefficient)
{
    accumulate(s, coefficient);
    prune();
}

void OperatorSum::accumulate(const KetBraString& s, Complex coefficient)
{
    if (coefficient == Complex(0.0)) return;
    auto [it, inserted] = terms_.try_emplace(s, coefficient);
    if (!inserted) it->second += coefficient;
}

void OperatorSum::prune(double threshold)
{
    std::erase_if(terms_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
}

OperatorSum& OperatorSum::operator+=(const OperatorSum& other)
{
    for (const auto& [s, c] : other.terms_) accumulate(s, c);
    prune();
    return *this;
}

OperatorSum& OperatorSum::operator-=(const OperatorSum& other)
{
    for (const auto& [s, c] : other.terms_) accumulate(s, -c);
    prune();
    return *this;
}

OperatorSum& OperatorSum::operator*=(Complex factor)
{
    for (auto& kv : terms_) kv.second *= factor;
    prune();
    return *this;
}

Complex OperatorSum::coefficient(const KetBraString& s) const
{
    auto it = terms_.find(s);
    return it == terms_.end() ? Complex(0.0) : it->second;
}

std::pair<int, int> OperatorSum::support() const
{
    if (terms_.empty()) return {0, -1};
    int lo = terms_.begin()->first.offset();
    int hi = terms_.begin()->first.right();
    for (const auto& kv : terms_) {
        lo = std::min(lo, kv.first.offset());
        hi = std::max(hi, kv.first.right());
    }
    return {lo, hi};
}

std::string OperatorSum::to_string() const
{
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [s, c] : terms_) {
        if (!first) out << " + ";
        first = false;
        out << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)" << s.to_string();
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// Products with single-site operators

OperatorSum pad_to(const KetBraString& s, int first, int last)
{
    first = std::min(first, s.offset());
    last = std::max(last, s.right());
    const int left = s.offset() - first;
    const int right = last - s.right();
    const int length = last - first + 1;
    OperatorSum out;
    const std::uint32_t left_count = 1U << left;
    const std::uint32_t right_count = 1U << right;
    for (std::uint32_t l = 0; l < left_count; ++l) {
        for (std::uint32_t r = 0; r < right_count; ++r) {
            const std::uint32_t high = l << (s.length() + right);
            const std::uint32_t ket = high | (s.ket_mask() << right) | r;
            const std::uint32_t bra = high | (s.bra_mask() << right) | r;
            out.accumulate(KetBraString(first, ket, bra, length), 1.0);
        }
    }
    return out;
}

OperatorSum identity_on(int first, int length)
{
    OperatorSum out;
    const std::uint32_t count = 1U << length;
    for (std::uint32_t v = 0; v < count; ++v) out.accumulate(KetBraString(first, v, v, length), 1.0);
    return out;
}

namespace {

void accumulate_left(const SiteMatrix& m, int site, const KetBraString& s, Complex scale, OperatorSum& out)
{
    const int j = site - s.offset();
    const int nu = s.ket_label(j);
    for (int a = 0; a < 2; ++a) {
        const Complex c = m(label_index(a), label_index(nu));
        if (c != Complex(0.0)) out.accumulate(s.with_ket_label(j, a), scale * c);
    }
}

void accumulate_right(const SiteMatrix& m, int site, const KetBraString& s, Complex scale, OperatorSum& out)
{
    const int j = site - s.offset();
    const int mu = s.bra_label(j);
    for (int b = 0; b < 2; ++b) {
        const Complex c = m(label_index(mu), label_index(b));
        if (c != Complex(0.0)) out.accumulate(s.with_bra_label(j, b), scale * c);
    }
}

bool is_identity(const SiteMatrix& m)
{
    return (m - SiteMatrix::Identity()).cwiseAbs().maxCoeff() == 0.0;
}

template <typename Accumulate>
OperatorSum act_on(const SiteMatrix& m, int site, const KetBraString& s, Accumulate accumulate)
{
    OperatorSum out;
    if (is_identity(m)) return OperatorSum(s);
    if (s.contains(site)) {
        accumulate(m, site, s, 1.0, out);
    } else {
        for (const auto& [t, c] : pad_to(s, site, site)) accumulate(m, site, t, c, out);
    }
    out.prune();
    return out;
}

} // namespace

OperatorSum act_left(const SiteMatrix& m, int site, const KetBraString& s)
{
    return act_on(m, site, s, accumulate_left);
}

OperatorSum act_left(SiteOperator op, int site, const KetBraString& s)
{
    return act_left(site_matrix(op), site, s);
}

OperatorSum act_left(const SiteMatrix& m, int site, const OperatorSum& s)
{
    OperatorSum out;
    for (const auto& [t, c] : s) {
        for (const auto& [u, d] : act_left(m, site, t)) out.accumulate(u, c * d);
    }
    out.prune();
    return out;
}

OperatorSum act_right(const SiteMatrix& m, int site, const KetBraString& s)
{
    return act_on(m, site, s, accumulate_right);
}

OperatorSum act_right(SiteOperator op, int site, const KetBraString& s)
{
    return act_right(site_matrix(op), site, s);
}

OperatorSum act_right(const SiteMatrix& m, int site, const OperatorSum& s)
{
    OperatorSum out;
    for (const auto& [t, c] : s) {
        for (const auto& [u, d] : act_right(m, site, t)) out.accumulate(u, c * d);
    }
    out.prune();
    return out;
}

KetBraString dagger(const KetBraString& s)
{
    return KetBraString(s.offset(), s.bra_mask(), s.ket_mask(), s.length());
}

OperatorSum dagger(const OperatorSum& s)
{
    OperatorSum out;
    for (const auto& [t, c] : s) out.accumulate(dagger(t), std::conj(c));
    out.prune();
    return out;
}

KetBraString shift(const KetBraString& s, int d)
{
    return KetBraString(s.offset() + d, s.ket_mask(), s.bra_mask(), s.length());
}

Eigen::MatrixXcd to_dense(const OperatorSum& s, int first, int n_sites)
{
    const Eigen::Index dim = Eigen::Index(1) << n_sites;
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    const int last = first + n_sites - 1;
    for (const auto& [t, c] : s) {
        if (t.offset() < first || t.right() > last) {
            throw Error(ErrorCode::WindowTooLarge, "term " + t.to_string() + " leaves the dense window");
        }
        for (const auto& [u, d] : pad_to(t, first, last)) {
            m(rdm_index(u.ket_mask(), n_sites), rdm_index(u.bra_mask(), n_sites)) += c * d;
        }
    }
    return m;
}

OperatorSum from_dense(const Eigen::MatrixXcd& m, int first, int n_sites)
{
    OperatorSum out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (std::abs(m(r, c)) < kPruneThreshold) continue;
            out.accumulate(KetBraString(first, rdm_index(static_cast<std::uint32_t>(r), n_sites),
                                        rdm_index(static_cast<std::uint32_t>(c), n_sites), n_sites),
                           m(r, c));
        }
    }
    out.prune();
    return out;
}

// ---------------------------------------------------------------------------
// RdmFunctional

void RdmFunctional::accumulate(std::uint32_t row, std::uint32_t col, Complex coefficient)
{
    if (coefficient == Complex(0.0)) return;
    auto [it, inserted] = entries_.try_emplace(Key{row, col}, coefficient);
    if (!inserted) it->second += coefficient;
}

void RdmFunctional::prune(double threshold)
{
    std::erase_if(entries_, [threshold](const auto& kv) { return std::abs(kv.second) < threshold; });
}

RdmFunctional& RdmFunctional::operator+=(const RdmFunctional& other)
{
    if (other.level_ != level_) throw Error(ErrorCode::InvalidArgument, "functional levels differ");
    for (const auto& [k, c] : other.entries_) accumulate(k.first, k.second, c);
    prune();
    return *this;
}

RdmFunctional& RdmFunctional::operator*=(Complex factor)
{
    for (auto& kv : entries_) kv.second *= factor;
    prune();
    return *this;
}

Complex RdmFunctional::apply(const Eigen::MatrixXcd& rho) const
{
    Complex total = 0.0;
    for (const auto& [k, c] : entries_) total += c * rho(k.first, k.second);
    return total;
}

RdmFunctional window_functional(const KetBraString& s, int level, int first_site)
{
    const int k = s.length();
    if (first_site < 1 || first_site + k - 1 > level) {
        throw Error(ErrorCode::WindowTooLarge, "string " + s.to_string() + " does not fit a level-" +
                                                   std::to_string(level) + " window");
    }
    const int left = first_site - 1;
    const int right = level - (first_site + k - 1);
    RdmFunctional f(level);
    // Tr(rho |nu><mu|) = rho(mu, nu), traced over diagonal extensions of the window.
    for (std::uint32_t l = 0; l < (1U << left); ++l) {
        for (std::uint32_t r = 0; r < (1U << right); ++r) {
            const std::uint32_t high = l << (k + right);
            const std::uint32_t ket = high | (s.ket_mask() << right) | r;
            const std::uint32_t bra = high | (s.bra_mask() << right) | r;
            f.accumulate(rdm_index(bra, level), rdm_index(ket, level), 1.0);
        }
    }
    return f;
}

RdmFunctional embed_functional(const KetBraString& s, int level)
{
    if (s.length() > level) {
        throw Error(ErrorCode::WindowTooLarge, "string " + s.to_string() + " is longer than level " +
                                                   std::to_string(level));
    }
    return window_functional(s, level, 1);
}

RdmFunctional embed_functional(const OperatorSum& s, int level)
{
    RdmFunctional f(level);
    for (const auto& [t, c] : s) {
        const RdmFunctional part = embed_functional(t, level);
        for (const auto& [k, d] : part.entries()) f.accumulate(k.first, k.second, c * d);
    }
    f.prune();
    return f;
}

} // namespace lindboot
