// operator_algebra.hpp: Ket-bra strings on 1D windows and their linear combinations

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>

namespace lindboot {

using Complex = std::complex<double>;
using SiteMatrix = Eigen::Matrix2cd;

/// Coefficients with magnitude below this are dropped after every combination.
inline constexpr double kPruneThreshold = 1e-14;

/// Single-site operators. Matrices are written in the ordering (|1>, |0>),
/// i.e. the active state |1> is index 0 and the inactive state |0> is index 1.
enum class SiteOperator { I, X, Y, Z, Sp, Sm, n };

SiteMatrix site_matrix(SiteOperator op);
SiteOperator site_adjoint(SiteOperator op);
std::string_view site_operator_name(SiteOperator op);

/// |nu_1 ... nu_k><mu_1 ... mu_k| on the consecutive sites offset .. offset+k-1.
///
/// Labels are physical occupations (1 = active, 0 = inactive). The label of
/// window site i (0-based from the left) is stored at bit (k-1-i) of the mask,
/// so the leftmost site is the most significant bit.
class KetBraString {
public:
    static constexpr int kMaxLength = 24;

    KetBraString(int offset, std::uint32_t ket_mask, std::uint32_t bra_mask, int length);

    /// Build from label text such as ("10", "01").
    static KetBraString from_labels(std::string_view ket, std::string_view bra, int offset = 1);

    int offset() const noexcept { return offset_; }
    int length() const noexcept { return length_; }
    int right() const noexcept { return offset_ + length_ - 1; }
    bool contains(int site) const noexcept { return site >= offset_ && site <= right(); }

    std::uint32_t ket_mask() const noexcept { return ket_; }
    std::uint32_t bra_mask() const noexcept { return bra_; }
    int ket_label(int i) const noexcept { return static_cast<int>((ket_ >> (length_ - 1 - i)) & 1U); }
    int bra_label(int i) const noexcept { return static_cast<int>((bra_ >> (length_ - 1 - i)) & 1U); }

    KetBraString with_ket_label(int i, int label) const;
    KetBraString with_bra_label(int i, int label) const;

    /// "|10><01|@1"
    std::string to_string() const;

    auto operator<=>(const KetBraString&) const = default;

private:
    int offset_;
    int length_;
    std::uint32_t ket_;
    std::uint32_t bra_;
};

/// Finite complex linear combination of ket-bra strings with unique keys.
class OperatorSum {
public:
    using Terms = std::map<KetBraString, Complex>;

    OperatorSum() = default;
    explicit OperatorSum(const KetBraString& s, Complex coefficient = 1.0);

    /// Accumulate without pruning; call prune() when a combination is complete.
    void accumulate(const KetBraString& s, Complex coefficient);
    void prune(double threshold = kPruneThreshold);

    OperatorSum& operator+=(const OperatorSum& other);
    OperatorSum& operator-=(const OperatorSum& other);
    OperatorSum& operator*=(Complex factor);

    friend OperatorSum operator+(OperatorSum a, const OperatorSum& b) { return a += b; }
    friend OperatorSum operator-(OperatorSum a, const OperatorSum& b) { return a -= b; }
    friend OperatorSum operator*(Complex factor, OperatorSum a) { return a *= factor; }

    bool empty() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }
    const Terms& terms() const noexcept { return terms_; }
    Terms::const_iterator begin() const { return terms_.begin(); }
    Terms::const_iterator end() const { return terms_.end(); }

    Complex coefficient(const KetBraString& s) const;

    /// Smallest and largest site touched by any term; {0, -1} when empty.
    std::pair<int, int> support() const;

    std::string to_string() const;

private:
    Terms terms_;
};

/// (m at site) * s. The window is grown with identity padding when site lies outside it.
OperatorSum act_left(const SiteMatrix& m, int site, const KetBraString& s);
OperatorSum act_left(SiteOperator op, int site, const KetBraString& s);
OperatorSum act_left(const SiteMatrix& m, int site, const OperatorSum& s);

/// s * (m at site).
OperatorSum act_right(const SiteMatrix& m, int site, const KetBraString& s);
OperatorSum act_right(SiteOperator op, int site, const KetBraString& s);
OperatorSum act_right(const SiteMatrix& m, int site, const OperatorSum& s);

OperatorSum dagger(const OperatorSum& s);
KetBraString dagger(const KetBraString& s);

KetBraString shift(const KetBraString& s, int d);

/// Expand the identity on the window [first, first+length) into ket-bra strings.
OperatorSum identity_on(int first, int length);

/// Identity-pad s so that it covers [first, last].
OperatorSum pad_to(const KetBraString& s, int first, int last);

/// Dense matrix of s on the sites [first, first+n_sites), in the fixed index convention.
Eigen::MatrixXcd to_dense(const OperatorSum& s, int first, int n_sites);
OperatorSum from_dense(const Eigen::MatrixXcd& m, int first, int n_sites);

/// Index of a label mask in the (|1>, |0>) ordering, leftmost site most significant.
inline std::uint32_t rdm_index(std::uint32_t label_mask, int length) {
    const std::uint32_t all = (length >= 32) ? ~0U : ((1U << length) - 1U);
    return (~label_mask) & all;
}

/// Linear functional f(rho) = sum coeff(r, c) * rho(r, c) on the level-N reduced density matrix.
class RdmFunctional {
public:
    using Key = std::pair<std::uint32_t, std::uint32_t>;
    using Entries = std::map<Key, Complex>;

    explicit RdmFunctional(int level) : level_(level) {}

    int level() const noexcept { return level_; }
    const Entries& entries() const noexcept { return entries_; }
    bool empty() const noexcept { return entries_.empty(); }

    void accumulate(std::uint32_t row, std::uint32_t col, Complex coefficient);
    void prune(double threshold = kPruneThreshold);

    RdmFunctional& operator+=(const RdmFunctional& other);
    RdmFunctional& operator*=(Complex factor);

    Complex apply(const Eigen::MatrixXcd& rho) const;

private:
    int level_;
    Entries entries_;
};

/// Expectation of s through rho^(N) after left-aligning s (window moved to start at site 1).
RdmFunctional embed_functional(const KetBraString& s, int level);

/// Term-wise left-aligned embedding; valid for translation-invariant expectation values.
RdmFunctional embed_functional(const OperatorSum& s, int level);

/// Expectation of s placed so that its leftmost site is window site first_site (1-based),
/// with every other site of the level-N window traced.
RdmFunctional window_functional(const KetBraString& s, int level, int first_site);

} // namespace lindboot
