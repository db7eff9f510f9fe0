// sdp_io.cpp: Hermitian embedding, certificate re-verification, SDPA sparse files

#include "lindboot/sdp_backend.hpp"

#include "lindboot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace lindboot {

namespace {

// Terms of the embedded problem for one complex-problem term.
void embed_term(int n, int t, double c, std::map<int, double>& out)
{
    const int tri = n * (n + 1) / 2;
    const int ims = n * (n - 1) / 2;
    const int n2 = 2 * n;
    if (t < tri) {
        const auto [i, j] = sym_pair(n, t);
        out[sym_index(n2, i, j)] += 0.5 * c;
        out[sym_index(n2, n + i, n + j)] += 0.5 * c;
    } else if (t < tri + ims) {
        // Im X_ij = (W_{j, n+i} - W_{i, n+j}) / 2
        int idx = t - tri;
        int i = 0;
        while (idx >= n - 1 - i) {
            idx -= n - 1 - i;
            ++i;
        }
        const int j = i + 1 + idx;
        out[sym_index(n2, j, n + i)] += 0.5 * c;
        out[sym_index(n2, i, n + j)] -= 0.5 * c;
    } else {
        out[n2 * (n2 + 1) / 2 + (t - tri - ims)] += c;
    }
}

SparseTerms embed_terms(int n, const SparseTerms& terms)
{
    std::map<int, double> acc;
    for (const auto& [t, c] : terms) embed_term(n, t, c, acc);
    SparseTerms out;
    for (const auto& [k, v] : acc) {
        if (v != 0.0) out.emplace_back(k, v);
    }
    return out;
}

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

ConicProblem hermitian_embedding(const ConicProblem& p)
{
    if (!p.complex_block) return p;
    ConicProblem out = p;
    const int n = p.block_dim;
    out.block_dim = 2 * n;
    out.complex_block = false;
    out.objective = embed_terms(n, p.objective);
    for (auto& row : out.rows) row.terms = embed_terms(n, row.terms);
    return out;
}

std::vector<double> hermitian_restrict(const ConicProblem& p, const std::vector<double>& w)
{
    if (!p.complex_block) return w;
    const int n = p.block_dim;
    const int n2 = 2 * n;
    const int tri = n * (n + 1) / 2;
    const int ims = n * (n - 1) / 2;
    const int wtri = n2 * (n2 + 1) / 2;
    std::vector<double> x(static_cast<std::size_t>(p.num_scalars()), 0.0);
    auto at = [&w](int k) { return w.at(static_cast<std::size_t>(k)); };
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            x[static_cast<std::size_t>(sym_index(n, i, j))] = 0.5 * (at(sym_index(n2, i, j)) + at(sym_index(n2, n + i, n + j)));
            if (i < j) {
                x[static_cast<std::size_t>(tri + strict_index(n, i, j))] =
                    0.5 * (at(sym_index(n2, j, n + i)) - at(sym_index(n2, i, n + j)));
            }
        }
    }
    for (int f = 0; f < p.num_free; ++f) x[static_cast<std::size_t>(tri + ims + f)] = at(wtri + f);
    return x;
}

Eigen::MatrixXcd block_matrix(const ConicProblem& p, const std::vector<double>& x)
{
    const int n = p.block_dim;
    const int tri = n * (n + 1) / 2;
    Eigen::MatrixXcd m(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::complex<double> e = x.at(static_cast<std::size_t>(sym_index(n, i, j)));
            if (p.complex_block && i < j) e += std::complex<double>(0.0, x.at(static_cast<std::size_t>(tri + strict_index(n, i, j))));
            m(i, j) = e;
            m(j, i) = std::conj(e);
        }
    }
    return m;
}

CertificateCheck verify_certificate(const ConicProblem& p, const SolveResult& r, const SolverSettings& settings)
{
    CertificateCheck c;
    if (static_cast<int>(r.x.size()) != p.num_scalars()) return c;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(block_matrix(p, r.x), Eigen::EigenvaluesOnly);
    c.min_eigenvalue = p.block_dim > 0 ? es.eigenvalues()(0) : 0.0;
    c.max_residual = max_row_residual(p, r.x);
    c.passed = c.min_eigenvalue >= -10.0 * settings.tol_feas && c.max_residual <= 10.0 * settings.tol_feas;
    return c;
}

// ---------------------------------------------------------------------------
// SDPA

SdpaData to_sdpa(const ConicProblem& p)
{
    if (p.complex_block) throw Error(ErrorCode::InvalidArgument, "SDPA export needs the real form");
    const int n = p.block_dim;
    const int tri = n * (n + 1) / 2;
    SdpaData d;
    d.num_constraints = static_cast<int>(p.rows.size());
    d.block_sizes.push_back(n);
    if (p.num_free > 0) d.block_sizes.push_back(-2 * p.num_free);
    auto emit = [&](int matno, int t, double c) {
        if (c == 0.0) return;
        if (t < tri) {
            const auto [i, j] = sym_pair(n, t);
            d.entries.push_back({matno, 1, i + 1, j + 1, i == j ? c : 0.5 * c});
        } else {
            const int f = t - tri;
            d.entries.push_back({matno, 2, 2 * f + 1, 2 * f + 1, c});
            d.entries.push_back({matno, 2, 2 * f + 2, 2 * f + 2, -c});
        }
    };
    const double sense = p.sense == Direction::Max ? 1.0 : -1.0;
    for (const auto& [t, c] : p.objective) emit(0, t, sense * c);
    for (std::size_t r = 0; r < p.rows.size(); ++r) {
        d.rhs.push_back(p.rows[r].rhs);
        for (const auto& [t, c] : p.rows[r].terms) emit(static_cast<int>(r) + 1, t, c);
    }
    std::sort(d.entries.begin(), d.entries.end());
    return d;
}

void write_sdpa(const SdpaData& d, std::ostream& out)
{
    out << d.num_constraints << '\n' << d.block_sizes.size() << '\n';
    for (std::size_t b = 0; b < d.block_sizes.size(); ++b) out << (b ? " " : "") << d.block_sizes[b];
    out << '\n';
    for (std::size_t i = 0; i < d.rhs.size(); ++i) out << (i ? " " : "") << format_double(d.rhs[i]);
    out << '\n';
    for (const auto& e : d.entries) {
        out << e.matrix << ' ' << e.block << ' ' << e.i << ' ' << e.j << ' ' << format_double(e.value) << '\n';
    }
}

SdpaData read_sdpa(std::istream& in)
{
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '"' || line[first] == '*') continue;
        for (char& ch : line) {
            if (ch == ',' || ch == '{' || ch == '}' || ch == '(' || ch == ')') ch = ' ';
        }
        lines.push_back(line);
    }
    auto fail = [](const std::string& what) -> SdpaData { throw Error(ErrorCode::IoFailure, "SDPA: " + what); };
    if (lines.size() < 3) return fail("truncated header");
    SdpaData d;
    std::size_t nblocks = 0;
    {
        std::istringstream s(lines[0]);
        if (!(s >> d.num_constraints)) return fail("bad constraint count");
    }
    {
        std::istringstream s(lines[1]);
        if (!(s >> nblocks)) return fail("bad block count");
    }
    std::istringstream nums;
    std::string rest;
    for (std::size_t k = 2; k < lines.size(); ++k) rest += lines[k] + '\n';
    nums.str(rest);
    d.block_sizes.resize(nblocks);
    for (auto& b : d.block_sizes) {
        if (!(nums >> b)) return fail("bad block sizes");
    }
    d.rhs.resize(static_cast<std::size_t>(d.num_constraints));
    for (auto& v : d.rhs) {
        if (!(nums >> v)) return fail("bad right-hand side");
    }
    SdpaData::Entry e{};
    while (nums >> e.matrix >> e.block >> e.i >> e.j >> e.value) d.entries.push_back(e);
    if (!nums.eof()) return fail("bad entry line");
    std::sort(d.entries.begin(), d.entries.end());
    return d;
}

void export_sdpa(const ConicProblem& p, const std::string& path)
{
    const SdpaData d = to_sdpa(hermitian_embedding(p));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot open " + path);
    write_sdpa(d, out);
    if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path);
}

SdpaData import_sdpa(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::IoFailure, "cannot open " + path);
    return read_sdpa(in);
}

} // namespace lindboot
