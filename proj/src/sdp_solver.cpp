// sdp_solver.cpp: Infeasible-start primal-dual path following (HKM direction, Mehrotra corrector)
//
//   min <C, X> + cf'f   s.t.  <A_i, X> + (B f)_i = b_i,  X psd,  f free
//   max b'y             s.t.  C - sum y_i A_i = Z psd,  B'y = cf

#include "lindboot/sdp_backend.hpp"

#include "lindboot/errors.hpp"

#include <Eigen/Sparse>
#include <lapacke.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numeric>
#include <tuple>

namespace lindboot {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

constexpr double kRankPivot = 1e-11;   // Gram pivot below which a unit row counts as dependent
constexpr double kFreeRankTol = 1e-10;
constexpr double kConsistency = 1e-7;
constexpr double kInfeasTol = 1e-8;

struct Row {
    std::vector<int> support;
    MatrixXd dense;                                // A_i restricted to support x support
    std::vector<std::tuple<int, int, double>> psd; // scalar coefficient on X_pq, p <= q
    std::vector<std::pair<int, double>> free;      // reduced free index
};

struct StandardForm {
    int n = 0;
    int k = 0;
    std::vector<Row> rows;
    VectorXd b;
    MatrixXd C;
    VectorXd cf;
    MatrixXd B;
    std::vector<int> row_of;
    VectorXd row_scale;
    std::vector<int> free_of;
};

enum class Presolve { Ok, Infeasible, Unbounded };

Presolve presolve(const ConicProblem& p, StandardForm& sf)
{
    const int n = p.block_dim;
    const int tri = n * (n + 1) / 2;
    const int kfree = p.num_free;
    const double sense = p.sense == Direction::Max ? -1.0 : 1.0;
    std::vector<std::pair<int, int>> pair_of(static_cast<std::size_t>(tri));
    for (int i = 0, t = 0; i < n; ++i)
        for (int j = i; j < n; ++j) pair_of[static_cast<std::size_t>(t++)] = {i, j};

    sf.n = n;
    sf.C = MatrixXd::Zero(n, n);
    VectorXd cf_all = VectorXd::Zero(kfree);
    for (const auto& [t, c] : p.objective) {
        if (t < tri) {
            const auto [i, j] = pair_of[static_cast<std::size_t>(t)];
            if (i == j) {
                sf.C(i, i) += sense * c;
            } else {
                sf.C(i, j) += 0.5 * sense * c;
                sf.C(j, i) += 0.5 * sense * c;
            }
        } else {
            cf_all(t - tri) += sense * c;
        }
    }

    // Unit-norm rows in the Frobenius metric, as weighted coordinates for the Gram matrix.
    const int m0 = static_cast<int>(p.rows.size());
    std::vector<Eigen::Triplet<double>> trip;
    std::vector<int> live;
    std::vector<double> scale;
    for (int r = 0; r < m0; ++r) {
        const auto& row = p.rows[static_cast<std::size_t>(r)];
        double norm2 = 0.0;
        for (const auto& [t, c] : row.terms) {
            const bool off = t < tri && pair_of[static_cast<std::size_t>(t)].first != pair_of[static_cast<std::size_t>(t)].second;
            norm2 += off ? 0.5 * c * c : c * c;
        }
        if (norm2 == 0.0) {
            if (std::abs(row.rhs) > kConsistency) return Presolve::Infeasible;
            continue;
        }
        const double s = 1.0 / std::sqrt(norm2);
        const int li = static_cast<int>(live.size());
        for (const auto& [t, c] : row.terms) {
            const bool off = t < tri && pair_of[static_cast<std::size_t>(t)].first != pair_of[static_cast<std::size_t>(t)].second;
            trip.emplace_back(li, t, (off ? c / std::sqrt(2.0) : c) * s);
        }
        live.push_back(r);
        scale.push_back(s);
    }
    const int m1 = static_cast<int>(live.size());
    VectorXd b1(m1);
    for (int i = 0; i < m1; ++i) b1(i) = p.rows[static_cast<std::size_t>(live[static_cast<std::size_t>(i)])].rhs * scale[static_cast<std::size_t>(i)];

    std::vector<int> kept;
    if (m1 > 0) {
        Eigen::SparseMatrix<double, Eigen::RowMajor> w(m1, tri + kfree);
        w.setFromTriplets(trip.begin(), trip.end());
        MatrixXd gram = MatrixXd(w * w.transpose());
        std::vector<lapack_int> piv(static_cast<std::size_t>(m1));
        lapack_int rank = 0;
        const lapack_int info = LAPACKE_dpstrf(LAPACK_COL_MAJOR, 'L', m1, gram.data(), m1, piv.data(), &rank, kRankPivot);
        if (info < 0) throw Error(ErrorCode::InvalidArgument, "pivoted Cholesky rejected its input");
        // Dependent rows must carry consistent right-hand sides: b_d = L21 L11^{-1} b_K.
        if (rank < m1) {
            VectorXd bk(rank);
            for (lapack_int a = 0; a < rank; ++a) bk(a) = b1(piv[static_cast<std::size_t>(a)] - 1);
            const MatrixXd l11 = gram.topLeftCorner(rank, rank).triangularView<Eigen::Lower>();
            const VectorXd z = l11.triangularView<Eigen::Lower>().solve(bk);
            const VectorXd proj = gram.block(rank, 0, m1 - rank, rank) * z;
            for (lapack_int d = rank; d < m1; ++d) {
                const double bd = b1(piv[static_cast<std::size_t>(d)] - 1);
                if (std::abs(bd - proj(d - rank)) > kConsistency * (1.0 + std::abs(bd))) return Presolve::Infeasible;
            }
        }
        for (lapack_int a = 0; a < rank; ++a) kept.push_back(piv[static_cast<std::size_t>(a)] - 1);
        std::sort(kept.begin(), kept.end());
    }

    const int m = static_cast<int>(kept.size());
    MatrixXd b_all = MatrixXd::Zero(m, kfree);
    sf.b.resize(m);
    sf.row_scale.resize(m);
    sf.rows.resize(static_cast<std::size_t>(m));
    sf.row_of.resize(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        const int li = kept[static_cast<std::size_t>(i)];
        const int r = live[static_cast<std::size_t>(li)];
        const double s = scale[static_cast<std::size_t>(li)];
        sf.row_of[static_cast<std::size_t>(i)] = r;
        sf.row_scale(i) = s;
        sf.b(i) = b1(li);
        Row& out = sf.rows[static_cast<std::size_t>(i)];
        for (const auto& [t, c] : p.rows[static_cast<std::size_t>(r)].terms) {
            if (t < tri) {
                const auto [a, bb] = pair_of[static_cast<std::size_t>(t)];
                out.psd.emplace_back(a, bb, c * s);
                out.support.push_back(a);
                out.support.push_back(bb);
            } else {
                b_all(i, t - tri) += c * s;
            }
        }
        std::sort(out.support.begin(), out.support.end());
        out.support.erase(std::unique(out.support.begin(), out.support.end()), out.support.end());
        const auto sz = static_cast<Eigen::Index>(out.support.size());
        out.dense = MatrixXd::Zero(sz, sz);
        auto pos = [&out](int v) {
            return static_cast<Eigen::Index>(std::lower_bound(out.support.begin(), out.support.end(), v) - out.support.begin());
        };
        for (const auto& [a, bb, c] : out.psd) {
            const auto pa = pos(a);
            const auto pb = pos(bb);
            if (a == bb) {
                out.dense(pa, pa) += c;
            } else {
                out.dense(pa, pb) += 0.5 * c;
                out.dense(pb, pa) += 0.5 * c;
            }
        }
    }

    // Free columns: keep an independent set; dependent ones are pinned at zero.
    sf.free_of.clear();
    if (kfree > 0 && m > 0) {
        Eigen::ColPivHouseholderQR<MatrixXd> qr(b_all);
        qr.setThreshold(kFreeRankTol);
        const Eigen::Index rk = qr.rank();
        std::vector<int> keep_cols;
        for (Eigen::Index a = 0; a < rk; ++a) keep_cols.push_back(static_cast<int>(qr.colsPermutation().indices()(a)));
        std::sort(keep_cols.begin(), keep_cols.end());
        MatrixXd bk(m, static_cast<Eigen::Index>(keep_cols.size()));
        VectorXd ck(static_cast<Eigen::Index>(keep_cols.size()));
        for (std::size_t a = 0; a < keep_cols.size(); ++a) {
            bk.col(static_cast<Eigen::Index>(a)) = b_all.col(keep_cols[a]);
            ck(static_cast<Eigen::Index>(a)) = cf_all(keep_cols[a]);
        }
        std::vector<bool> is_kept(static_cast<std::size_t>(kfree), false);
        for (int c : keep_cols) is_kept[static_cast<std::size_t>(c)] = true;
        Eigen::ColPivHouseholderQR<MatrixXd> qk(bk);
        for (int c = 0; c < kfree; ++c) {
            if (is_kept[static_cast<std::size_t>(c)]) continue;
            const VectorXd lambda = qk.solve(VectorXd(b_all.col(c)));
            const double drift = cf_all(c) - ck.dot(lambda);
            if (std::abs(drift) > 1e-9 * (1.0 + std::abs(cf_all(c)))) return Presolve::Unbounded;
        }
        sf.B = bk;
        sf.cf = ck;
        sf.free_of = keep_cols;
    } else {
        for (int c = 0; c < kfree; ++c) {
            if (cf_all(c) != 0.0) return Presolve::Unbounded;
        }
        sf.B = MatrixXd::Zero(m, 0);
        sf.cf = VectorXd::Zero(0);
    }
    sf.k = static_cast<int>(sf.free_of.size());
    for (int i = 0; i < m; ++i) {
        for (int a = 0; a < sf.k; ++a) {
            if (sf.B(i, a) != 0.0) sf.rows[static_cast<std::size_t>(i)].free.emplace_back(a, sf.B(i, a));
        }
    }
    return Presolve::Ok;
}

void symmetrize(MatrixXd& w)
{
    w = (0.5 * (w + w.transpose())).eval();
}

// <A_i, W> for symmetric W.
VectorXd apply_a(const StandardForm& sf, const MatrixXd& w)
{
    VectorXd out(static_cast<Eigen::Index>(sf.rows.size()));
    for (std::size_t i = 0; i < sf.rows.size(); ++i) {
        double v = 0.0;
        for (const auto& [p, q, c] : sf.rows[i].psd) v += c * (p == q ? w(p, p) : 0.5 * (w(p, q) + w(q, p)));
        out(static_cast<Eigen::Index>(i)) = v;
    }
    return out;
}

MatrixXd apply_at(const StandardForm& sf, const VectorXd& y)
{
    MatrixXd out = MatrixXd::Zero(sf.n, sf.n);
    for (std::size_t i = 0; i < sf.rows.size(); ++i) {
        const double yi = y(static_cast<Eigen::Index>(i));
        if (yi == 0.0) continue;
        for (const auto& [p, q, c] : sf.rows[i].psd) {
            if (p == q) {
                out(p, p) += yi * c;
            } else {
                out(p, q) += 0.5 * yi * c;
                out(q, p) += 0.5 * yi * c;
            }
        }
    }
    return out;
}

// M_ij = <A_i, X A_j Z^{-1}>, lower triangle filled then mirrored.
MatrixXd schur_matrix(const StandardForm& sf, const MatrixXd& x, const MatrixXd& zinv)
{
    const auto m = static_cast<Eigen::Index>(sf.rows.size());
    MatrixXd mm(m, m);
    MatrixXd xs;
    MatrixXd zs;
    MatrixXd w;
    for (Eigen::Index j = 0; j < m; ++j) {
        const Row& rj = sf.rows[static_cast<std::size_t>(j)];
        const auto s = static_cast<Eigen::Index>(rj.support.size());
        xs.resize(sf.n, s);
        zs.resize(s, sf.n);
        for (Eigen::Index a = 0; a < s; ++a) {
            xs.col(a) = x.col(rj.support[static_cast<std::size_t>(a)]);
            zs.row(a) = zinv.row(rj.support[static_cast<std::size_t>(a)]);
        }
        w.noalias() = (xs * rj.dense) * zs;
        for (Eigen::Index i = j; i < m; ++i) {
            double v = 0.0;
            for (const auto& [p, q, c] : sf.rows[static_cast<std::size_t>(i)].psd) {
                v += c * (p == q ? w(p, p) : 0.5 * (w(p, q) + w(q, p)));
            }
            mm(i, j) = v;
        }
    }
    mm.triangularView<Eigen::StrictlyUpper>() = mm.transpose();
    return mm;
}

// Largest alpha with X + alpha dX psd (infinity if unbounded).
double max_step(const Eigen::LLT<MatrixXd>& chol, const MatrixXd& dx)
{
    MatrixXd t = chol.matrixL().solve(dx);
    t = chol.matrixL().solve(t.transpose().eval()).transpose().eval();
    symmetrize(t);
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(t, Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

struct Iterate {
    MatrixXd x;
    MatrixXd z;
    VectorXd y;
    VectorXd f;
};

class KktSolver {
public:
    bool factor(const MatrixXd& m, const MatrixXd& b)
    {
        b_ = &b;
        m_ = &m;
        mt_ = m;
        w_ = 0.0;
        if (b.cols() > 0) {
            const double bb = b.squaredNorm();
            w_ = bb > 0.0 ? m.trace() / bb : 0.0;
            mt_.noalias() += w_ * b * b.transpose();
        }
        double reg = 0.0;
        const double diag = std::max(1e-300, mt_.diagonal().cwiseAbs().maxCoeff());
        for (int attempt = 0; attempt < 6; ++attempt) {
            MatrixXd work = mt_;
            if (reg > 0.0) work.diagonal().array() += reg;
            llt_.compute(work);
            if (llt_.info() == Eigen::Success) break;
            reg = reg == 0.0 ? 1e-14 * diag : reg * 100.0;
        }
        if (llt_.info() != Eigen::Success) return false;
        if (b.cols() > 0) {
            v_ = llt_.solve(b);
            s_.compute(b.transpose() * v_);
            if (s_.info() != Eigen::Success) return false;
        }
        return true;
    }

    // M dy + B df = r1, B' dy = r2, with one step of iterative refinement.
    void solve(const VectorXd& r1, const VectorXd& r2, VectorXd& dy, VectorXd& df) const
    {
        raw(r1, r2, dy, df);
        VectorXd e1 = r1 - (*m_) * dy;
        VectorXd e2 = r2;
        if (b_->cols() > 0) {
            e1 -= (*b_) * df;
            e2 -= b_->transpose() * dy;
        }
        VectorXd cy;
        VectorXd cfree;
        raw(e1, e2, cy, cfree);
        dy += cy;
        df += cfree;
    }

private:
    void raw(const VectorXd& r1, const VectorXd& r2, VectorXd& dy, VectorXd& df) const
    {
        if (b_->cols() == 0) {
            dy = llt_.solve(r1);
            df.resize(0);
            return;
        }
        const VectorXd r1p = r1 + w_ * ((*b_) * r2);
        const VectorXd t = llt_.solve(r1p);
        df = s_.solve(b_->transpose() * t - r2);
        dy = t - v_ * df;
    }

    const MatrixXd* m_ = nullptr;
    const MatrixXd* b_ = nullptr;
    MatrixXd mt_;
    double w_ = 0.0;
    Eigen::LLT<MatrixXd> llt_;
    MatrixXd v_;
    Eigen::LDLT<MatrixXd> s_;
};

struct Measures {
    double pobj, dobj, perr, derr, gap, mu;
};

SolveResult run_ipm(const ConicProblem& p, const SolverSettings& settings)
{
    const auto t0 = std::chrono::steady_clock::now();
    SolveResult res;
    const double sense = p.sense == Direction::Max ? -1.0 : 1.0;
    StandardForm sf;
    const Presolve pre = presolve(p, sf);
    const int n = sf.n;
    const auto m = static_cast<Eigen::Index>(sf.rows.size());

    auto finish = [&](SolveStatus status, const Iterate* it, long iters, double pobj, double dobj) {
        res.report.status = status;
        res.report.iterations = iters;
        res.report.primal_objective = sense * pobj;
        res.report.dual_objective = sense * dobj;
        const int tri = n * (n + 1) / 2;
        res.x.assign(static_cast<std::size_t>(tri + p.num_free), 0.0);
        res.y.assign(p.rows.size(), 0.0);
        if (it) {
            for (int i = 0, t = 0; i < n; ++i)
                for (int j = i; j < n; ++j) res.x[static_cast<std::size_t>(t++)] = it->x(i, j);
            for (int a = 0; a < sf.k; ++a) res.x[static_cast<std::size_t>(tri + sf.free_of[static_cast<std::size_t>(a)])] = it->f(a);
            for (Eigen::Index i = 0; i < m; ++i) {
                res.y[static_cast<std::size_t>(sf.row_of[static_cast<std::size_t>(i)])] = sense * it->y(i) * sf.row_scale(i);
            }
            res.primal_block = it->x;
            res.dual_slack = it->z;
        }
        res.report.max_residual = max_row_residual(p, res.x);
        res.report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return res;
    };

    if (pre == Presolve::Infeasible) {
        return finish(SolveStatus::PrimalInfeasible, nullptr, 0, std::numeric_limits<double>::infinity(),
                      std::numeric_limits<double>::infinity());
    }
    if (pre == Presolve::Unbounded) {
        return finish(SolveStatus::DualInfeasible, nullptr, 0, -std::numeric_limits<double>::infinity(),
                      -std::numeric_limits<double>::infinity());
    }

    const double norm_b = sf.b.norm();
    const double norm_c = std::sqrt(sf.C.squaredNorm() + sf.cf.squaredNorm());
    double max_b_ratio = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) max_b_ratio = std::max(max_b_ratio, (1.0 + std::abs(sf.b(i))) / 2.0);
    const double sqrt_n = std::sqrt(static_cast<double>(n));
    const double xi = std::max({10.0, sqrt_n, n * max_b_ratio});
    const double eta = std::max({10.0, sqrt_n, norm_c});

    Iterate cur{xi * MatrixXd::Identity(n, n), eta * MatrixXd::Identity(n, n), VectorXd::Zero(m), VectorXd::Zero(sf.k)};
    Iterate best = cur;
    double best_merit = std::numeric_limits<double>::infinity();
    Measures best_meas{0, 0, 1, 1, 1, 1};
    long stall = 0;
    const long max_iter = std::max(1L, settings.max_iter);

    auto measures = [&](const Iterate& it, VectorXd& rp, MatrixXd& rd, VectorXd& rf) {
        rp = sf.b - apply_a(sf, it.x);
        if (sf.k > 0) rp -= sf.B * it.f;
        rd = sf.C - apply_at(sf, it.y) - it.z;
        rf = sf.cf;
        if (sf.k > 0) rf -= sf.B.transpose() * it.y;
        Measures ms{};
        ms.pobj = (sf.C.cwiseProduct(it.x)).sum() + sf.cf.dot(it.f);
        ms.dobj = sf.b.dot(it.y);
        ms.perr = rp.norm() / (1.0 + norm_b);
        ms.derr = std::sqrt(rd.squaredNorm() + rf.squaredNorm()) / (1.0 + norm_c);
        ms.gap = std::abs(ms.pobj - ms.dobj) / std::max(1.0, std::abs(ms.pobj));
        ms.mu = it.x.cwiseProduct(it.z).sum() / n;
        return ms;
    };

    VectorXd rp;
    MatrixXd rd;
    VectorXd rf;
    KktSolver kkt;
    for (long iter = 0;; ++iter) {
        const Measures ms = measures(cur, rp, rd, rf);
        const double merit = std::max({ms.perr, ms.derr, ms.gap});
        if (merit < best_merit) {
            best_merit = merit;
            best = cur;
            best_meas = ms;
            stall = 0;
        } else {
            ++stall;
        }
        if (settings.verbosity > 0) {
            std::fprintf(stderr, "%4ld  p=% .10e d=% .10e  perr=%.2e derr=%.2e gap=%.2e mu=%.2e\n", iter, ms.pobj,
                         ms.dobj, ms.perr, ms.derr, ms.gap, ms.mu);
        }
        if (ms.perr <= settings.tol_feas && ms.derr <= settings.tol_feas &&
            std::abs(ms.pobj - ms.dobj) <= settings.tol_gap * std::max(1.0, std::abs(ms.pobj))) {
            return finish(SolveStatus::Optimal, &cur, iter, ms.pobj, ms.dobj);
        }
        // Certificates along diverging iterates.
        if (ms.dobj > 0.0) {
            const double ray = std::sqrt((sf.C - rd).squaredNorm() + (sf.cf - rf).squaredNorm()) / ms.dobj;
            if (ray < kInfeasTol) {
                const double inf = std::numeric_limits<double>::infinity();
                return finish(SolveStatus::PrimalInfeasible, &cur, iter, inf, inf);
            }
        }
        if (ms.pobj < 0.0) {
            const double ray = (sf.b - rp).norm() / -ms.pobj;
            if (ray < kInfeasTol && ms.derr > settings.tol_feas) {
                const double inf = std::numeric_limits<double>::infinity();
                return finish(SolveStatus::DualInfeasible, &cur, iter, -inf, -inf);
            }
        }
        if (iter >= max_iter || stall > 25) {
            return finish(SolveStatus::NumericalLimit, &best, iter, best_meas.pobj, best_meas.dobj);
        }

        Eigen::LLT<MatrixXd> zchol(cur.z);
        Eigen::LLT<MatrixXd> xchol(cur.x);
        if (zchol.info() != Eigen::Success || xchol.info() != Eigen::Success) {
            return finish(SolveStatus::NumericalLimit, &best, iter, best_meas.pobj, best_meas.dobj);
        }
        MatrixXd zinv = zchol.solve(MatrixXd::Identity(n, n));
        symmetrize(zinv);
        const MatrixXd mm = schur_matrix(sf, cur.x, zinv);
        if (!kkt.factor(mm, sf.B)) return finish(SolveStatus::NumericalLimit, &best, iter, best_meas.pobj, best_meas.dobj);

        const MatrixXd xrz = cur.x * rd * zinv;
        auto direction = [&](const MatrixXd& kzinv, VectorXd& dy, VectorXd& df, MatrixXd& dx, MatrixXd& dz) {
            const MatrixXd tmat = kzinv - xrz;
            const VectorXd r1 = rp - apply_a(sf, 0.5 * (tmat + tmat.transpose()));
            kkt.solve(r1, rf, dy, df);
            auto rebuild = [&] {
                dz = rd - apply_at(sf, dy);
                dx = kzinv - cur.x * dz * zinv;
                symmetrize(dx);
            };
            rebuild();
            // Refine against the residual of the assembled direction, not of the Schur matrix.
            const double target = 1e-3 * std::max(settings.tol_feas, 1e-14) * (1.0 + norm_b);
            for (int pass = 0; pass < 3; ++pass) {
                VectorXd e1 = rp - apply_a(sf, dx);
                VectorXd e2 = rf;
                if (sf.k > 0) {
                    e1 -= sf.B * df;
                    e2 -= sf.B.transpose() * dy;
                }
                if (std::max(e1.norm(), e2.norm()) <= target) break;
                VectorXd cy, cfree;
                kkt.solve(e1, e2, cy, cfree);
                dy += cy;
                if (sf.k > 0) df += cfree;
                rebuild();
            }
        };

        VectorXd dy, df;
        MatrixXd dx, dz;
        direction(-cur.x, dy, df, dx, dz);
        const double ap_aff = std::min(1.0, max_step(xchol, dx));
        const double ad_aff = std::min(1.0, max_step(zchol, dz));
        const double mu_aff = ((cur.x + ap_aff * dx).cwiseProduct(cur.z + ad_aff * dz)).sum() / n;
        const double sigma = std::min(1.0, std::pow(std::max(0.0, mu_aff) / ms.mu, 3.0));
        const MatrixXd corr = (sigma * ms.mu) * zinv - cur.x - dx * dz * zinv;
        direction(corr, dy, df, dx, dz);

        const double gamma = 0.9 + 0.09 * std::min(ap_aff, ad_aff);
        const double ap = std::min(1.0, gamma * max_step(xchol, dx));
        const double ad = std::min(1.0, gamma * max_step(zchol, dz));
        if (ap < 1e-10 && ad < 1e-10) {
            return finish(SolveStatus::NumericalLimit, &best, iter, best_meas.pobj, best_meas.dobj);
        }
        cur.x += ap * dx;
        cur.f += ap * df;
        cur.y += ad * dy;
        cur.z += ad * dz;
        symmetrize(cur.x);
        symmetrize(cur.z);
    }
}

} // namespace

void SolverSettings::validate() const
{
    if (!(tol_feas > 0.0) || !(tol_gap > 0.0)) throw Error(ErrorCode::InvalidConfig, "solver tolerances must be > 0");
    if (max_iter < 1) throw Error(ErrorCode::InvalidConfig, "max_iter must be >= 1");
}

std::string_view solve_status_name(SolveStatus s)
{
    switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::PrimalInfeasible: return "PrimalInfeasible";
    case SolveStatus::DualInfeasible: return "DualInfeasible";
    case SolveStatus::NumericalLimit: return "NumericalLimit";
    }
    return "?";
}

SolveResult solve(const ConicProblem& problem, const SolverSettings& settings)
{
    settings.validate();
    if (!problem.complex_block) return run_ipm(problem, settings);
    const ConicProblem real = hermitian_embedding(problem);
    SolveResult res = run_ipm(real, settings);
    res.x = hermitian_restrict(problem, res.x);
    res.report.max_residual = max_row_residual(problem, res.x);
    return res;
}

} // namespace lindboot
