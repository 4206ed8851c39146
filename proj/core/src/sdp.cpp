// Copyright 2026 The qsdc developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qsdc/sdp.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <ostream>

namespace qsdc {

namespace {

// ---------------------------------------------------------------------------
// Real symmetric embedding of Hermitian data.

RealMatrix embed(const Matrix& h) {
    const long n = h.rows();
    RealMatrix out(2 * n, 2 * n);
    out.topLeftCorner(n, n) = h.real();
    out.topRightCorner(n, n) = -h.imag();
    out.bottomLeftCorner(n, n) = h.imag();
    out.bottomRightCorner(n, n) = h.real();
    return out;
}

// Inverse of embed up to the block average that projects onto the embedded
// subspace; exact for embedded inputs, a Hermitian projection otherwise.
Matrix extract(const RealMatrix& y) {
    const long n = y.rows() / 2;
    Matrix out(n, n);
    const RealMatrix re = 0.5 * (y.topLeftCorner(n, n) + y.bottomRightCorner(n, n));
    const RealMatrix im = 0.5 * (y.bottomLeftCorner(n, n) - y.topRightCorner(n, n));
    out.real() = re;
    out.imag() = im;
    return 0.5 * (out + out.adjoint());
}

struct Trip {
    int row;
    int col;
    double value;
};

struct RealTerm {
    int block = 0;
    RealMatrix dense;        // always populated
    std::vector<Trip> trip;  // fast path when the matrix is very sparse
    bool sparse = false;
};

struct RealConstraint {
    std::vector<RealTerm> terms;
    double rhs = 0.0;
};

constexpr int kSparseCutoff = 12;

RealTerm make_term(int block, const Matrix& a) {
    RealTerm term;
    term.block = block;
    term.dense = embed(a);
    int nnz = 0;
    for (long i = 0; i < term.dense.rows() && nnz <= kSparseCutoff; ++i)
        for (long j = 0; j < term.dense.cols() && nnz <= kSparseCutoff; ++j)
            if (term.dense(i, j) != 0.0) ++nnz;
    if (nnz <= kSparseCutoff) {
        term.sparse = true;
        for (long i = 0; i < term.dense.rows(); ++i)
            for (long j = 0; j < term.dense.cols(); ++j)
                if (term.dense(i, j) != 0.0)
                    term.trip.push_back({static_cast<int>(i), static_cast<int>(j),
                                         term.dense(i, j)});
    }
    return term;
}

// R^T A R for one constraint term (R is a general square factor).
RealMatrix scale_term(const RealTerm& term, const RealMatrix& r) {
    if (term.sparse) {
        const long n = r.cols();
        RealMatrix out = RealMatrix::Zero(n, n);
        for (const Trip& t : term.trip)
            out.noalias() += t.value * (r.row(t.row).transpose() * r.row(t.col));
        return 0.5 * (out + out.transpose());
    }
    RealMatrix tmp = r.transpose() * term.dense;
    RealMatrix out = tmp * r;
    return 0.5 * (out + out.transpose());
}

// Symmetric vectorization with sqrt(2)-weighted off-diagonals, so that
// svec(A).dot(svec(B)) equals the Frobenius inner product.
void svec_into(const RealMatrix& a, double* out) {
    const long n = a.rows();
    long k = 0;
    const double rt2 = std::numbers::sqrt2;
    for (long j = 0; j < n; ++j) {
        out[k++] = a(j, j);
        for (long i = j + 1; i < n; ++i) out[k++] = rt2 * a(i, j);
    }
}

long svec_len(long n) { return n * (n + 1) / 2; }

// Factor F with F F^T = X.  Cholesky when positive definite, otherwise an
// eigenvalue-clamped square root.
RealMatrix psd_factor(const RealMatrix& x) {
    Eigen::LLT<RealMatrix> llt(x);
    if (llt.info() == Eigen::Success) return llt.matrixL();
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(x);
    const double floor_val = std::max(1e-14 * std::max(1.0, eig.eigenvalues().maxCoeff()),
                                      1e-300);
    RealVector d = eig.eigenvalues().cwiseMax(floor_val);
    return eig.eigenvectors() * d.cwiseSqrt().asDiagonal();
}

// Largest alpha <= cap with Lambda + alpha * d >= 0, Lambda diagonal positive.
double max_step(const RealVector& lambda, const RealMatrix& d, double cap) {
    const long n = lambda.size();
    RealMatrix scaled(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j)
            scaled(i, j) = d(i, j) / std::sqrt(lambda(i) * lambda(j));
    Eigen::SelfAdjointEigenSolver<RealMatrix> eig(scaled, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    if (lo >= -1e-14) return cap;
    return std::min(cap, -1.0 / lo);
}

struct Workspace {
    int n_blocks = 0;
    int m = 0;
    std::vector<long> dims;                             // embedded block sizes
    std::vector<RealMatrix> c;                          // embedded objectives
    std::vector<RealConstraint> cons;
    std::vector<std::vector<std::pair<int, int>>> on_block;  // (constraint, term idx)
    RealVector b;                                       // embedded rhs (doubled)
};

struct State {
    std::vector<RealMatrix> x, z;
    RealVector y;
};

struct Scaling {
    std::vector<RealMatrix> r, rinv;
    std::vector<RealVector> lambda;
    // scaled constraint matrices, indexed like the constraint terms
    std::vector<std::vector<RealMatrix>> scaled;
    Eigen::LLT<RealMatrix> schur_llt;
    Eigen::LDLT<RealMatrix> schur_ldlt;
    bool use_ldlt = false;
};

double dot_sym(const RealMatrix& a, const RealMatrix& b) {
    return a.cwiseProduct(b).sum();
}

void build_scaling(const Workspace& w, const State& s, Scaling& sc) {
    const int nb = w.n_blocks;
    sc.r.resize(nb);
    sc.rinv.resize(nb);
    sc.lambda.resize(nb);
    for (int bidx = 0; bidx < nb; ++bidx) {
        const RealMatrix lx = psd_factor(s.x[bidx]);
        const RealMatrix lz = psd_factor(s.z[bidx]);
        Eigen::JacobiSVD<RealMatrix> svd(lz.transpose() * lx,
                                         Eigen::ComputeFullU | Eigen::ComputeFullV);
        RealVector sig = svd.singularValues().cwiseMax(1e-150);
        const RealVector si = sig.cwiseSqrt().cwiseInverse();
        sc.lambda[bidx] = sig;
        sc.r[bidx] = lx * svd.matrixV() * si.asDiagonal();
        sc.rinv[bidx] = si.asDiagonal() * svd.matrixU().transpose() * lz.transpose();
    }

    sc.scaled.assign(w.m, {});
    for (int j = 0; j < w.m; ++j) {
        sc.scaled[j].resize(w.cons[j].terms.size());
        for (std::size_t t = 0; t < w.cons[j].terms.size(); ++t) {
            const RealTerm& term = w.cons[j].terms[t];
            sc.scaled[j][t] = scale_term(term, sc.r[term.block]);
        }
    }

    // Schur complement M_jk = sum_b <A~_j, A~_k> assembled per block so the
    // per-block constraint sparsity pattern is exploited.
    using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
    RealMatrix schur = RealMatrix::Zero(w.m, w.m);
    for (int bidx = 0; bidx < nb; ++bidx) {
        const auto& touching = w.on_block[bidx];
        if (touching.empty()) continue;
        const long len = svec_len(w.dims[bidx]);
        RowMajorMatrix rows(static_cast<long>(touching.size()), len);
        for (std::size_t k = 0; k < touching.size(); ++k)
            svec_into(sc.scaled[touching[k].first][touching[k].second], rows.row(k).data());
        if (static_cast<int>(touching.size()) == w.m) {
            schur.selfadjointView<Eigen::Lower>().rankUpdate(rows);
        } else {
            RealMatrix local = RealMatrix::Zero(touching.size(), touching.size());
            local.selfadjointView<Eigen::Lower>().rankUpdate(rows);
            local.triangularView<Eigen::StrictlyUpper>() =
                local.transpose().triangularView<Eigen::StrictlyUpper>();
            for (std::size_t a = 0; a < touching.size(); ++a)
                for (std::size_t c2 = 0; c2 < touching.size(); ++c2)
                    schur(touching[a].first, touching[c2].first) += local(a, c2);
        }
    }
    schur.triangularView<Eigen::StrictlyUpper>() =
        schur.transpose().triangularView<Eigen::StrictlyUpper>();

    sc.use_ldlt = false;
    sc.schur_llt.compute(schur);
    if (sc.schur_llt.info() != Eigen::Success) {
        sc.use_ldlt = true;
        schur.diagonal().array() += 1e-13 * std::max(1.0, schur.diagonal().maxCoeff());
        sc.schur_ldlt.compute(schur);
    }
}

struct Direction {
    std::vector<RealMatrix> dx_scaled, dz_scaled;
    RealVector dy;
};

// Solve the Newton system in scaled coordinates for a given complementarity
// target rc (per block):
//   dz~ = sum_j dy_j A~_j - Rd~,   dx~ = rc - dz~,   <A~_j, dx~> = rp_j.
void solve_direction(const Workspace& w, const Scaling& sc, const RealVector& rp,
                     const std::vector<RealMatrix>& rd_scaled,
                     const std::vector<RealMatrix>& rc, Direction& dir) {
    std::vector<RealMatrix> rc_plus_rd(w.n_blocks);
    for (int bidx = 0; bidx < w.n_blocks; ++bidx)
        rc_plus_rd[bidx] = rc[bidx] + rd_scaled[bidx];
    RealVector q(w.m);
    for (int j = 0; j < w.m; ++j) {
        double acc = -rp(j);
        for (std::size_t t = 0; t < w.cons[j].terms.size(); ++t) {
            const int bidx = w.cons[j].terms[t].block;
            acc += dot_sym(sc.scaled[j][t], rc_plus_rd[bidx]);
        }
        q(j) = acc;
    }
    if (sc.use_ldlt)
        dir.dy = sc.schur_ldlt.solve(q);
    else
        dir.dy = sc.schur_llt.solve(q);

    dir.dz_scaled.assign(w.n_blocks, RealMatrix());
    for (int bidx = 0; bidx < w.n_blocks; ++bidx)
        dir.dz_scaled[bidx] = -rd_scaled[bidx];
    for (int j = 0; j < w.m; ++j)
        for (std::size_t t = 0; t < w.cons[j].terms.size(); ++t) {
            const int bidx = w.cons[j].terms[t].block;
            dir.dz_scaled[bidx].noalias() += dir.dy(j) * sc.scaled[j][t];
        }

    dir.dx_scaled.assign(w.n_blocks, RealMatrix());
    for (int bidx = 0; bidx < w.n_blocks; ++bidx)
        dir.dx_scaled[bidx] = rc[bidx] - dir.dz_scaled[bidx];
}

// Greedy Gram-based selection of a maximal independent constraint subset.
// Returns kept indices; throws if a dropped row is inconsistent.
std::vector<int> independent_rows(const Workspace& w) {
    const int m = w.m;
    RealMatrix gram = RealMatrix::Zero(m, m);
    for (int bidx = 0; bidx < w.n_blocks; ++bidx) {
        const auto& touching = w.on_block[bidx];
        for (std::size_t a = 0; a < touching.size(); ++a)
            for (std::size_t c2 = a; c2 < touching.size(); ++c2) {
                const double v =
                    dot_sym(w.cons[touching[a].first].terms[touching[a].second].dense,
                            w.cons[touching[c2].first].terms[touching[c2].second].dense);
                gram(touching[a].first, touching[c2].first) += v;
                if (touching[a].first != touching[c2].first)
                    gram(touching[c2].first, touching[a].first) += v;
            }
    }
    const double scale = std::max(1.0, gram.diagonal().maxCoeff());

    std::vector<int> kept;
    Eigen::LDLT<RealMatrix> ldlt;
    for (int j = 0; j < m; ++j) {
        std::vector<int> candidate = kept;
        candidate.push_back(j);
        RealMatrix sub(candidate.size(), candidate.size());
        for (std::size_t a = 0; a < candidate.size(); ++a)
            for (std::size_t c2 = 0; c2 < candidate.size(); ++c2)
                sub(a, c2) = gram(candidate[a], candidate[c2]);
        // Schur complement of the new row against the kept set.
        double pivot = sub(candidate.size() - 1, candidate.size() - 1);
        if (kept.size() > 0) {
            const RealMatrix head = sub.topLeftCorner(kept.size(), kept.size());
            const RealVector col = sub.topRightCorner(kept.size(), 1);
            pivot -= col.dot(head.ldlt().solve(col));
        }
        if (pivot > 1e-12 * scale) {
            kept.push_back(j);
        } else {
            // Dependent row: verify the right-hand side is consistent.
            RealMatrix head(kept.size(), kept.size());
            RealVector col(kept.size()), rhs(kept.size());
            for (std::size_t a = 0; a < kept.size(); ++a) {
                col(a) = gram(kept[a], j);
                rhs(a) = w.b(kept[a]);
                for (std::size_t c2 = 0; c2 < kept.size(); ++c2)
                    head(a, c2) = gram(kept[a], kept[c2]);
            }
            const RealVector coeff = head.ldlt().solve(col);
            if (std::abs(coeff.dot(rhs) - w.b(j)) > 1e-8 * std::max(1.0, w.b.cwiseAbs().maxCoeff()))
                throw SolverFailure("solve_sdp: constraints are inconsistent (infeasible)");
        }
    }
    return kept;
}

} // namespace

SdpSolution solve_sdp(const SdpProblem& problem, const SdpOptions& options) {
    const int nb = static_cast<int>(problem.block_dims.size());
    if (nb == 0 || problem.objective.size() != static_cast<std::size_t>(nb))
        throw std::invalid_argument("solve_sdp: objective does not match block structure");
    for (int i = 0; i < nb; ++i) {
        if (problem.block_dims[i] < 1)
            throw std::invalid_argument("solve_sdp: nonpositive block dimension");
        if (problem.objective[i].rows() != problem.block_dims[i] ||
            problem.objective[i].cols() != problem.block_dims[i])
            throw std::invalid_argument("solve_sdp: objective block has wrong dimension");
        if (!is_hermitian(problem.objective[i], 1e-10))
            throw std::invalid_argument("solve_sdp: objective block is not Hermitian");
    }

    Workspace w;
    w.n_blocks = nb;
    w.m = static_cast<int>(problem.constraints.size());
    w.dims.resize(nb);
    w.c.resize(nb);
    for (int i = 0; i < nb; ++i) {
        w.dims[i] = 2L * problem.block_dims[i];
        w.c[i] = embed(problem.objective[i]);
    }
    if (w.m < 1) throw std::invalid_argument("solve_sdp: at least one constraint is required");
    w.b = RealVector(w.m);
    w.cons.resize(w.m);
    w.on_block.assign(nb, {});
    std::vector<char> block_seen(nb, 0);
    for (int j = 0; j < w.m; ++j) {
        const SdpConstraint& cj = problem.constraints[j];
        if (cj.terms.empty())
            throw std::invalid_argument("solve_sdp: constraint with no terms");
        std::fill(block_seen.begin(), block_seen.end(), 0);
        for (const auto& [bidx, a] : cj.terms) {
            if (bidx < 0 || bidx >= nb)
                throw std::invalid_argument("solve_sdp: constraint block index out of range");
            if (block_seen[bidx])
                throw std::invalid_argument(
                    "solve_sdp: constraint touches the same block twice (merge the terms)");
            block_seen[bidx] = 1;
            if (a.rows() != problem.block_dims[bidx] || a.cols() != problem.block_dims[bidx])
                throw std::invalid_argument("solve_sdp: constraint term has wrong dimension");
            if (!is_hermitian(a, 1e-10))
                throw std::invalid_argument("solve_sdp: constraint term is not Hermitian");
            w.cons[j].terms.push_back(make_term(bidx, a));
            w.on_block[bidx].push_back({j, static_cast<int>(w.cons[j].terms.size()) - 1});
        }
        w.cons[j].rhs = 2.0 * cj.rhs;  // embedding doubles inner products
        w.b(j) = w.cons[j].rhs;
    }

    if (!problem.constraints_verified) {
        const std::vector<int> kept = independent_rows(w);
        if (static_cast<int>(kept.size()) != w.m) {
            // Rebuild the workspace on the independent subset.
            Workspace reduced;
            reduced.n_blocks = nb;
            reduced.dims = w.dims;
            reduced.c = w.c;
            reduced.m = static_cast<int>(kept.size());
            reduced.b = RealVector(reduced.m);
            reduced.cons.resize(reduced.m);
            reduced.on_block.assign(nb, {});
            for (int jj = 0; jj < reduced.m; ++jj) {
                reduced.cons[jj] = w.cons[kept[jj]];
                reduced.b(jj) = w.b(kept[jj]);
                for (std::size_t t = 0; t < reduced.cons[jj].terms.size(); ++t)
                    reduced.on_block[reduced.cons[jj].terms[t].block].push_back(
                        {jj, static_cast<int>(t)});
            }
            w = std::move(reduced);
        }
    }

    // --- starting point ---------------------------------------------------
    State s;
    s.x.resize(nb);
    s.z.resize(nb);
    s.y = RealVector::Zero(w.m);

    bool have_primal_init = problem.primal_init.size() == static_cast<std::size_t>(nb);
    if (have_primal_init) {
        for (int i = 0; i < nb && have_primal_init; ++i) {
            if (problem.primal_init[i].rows() != problem.block_dims[i]) have_primal_init = false;
        }
    }
    if (have_primal_init) {
        for (int i = 0; i < nb; ++i) s.x[i] = embed(problem.primal_init[i]);
        // accept only if strictly feasible
        for (int j = 0; j < w.m && have_primal_init; ++j) {
            double acc = 0.0;
            for (const RealTerm& t : w.cons[j].terms) acc += dot_sym(t.dense, s.x[t.block]);
            if (std::abs(acc - w.b(j)) > 1e-9 * std::max(1.0, std::abs(w.b(j))))
                have_primal_init = false;
        }
        for (int i = 0; i < nb && have_primal_init; ++i) {
            Eigen::LLT<RealMatrix> llt(s.x[i]);
            if (llt.info() != Eigen::Success) have_primal_init = false;
        }
    }
    if (!have_primal_init)
        for (int i = 0; i < nb; ++i) s.x[i] = RealMatrix::Identity(w.dims[i], w.dims[i]);

    bool have_dual_init =
        problem.dual_init.size() == problem.constraints.size() && problem.constraints_verified;
    if (have_dual_init) {
        for (int j = 0; j < w.m; ++j) s.y(j) = problem.dual_init[j];
        for (int i = 0; i < nb; ++i) s.z[i] = -w.c[i];
        for (int j = 0; j < w.m; ++j)
            for (const RealTerm& t : w.cons[j].terms)
                s.z[t.block].noalias() += s.y(j) * t.dense;
        for (int i = 0; i < nb && have_dual_init; ++i) {
            Eigen::LLT<RealMatrix> llt(s.z[i]);
            if (llt.info() != Eigen::Success) have_dual_init = false;
        }
    }
    if (!have_dual_init) {
        s.y.setZero();
        for (int i = 0; i < nb; ++i) {
            const double shift = 1.0 + w.c[i].cwiseAbs().rowwise().sum().maxCoeff();
            s.z[i] = shift * RealMatrix::Identity(w.dims[i], w.dims[i]);
        }
    }

    const double total_dim = [&] {
        double t = 0;
        for (long d : w.dims) t += static_cast<double>(d);
        return t;
    }();
    const double b_scale = 1.0 + (w.m > 0 ? w.b.cwiseAbs().maxCoeff() : 0.0);
    double c_scale = 1.0;
    for (int i = 0; i < nb; ++i) c_scale = std::max(c_scale, w.c[i].norm());

    SdpSolution sol;
    sol.dual_y.assign(w.m, 0.0);
    Scaling sc;
    Direction pred, corr;
    int tiny_steps = 0;

    if (options.iteration_log)
        (*options.iteration_log)
            << "iter,mu,primal,dual,rel_gap,res_primal,res_dual,alpha_primal,alpha_dual\n";

    for (int iter = 0; iter <= options.max_iterations; ++iter) {
        // residuals and convergence measures (reported in the complex scale)
        RealVector rp(w.m);
        for (int j = 0; j < w.m; ++j) {
            double acc = w.b(j);
            for (const RealTerm& t : w.cons[j].terms) acc -= dot_sym(t.dense, s.x[t.block]);
            rp(j) = acc;
        }
        std::vector<RealMatrix> rd(nb);
        for (int i = 0; i < nb; ++i) rd[i] = w.c[i] + s.z[i];
        for (int j = 0; j < w.m; ++j)
            for (const RealTerm& t : w.cons[j].terms)
                rd[t.block].noalias() -= s.y(j) * t.dense;

        double primal = 0.0, gap_inner = 0.0;
        for (int i = 0; i < nb; ++i) {
            primal += dot_sym(w.c[i], s.x[i]);
            gap_inner += dot_sym(s.x[i], s.z[i]);
        }
        primal *= 0.5;
        const double dual = 0.5 * w.b.dot(s.y);
        const double mu = gap_inner / total_dim;
        const double res_p = (w.m > 0 ? rp.cwiseAbs().maxCoeff() : 0.0) / b_scale;
        double res_d = 0.0;
        for (int i = 0; i < nb; ++i) res_d = std::max(res_d, rd[i].norm());
        res_d /= c_scale;
        const double rel_gap = std::abs(primal - dual) / std::max(1.0, std::abs(primal));

        SdpIterate it{iter, mu, primal, dual, res_p, res_d, 0.0, 0.0};

        const bool converged =
            rel_gap <= options.tol_gap && res_p <= options.tol_feas && res_d <= options.tol_feas;
        if (converged || iter == options.max_iterations || tiny_steps >= 3) {
            sol.trace.push_back(it);
            if (options.iteration_log) {
                char line[256];
                std::snprintf(line, sizeof(line), "%d,%.6e,%.12e,%.12e,%.3e,%.3e,%.3e,0,0\n",
                              iter, mu, primal, dual, rel_gap, res_p, res_d);
                (*options.iteration_log) << line;
            }
            sol.status = converged ? SdpStatus::Optimal : SdpStatus::MaxIterations;
            sol.iterations = iter;
            sol.primal_value = primal;
            sol.dual_value = dual;
            sol.gap = rel_gap;
            sol.primal_residual = res_p;
            sol.dual_residual = res_d;
            break;
        }

        build_scaling(w, s, sc);

        std::vector<RealMatrix> rd_scaled(nb);
        for (int i = 0; i < nb; ++i)
            rd_scaled[i] = sc.r[i].transpose() * rd[i] * sc.r[i];

        // predictor: drive straight toward complementarity
        std::vector<RealMatrix> rc(nb);
        for (int i = 0; i < nb; ++i) {
            rc[i] = RealMatrix::Zero(w.dims[i], w.dims[i]);
            rc[i].diagonal() = -sc.lambda[i];
        }
        solve_direction(w, sc, rp, rd_scaled, rc, pred);

        double ax = 1.0, az = 1.0;
        for (int i = 0; i < nb; ++i) {
            ax = std::min(ax, max_step(sc.lambda[i], pred.dx_scaled[i], 1.0));
            az = std::min(az, max_step(sc.lambda[i], pred.dz_scaled[i], 1.0));
        }
        double mu_aff = 0.0;
        for (int i = 0; i < nb; ++i) {
            RealMatrix xa = RealMatrix::Zero(w.dims[i], w.dims[i]);
            xa.diagonal() = sc.lambda[i];
            const RealMatrix za = xa + az * pred.dz_scaled[i];
            xa += ax * pred.dx_scaled[i];
            mu_aff += dot_sym(xa, za);
        }
        mu_aff = std::max(mu_aff / total_dim, 0.0);
        const double sigma =
            mu > 0.0 ? std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0) : 0.0;

        // corrector with the Mehrotra second-order term in scaled space
        for (int i = 0; i < nb; ++i) {
            const long n = w.dims[i];
            RealMatrix cross =
                0.5 * (pred.dx_scaled[i] * pred.dz_scaled[i] +
                       pred.dz_scaled[i] * pred.dx_scaled[i]);
            RealMatrix rhs(n, n);
            const RealVector& lam = sc.lambda[i];
            for (long a = 0; a < n; ++a)
                for (long c2 = 0; c2 < n; ++c2)
                    rhs(a, c2) = -2.0 * cross(a, c2) / (lam(a) + lam(c2));
            rhs.diagonal() += (sigma * mu) * lam.cwiseInverse() - lam;
            rc[i] = std::move(rhs);
        }
        solve_direction(w, sc, rp, rd_scaled, rc, corr);

        ax = options.step_fraction;
        az = options.step_fraction;
        for (int i = 0; i < nb; ++i) {
            ax = std::min(ax, options.step_fraction *
                                  max_step(sc.lambda[i], corr.dx_scaled[i],
                                           1.0 / options.step_fraction));
            az = std::min(az, options.step_fraction *
                                  max_step(sc.lambda[i], corr.dz_scaled[i],
                                           1.0 / options.step_fraction));
        }
        ax = std::min(ax, 1.0);
        az = std::min(az, 1.0);

        for (int i = 0; i < nb; ++i) {
            RealMatrix dx = sc.r[i] * corr.dx_scaled[i] * sc.r[i].transpose();
            RealMatrix dz = sc.rinv[i].transpose() * corr.dz_scaled[i] * sc.rinv[i];
            s.x[i].noalias() += ax * dx;
            s.z[i].noalias() += az * dz;
            s.x[i] = 0.5 * (s.x[i] + s.x[i].transpose()).eval();
            s.z[i] = 0.5 * (s.z[i] + s.z[i].transpose()).eval();
        }
        s.y += az * corr.dy;

        it.step_primal = ax;
        it.step_dual = az;
        sol.trace.push_back(it);
        if (options.iteration_log) {
            char line[256];
            std::snprintf(line, sizeof(line),
                          "%d,%.6e,%.12e,%.12e,%.3e,%.3e,%.3e,%.3e,%.3e\n", iter, mu, primal,
                          dual, rel_gap, res_p, res_d, ax, az);
            (*options.iteration_log) << line;
        }

        tiny_steps = (ax < 1e-8 && az < 1e-8) ? tiny_steps + 1 : 0;
    }

    sol.primal_blocks.resize(nb);
    sol.min_eigenvalue = std::numeric_limits<double>::infinity();
    for (int i = 0; i < nb; ++i) {
        sol.primal_blocks[i] = extract(s.x[i]);
        Eigen::SelfAdjointEigenSolver<Matrix> eig(sol.primal_blocks[i],
                                                  Eigen::EigenvaluesOnly);
        sol.min_eigenvalue = std::min(sol.min_eigenvalue, eig.eigenvalues().minCoeff());
    }
    for (int j = 0; j < w.m; ++j) sol.dual_y[j] = s.y(j);
    return sol;
}

} // namespace qsdc
