#pragma once

#include "factor.hpp"

#include <functional>
#include <vector>

namespace phantomcat {

enum class Side { right, left };

/// Side::right: b : L -> R in Sigma, cls in Ext^n(L, Y); the coset of eta in Ext^n(R, Y)/P with eta b = cls mod P.
/// Side::left: b : Y -> Y' in Sigma, cls in Ext^n(X, Y'); the coset of eta in Ext^n(X, Y)/P with b eta = cls mod P.
/// Y (resp. X) is the fixed argument; cls may hold several columns.
template <class F>
Matrix<F> divide_by_sigma(const Context<F>& ctx, const ModuleMap<F>& b, Side side, const ModPtr<F>& fixed,
                          const Matrix<F>& cls) {
    PSubspacePtr<F> from, to;
    Matrix<F> act;
    if (side == Side::right) {
        from = p_subspace(ctx, b.target, fixed);
        to = p_subspace(ctx, b.source, fixed);
        act = pull_back_matrix(ctx, b, fixed, ctx.n());
    } else {
        from = p_subspace(ctx, fixed, b.source);
        to = p_subspace(ctx, fixed, b.target);
        act = push_out_matrix(ctx, fixed, b, ctx.n());
    }
    if (from->dim() == 0) return Matrix<F>(ctx.field(), 0, cls.cols());
    Matrix<F> sys = to->q.project * act * from->q.reps;
    auto x = solve(sys, to->q.project * cls);
    if (!x) throw phantom_error("division by " + b.source->display_name() + " -> " + b.target->display_name() +
                                " has no solution; the map is not quasi-invertible");
    return *x;
}

/// Matrix of beta |-> beta o gamma from Ext^n(N, Omega^n K)/P to Ext^n(M, Omega^n K)/P, for a fixed coset gamma
/// of Ext^n(M, Omega^n N)/P. The RUF of gamma may be supplied.
template <class F>
Matrix<F> right_composition_matrix(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, const ModPtr<F>& K,
                                   const Matrix<F>& gamma,
                                   const RightUnitFactorization<F>* given = nullptr) {
    std::size_t n = ctx.n();
    auto OK = ctx.syzygy(K, n);
    auto src = p_subspace(ctx, N, OK);
    auto dst = p_subspace(ctx, M, OK);
    auto PN = p_subspace(ctx, M, ctx.syzygy(N, n));
    Matrix<F> out(ctx.field(), dst->dim(), src->dim());
    if (src->dim() == 0 || dst->dim() == 0) return out;
    if (n == 0) {
        auto g = hom_of_class(ctx, M, N, PN->lift(gamma));
        for (std::size_t e = 0; e < src->dim(); ++e) {
            auto beta = hom_of_class(ctx, N, K, src->lift(Matrix<F>::unit_vector(ctx.field(), src->dim(), e)));
            out.set_block(0, e, dst->coset(class_of_hom(ctx, compose(beta, g))));
        }
        return out;
    }
    auto r = given ? *given : ruf(ctx, M, PN->N(), PN->lift(gamma));
    auto dN = unit_down(ctx, N, n);
    auto cp = coangled(dN.seq, r.delta);
    Matrix<F> beta_a = pull_back_matrix(ctx, cp.a1, OK, n) * src->q.reps;
    Matrix<F> eta = divide_by_sigma(ctx, cp.a2, Side::right, OK, beta_a);
    auto mid = p_subspace(ctx, r.f.target, OK);
    return dst->q.project * pull_back_matrix(ctx, r.f, OK, n) * mid->q.reps * eta;
}

/// beta o gamma for cosets beta of Ext^n(N, Omega^n K)/P and gamma of Ext^n(M, Omega^n N)/P.
template <class F>
Matrix<F> compose_mod_p(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, const ModPtr<F>& K,
                        const Matrix<F>& beta, const Matrix<F>& gamma,
                        const RightUnitFactorization<F>* given = nullptr) {
    return right_composition_matrix(ctx, M, N, K, gamma, given) * beta;
}

/// Coset of the pull-back of delta_N along f : M -> N in Ext^n(M, Omega^n N)/P.
template <class F>
Matrix<F> phi(const Context<F>& ctx, const ModuleMap<F>& f) {
    return p_subspace(ctx, f.source, ctx.syzygy(f.target, ctx.n()))->coset(unit_pull_back(ctx, f));
}

/// Multiplication table of Ext^n(M, Omega^n M)/P; product(i, j) = e_i o e_j.
template <class F>
struct ExtRing {
    ModPtr<F> M;
    std::size_t dim = 0;
    std::vector<Matrix<F>> table;
    Matrix<F> identity;

    const Matrix<F>& product(std::size_t i, std::size_t j) const { return table[i * dim + j]; }

    Matrix<F> multiply(const Matrix<F>& x, const Matrix<F>& y) const {
        Matrix<F> out(identity.field(), dim, 1);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) {
                auto c = identity.field().mul(x(i, 0), y(j, 0));
                if (!identity.field().is_zero(c)) out = out + table[i * dim + j].scaled(c);
            }
        return out;
    }
};

template <class F>
ExtRing<F> ext_ring(const Context<F>& ctx, const ModPtr<F>& M) {
    auto P = p_subspace(ctx, M, ctx.syzygy(M, ctx.n()));
    ExtRing<F> R{M, P->dim(), {}, P->coset(unit_class(ctx, M))};
    R.table.assign(R.dim * R.dim, Matrix<F>(ctx.field(), R.dim, 1));
    for (std::size_t j = 0; j < R.dim; ++j) {
        auto right = right_composition_matrix(ctx, M, M, M, Matrix<F>::unit_vector(ctx.field(), R.dim, j));
        for (std::size_t i = 0; i < R.dim; ++i) R.table[i * R.dim + j] = right.block(0, i, R.dim, 1);
    }
    return R;
}

} // namespace phantomcat
