#pragma once

#include <phantomcat/algmod/module.hpp>

#include <cmath>
#include <cstdint>
#include <random>

// Independent reference computations used only by the tests.
namespace oracle {

using namespace phantomcat;

/// dim Hom(M, N) from the intertwiner system over every basis element, with no vertex blocks.
template <class F>
std::size_t hom_dim_full(const ModPtr<F>& M, const ModPtr<F>& N) {
    const F& f = M->field();
    std::size_t m = M->dim(), n = N->dim();
    if (m * n == 0) return 0;
    const auto& alg = M->algebra();
    Matrix<F> sys(f, 0, n * m);
    for (std::size_t b = 0; b < alg->dim(); ++b) {
        Matrix<F> E(f, n * m, n * m);
        const auto& AN = N->act(b);
        const auto& AM = M->act(b);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < m; ++j) {
                for (std::size_t k = 0; k < n; ++k) E(i * m + j, k * m + j) = f.add(E(i * m + j, k * m + j), AN(i, k));
                for (std::size_t k = 0; k < m; ++k) E(i * m + j, i * m + k) = f.sub(E(i * m + j, i * m + k), AM(k, j));
            }
        sys = vstack(sys, E);
    }
    return n * m - rank(sys);
}

/// Counts intertwining matrices over F_2 by enumeration (feasible for dim M * dim N <= 20).
inline std::size_t hom_count_f2(const ModPtr<PrimeField>& M, const ModPtr<PrimeField>& N) {
    std::size_t m = M->dim(), n = N->dim(), cells = m * n;
    std::size_t count = 0;
    PrimeField f(2);
    for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << cells); ++bits) {
        Matrix<PrimeField> X(f, n, m);
        for (std::size_t c = 0; c < cells; ++c) X(c / m, c % m) = (bits >> c) & 1;
        bool ok = true;
        for (std::size_t b = 0; b < M->algebra()->dim() && ok; ++b) ok = N->act(b) * X == X * M->act(b);
        count += ok;
    }
    return count;
}

/// Classical stable Hom dimension: intertwiners modulo the span of composites through indecomposable projectives.
template <class F>
std::size_t classical_stable_hom_dim(const ModPtr<F>& M, const ModPtr<F>& N) {
    const auto& alg = M->algebra();
    auto H = hom_space(M, N);
    std::size_t cells = M->dim() * N->dim();
    const F& f = M->field();
    auto flat = [&](const Matrix<F>& x) {
        Matrix<F> v(f, cells, 1);
        for (std::size_t i = 0; i < cells; ++i) v(i, 0) = x.data()[i];
        return v;
    };
    Matrix<F> through(f, cells, 0);
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        auto P = projective_indec(alg, v);
        auto a = hom_space(M, P);
        auto b = hom_space(P, N);
        for (auto& x : a)
            for (auto& y : b) through = hstack(through, flat(y.matrix * x.matrix));
    }
    std::size_t r = through.cols() ? rank(through) : 0;
    return H.size() - r;
}

/// Whether h : M -> N is a sum of composites M -> P_v -> N.
template <class F>
bool factors_through_projective(const ModuleMap<F>& h) {
    const auto& alg = h.source->algebra();
    const F& f = h.source->field();
    std::size_t cells = h.source->dim() * h.target->dim();
    if (cells == 0 || h.is_zero()) return true;
    auto flat = [&](const Matrix<F>& x) {
        Matrix<F> v(f, cells, 1);
        for (std::size_t i = 0; i < cells; ++i) v(i, 0) = x.data()[i];
        return v;
    };
    Matrix<F> through(f, cells, 0);
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        auto P = projective_indec(alg, v);
        for (auto& x : hom_space(h.source, P))
            for (auto& y : hom_space(P, h.target)) through = hstack(through, flat(y.matrix * x.matrix));
    }
    return through.cols() > 0 && in_span(through, flat(h.matrix));
}

/// Random module: quotient of a sum of projectives by a submodule generated by random vectors.
template <class F>
ModPtr<F> random_module(const AlgebraPtr<F>& alg, std::mt19937_64& rng, std::size_t max_summands = 2) {
    const F& f = alg->field();
    std::uniform_int_distribution<std::size_t> cnt(1, max_summands), vert(0, alg->vertex_count() - 1);
    std::vector<ModPtr<F>> parts;
    std::size_t k = cnt(rng);
    for (std::size_t i = 0; i < k; ++i) parts.push_back(projective_indec(alg, vert(rng)));
    auto P = parts.size() == 1 ? parts.front() : direct_sum(parts).module;
    std::uniform_int_distribution<long long> val(-2, 2);
    std::uniform_int_distribution<std::size_t> gens(0, 2);
    Matrix<F> V(f, P->dim(), gens(rng));
    for (std::size_t c = 0; c < V.cols(); ++c) {
        std::size_t v = vert(rng);
        const auto& E = P->vertex_basis(v);
        for (std::size_t j = 0; j < E.cols(); ++j) {
            V.set_block(0, c, V.col(c) + E.col(j).scaled(f.from_int(val(rng))));
        }
    }
    auto S = generated_submodule(P, V);
    return quotient_module(P, S.inclusion.matrix).module;
}

template <class F>
ModuleMap<F> random_map(const ModPtr<F>& M, const ModPtr<F>& N, std::mt19937_64& rng) {
    auto H = hom_space(M, N);
    const F& f = M->field();
    std::uniform_int_distribution<long long> val(-2, 2);
    Matrix<F> c(f, H.size(), 1);
    for (std::size_t k = 0; k < H.size(); ++k) c(k, 0) = f.from_int(val(rng));
    return combine(H, c, M, N);
}

} // namespace oracle

#include <phantomcat/algmod/conflation.hpp>

namespace oracle {

/// dim Ext^1(M, N) from a deliberately non-minimal projective presentation 0 -> K -> P -> M -> 0:
/// Ext^1 = coker(Hom(P, N) -> Hom(K, N)), so dim = hom(K,N) - hom(P,N) + hom(M,N).
template <class F>
std::size_t ext1_dim_presentation(const ModPtr<F>& M, const ModPtr<F>& N) {
    const auto& alg = M->algebra();
    auto pc = projective_cover(M);
    auto extra = projective_indec(alg, 0);
    auto P = direct_sum<F>({pc.P.module, extra});
    ModuleMap<F> p{P.module, M, hstack(pc.cover.matrix, Matrix<F>(M->field(), M->dim(), extra->dim()))};
    auto K = kernel_module(p);
    return hom_dim_full(K.module, N) + hom_dim_full(M, N) - hom_dim_full(P.module, N);
}

/// Short conflation ker f -> X -> im f from a map.
template <class F>
Conflation<F> conflation_of_map(const ModuleMap<F>& f) {
    auto K = kernel_module(f);
    auto I = image_module(f);
    return short_conflation(K.inclusion, I.corestriction);
}

} // namespace oracle

#include <phantomcat/frobenius/frobenius.hpp>

namespace oracle {

/// f acts invertibly on Ext^{n+1}(-, X) and Ext^{n+1}(X, -) for every X given.
template <class F>
bool sigma_brute(const Context<F>& ctx, const std::vector<ModPtr<F>>& inv, const ModuleMap<F>& f) {
    std::size_t d = ctx.n() + 1;
    auto invertible = [](const Matrix<F>& m) { return m.rows() == m.cols() && (m.rows() == 0 || rank(m) == m.rows()); };
    for (auto& X : inv) {
        if (!invertible(pull_back_matrix(ctx, f, X, d))) return false;
        if (!invertible(push_out_matrix(ctx, X, f, d))) return false;
    }
    return true;
}

} // namespace oracle
