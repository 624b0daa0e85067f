#pragma once

#include "frobenius.hpp"

#include <string>
#include <vector>

namespace phantomcat {

/// P_v / rad^length P_v.
template <class F>
ModPtr<F> radical_quotient(const AlgebraPtr<F>& alg, std::size_t v, std::size_t length) {
    auto P = projective_indec(alg, v);
    ModPtr<F> R = P;
    Matrix<F> incl = Matrix<F>::identity(alg->field(), P->dim());
    for (std::size_t k = 0; k < length && R->dim() > 0; ++k) {
        auto r = radical_module(R);
        incl = incl * r.inclusion.matrix;
        R = r.module;
    }
    return quotient_module(P, incl, "P" + alg->vertex_name(v) + "/rad^" + std::to_string(length))
        .module;
}

namespace detail {

template <class F>
void add_if_new(std::vector<ModPtr<F>>& out, const ModPtr<F>& M) {
    if (M->dim() == 0) return;
    for (auto& m : out)
        if (m->dim() == M->dim() && is_isomorphic(m, M)) return;
    out.push_back(M);
}

} // namespace detail

/// Simples, radical quotients of the indecomposable projectives (the projectives among them), indecomposable
/// injectives, and one syzygy and cosyzygy of each, up to isomorphism.
template <class F>
std::vector<ModPtr<F>> inventory(const Context<F>& ctx) {
    const auto& alg = ctx.algebra();
    std::vector<ModPtr<F>> base;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) detail::add_if_new(base, simple_module(alg, v));
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        auto P = projective_indec(alg, v);
        for (std::size_t l = 2; l < P->dim(); ++l) {
            auto Q = radical_quotient(alg, v, l);
            if (Q->dim() < P->dim()) detail::add_if_new(base, Q);
        }
        detail::add_if_new(base, P);
    }
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) detail::add_if_new(base, injective_indec(alg, v));
    std::vector<ModPtr<F>> out = base;
    for (auto& M : base) {
        detail::add_if_new(out, ctx.syzygy(M, 1)->renamed("Omega(" + M->display_name() + ")"));
        detail::add_if_new(out, ctx.cosyzygy(M, 1)->renamed("Omega^-1(" + M->display_name() + ")"));
    }
    return out;
}

} // namespace phantomcat
