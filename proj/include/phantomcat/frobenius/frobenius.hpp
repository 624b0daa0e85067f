#pragma once

#include "../resolve/ext.hpp"
#include "../resolve/sequence.hpp"

#include <memory>
#include <optional>
#include <string>

namespace phantomcat {

class frobenius_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

template <class F>
std::optional<std::size_t> proj_dim(const Context<F>& ctx, const ModPtr<F>& M, std::size_t bound) {
    return ctx.resolution(M, std::min(bound, ctx.bound()))->projective_dimension();
}

template <class F>
std::optional<std::size_t> inj_dim(const Context<F>& ctx, const ModPtr<F>& M, std::size_t bound) {
    return ctx.coresolution(M, std::min(bound, ctx.bound()))->injective_dimension();
}

namespace detail {

template <class F>
std::optional<std::size_t> regular_inj_dim(const AlgebraPtr<F>& alg, std::size_t bound) {
    Context<F> probe(alg, 0, bound);
    std::size_t best = 0;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        auto d = inj_dim(probe, projective_indec(alg, v), bound);
        if (!d) return std::nullopt;
        best = std::max(best, *d);
    }
    return best;
}

} // namespace detail

/// Injective dimension of the regular module on both sides, if both are at most bound.
template <class F>
std::optional<std::size_t> gorenstein_parameter(const AlgebraPtr<F>& alg, std::size_t bound = 8) {
    auto left = detail::regular_inj_dim(alg, bound);
    if (!left) return std::nullopt;
    auto right = detail::regular_inj_dim(alg->opposite(), bound);
    if (!right) return std::nullopt;
    return std::max(*left, *right);
}

/// Context for mod A as an n-Frobenius category. n defaults to the Gorenstein parameter and may be raised.
template <class F>
std::shared_ptr<Context<F>> detect_context(const AlgebraPtr<F>& alg, std::optional<std::size_t> n = std::nullopt,
                                           std::optional<std::size_t> bound = std::nullopt,
                                           std::size_t search_bound = 8) {
    auto d = gorenstein_parameter(alg, search_bound);
    if (!d) throw frobenius_error("algebra is not Iwanaga-Gorenstein within bound " + std::to_string(search_bound));
    std::size_t use = n.value_or(*d);
    if (use < *d)
        throw frobenius_error("requested n = " + std::to_string(use) + " is below the Gorenstein parameter " +
                              std::to_string(*d));
    return std::make_shared<Context<F>>(alg, use, bound);
}

template <class F>
bool is_n_projective(const Context<F>& ctx, const ModPtr<F>& M) {
    return ctx.resolution(M, ctx.n())->syzygies[ctx.n() + 1]->dim() == 0;
}

template <class F>
bool is_n_injective(const Context<F>& ctx, const ModPtr<F>& M) {
    return ctx.coresolution(M, ctx.n())->cosyzygies[ctx.n() + 1]->dim() == 0;
}

enum class UnitDirection { down, up };

/// Conflation of length k whose middle terms are n-projective.
template <class F>
struct UnitConflation {
    Conflation<F> seq;
    UnitDirection direction;
};

/// Omega^k N -> P_{k-1} -> ... -> P_0 -> N from the cached minimal resolution.
template <class F>
UnitConflation<F> unit_down(const Context<F>& ctx, const ModPtr<F>& N, std::size_t k) {
    if (k == 0) throw frobenius_error("unit conflations have length at least one");
    auto r = ctx.resolution(N, k);
    std::vector<ModPtr<F>> objs{r->syzygies[k]};
    std::vector<ModuleMap<F>> maps{r->inclusions[k - 1]};
    for (std::size_t j = k; j-- > 0;) {
        objs.push_back(r->terms[j].module);
        maps.push_back(j >= 1 ? r->differential(j) : r->covers[0]);
    }
    objs.push_back(N);
    auto seq = check_conflation(std::move(objs), std::move(maps));
    for (std::size_t i = 1; i + 1 < seq.objects.size(); ++i)
        if (!is_n_projective(ctx, seq.objects[i])) throw frobenius_error("unit_down: middle term is not n-projective");
    return {std::move(seq), UnitDirection::down};
}

/// N -> I^0 -> ... -> I^{k-1} -> Omega^{-k} N from the minimal injective coresolution.
template <class F>
UnitConflation<F> unit_up(const Context<F>& ctx, const ModPtr<F>& N, std::size_t k) {
    if (k == 0) throw frobenius_error("unit conflations have length at least one");
    auto c = ctx.coresolution(N, k);
    std::vector<ModPtr<F>> objs{N};
    std::vector<ModuleMap<F>> maps{c->terms[0].inflation};
    for (std::size_t j = 0; j < k; ++j) {
        objs.push_back(c->terms[j].module);
        maps.push_back(j + 1 < k ? c->differential(j) : c->projections[j]);
    }
    objs.push_back(c->cosyzygies[k]);
    auto seq = check_conflation(std::move(objs), std::move(maps));
    for (std::size_t i = 1; i + 1 < seq.objects.size(); ++i)
        if (!is_n_projective(ctx, seq.objects[i]))
            throw frobenius_error("unit_up: injective middle term is not n-projective; the context is not Gorenstein");
    return {std::move(seq), UnitDirection::up};
}

/// Left add(A)-approximation X -> Q, Q a sum of indecomposable projectives, one copy per hom basis map.
template <class F>
ModuleMap<F> projective_approximation(const ModPtr<F>& X) {
    const auto& alg = X->algebra();
    std::vector<ModPtr<F>> parts;
    Matrix<F> stack(X->field(), 0, X->dim());
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        auto P = projective_indec(alg, v);
        for (auto& h : hom_space(X, P)) {
            parts.push_back(P);
            stack = vstack(stack, h.matrix);
        }
    }
    if (parts.empty()) return ModuleMap<F>::zero(X, zero_module(alg));
    auto Q = direct_sum(parts).module;
    return {X, Q, stack};
}

/// Ext^i(M, P_j) = 0 for 1 <= i <= n, then max(n, 1) steps of a projective coresolution with exactness checks.
template <class F>
bool is_gproj(const Context<F>& ctx, const ModPtr<F>& M) {
    const auto& alg = ctx.algebra();
    for (std::size_t i = 1; i <= ctx.n(); ++i)
        for (std::size_t v = 0; v < alg->vertex_count(); ++v)
            if (ext_space(ctx, M, projective_indec(alg, v), i)->dim() != 0) return false;
    ModPtr<F> X = M;
    for (std::size_t step = 0; step < std::max<std::size_t>(ctx.n(), 1); ++step) {
        if (X->dim() == 0) break;
        auto a = projective_approximation(X);
        if (!a.is_injective()) return false;
        X = cokernel_module(a).module;
    }
    return true;
}

template <class F>
bool has_finite_global_dimension(const Context<F>& ctx) {
    for (std::size_t v = 0; v < ctx.algebra()->vertex_count(); ++v)
        if (!proj_dim(ctx, simple_module(ctx.algebra(), v), ctx.bound())) return false;
    return true;
}

} // namespace phantomcat
