#pragma once

#include "pspace.hpp"

namespace phantomcat {

/// gamma = delta f with delta a unit conflation starting at the left end of gamma.
template <class F>
struct RightUnitFactorization {
    Conflation<F> delta;
    ModuleMap<F> f;  ///< M -> right end of delta
};

/// gamma = g delta with delta a unit conflation ending at M.
template <class F>
struct LeftUnitFactorization {
    ModuleMap<F> g;  ///< left end of delta -> N
    Conflation<F> delta;
};

/// Class coordinates of an n-fold conflation in Ext^n(right end, left end).
template <class F>
Matrix<F> sequence_class(const Context<F>& ctx, const Conflation<F>& c) {
    auto E = ext_space(ctx, c.right(), c.left(), c.length());
    return E->coords(class_from_sequence(ctx, c));
}

/// Solves gamma = delta f over Hom(M, right end of delta); gamma in class coordinates of Ext^n(M, left end).
template <class F>
ModuleMap<F> comparison_map(const Context<F>& ctx, const Conflation<F>& delta, const ModPtr<F>& M,
                            const Matrix<F>& gamma) {
    std::size_t n = delta.length();
    const auto& R = delta.right();
    if (gamma.is_zero()) return ModuleMap<F>::zero(M, R);
    Matrix<F> cls = sequence_class(ctx, delta);
    auto H = hom_space(M, R);
    Matrix<F> cols(ctx.field(), gamma.rows(), 0);
    for (auto& h : H) cols = hstack(cols, pull_back_matrix(ctx, h, delta.left(), n) * cls);
    auto x = cols.cols() ? solve(cols, gamma) : std::nullopt;
    if (!x) throw phantom_error("no comparison map from " + M->display_name() + " factors the class");
    return combine(H, *x, M, R);
}

/// RUF through the injective coresolution: delta = N' -> I^0 -> ... -> I^{n-1} -> Omega^{-n} N'.
template <class F>
RightUnitFactorization<F> ruf(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& Np, const Matrix<F>& gamma) {
    if (ctx.n() == 0) throw phantom_error("unit factorizations need n >= 1");
    auto d = unit_up(ctx, Np, ctx.n());
    auto f = comparison_map(ctx, d.seq, M, gamma);
    return {std::move(d.seq), std::move(f)};
}

/// The RUF padded by Q = I(M) in the last two positions, with f' = [f; iota_M].
template <class F>
RightUnitFactorization<F> padded_ruf(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& Np,
                                     const Matrix<F>& gamma) {
    auto base = ruf(ctx, M, Np, gamma);
    std::size_t n = ctx.n();
    auto env = injective_envelope(M);
    auto objs = base.delta.objects;
    auto maps = base.delta.maps;
    auto mid = direct_sum<F>({objs[n], env.module});
    auto end = direct_sum<F>({objs[n + 1], env.module});
    maps[n - 1] = compose(mid.inclusions[0], maps[n - 1]);
    maps[n] = diagonal_map(maps[n], ModuleMap<F>::identity(env.module), mid.module, end.module);
    objs[n] = mid.module;
    objs[n + 1] = end.module;
    auto delta = check_conflation(std::move(objs), std::move(maps));
    auto f = stack_maps(base.f, env.inflation, end.module);
    return {std::move(delta), std::move(f)};
}

/// LUF through the minimal resolution: delta = Omega^n M -> P_{n-1} -> ... -> M, g induced by the cocycle.
template <class F>
LeftUnitFactorization<F> luf(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, const Matrix<F>& gamma) {
    std::size_t n = ctx.n();
    if (n == 0) throw phantom_error("unit factorizations need n >= 1");
    auto d = unit_down(ctx, M, n);
    auto E = ext_space(ctx, M, N, n);
    auto r = ctx.resolution(M, n);
    auto c = E->cocycle_map(E->cocycle(gamma));
    ModuleMap<F> g{r->syzygies[n], N, c.matrix * right_inverse(r->covers[n].matrix)};
    return {std::move(g), std::move(d.seq)};
}

/// delta'' with deflations a_i : right(delta'') -> right(delta_i) such that delta'' = delta_i a_i.
template <class F>
struct CoangledPair {
    Conflation<F> joint;
    ModuleMap<F> a1;
    ModuleMap<F> a2;
};

/// delta'' with inflations a_i : left(delta_i) -> left(delta'') such that delta'' = a_i delta_i.
template <class F>
struct AngledPair {
    Conflation<F> joint;
    ModuleMap<F> a1;
    ModuleMap<F> a2;
};

/// Glues two conflations with a common left end: direct sums of the middle terms, padded from the second step
/// on by the injective envelope of the running cokernel.
template <class F>
CoangledPair<F> coangled(const Conflation<F>& d1, const Conflation<F>& d2) {
    if (!d1.left()->same_as(*d2.left())) throw phantom_error("coangled: the conflations start at different objects");
    if (d1.length() != d2.length()) throw phantom_error("coangled: the conflations have different lengths");
    std::size_t k = d1.length();
    auto s1 = split_into_short(d1);
    auto s2 = split_into_short(d2);
    const auto& X = d1.left();
    ModPtr<F> L = X;
    ModuleMap<F> b1 = ModuleMap<F>::identity(X), b2 = b1;
    std::vector<ModPtr<F>> objs{X};
    std::vector<ModuleMap<F>> maps;
    std::optional<ModuleMap<F>> prev;
    for (std::size_t t = 0; t < k; ++t) {
        const auto& p1 = s1[t];
        const auto& p2 = s2[t];
        std::vector<ModPtr<F>> parts{p1.objects[1], p2.objects[1]};
        std::optional<InjectiveEnvelope<F>> env;
        if (t > 0) {
            env = injective_envelope(L);
            parts.push_back(env->module);
        }
        auto G = direct_sum(parts);
        Matrix<F> j = vstack(p1.maps[0].matrix * b1.matrix, p2.maps[0].matrix * b2.matrix);
        if (env) j = vstack(j, env->inflation.matrix);
        ModuleMap<F> jm{L, G.module, j};
        auto C = cokernel_module(jm);
        auto induced = [&](const Conflation<F>& p, const ModuleMap<F>& pr) {
            ModuleMap<F> h = compose(p.maps[1], pr);
            if (!(h.matrix * j).is_zero()) throw std::logic_error("coangled: projection does not vanish on the glue");
            return ModuleMap<F>{C.module, p.objects[2], h.matrix * C.reps};
        };
        b1 = induced(p1, G.projections[0]);
        b2 = induced(p2, G.projections[1]);
        maps.push_back(prev ? compose(jm, *prev) : jm);
        objs.push_back(G.module);
        prev = C.projection;
        L = C.module;
    }
    maps.push_back(*prev);
    objs.push_back(L);
    auto joint = check_conflation(std::move(objs), std::move(maps));
    return {std::move(joint), std::move(b1), std::move(b2)};
}

/// Vector space dual of a conflation, over the opposite algebra and in reverse order.
template <class F>
Conflation<F> dual_conflation(const Conflation<F>& c) {
    std::size_t last = c.objects.size() - 1;
    std::vector<ModPtr<F>> objs;
    for (std::size_t i = 0; i <= last; ++i) objs.push_back(dual_module(c.objects[last - i]));
    std::vector<ModuleMap<F>> maps;
    for (std::size_t i = 0; i < last; ++i) maps.push_back(dual_map(c.maps[last - 1 - i], objs[i + 1], objs[i]));
    return check_conflation(std::move(objs), std::move(maps));
}

/// Dual of the coangled construction for two conflations with a common right end.
template <class F>
AngledPair<F> angled(const Conflation<F>& d1, const Conflation<F>& d2) {
    if (!d1.right()->same_as(*d2.right())) throw phantom_error("angled: the conflations end at different objects");
    auto cp = coangled(dual_conflation(d1), dual_conflation(d2));
    auto joint = dual_conflation(cp.joint);
    joint.objects.back() = d1.right();
    joint.maps.back().target = d1.right();
    ModuleMap<F> a1{d1.left(), joint.left(), cp.a1.matrix.transpose()};
    ModuleMap<F> a2{d2.left(), joint.left(), cp.a2.matrix.transpose()};
    return {std::move(joint), std::move(a1), std::move(a2)};
}

} // namespace phantomcat
