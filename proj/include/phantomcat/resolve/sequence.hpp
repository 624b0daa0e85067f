#pragma once

#include "ext.hpp"

#include <vector>

namespace phantomcat {

/// Linear right inverse of a surjective matrix.
template <class F>
Matrix<F> right_inverse(const Matrix<F>& A) {
    auto x = solve(A, Matrix<F>::identity(A.field(), A.rows()));
    if (!x) throw std::invalid_argument("right_inverse: matrix " + A.shape() + " is not surjective");
    return *x;
}

/// Cocycle of the class of an n-fold conflation B -> ... -> A, by lifting P(A) through it.
template <class F>
Matrix<F> class_from_sequence(const Context<F>& ctx, const Conflation<F>& c) {
    std::size_t t = c.length();
    auto r = ctx.resolution(c.right(), t);
    // maps are stored left to right; X_k = objects[t - k], with maps[t - k] : X_k -> X_{k-1}
    ModuleMap<F> prev = r->covers[0];  // target of the lift at level 0 is A
    ModuleMap<F> f = lift_map(r->terms[0], prev, c.maps[t]);
    for (std::size_t k = 1; k < t; ++k) {
        ModuleMap<F> want = compose(f, r->differential(k));
        f = lift_map(r->terms[k], want, c.maps[t - k]);
    }
    ModuleMap<F> want = compose(f, r->differential(t));
    const auto& infl = c.maps[0];
    Matrix<F> onB = left_inverse(infl.matrix) * want.matrix;
    ModuleMap<F> cocycle{r->terms[t].module, c.left(), onB};
    if (infl.matrix * onB != want.matrix) throw std::logic_error("comparison lift left the inflation image");
    return map_to_cochain(r->terms[t], cocycle);
}

/// Push-out of the truncated resolution Omega^n M -> P_{n-1} -> ... -> M along the map induced by the cocycle.
template <class F>
Conflation<F> sequence_from_element(const Context<F>& ctx, const ExtSpace<F>& E, const Matrix<F>& cocycle) {
    std::size_t n = E.n;
    if (n == 0) throw resolve_error("sequence form needs degree at least one");
    const auto& r = *ctx.resolution(E.M, n);
    ModuleMap<F> c = E.cocycle_map(cocycle);
    ModuleMap<F> cbar{r.syzygies[n], E.N, c.matrix * right_inverse(r.covers[n].matrix)};
    const auto& iota = r.inclusions[n - 1];  // Omega^n M -> P_{n-1}
    auto po = pushout(iota, cbar);
    ModuleMap<F> next = n >= 2 ? r.differential(n - 1) : r.covers[0];
    Matrix<F> both = hstack(next.matrix, Matrix<F>(ctx.field(), next.target->dim(), E.N->dim()));
    ModuleMap<F> out{po.module, next.target, both * po.reps};
    std::vector<ModPtr<F>> objs{E.N, po.module};
    std::vector<ModuleMap<F>> maps{po.from_y, out};
    for (std::size_t k = n - 1; k-- > 0;) {
        objs.push_back(r.terms[k].module);
        maps.push_back(k >= 1 ? r.differential(k) : r.covers[0]);
    }
    objs.push_back(E.M);
    return check_conflation(std::move(objs), std::move(maps));
}

/// Sequence level pull-back along h : M' -> A.
template <class F>
Conflation<F> pull_back_sequence(const Conflation<F>& c, const ModuleMap<F>& h) {
    std::size_t t = c.length();
    auto pb = pullback(c.maps[t], h);
    // X_1 -> W induced by [X_1 -> X_0 ; 0]
    const auto& into = c.maps[t - 1];
    Matrix<F> st = vstack(into.matrix, Matrix<F>(h.matrix.field(), h.source->dim(), into.source->dim()));
    ModuleMap<F> med{into.source, pb.module, left_inverse(pb.inclusion.matrix) * st};
    std::vector<ModPtr<F>> objs(c.objects.begin(), c.objects.end() - 2);
    objs.push_back(pb.module);
    objs.push_back(h.source);
    std::vector<ModuleMap<F>> maps(c.maps.begin(), c.maps.end() - 2);
    maps.push_back(med);
    maps.push_back(pb.to_y);
    return check_conflation(std::move(objs), std::move(maps));
}

/// Sequence level push-out along l : B -> B'.
template <class F>
Conflation<F> push_out_sequence(const ModuleMap<F>& l, const Conflation<F>& c) {
    auto po = pushout(c.maps[0], l);
    const auto& out = c.maps[1];
    Matrix<F> both = hstack(out.matrix, Matrix<F>(l.matrix.field(), out.target->dim(), l.target->dim()));
    ModuleMap<F> med{po.module, out.target, both * po.reps};
    std::vector<ModPtr<F>> objs{l.target, po.module};
    objs.insert(objs.end(), c.objects.begin() + 2, c.objects.end());
    std::vector<ModuleMap<F>> maps{po.from_y, med};
    maps.insert(maps.end(), c.maps.begin() + 2, c.maps.end());
    return check_conflation(std::move(objs), std::move(maps));
}

template <class F>
Conflation<F> direct_sum_sequence(const Conflation<F>& a, const Conflation<F>& b) {
    if (a.length() != b.length()) throw conflation_error("direct sum of conflations of different lengths");
    std::vector<ModPtr<F>> objs;
    for (std::size_t i = 0; i < a.objects.size(); ++i) objs.push_back(direct_sum<F>({a.objects[i], b.objects[i]}).module);
    std::vector<ModuleMap<F>> maps;
    for (std::size_t i = 0; i < a.maps.size(); ++i)
        maps.push_back(diagonal_map(a.maps[i], b.maps[i], objs[i], objs[i + 1]));
    return check_conflation(std::move(objs), std::move(maps));
}

/// Baer sum: pull back the direct sum along the diagonal and push out along the codiagonal.
template <class F>
Conflation<F> baer_sum_sequence(const Conflation<F>& a, const Conflation<F>& b) {
    if (!a.left()->same_as(*b.left()) || !a.right()->same_as(*b.right()))
        throw conflation_error("Baer sum needs matching ends");
    auto s = direct_sum_sequence(a, b);
    const F& f = a.left()->field();
    const auto& A = a.right();
    const auto& B = a.left();
    ModuleMap<F> diag{A, s.right(),
                      vstack(Matrix<F>::identity(f, A->dim()), Matrix<F>::identity(f, A->dim()))};
    ModuleMap<F> codiag{s.left(), B, hstack(Matrix<F>::identity(f, B->dim()), Matrix<F>::identity(f, B->dim()))};
    return push_out_sequence(codiag, pull_back_sequence(s, diag));
}

} // namespace phantomcat
