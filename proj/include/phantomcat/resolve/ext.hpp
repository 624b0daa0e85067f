#pragma once

#include "resolution.hpp"

#include <memory>
#include <vector>

namespace phantomcat {

/// Coordinates of Hom(P, N) for a sum of projectives P: the images of the generators,
/// the k-th written in the basis of e_{v_k} N.
template <class F>
std::vector<std::size_t> cochain_offsets(const ProjSum<F>& P, const ModPtr<F>& N) {
    std::vector<std::size_t> off{0};
    for (auto v : P.vertices) off.push_back(off.back() + N->vertex_dim(v));
    return off;
}

template <class F>
std::size_t cochain_dim(const ProjSum<F>& P, const ModPtr<F>& N) {
    return cochain_offsets(P, N).back();
}

template <class F>
ModuleMap<F> cochain_to_map(const ProjSum<F>& P, const ModPtr<F>& N, const Matrix<F>& c) {
    auto off = cochain_offsets(P, N);
    std::vector<Matrix<F>> images;
    for (std::size_t k = 0; k < P.count(); ++k) {
        const auto& E = N->vertex_basis(P.vertices[k]);
        images.push_back(E * c.block(off[k], 0, E.cols(), 1));
    }
    return map_from_generators(P, N, images);
}

template <class F>
Matrix<F> map_to_cochain(const ProjSum<F>& P, const ModuleMap<F>& phi) {
    const auto& N = phi.target;
    auto off = cochain_offsets(P, N);
    Matrix<F> c(N->field(), off.back(), 1);
    for (std::size_t k = 0; k < P.count(); ++k)
        c.set_block(off[k], 0, N->vertex_coords(P.vertices[k]) * (phi.matrix * P.generator(k)));
    return c;
}

/// Matrix of Hom(P, N) -> Hom(Q, N), c |-> c o h, for h : Q -> P between sums of projectives.
template <class F>
Matrix<F> precompose_matrix(const ProjSum<F>& Q, const ProjSum<F>& P, const Matrix<F>& h, const ModPtr<F>& N) {
    const auto& alg = N->algebra();
    auto offQ = cochain_offsets(Q, N), offP = cochain_offsets(P, N);
    Matrix<F> out(N->field(), offQ.back(), offP.back());
    for (std::size_t l = 0; l < Q.count(); ++l) {
        Matrix<F> x = h * Q.generator(l);
        const auto& CN = N->vertex_coords(Q.vertices[l]);
        for (std::size_t k = 0; k < P.count(); ++k) {
            std::size_t v = P.vertices[k];
            const auto& B = alg->vertex_basis(v);
            Matrix<F> a = B * x.block(P.offsets[k], 0, B.cols(), 1);
            if (a.is_zero() || offP[k + 1] == offP[k] || offQ[l + 1] == offQ[l]) continue;
            out.set_block(offQ[l], offP[k], CN * N->act_of(a) * N->vertex_basis(v));
        }
    }
    return out;
}

/// Matrix of Hom(P, N) -> Hom(P, N'), c |-> l o c.
template <class F>
Matrix<F> postcompose_matrix(const ProjSum<F>& P, const ModuleMap<F>& l) {
    auto offN = cochain_offsets(P, l.source), offT = cochain_offsets(P, l.target);
    Matrix<F> out(l.matrix.field(), offT.back(), offN.back());
    for (std::size_t k = 0; k < P.count(); ++k) {
        std::size_t v = P.vertices[k];
        if (offT[k + 1] == offT[k] || offN[k + 1] == offN[k]) continue;
        out.set_block(offT[k], offN[k], l.target->vertex_coords(v) * l.matrix * l.source->vertex_basis(v));
    }
    return out;
}

/// Ext^n(M, N) as cocycles modulo coboundaries on the cached minimal resolution of M.
/// For n = 0 this is Hom(M, N), realized as cocycles on P_0.
template <class F>
struct ExtSpace {
    ModPtr<F> M;
    ModPtr<F> N;
    std::size_t n = 0;
    std::shared_ptr<const Resolution<F>> res;
    Matrix<F> Z;        ///< cocycle basis
    Matrix<F> Zinv;     ///< left inverse of Z
    Matrix<F> B;        ///< coboundaries, in Z coordinates
    Quotient<F> q;      ///< Z-coordinates modulo B

    std::size_t dim() const { return q.dim(); }
    std::size_t cochain_dim() const { return Z.rows(); }
    const ProjSum<F>& term() const { return res->terms.at(n); }

    Matrix<F> cocycle(const Matrix<F>& coords) const { return Z * (q.reps * coords); }
    Matrix<F> basis_cocycles() const { return Z * q.reps; }
    Matrix<F> basis_cocycle(std::size_t i) const { return cocycle(Matrix<F>::unit_vector(N->field(), dim(), i)); }

    bool is_cocycle(const Matrix<F>& c) const { return in_span(Z, c); }

    /// Class coordinates of a cocycle (columns may hold several cocycles).
    Matrix<F> coords(const Matrix<F>& c) const {
        if (!is_cocycle(c)) throw resolve_error("cochain is not a cocycle in Ext^" + std::to_string(n));
        return q.project * (Zinv * c);
    }
    bool is_coboundary(const Matrix<F>& c) const { return coords(c).is_zero(); }

    ModuleMap<F> cocycle_map(const Matrix<F>& c) const { return cochain_to_map(term(), N, c); }
    Matrix<F> cochain_of(const ModuleMap<F>& phi) const { return map_to_cochain(term(), phi); }

    /// Span of all coboundaries as cochains.
    Matrix<F> coboundaries() const { return Z * B; }
};

template <class F>
ExtSpace<F> compute_ext_space(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, std::size_t n) {
    require_same_algebra(*M, *N);
    const F& f = ctx.field();
    ExtSpace<F> E;
    E.M = M;
    E.N = N;
    E.n = n;
    E.res = ctx.resolution(M, n + 1);
    const auto& r = *E.res;
    Matrix<F> dn1 = r.differential(n + 1).matrix;
    Matrix<F> up = precompose_matrix(r.terms[n + 1], r.terms[n], dn1, N);
    std::size_t cn = cochain_dim(r.terms[n], N);
    E.Z = up.rows() ? kernel_basis(up) : Matrix<F>::identity(f, cn);
    E.Zinv = E.Z.cols() ? left_inverse(E.Z) : Matrix<F>(f, 0, cn);
    if (n >= 1 && E.Z.cols()) {
        Matrix<F> down = precompose_matrix(r.terms[n], r.terms[n - 1], r.differential(n).matrix, N);
        Matrix<F> im = image_basis(down);
        E.B = E.Zinv * im;
        if (E.Z * E.B != im) throw std::logic_error("coboundary outside the cocycles");
    } else {
        E.B = Matrix<F>(f, E.Z.cols(), 0);
    }
    E.q = quotient_reps(f, E.Z.cols(), E.B);
    return E;
}

template <class F>
using ExtPtr = std::shared_ptr<const ExtSpace<F>>;

template <class F>
ExtPtr<F> ext_space(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, std::size_t n) {
    return ctx.template memo<ExtSpace<F>>("ext", {M, N}, n, [&] { return compute_ext_space(ctx, M, N, n); });
}

/// Chain map P(M') -> P(M) over h : M' -> M, components 0..length.
template <class F>
struct ChainLift {
    std::vector<ModuleMap<F>> components;
    std::vector<ModuleMap<F>> on_syzygies;  ///< Omega^k M' -> Omega^k M
};

template <class F>
ChainLift<F> chain_lift(const Context<F>& ctx, const ModuleMap<F>& h, std::size_t length) {
    auto rs = ctx.resolution(h.source, length);
    auto rt = ctx.resolution(h.target, length);
    ChainLift<F> out;
    ModuleMap<F> omega = h;
    for (std::size_t k = 0; k <= length; ++k) {
        out.on_syzygies.push_back(omega);
        ModuleMap<F> top = compose(omega, rs->covers[k]);
        ModuleMap<F> hk = rs->terms[k].count() ? lift_map(rs->terms[k], top, rt->covers[k])
                                               : ModuleMap<F>::zero(rs->terms[k].module, rt->terms[k].module);
        hk.target = rt->terms[k].module;
        out.components.push_back(hk);
        const auto& inc_t = rt->inclusions[k];
        const auto& inc_s = rs->inclusions[k];
        Matrix<F> img = hk.matrix * inc_s.matrix;
        Matrix<F> restricted = inc_t.matrix.cols() ? Matrix<F>(left_inverse(inc_t.matrix) * img)
                                                   : Matrix<F>(h.matrix.field(), 0, inc_s.matrix.cols());
        omega = {inc_s.source, inc_t.source, restricted};
    }
    return out;
}

/// Matrix of the pull-back Ext^n(M, N) -> Ext^n(M', N) along h : M' -> M, in class coordinates.
template <class F>
Matrix<F> pull_back_matrix(const Context<F>& ctx, const ModuleMap<F>& h, const ModPtr<F>& N, std::size_t n) {
    auto src = ext_space(ctx, h.target, N, n);
    auto dst = ext_space(ctx, h.source, N, n);
    if (src->dim() == 0 || dst->dim() == 0) return Matrix<F>(ctx.field(), dst->dim(), src->dim());
    auto lift = chain_lift(ctx, h, n);
    Matrix<F> pre = precompose_matrix(dst->term(), src->term(), lift.components[n].matrix, N);
    return dst->coords(pre * src->basis_cocycles());
}

/// Cocycle level pull-back of a cocycle of Ext^n(h.target, N).
template <class F>
Matrix<F> pull_back_cocycle(const Context<F>& ctx, const ModuleMap<F>& h, const ModPtr<F>& N, std::size_t n,
                            const Matrix<F>& cocycle) {
    auto src = ext_space(ctx, h.target, N, n);
    auto dst = ext_space(ctx, h.source, N, n);
    auto lift = chain_lift(ctx, h, n);
    return precompose_matrix(dst->term(), src->term(), lift.components[n].matrix, N) * cocycle;
}

/// Matrix of the push-out Ext^n(M, N) -> Ext^n(M, N') along l : N -> N'.
template <class F>
Matrix<F> push_out_matrix(const Context<F>& ctx, const ModPtr<F>& M, const ModuleMap<F>& l, std::size_t n) {
    auto src = ext_space(ctx, M, l.source, n);
    auto dst = ext_space(ctx, M, l.target, n);
    if (src->dim() == 0 || dst->dim() == 0) return Matrix<F>(ctx.field(), dst->dim(), src->dim());
    return dst->coords(postcompose_matrix(src->term(), l) * src->basis_cocycles());
}

template <class F>
Matrix<F> push_out_cocycle(const Context<F>& ctx, const ModPtr<F>& M, const ModuleMap<F>& l, std::size_t n,
                           const Matrix<F>& cocycle) {
    auto src = ext_space(ctx, M, l.source, n);
    return postcompose_matrix(src->term(), l) * cocycle;
}

/// Covariant connecting map Ext^n(X, C) -> Ext^{n+1}(X, A) of a conflation A -> B -> C.
template <class F>
Matrix<F> connecting_covariant(const Context<F>& ctx, const Conflation<F>& c, const ModPtr<F>& X, std::size_t n) {
    if (c.length() != 1) throw resolve_error("connecting map needs a conflation of length one");
    const auto& i = c.maps[0];
    const auto& p = c.maps[1];
    auto src = ext_space(ctx, X, c.right(), n);
    auto dst = ext_space(ctx, X, c.left(), n + 1);
    Matrix<F> out(ctx.field(), dst->dim(), src->dim());
    if (src->dim() == 0 || dst->dim() == 0) return out;
    Matrix<F> L = left_inverse(i.matrix);
    const auto& r = *dst->res;
    Matrix<F> d = r.differential(n + 1).matrix;
    for (std::size_t e = 0; e < src->dim(); ++e) {
        auto gamma = src->cocycle_map(src->basis_cocycle(e));
        auto lifted = lift_map(r.terms[n], gamma, p);
        ModuleMap<F> onA{r.terms[n + 1].module, c.left(), L * (lifted.matrix * d)};
        out.set_block(0, e, dst->coords(dst->cochain_of(onA)));
    }
    return out;
}

/// The map Omega C -> A induced by lifting the cover of C through B -> C.
template <class F>
ModuleMap<F> syzygy_comparison(const Context<F>& ctx, const Conflation<F>& c) {
    const auto& i = c.maps[0];
    const auto& p = c.maps[1];
    auto r = ctx.resolution(c.right(), 1);
    auto lam = r->terms[0].count() ? lift_map(r->terms[0], r->covers[0], p)
                                   : ModuleMap<F>::zero(r->terms[0].module, p.source);
    Matrix<F> onB = lam.matrix * r->inclusions[0].matrix;
    return {r->syzygies[1], c.left(), left_inverse(i.matrix) * onB};
}

/// Contravariant connecting map Ext^n(A, Y) -> Ext^{n+1}(C, Y) of a conflation A -> B -> C.
template <class F>
Matrix<F> connecting_contravariant(const Context<F>& ctx, const Conflation<F>& c, const ModPtr<F>& Y,
                                   std::size_t n) {
    if (c.length() != 1) throw resolve_error("connecting map needs a conflation of length one");
    auto src = ext_space(ctx, c.left(), Y, n);
    auto dst = ext_space(ctx, c.right(), Y, n + 1);
    Matrix<F> out(ctx.field(), dst->dim(), src->dim());
    if (src->dim() == 0 || dst->dim() == 0) return out;
    auto kappa = syzygy_comparison(ctx, c);
    auto shifted = ext_space(ctx, kappa.source, Y, n);
    if (!shifted->term().module->same_as(*dst->term().module))
        throw std::logic_error("resolution of the syzygy is not the shifted resolution");
    auto lift = chain_lift(ctx, kappa, n);
    Matrix<F> pre = precompose_matrix(shifted->term(), src->term(), lift.components[n].matrix, Y);
    return dst->coords(pre * src->basis_cocycles());
}

/// The conflation Omega N -> P_0(N) -> N from the cached resolution.
template <class F>
Conflation<F> syzygy_conflation(const Context<F>& ctx, const ModPtr<F>& N) {
    auto r = ctx.resolution(N, 0);
    return short_conflation(r->inclusions[0], r->covers[0]);
}

} // namespace phantomcat
