#pragma once

#include "../frobenius/frobenius.hpp"

#include <memory>
#include <string>

namespace phantomcat {

class phantom_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// The P-conflation classes inside Ext^n(M, N) and the quotient Ext^n(M, N)/P.
template <class F>
struct PSubspace {
    ExtPtr<F> ext;
    Matrix<F> basis;  ///< class coordinates of a basis of P
    Quotient<F> q;    ///< class coordinates modulo P

    std::size_t dim() const { return q.dim(); }
    std::size_t p_dim() const { return basis.cols(); }
    const ModPtr<F>& M() const { return ext->M; }
    const ModPtr<F>& N() const { return ext->N; }

    Matrix<F> coset(const Matrix<F>& class_coords) const { return q.project * class_coords; }
    Matrix<F> lift(const Matrix<F>& coset_coords) const { return q.reps * coset_coords; }
    bool contains(const Matrix<F>& class_coords) const { return coset(class_coords).is_zero(); }
};

template <class F>
using PSubspacePtr = std::shared_ptr<const PSubspace<F>>;

namespace detail {

template <class F>
Matrix<F> kernel_or_all(const Matrix<F>& A) {
    if (A.rows() == 0) return Matrix<F>::identity(A.field(), A.cols());
    if (A.cols() == 0) return Matrix<F>(A.field(), 0, 0);
    return kernel_basis(A);
}

} // namespace detail

/// Kernel of the connecting map Ext^n(M, N) -> Ext^{n+1}(M, Omega N) along Omega N -> P_0(N) -> N.
template <class F>
PSubspacePtr<F> p_subspace(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N) {
    return ctx.template memo<PSubspace<F>>("pspace", {M, N}, ctx.n(), [&] {
        PSubspace<F> P;
        P.ext = ext_space(ctx, M, N, ctx.n());
        Matrix<F> conn = connecting_covariant(ctx, syzygy_conflation(ctx, N), M, ctx.n());
        P.basis = detail::kernel_or_all(conn);
        P.q = quotient_reps(ctx.field(), P.ext->dim(), P.basis);
        return P;
    });
}

template <class F>
bool p_member(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, const Matrix<F>& class_coords) {
    return p_subspace(ctx, M, N)->contains(class_coords);
}

/// Class of the canonical unit conflation delta_N in Ext^n(N, Omega^n N); for n = 0 the identity of N.
template <class F>
Matrix<F> unit_class(const Context<F>& ctx, const ModPtr<F>& N) {
    std::size_t n = ctx.n();
    auto r = ctx.resolution(N, n);
    auto E = ext_space(ctx, N, r->syzygies[n], n);
    return E->coords(E->cochain_of(r->covers[n]));
}

/// Pull-back of delta_N along f : M -> N, in class coordinates of Ext^n(M, Omega^n N).
template <class F>
Matrix<F> unit_pull_back(const Context<F>& ctx, const ModuleMap<F>& f) {
    auto Y = ctx.syzygy(f.target, ctx.n());
    return pull_back_matrix(ctx, f, Y, ctx.n()) * unit_class(ctx, f.target);
}

/// Cokernel of [f; u] : M -> N (+) I(M) is n-projective, u the injective envelope.
template <class F>
bool is_quasi_invertible(const Context<F>& ctx, const ModuleMap<F>& f) {
    auto env = injective_envelope(f.source);
    auto S = direct_sum<F>({f.target, env.module});
    auto h = stack_maps(f, env.inflation, S.module);
    return is_n_projective(ctx, cokernel_module(h).module);
}

/// (Ext^n/P) f = 0, tested on the canonical unit conflation of the target.
template <class F>
bool is_phantom(const Context<F>& ctx, const ModuleMap<F>& f) {
    return p_member(ctx, f.source, ctx.syzygy(f.target, ctx.n()), unit_pull_back(ctx, f));
}

template <class F>
ModuleMap<F> hom_of_class(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, const Matrix<F>& coords) {
    auto E = ext_space(ctx, M, N, 0);
    auto r = ctx.resolution(M, 0);
    auto onP = E->cocycle_map(E->cocycle(coords));
    return {M, N, onP.matrix * right_inverse(r->covers[0].matrix)};
}

template <class F>
Matrix<F> class_of_hom(const Context<F>& ctx, const ModuleMap<F>& h) {
    auto E = ext_space(ctx, h.source, h.target, 0);
    auto r = ctx.resolution(h.source, 0);
    return E->coords(E->cochain_of(compose(h, r->covers[0])));
}

/// f (Ext^n/P) = 0, tested on the unit conflation X -> I^0 -> ... -> Omega^{-n} X of the source.
template <class F>
bool is_left_phantom(const Context<F>& ctx, const ModuleMap<F>& f) {
    std::size_t n = ctx.n();
    if (n == 0) {
        auto pushed = push_out_matrix(ctx, f.source, f, 0) * class_of_hom(ctx, ModuleMap<F>::identity(f.source));
        return p_member(ctx, f.source, f.target, pushed);
    }
    auto d = unit_up(ctx, f.source, n);
    const auto& C = d.seq.right();
    Matrix<F> cocycle = class_from_sequence(ctx, d.seq);
    Matrix<F> pushed = push_out_cocycle(ctx, C, f, n, cocycle);
    return p_member(ctx, C, f.target, ext_space(ctx, C, f.target, n)->coords(pushed));
}

/// Matrix of the pull-back along h on the quotients Ext^n(-, Y)/P.
template <class F>
Matrix<F> quotient_pull_back(const Context<F>& ctx, const ModuleMap<F>& h, const ModPtr<F>& Y) {
    auto src = p_subspace(ctx, h.target, Y);
    auto dst = p_subspace(ctx, h.source, Y);
    return dst->q.project * pull_back_matrix(ctx, h, Y, ctx.n()) * src->q.reps;
}

/// Matrix of the push-out along l on the quotients Ext^n(X, -)/P.
template <class F>
Matrix<F> quotient_push_out(const Context<F>& ctx, const ModPtr<F>& X, const ModuleMap<F>& l) {
    auto src = p_subspace(ctx, X, l.source);
    auto dst = p_subspace(ctx, X, l.target);
    return dst->q.project * push_out_matrix(ctx, X, l, ctx.n()) * src->q.reps;
}

/// For n = 0: the homomorphism M -> N represented by a class of Ext^0(M, N).
} // namespace phantomcat
