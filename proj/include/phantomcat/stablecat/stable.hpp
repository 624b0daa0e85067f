#pragma once

#include "../phantom/compose.hpp"

#include <utility>

namespace phantomcat {

class stable_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Hom_{C_P}(M, N) = Ext^n(M, Omega^n N)/P, anchored at the canonical delta_N.
template <class F>
struct StableHomSpace {
    ModPtr<F> M;
    ModPtr<F> N;
    PSubspacePtr<F> space;

    std::size_t dim() const { return space->dim(); }
    /// Class coordinates of the representatives of the coset basis.
    Matrix<F> basis_classes() const { return space->q.reps; }
};

template <class F>
StableHomSpace<F> stable_hom(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N) {
    return {M, N, p_subspace(ctx, M, ctx.syzygy(N, ctx.n()))};
}

template <class F>
Matrix<F> stable_identity(const Context<F>& ctx, const ModPtr<F>& M) {
    return stable_hom(ctx, M, M).space->coset(unit_class(ctx, M));
}

/// g o f for g in C_P(N, K) and f in C_P(M, N).
template <class F>
Matrix<F> stable_compose(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, const ModPtr<F>& K,
                         const Matrix<F>& g, const Matrix<F>& f) {
    return compose_mod_p(ctx, M, N, K, g, f);
}

/// T(f) = (delta_N f, delta_N).
template <class F>
Matrix<F> functor_T(const Context<F>& ctx, const ModuleMap<F>& f) {
    return phi(ctx, f);
}

/// Matrix of x |-> m o x from C_P(K, M) to C_P(K, N).
template <class F>
Matrix<F> left_composition_matrix(const Context<F>& ctx, const ModPtr<F>& K, const ModPtr<F>& M, const ModPtr<F>& N,
                                  const Matrix<F>& m) {
    auto src = stable_hom(ctx, K, M);
    auto dst = stable_hom(ctx, K, N);
    Matrix<F> out(ctx.field(), dst.dim(), src.dim());
    for (std::size_t e = 0; e < src.dim(); ++e)
        out.set_block(0, e,
                      stable_compose(ctx, K, M, N, m, Matrix<F>::unit_vector(ctx.field(), src.dim(), e)));
    return out;
}

/// A two-sided inverse of m in C_P(M, N), if one exists.
template <class F>
std::optional<Matrix<F>> stable_inverse(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N,
                                        const Matrix<F>& m) {
    auto back = stable_hom(ctx, N, M);
    Matrix<F> before = right_composition_matrix(ctx, M, N, M, m);  // x |-> x o m into C_P(M, M)
    Matrix<F> after = left_composition_matrix(ctx, N, M, N, m);    // x |-> m o x into C_P(N, N)
    Matrix<F> sys = vstack(before, after);
    Matrix<F> rhs = vstack(stable_identity(ctx, M), stable_identity(ctx, N));
    if (sys.rows() == 0) return Matrix<F>(ctx.field(), back.dim(), 1);
    if (back.dim() == 0) return rhs.is_zero() ? std::optional<Matrix<F>>(Matrix<F>(ctx.field(), 0, 1)) : std::nullopt;
    return solve(sys, rhs);
}

template <class F>
bool stable_is_iso(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N, const Matrix<F>& m) {
    return stable_inverse(ctx, M, N, m).has_value();
}

template <class F>
bool is_stably_zero(const Context<F>& ctx, const ModPtr<F>& M) {
    return stable_hom(ctx, M, M).dim() == 0;
}

/// The unique coset gamma of C_P(M, N) with (gamma, delta_N) ~ (gamma', delta'), where delta' is any unit
/// conflation of length n ending at N and gamma' is a class of Ext^n(M, left end of delta').
template <class F>
Matrix<F> normalize(const Context<F>& ctx, const ModPtr<F>& M, const Conflation<F>& anchor, const Matrix<F>& gamma) {
    std::size_t n = ctx.n();
    if (n == 0) throw stable_error("normalization needs n >= 1");
    const auto& N = anchor.right();
    if (anchor.length() != n) throw stable_error("anchor has length " + std::to_string(anchor.length()));
    auto dN = unit_down(ctx, N, n);
    auto ap = angled(dN.seq, anchor);
    const auto& W = ap.joint.left();
    auto PW = p_subspace(ctx, M, W);
    Matrix<F> target = push_out_matrix(ctx, M, ap.a2, n) * gamma;
    Matrix<F> sys = PW->q.project * push_out_matrix(ctx, M, ap.a1, n) * stable_hom(ctx, M, N).space->q.reps;
    auto x = sys.cols() ? solve(sys, PW->coset(target)) : std::optional<Matrix<F>>(Matrix<F>(ctx.field(), 0, 1));
    if (!x || (sys.cols() && rank(sys) != sys.cols()))
        throw stable_error("normalization is not unique; the angled pair is not quasi-invertible");
    return *x;
}

/// Ext^n(M, Omega^n N)/P -> Ext^{n+1}(M, Omega^{n+1} N) <- Ext^n(Omega M, Omega^{n+1} N)/P, as a matrix
/// from C_P(M, N) to C_P(Omega M, Omega N).
template <class F>
Matrix<F> omega_iso(const Context<F>& ctx, const ModPtr<F>& M, const ModPtr<F>& N) {
    std::size_t n = ctx.n();
    auto src = stable_hom(ctx, M, N);
    auto OM = ctx.syzygy(M, 1);
    auto ON = ctx.syzygy(N, 1);
    auto dst = stable_hom(ctx, OM, ON);
    auto Y = ctx.syzygy(N, n + 1);
    if (!ctx.syzygy(ON, n)->same_as(*Y)) throw stable_error("syzygies of Omega N are not shifted syzygies of N");
    Matrix<F> out(ctx.field(), dst.dim(), src.dim());
    if (src.dim() == 0) return out;
    auto rN = ctx.resolution(N, n + 1);
    auto down = short_conflation(rN->inclusions[n], rN->covers[n]);
    Matrix<F> cov = connecting_covariant(ctx, down, M, n) * src.space->q.reps;
    Matrix<F> contra = connecting_contravariant(ctx, syzygy_conflation(ctx, M), Y, n);
    if (cov.rows() == 0) return out;
    auto x = solve(contra, cov);
    if (!x) throw stable_error("connecting maps do not match for " + M->display_name() + ", " + N->display_name());
    return dst.space->q.project * *x;
}

/// Hom(M, N) modulo maps factoring through a projective, by lifting through the projective cover of N.
template <class F>
std::size_t classical_stable_dim(const ModPtr<F>& M, const ModPtr<F>& N) {
    auto H = hom_space(M, N);
    if (H.empty()) return 0;
    auto pc = projective_cover(N);
    const F& f = M->field();
    std::size_t cells = M->dim() * N->dim();
    auto flat = [&](const Matrix<F>& x) {
        Matrix<F> v(f, cells, 1);
        for (std::size_t i = 0; i < cells; ++i) v(i, 0) = x.data()[i];
        return v;
    };
    Matrix<F> all(f, cells, 0), through(f, cells, 0);
    for (auto& h : H) all = hstack(all, flat(h.matrix));
    for (auto& h : hom_space(M, pc.P.module)) through = hstack(through, flat(pc.cover.matrix * h.matrix));
    return rank(all) - (through.cols() ? rank(through) : 0);
}

/// (classical stable hom dimension inside the G-projectives, dim C_P(M, N)).
template <class F>
std::pair<std::size_t, std::size_t> embedding_dim_check(const Context<F>& ctx, const ModPtr<F>& M,
                                                        const ModPtr<F>& N) {
    if (!is_gproj(ctx, M) || !is_gproj(ctx, N))
        throw stable_error("embedding check needs Gorenstein projective modules");
    return {classical_stable_dim(M, N), stable_hom(ctx, M, N).dim()};
}

} // namespace phantomcat
