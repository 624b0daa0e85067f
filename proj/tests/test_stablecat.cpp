#include <catch_amalgamated.hpp>

#include <phantomcat/stablecat/stable.hpp>

#include "algebras.hpp"
#include "oracles.hpp"

using namespace phantomcat;

namespace {

template <class F>
Matrix<F> random_vector(const F& f, std::size_t d, std::mt19937_64& rng) {
    Matrix<F> v(f, d, 1);
    std::uniform_int_distribution<long long> val(-2, 2);
    for (std::size_t i = 0; i < d; ++i) v(i, 0) = f.from_int(val(rng));
    return v;
}

template <class F>
std::size_t kernel_dim(const Matrix<F>& A) {
    return A.cols() - (A.rows() && A.cols() ? rank(A) : 0);
}

template <class F>
std::size_t rank_of(const Matrix<F>& A) {
    return A.rows() && A.cols() ? rank(A) : 0;
}

/// Omega^n N (+) Q -> P_{n-1} (+) Q -> ... -> N, the push-out of delta_N along the inclusion.
template <class F>
std::pair<Conflation<F>, ModuleMap<F>> padded_anchor(const Context<F>& ctx, const ModPtr<F>& N, const ModPtr<F>& Q) {
    auto d = unit_down(ctx, N, ctx.n()).seq;
    auto objs = d.objects;
    auto maps = d.maps;
    auto left = direct_sum<F>({objs[0], Q});
    auto mid = direct_sum<F>({objs[1], Q});
    maps[0] = diagonal_map(maps[0], ModuleMap<F>::identity(Q), left.module, mid.module);
    maps[1] = compose(maps[1], mid.projections[0]);
    objs[0] = left.module;
    objs[1] = mid.module;
    return {check_conflation(std::move(objs), std::move(maps)), left.inclusions[0]};
}

template <class F>
void check_exactness(const testalg::Setup<F>& s, std::size_t count, std::uint64_t seed) {
    const auto& ctx = *s.ctx;
    std::size_t n = ctx.n();
    for (auto& c : testalg::sample_conflations(s, count, seed)) {
        const auto& f = c.maps[0];
        const auto& g = c.maps[1];
        for (auto& X : s.inv) {
            INFO(s.name << ": " << c.objects[0]->display_name() << " -> " << c.objects[1]->display_name() << " -> "
                        << c.objects[2]->display_name() << " against " << X->display_name());
            // pull-backs on Ext^n(-, X)/P
            Matrix<F> a = quotient_pull_back(ctx, g, X);
            Matrix<F> b = quotient_pull_back(ctx, f, X);
            CHECK((b * a).is_zero());
            CHECK(kernel_dim(b) == rank_of(a));
            // precomposition with T(g) and T(f) on C_P(-, X)
            auto OX = ctx.syzygy(X, n);
            Matrix<F> A = right_composition_matrix(ctx, c.objects[1], c.objects[2], X, functor_T(ctx, g));
            Matrix<F> B = right_composition_matrix(ctx, c.objects[0], c.objects[1], X, functor_T(ctx, f));
            CHECK((B * A).is_zero());
            CHECK(kernel_dim(B) == rank_of(A));
            CHECK(A == quotient_pull_back(ctx, g, OX));
            // push-outs on Ext^n(X, -)/P
            Matrix<F> u = quotient_push_out(ctx, X, f);
            Matrix<F> v = quotient_push_out(ctx, X, g);
            CHECK((v * u).is_zero());
            CHECK(kernel_dim(v) == rank_of(u));
        }
    }
}

template <class F>
void check_functor(const testalg::Setup<F>& s, std::size_t samples, std::uint64_t seed) {
    const auto& ctx = *s.ctx;
    std::mt19937_64 rng(seed);
    auto pool = testalg::object_pool(s);
    for (std::size_t i = 0; i < samples; ++i) {
        auto f = testalg::random_morphism(pool, rng);
        auto K = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
        auto g = oracle::random_map(f.target, K, rng);
        auto f2 = oracle::random_map(f.source, f.target, rng);
        INFO(s.name << ": " << f.source->display_name() << " -> " << f.target->display_name() << " -> "
                    << K->display_name());
        CHECK(functor_T(ctx, f + f2) == functor_T(ctx, f) + functor_T(ctx, f2));
        CHECK(functor_T(ctx, compose(g, f)) ==
              stable_compose(ctx, f.source, f.target, K, functor_T(ctx, g), functor_T(ctx, f)));
        if (is_quasi_invertible(ctx, f)) CHECK(stable_is_iso(ctx, f.source, f.target, functor_T(ctx, f)));
        if (is_phantom(ctx, f)) CHECK(functor_T(ctx, f).is_zero());
    }
}

} // namespace

TEST_CASE("n = 0 stable hom matches the classical stable category") {
    for (auto s : {testalg::dual_numbers(), testalg::trunc_poly_3(), testalg::dual_numbers_raised()})
        for (auto& M : s.inv)
            for (auto& N : s.inv) {
                INFO(s.name << ": " << M->display_name() << ", " << N->display_name());
                CHECK(stable_hom(*s.ctx, M, N).dim() == oracle::classical_stable_hom_dim(M, N));
                CHECK(classical_stable_dim(M, N) == oracle::classical_stable_hom_dim(M, N));
            }
}

TEST_CASE("stable hom examples") {
    auto d = testalg::dual_numbers();
    auto S = simple_module(d.ctx->algebra(), 0);
    CHECK(stable_hom(*d.ctx, S, S).dim() == 1);
    CHECK_FALSE(is_stably_zero(*d.ctx, S));
    CHECK(is_stably_zero(*d.ctx, projective_indec(d.ctx->algebra(), 0)));
    auto h = testalg::hereditary_a2();
    for (auto& M : h.inv) {
        CHECK(is_stably_zero(*h.ctx, M));
        for (auto& N : h.inv) CHECK(stable_hom(*h.ctx, M, N).dim() == 0);
    }
    auto g = testalg::gorenstein_1();
    std::size_t nonzero = 0;
    for (auto& M : g.inv)
        for (auto& N : g.inv) {
            auto H = stable_hom(*g.ctx, M, N);
            nonzero += H.dim() > 0;
            CHECK(H.dim() == ext_space(*g.ctx, M, g.ctx->syzygy(N, 2), 2)->dim());
            if (is_n_projective(*g.ctx, N)) CHECK(H.dim() == 0);
        }
    CHECK(nonzero > 0);
}

TEST_CASE("stably zero objects are the n-projective ones") {
    for (auto s : {testalg::dual_numbers(), testalg::trunc_poly_3(), testalg::gorenstein_1(),
                   testalg::gorenstein_1_raised(), testalg::dual_numbers_raised()})
        for (auto& M : testalg::object_pool(s)) {
            INFO(s.name << ": " << M->display_name());
            CHECK(is_stably_zero(*s.ctx, M) == is_n_projective(*s.ctx, M));
        }
    auto h = testalg::hereditary_a2();
    for (auto& M : h.inv) CHECK(is_stably_zero(*h.ctx, M) == is_n_projective(*h.ctx, M));
}

TEST_CASE("T is an additive functor that inverts quasi-invertibles and kills phantoms") {
    check_functor(testalg::dual_numbers(), 60, 21);
    check_functor(testalg::trunc_poly_3(), 60, 22);
    check_functor(testalg::gorenstein_1(), 120, 23);
    check_functor(testalg::gorenstein_1_raised(), 60, 24);
}

TEST_CASE("T of identities and of maps through projectives") {
    auto s = testalg::gorenstein_1();
    const auto& ctx = *s.ctx;
    std::mt19937_64 rng(25);
    for (auto& M : s.inv) {
        CHECK(functor_T(ctx, ModuleMap<PrimeField>::identity(M)) == stable_identity(ctx, M));
        CHECK(stable_is_iso(ctx, M, M, stable_identity(ctx, M)));
        auto E = stable_hom(ctx, M, M);
        if (E.dim() > 0) CHECK_FALSE(stable_is_iso(ctx, M, M, Matrix<PrimeField>(ctx.field(), E.dim(), 1)));
        for (auto& N : s.inv) {
            auto cov = projective_cover(N);
            auto h = compose(cov.cover, oracle::random_map(M, cov.P.module, rng));
            CHECK(functor_T(ctx, h).is_zero());
        }
    }
}

TEST_CASE("stable composition with identities and zero") {
    auto s = testalg::gorenstein_1();
    const auto& ctx = *s.ctx;
    std::mt19937_64 rng(26);
    for (auto& M : s.inv)
        for (auto& N : s.inv) {
            auto H = stable_hom(ctx, M, N);
            auto g = random_vector(ctx.field(), H.dim(), rng);
            CHECK(stable_compose(ctx, M, N, N, stable_identity(ctx, N), g) == g);
            CHECK(stable_compose(ctx, M, M, N, g, stable_identity(ctx, M)) == g);
            for (auto& K : s.inv) {
                Matrix<PrimeField> z(ctx.field(), stable_hom(ctx, N, K).dim(), 1);
                CHECK(stable_compose(ctx, M, N, K, z, g).is_zero());
            }
        }
}

TEST_CASE("unit conflation classes are stable isomorphisms") {
    for (auto s : {testalg::gorenstein_1(), testalg::gorenstein_1_raised(), testalg::dual_numbers_raised()}) {
        const auto& ctx = *s.ctx;
        for (auto& N : s.inv) {
            auto d = unit_up(ctx, ctx.syzygy(N, ctx.n()), ctx.n()).seq;
            const auto& M = d.right();
            auto cls = sequence_class(ctx, d);
            auto H = stable_hom(ctx, M, N);
            INFO(s.name << ": " << N->display_name());
            CHECK(stable_is_iso(ctx, M, N, H.space->coset(cls)));
        }
    }
}

TEST_CASE("normalization against a padded anchor") {
    for (auto s : {testalg::gorenstein_1(), testalg::gorenstein_1_raised()}) {
        const auto& ctx = *s.ctx;
        std::size_t n = ctx.n();
        std::mt19937_64 rng(27);
        for (auto& N : s.inv)
            for (std::size_t v = 0; v < ctx.algebra()->vertex_count(); ++v) {
                auto [anchor, incl] = padded_anchor(ctx, N, projective_indec(ctx.algebra(), v));
                for (auto& M : s.inv) {
                    INFO(s.name << ": " << M->display_name() << ", " << N->display_name());
                    auto H = stable_hom(ctx, M, N);
                    auto g = random_vector(ctx.field(), H.dim(), rng);
                    auto moved = push_out_matrix(ctx, M, incl, n) * H.space->lift(g);
                    CHECK(normalize(ctx, M, anchor, moved) == g);
                    auto PA = p_subspace(ctx, M, anchor.left());
                    auto p = PA->basis * random_vector(ctx.field(), PA->p_dim(), rng);
                    CHECK(normalize(ctx, M, anchor, moved + p) == g);
                    CHECK(normalize(ctx, M, anchor, p).is_zero());
                    auto other = random_vector(ctx.field(), PA->ext->dim(), rng);
                    auto x = normalize(ctx, M, anchor, other);
                    CHECK(normalize(ctx, M, anchor, moved + other) == g + x);
                    auto back = push_out_matrix(ctx, M, incl, n) * H.space->lift(x);
                    CHECK(normalize(ctx, M, anchor, back) == x);
                    for (auto& L : s.inv) {
                        auto f = oracle::random_map(L, M, rng);
                        auto pulled = pull_back_matrix(ctx, f, anchor.left(), n) * other;
                        CHECK(normalize(ctx, L, anchor, pulled) == stable_compose(ctx, L, M, N, x, functor_T(ctx, f)));
                    }
                }
            }
        for (auto& N : s.inv) {
            auto d = unit_down(ctx, N, n).seq;
            auto H = stable_hom(ctx, N, N);
            CHECK(normalize(ctx, N, d, unit_class(ctx, N)) == stable_identity(ctx, N));
        }
    }
}

TEST_CASE("syzygy map on stable homs is bijective") {
    for (auto s : {testalg::dual_numbers(), testalg::trunc_poly_3(), testalg::gorenstein_1(),
                   testalg::gorenstein_1_raised(), testalg::dual_numbers_raised()}) {
        const auto& ctx = *s.ctx;
        for (auto& M : s.inv)
            for (auto& N : s.inv) {
                INFO(s.name << ": " << M->display_name() << ", " << N->display_name());
                auto w = omega_iso(ctx, M, N);
                std::size_t d = stable_hom(ctx, M, N).dim();
                CHECK(w.cols() == d);
                CHECK(w.rows() == stable_hom(ctx, ctx.syzygy(M, 1), ctx.syzygy(N, 1)).dim());
                CHECK(rank_of(w) == d);
                CHECK(w.rows() == d);
            }
    }
    auto d = testalg::dual_numbers();
    auto S = simple_module(d.ctx->algebra(), 0);
    auto w = omega_iso(*d.ctx, S, S);
    CHECK(w.rows() == 1);
    CHECK(rank(w) == 1);
}

TEST_CASE("three-term sequences of stable homs are exact") {
    check_exactness(testalg::dual_numbers(), 20, 31);
    check_exactness(testalg::trunc_poly_3(), 20, 32);
    check_exactness(testalg::gorenstein_1(), 20, 33);
    check_exactness(testalg::gorenstein_1_raised(), 20, 34);
}

TEST_CASE("stable homs between Gorenstein projectives match the classical stable category") {
    for (auto s : {testalg::gorenstein_1(), testalg::dual_numbers()}) {
        const auto& ctx = *s.ctx;
        std::size_t gp = 0;
        for (auto& M : s.inv) {
            if (!is_gproj(ctx, M)) continue;
            ++gp;
            for (auto& N : s.inv) {
                if (!is_gproj(ctx, N)) continue;
                INFO(s.name << ": " << M->display_name() << ", " << N->display_name());
                auto [classical, cp] = embedding_dim_check(ctx, M, N);
                CHECK(classical == cp);
                CHECK(classical == oracle::classical_stable_hom_dim(M, N));
            }
        }
        CHECK(gp >= 2);
    }
    auto s = testalg::gorenstein_1();
    for (auto& M : s.inv)
        if (!is_gproj(*s.ctx, M)) CHECK_THROWS_AS(embedding_dim_check(*s.ctx, M, M), stable_error);
}
