#pragma once

#include <phantomcat/algmod/catalog.hpp>
#include <phantomcat/frobenius/frobenius.hpp>
#include <phantomcat/frobenius/inventory.hpp>

#include "oracles.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

// The algebras the property tests run over, with their contexts and inventories.
namespace testalg {

using namespace phantomcat;

template <class F>
struct Setup {
    std::string name;
    std::shared_ptr<Context<F>> ctx;
    std::vector<ModPtr<F>> inv;
};

template <class F>
Setup<F> make_setup(std::string name, AlgebraPtr<F> alg, std::optional<std::size_t> n = std::nullopt) {
    auto ctx = detect_context(alg, n);
    auto inv = inventory(*ctx);
    return {std::move(name), ctx, std::move(inv)};
}

inline Setup<PrimeField> dual_numbers() { return make_setup("dual numbers", truncated_polynomial(PrimeField(2), 2)); }

inline Setup<PrimeField> trunc_poly_3() { return make_setup("k[x]/(x^3)", truncated_polynomial(PrimeField(3), 3)); }

inline Setup<Rationals> hereditary_a2() { return make_setup("A2", linear_quiver(Rationals{}, 2)); }

inline Setup<PrimeField> gorenstein_1() {
    return make_setup("T2(k[x]/(x^2))", triangular_matrix_algebra(truncated_polynomial(PrimeField(3), 2)));
}

inline Setup<PrimeField> gorenstein_1_raised() {
    return make_setup("T2(k[x]/(x^2)), n = 2", triangular_matrix_algebra(truncated_polynomial(PrimeField(3), 2)), 2);
}

inline Setup<PrimeField> dual_numbers_raised() {
    return make_setup("dual numbers, n = 1", truncated_polynomial(PrimeField(2), 2), 1);
}

inline Setup<PrimeField> nakayama_32() { return make_setup("Nakayama (3,2)", cyclic_nakayama(PrimeField(3), {3, 2})); }

/// Inventory modules together with sums X (+) Q for Q an n-projective inventory module.
template <class F>
std::vector<ModPtr<F>> object_pool(const Setup<F>& s) {
    std::vector<ModPtr<F>> out = s.inv;
    for (auto& Q : s.inv) {
        if (!is_n_projective(*s.ctx, Q)) continue;
        for (auto& X : s.inv)
            if (!is_n_projective(*s.ctx, X)) out.push_back(direct_sum<F>({X, Q}).module);
    }
    return out;
}

/// A random morphism between two random objects of the pool; identities and split maps are mixed in.
template <class F>
ModuleMap<F> random_morphism(const std::vector<ModPtr<F>>& pool, std::mt19937_64& rng) {
    const auto& M = pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    auto kind = std::uniform_int_distribution<int>(0, 5)(rng);
    const auto& N = kind == 0 ? M : pool[std::uniform_int_distribution<std::size_t>(0, pool.size() - 1)(rng)];
    auto H = hom_space(M, N);
    const F& f = M->field();
    Matrix<F> c(f, H.size(), 1);
    std::uniform_int_distribution<long long> val(-2, 2);
    for (std::size_t k = 0; k < H.size(); ++k) c(k, 0) = f.from_int(val(rng));
    auto g = combine(H, c, M, N);
    if (kind == 0 && std::bernoulli_distribution(0.5)(rng)) return ModuleMap<F>::identity(M);
    return g;
}

/// Conflations ker f -> X -> im f from random maps, and the syzygy conflations of the inventory.
template <class F>
std::vector<Conflation<F>> sample_conflations(const testalg::Setup<F>& s, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<Conflation<F>> out;
    for (auto& M : s.inv) out.push_back(syzygy_conflation(*s.ctx, M));
    auto pool = testalg::object_pool(s);
    while (out.size() < count) {
        auto f = testalg::random_morphism(pool, rng);
        if (f.is_zero() || f.is_injective()) continue;
        out.push_back(oracle::conflation_of_map(f));
    }
    return out;
}

} // namespace testalg
