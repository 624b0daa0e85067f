#pragma once

#include <phantomcat/exactlin/matrix.hpp>

#include <cstdint>
#include <random>

namespace testgen {

// Seeded sources of random field elements and matrices for property tests.
template <class F>
typename F::value_type element(const F& f, std::mt19937_64& rng, int spread = 3) {
    std::uniform_int_distribution<long long> d(-spread, spread);
    return f.from_int(d(rng));
}

inline phantomcat::Rationals::value_type fraction(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-9, 9), den(1, 7);
    phantomcat::Rationals::value_type v(num(rng), den(rng));
    v.canonicalize();
    return v;
}

template <class F>
phantomcat::Matrix<F> matrix(const F& f, std::size_t r, std::size_t c, std::mt19937_64& rng, double density = 0.6) {
    phantomcat::Matrix<F> m(f, r, c);
    std::bernoulli_distribution keep(density);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            if (keep(rng)) m(i, j) = element(f, rng);
    return m;
}

/// A matrix of prescribed rank, built as a product of random factors with an identity core.
template <class F>
phantomcat::Matrix<F> matrix_of_rank(const F& f, std::size_t r, std::size_t c, std::size_t k, std::mt19937_64& rng) {
    for (;;) {
        auto a = matrix(f, r, k, rng, 0.8);
        auto b = matrix(f, k, c, rng, 0.8);
        auto m = a * b;
        if (phantomcat::rank(m) == k) return m;
    }
}

inline std::size_t size(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

} // namespace testgen
