#pragma once

#include "../algmod/catalog.hpp"
#include "frobenius.hpp"

#include <functional>
#include <string>
#include <vector>

namespace phantomcat {

template <class F>
struct SearchCandidate {
    std::string description;
    std::function<AlgebraPtr<F>()> build;
    std::optional<QuiverPresentation<F>> presentation;
};

template <class F>
struct SearchHit {
    std::string description;
    AlgebraPtr<F> algebra;
    std::optional<QuiverPresentation<F>> presentation;
    std::size_t parameter = 0;
    std::size_t candidates_tried = 0;
};

/// Cyclic Nakayama algebras with 1..3 vertices and Kupisch lengths 2..4 (admissible sequences only),
/// followed by the triangular matrix algebra over the dual numbers.
template <class F>
std::vector<SearchCandidate<F>> gorenstein_candidates(const F& f) {
    std::vector<SearchCandidate<F>> out;
    for (std::size_t r = 1; r <= 3; ++r) {
        std::vector<std::size_t> c(r, 2);
        for (;;) {
            bool admissible = true;
            for (std::size_t i = 0; i < r; ++i)
                if (c[(i + 1) % r] + 1 < c[i]) admissible = false;
            if (admissible) {
                std::string d = "cyclic Nakayama, Kupisch";
                for (auto x : c) d += " " + std::to_string(x);
                auto q = cyclic_nakayama_presentation(f, c);
                out.push_back({d, [q] { return algebra_from_quiver(q); }, q});
            }
            std::size_t i = 0;
            while (i < r && c[i] == 4) c[i++] = 2;
            if (i == r) break;
            ++c[i];
        }
    }
    out.push_back({"triangular matrix algebra over k[x]/(x^2)",
                   [f] { return triangular_matrix_algebra(truncated_polynomial(f, 2)); },
                   std::nullopt});
    return out;
}

/// First candidate with Gorenstein parameter `target`, infinite global dimension, and a simple S
/// with Ext^{n+1}(S, Omega^{n+1} S) nonzero.
template <class F>
std::optional<SearchHit<F>> search_gorenstein(const F& f, std::size_t target = 1, std::size_t bound = 8) {
    auto cands = gorenstein_candidates(f);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        AlgebraPtr<F> alg;
        try {
            alg = cands[i].build();
        } catch (const algebra_error&) {
            continue;
        }
        if (cands[i].presentation) {
            // the projective at vertex v must have the prescribed length
            bool ok = true;
            for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
                std::size_t want = cands[i].presentation->relations[v].front().path.size();
                if (projective_indec(alg, v)->dim() != want) ok = false;
            }
            if (!ok) continue;
        }
        auto d = gorenstein_parameter(alg, bound);
        if (!d || *d != target) continue;
        Context<F> ctx(alg, *d, bound);
        if (has_finite_global_dimension(ctx)) continue;
        bool nonzero = false;
        for (std::size_t v = 0; v < alg->vertex_count() && !nonzero; ++v) {
            auto S = simple_module(alg, v);
            nonzero = ext_space(ctx, S, ctx.syzygy(S, *d + 1), *d + 1)->dim() > 0;
        }
        if (!nonzero) continue;
        return SearchHit<F>{cands[i].description, alg, cands[i].presentation, *d, i + 1};
    }
    return std::nullopt;
}

} // namespace phantomcat
