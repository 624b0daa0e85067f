#pragma once

#include "algebra.hpp"

#include <string>
#include <vector>

namespace phantomcat {

/// k[x]/(x^m) as a one-loop quiver.
template <class F>
AlgebraPtr<F> truncated_polynomial(const F& f, std::size_t m) {
    QuiverPresentation<F> q;
    q.field = f;
    q.vertices = {"1"};
    q.arrows = {{"x", 0, 0}};
    q.relations = {{{f.one(), std::vector<std::size_t>(m, 0)}}};
    return algebra_from_quiver(q);
}

/// Linear quiver 1 -> 2 -> ... -> n, with all paths of length `zero_length` killed (0 keeps them all).
template <class F>
AlgebraPtr<F> linear_quiver(const F& f, std::size_t n, std::size_t zero_length = 0) {
    QuiverPresentation<F> q;
    q.field = f;
    for (std::size_t v = 0; v < n; ++v) q.vertices.push_back(std::to_string(v + 1));
    for (std::size_t v = 0; v + 1 < n; ++v) q.arrows.push_back({"a" + std::to_string(v + 1), v, v + 1});
    if (zero_length >= 2)
        for (std::size_t v = 0; v + zero_length < n; ++v) {
            std::vector<std::size_t> p;
            for (std::size_t k = 0; k < zero_length; ++k) p.push_back(v + k);
            q.relations.push_back({{f.one(), p}});
        }
    return algebra_from_quiver(q);
}

/// Presentation of the cyclic Nakayama algebra whose projective P_i has length kupisch[i]:
/// arrows a_i: i -> i+1 (mod r), and the path of that length starting at i is zero.
template <class F>
QuiverPresentation<F> cyclic_nakayama_presentation(const F& f, const std::vector<std::size_t>& kupisch) {
    QuiverPresentation<F> q;
    q.field = f;
    std::size_t r = kupisch.size();
    for (std::size_t v = 0; v < r; ++v) q.vertices.push_back(std::to_string(v + 1));
    for (std::size_t v = 0; v < r; ++v) q.arrows.push_back({"a" + std::to_string(v + 1), v, (v + 1) % r});
    for (std::size_t v = 0; v < r; ++v) {
        std::vector<std::size_t> p;
        for (std::size_t k = 0; k < kupisch[v]; ++k) p.push_back((v + k) % r);
        q.relations.push_back({{f.one(), p}});
    }
    return q;
}

template <class F>
AlgebraPtr<F> cyclic_nakayama(const F& f, const std::vector<std::size_t>& kupisch) {
    return algebra_from_quiver(cyclic_nakayama_presentation(f, kupisch));
}

/// Lower triangular matrix algebra [[L, 0], [L, L]] over L, entered through its multiplication table.
template <class F>
AlgebraPtr<F> triangular_matrix_algebra(const AlgebraPtr<F>& L) {
    const F& f = L->field();
    std::size_t d = L->dim();
    // blocks: 0 = (1,1), 1 = (2,1), 2 = (2,2)
    const std::size_t row[3] = {0, 1, 1}, col[3] = {0, 0, 1};
    auto block_of = [&](std::size_t r, std::size_t c) -> std::size_t { return r == 0 ? 0 : (c == 0 ? 1 : 2); };
    const char* tags[3] = {"11", "21", "22"};
    std::size_t n = 3 * d;
    std::vector<std::string> labels;
    for (std::size_t b = 0; b < 3; ++b)
        for (std::size_t i = 0; i < d; ++i) labels.push_back(std::string(tags[b]) + ":" + L->labels()[i]);
    std::vector<Matrix<F>> mult(n, Matrix<F>(f, n, n));
    for (std::size_t b1 = 0; b1 < 3; ++b1)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t b2 = 0; b2 < 3; ++b2) {
                if (col[b1] != row[b2]) continue;
                std::size_t b = block_of(row[b1], col[b2]);
                for (std::size_t j = 0; j < d; ++j)
                    for (std::size_t k = 0; k < d; ++k) mult[b1 * d + i](b * d + k, b2 * d + j) = L->left_mult(i)(k, j);
            }
    Matrix<F> unit(f, n, 1);
    unit.set_block(0, 0, L->unit());
    unit.set_block(2 * d, 0, L->unit());
    std::vector<Matrix<F>> idem;
    for (std::size_t b : {0u, 2u})
        for (std::size_t v = 0; v < L->vertex_count(); ++v) {
            Matrix<F> e(f, n, 1);
            e.set_block(b * d, 0, L->idempotent(v));
            idem.push_back(e);
        }
    std::size_t jd = L->radical().cols();
    Matrix<F> rad(f, n, 2 * jd + d);
    rad.set_block(0, 0, L->radical());
    rad.set_block(2 * d, jd, L->radical());
    rad.set_block(d, 2 * jd, Matrix<F>::identity(f, d));
    return Algebra<F>::make(f, labels, mult, unit, idem, rad);
}

} // namespace phantomcat
