#pragma once

#include "../exactlin/matrix.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace phantomcat {

class algebra_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Bound quiver: vertices, arrows and k-linear relations between parallel paths.
/// A path is a list of arrow indices in traversal order; "a.b" means a then b.
template <class F>
struct QuiverPresentation {
    struct Arrow {
        std::string label;
        std::size_t source = 0;
        std::size_t target = 0;
    };
    struct Term {
        typename F::value_type coeff;
        std::vector<std::size_t> path;
    };
    using Relation = std::vector<Term>;

    F field{};
    std::vector<std::string> vertices;
    std::vector<Arrow> arrows;
    std::vector<Relation> relations;

    std::size_t vertex_index(const std::string& v) const {
        for (std::size_t i = 0; i < vertices.size(); ++i)
            if (vertices[i] == v) return i;
        throw algebra_error("unknown vertex '" + v + "'");
    }

    std::size_t arrow_index(const std::string& a) const {
        for (std::size_t i = 0; i < arrows.size(); ++i)
            if (arrows[i].label == a) return i;
        throw algebra_error("unknown arrow '" + a + "'");
    }

    std::string path_label(const std::vector<std::size_t>& p) const {
        std::string s;
        for (std::size_t k = 0; k < p.size(); ++k) s += (k ? "." : "") + arrows[p[k]].label;
        return s;
    }
};

/// Element of the radical mapping e_src to e_tgt: tgt-component of x restricted at src.
template <class F>
struct AlgebraArrow {
    Matrix<F> coords;
    std::size_t source = 0;
    std::size_t target = 0;
    std::string label;
};

/// Finite-dimensional split basic algebra given by structure constants:
/// basis_i * basis_j = sum_k c^k_ij basis_k, stored as left multiplication matrices.
template <class F>
class Algebra : public std::enable_shared_from_this<Algebra<F>> {
public:
    using value_type = typename F::value_type;
    using Ptr = std::shared_ptr<const Algebra>;

    /// mult[i] is the d x d matrix of left multiplication by basis element i.
    static Ptr make(const F& field, std::vector<std::string> labels, std::vector<Matrix<F>> mult,
                    Matrix<F> unit, std::vector<Matrix<F>> idempotents, Matrix<F> radical,
                    std::optional<QuiverPresentation<F>> quiver = std::nullopt,
                    std::vector<std::vector<std::size_t>> words = {}) {
        auto a = std::shared_ptr<Algebra>(new Algebra());
        a->field_ = field;
        a->dim_ = labels.size();
        a->labels_ = std::move(labels);
        a->mult_ = std::move(mult);
        a->unit_ = std::move(unit);
        a->idempotents_ = std::move(idempotents);
        a->radical_ = std::move(radical);
        a->quiver_ = std::move(quiver);
        a->words_ = std::move(words);
        a->validate();
        a->derive();
        return a;
    }

    const F& field() const { return field_; }
    std::size_t dim() const { return dim_; }
    std::size_t vertex_count() const { return idempotents_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const Matrix<F>& left_mult(std::size_t i) const { return mult_.at(i); }
    const std::vector<Matrix<F>>& left_mults() const { return mult_; }
    const Matrix<F>& unit() const { return unit_; }
    const Matrix<F>& idempotent(std::size_t i) const { return idempotents_.at(i); }
    const std::vector<Matrix<F>>& idempotents() const { return idempotents_; }
    const Matrix<F>& radical() const { return radical_; }
    const std::vector<AlgebraArrow<F>>& arrows() const { return arrows_; }
    const std::optional<QuiverPresentation<F>>& quiver() const { return quiver_; }
    /// For quiver algebras: basis element i is the path words()[i] (empty for trivial paths).
    const std::vector<std::vector<std::size_t>>& words() const { return words_; }
    /// For trivial paths, the vertex; otherwise none.
    std::optional<std::size_t> trivial_vertex(std::size_t i) const {
        for (std::size_t v = 0; v < idempotents_.size(); ++v)
            if (idempotents_[v] == Matrix<F>::unit_vector(field_, dim_, i)) return v;
        return std::nullopt;
    }

    std::size_t label_index(const std::string& s) const {
        for (std::size_t i = 0; i < labels_.size(); ++i)
            if (labels_[i] == s) return i;
        throw algebra_error("unknown basis label '" + s + "'");
    }

    std::string vertex_name(std::size_t v) const {
        if (quiver_) return quiver_->vertices.at(v);
        return std::to_string(v + 1);
    }

    /// Left multiplication matrix of an arbitrary element.
    Matrix<F> left_mult_of(const Matrix<F>& x) const {
        Matrix<F> m(field_, dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i)
            if (!field_.is_zero(x(i, 0))) m = m + mult_[i].scaled(x(i, 0));
        return m;
    }

    /// Right multiplication matrix of an arbitrary element.
    Matrix<F> right_mult_of(const Matrix<F>& y) const {
        Matrix<F> m(field_, dim_, dim_);
        for (std::size_t i = 0; i < dim_; ++i) m.set_block(0, i, mult_[i] * y);
        return m;
    }

    Matrix<F> product(const Matrix<F>& x, const Matrix<F>& y) const { return left_mult_of(x) * y; }

    /// Basis of the left ideal A e_v inside A (columns in A coordinates).
    const Matrix<F>& vertex_basis(std::size_t v) const { return vertex_basis_.at(v); }
    const Matrix<F>& vertex_basis_inverse(std::size_t v) const { return vertex_basis_linv_.at(v); }
    /// Semisimple part: row v gives the coefficient of e_v of an element modulo the radical.
    const Matrix<F>& semisimple_coords() const { return semisimple_; }

    /// The opposite algebra; opposite().opposite() is this same object.
    Ptr opposite() const {
        std::call_once(opp_once_, [this] {
            if (auto back = opp_back_.lock()) {
                opp_cached_weak_ = back;
                return;
            }
            std::vector<Matrix<F>> mult;
            for (std::size_t i = 0; i < dim_; ++i) mult.push_back(right_mult_of(Matrix<F>::unit_vector(field_, dim_, i)));
            auto op = std::shared_ptr<Algebra>(new Algebra());
            op->field_ = field_;
            op->dim_ = dim_;
            op->labels_ = labels_;
            op->mult_ = std::move(mult);
            op->unit_ = unit_;
            op->idempotents_ = idempotents_;
            op->radical_ = radical_;
            op->opp_back_ = this->weak_from_this();
            op->is_opposite_ = true;
            op->validate();
            op->derive();
            opp_strong_ = op;
        });
        if (opp_strong_) return opp_strong_;
        return opp_cached_weak_.lock();
    }

    bool is_opposite() const { return is_opposite_; }

private:
    Algebra() = default;

    void validate() {
        const F& f = field_;
        if (mult_.size() != dim_) throw algebra_error("expected " + std::to_string(dim_) + " multiplication matrices");
        for (auto& m : mult_)
            if (m.rows() != dim_ || m.cols() != dim_) throw algebra_error("multiplication matrix has wrong shape");
        if (unit_.rows() != dim_ || unit_.cols() != 1) throw algebra_error("unit has wrong shape");
        for (std::size_t i = 0; i < dim_; ++i)
            for (std::size_t j = 0; j < dim_; ++j) {
                Matrix<F> ij = mult_[i].col(j);
                Matrix<F> lhs = mult_[i] * mult_[j];
                Matrix<F> rhs = left_mult_of(ij);
                if (lhs != rhs)
                    throw algebra_error("structure constants are not associative at product (" + labels_[i] + "," +
                                        labels_[j] + ")");
            }
        Matrix<F> id = Matrix<F>::identity(f, dim_);
        if (left_mult_of(unit_) != id) throw algebra_error("unit is not a left identity");
        for (std::size_t i = 0; i < dim_; ++i)
            if (mult_[i] * unit_ != Matrix<F>::unit_vector(f, dim_, i))
                throw algebra_error("unit is not a right identity at " + labels_[i]);
        if (idempotents_.empty()) throw algebra_error("no idempotents given");
        Matrix<F> sum(f, dim_, 1);
        for (std::size_t a = 0; a < idempotents_.size(); ++a) {
            sum = sum + idempotents_[a];
            for (std::size_t b = 0; b < idempotents_.size(); ++b) {
                Matrix<F> p = product(idempotents_[a], idempotents_[b]);
                Matrix<F> expect = a == b ? idempotents_[a] : Matrix<F>(f, dim_, 1);
                if (p != expect)
                    throw algebra_error("idempotents " + std::to_string(a + 1) + "," + std::to_string(b + 1) +
                                        " are not orthogonal idempotents");
            }
        }
        if (sum != unit_) throw algebra_error("idempotents do not sum to the unit");
        if (radical_.rows() != dim_) throw algebra_error("radical span has wrong row count");
        radical_ = image_basis(radical_);
        if (dim_ - radical_.cols() != idempotents_.size())
            throw algebra_error("dim A - dim J does not equal the number of idempotents (not split basic)");
        for (std::size_t i = 0; i < dim_; ++i) {
            Matrix<F> bi = Matrix<F>::unit_vector(f, dim_, i);
            if (radical_.cols() == 0) break;
            if (!in_span(radical_, mult_[i] * radical_) || !in_span(radical_, right_mult_of(bi) * radical_))
                throw algebra_error("radical span is not a two-sided ideal");
        }
        // nilpotency: J^k = 0 for some k <= dim
        Matrix<F> power = radical_;
        for (std::size_t k = 0; k <= dim_ && power.cols() > 0; ++k) {
            Matrix<F> next(f, dim_, 0);
            for (std::size_t c = 0; c < radical_.cols(); ++c) next = hstack(next, left_mult_of(radical_.col(c)) * power);
            power = image_basis(next);
        }
        if (power.cols() > 0) throw algebra_error("radical span is not nilpotent");
        Matrix<F> split = radical_;
        for (auto& e : idempotents_) split = hstack(split, e);
        if (rank(split) != dim_) throw algebra_error("idempotents and radical do not span the algebra");
    }

    void derive() {
        const F& f = field_;
        std::size_t r = idempotents_.size();
        Matrix<F> dec(f, dim_, 0);
        for (auto& e : idempotents_) dec = hstack(dec, e);
        dec = hstack(dec, radical_);
        semisimple_ = inverse(dec).block(0, 0, r, dim_);
        vertex_basis_.clear();
        vertex_basis_linv_.clear();
        for (std::size_t v = 0; v < r; ++v) {
            Matrix<F> b = image_basis(right_mult_of(idempotents_[v]));
            vertex_basis_.push_back(b);
            vertex_basis_linv_.push_back(left_inverse(b));
        }
        // generators of the radical modulo its square, split into vertex components
        arrows_.clear();
        Matrix<F> j2(f, dim_, 0);
        for (std::size_t c = 0; c < radical_.cols(); ++c) j2 = hstack(j2, left_mult_of(radical_.col(c)) * radical_);
        j2 = image_basis(j2);
        if (quiver_) {
            for (std::size_t a = 0; a < quiver_->arrows.size(); ++a) {
                std::size_t idx = label_index(quiver_->arrows[a].label);
                arrows_.push_back({Matrix<F>::unit_vector(f, dim_, idx), quiver_->arrows[a].source,
                                   quiver_->arrows[a].target, quiver_->arrows[a].label});
            }
            return;
        }
        Matrix<F> j2_in_j = j2.cols() ? solve(radical_, j2).value() : Matrix<F>(f, radical_.cols(), 0);
        auto q = quotient_reps(f, radical_.cols(), j2_in_j);
        for (std::size_t c = 0; c < q.dim(); ++c) {
            Matrix<F> x = radical_ * q.reps.col(c);
            for (std::size_t t = 0; t < r; ++t)
                for (std::size_t s = 0; s < r; ++s) {
                    Matrix<F> comp = product(product(idempotents_[t], x), idempotents_[s]);
                    if (comp.is_zero()) continue;
                    arrows_.push_back({comp, s, t, "g" + std::to_string(arrows_.size())});
                }
        }
    }

    F field_{};
    std::size_t dim_ = 0;
    std::vector<std::string> labels_;
    std::vector<Matrix<F>> mult_;
    Matrix<F> unit_;
    std::vector<Matrix<F>> idempotents_;
    Matrix<F> radical_;
    std::optional<QuiverPresentation<F>> quiver_;
    std::vector<std::vector<std::size_t>> words_;

    std::vector<Matrix<F>> vertex_basis_;
    std::vector<Matrix<F>> vertex_basis_linv_;
    Matrix<F> semisimple_;
    std::vector<AlgebraArrow<F>> arrows_;

    bool is_opposite_ = false;
    mutable std::once_flag opp_once_;
    mutable std::shared_ptr<const Algebra> opp_strong_;
    mutable std::weak_ptr<const Algebra> opp_cached_weak_;
    std::weak_ptr<const Algebra> opp_back_;
};

template <class F>
using AlgebraPtr = std::shared_ptr<const Algebra<F>>;

namespace detail {

template <class F>
bool contains_subpath(const std::vector<std::size_t>& p, const std::vector<std::size_t>& r) {
    if (r.size() > p.size()) return false;
    for (std::size_t s = 0; s + r.size() <= p.size(); ++s)
        if (std::equal(r.begin(), r.end(), p.begin() + static_cast<std::ptrdiff_t>(s))) return true;
    return false;
}

} // namespace detail

/// Builds the bound path algebra. Monomial relations are handled by path enumeration; other
/// relations must be homogeneous and are reduced by linear elimination up to path length bound.
template <class F>
AlgebraPtr<F> algebra_from_quiver(const QuiverPresentation<F>& q, std::size_t bound = 12) {
    const F& f = q.field;
    std::size_t nv = q.vertices.size();
    if (nv == 0) throw algebra_error("quiver has no vertices");
    for (auto& a : q.arrows)
        if (a.source >= nv || a.target >= nv) throw algebra_error("arrow '" + a.label + "' has unknown endpoint");
    bool monomial = true;
    for (auto& rel : q.relations) {
        if (rel.empty()) throw algebra_error("empty relation");
        std::size_t len = rel.front().path.size();
        std::size_t s = q.arrows.at(rel.front().path.front()).source;
        std::size_t t = q.arrows.at(rel.front().path.back()).target;
        for (auto& term : rel) {
            if (term.path.size() < 2)
                throw algebra_error("relation term '" + q.path_label(term.path) + "' has length < 2 (not admissible)");
            for (std::size_t k = 0; k + 1 < term.path.size(); ++k)
                if (q.arrows[term.path[k]].target != q.arrows[term.path[k + 1]].source)
                    throw algebra_error("relation term '" + q.path_label(term.path) + "' is not a path");
            if (q.arrows[term.path.front()].source != s || q.arrows[term.path.back()].target != t)
                throw algebra_error("relation paths are not parallel");
            if (term.path.size() != len) throw algebra_error("non-monomial relations must be homogeneous");
        }
        if (rel.size() > 1) monomial = false;
    }

    auto src = [&](const std::vector<std::size_t>& p) { return q.arrows[p.front()].source; };
    auto tgt = [&](const std::vector<std::size_t>& p) { return q.arrows[p.back()].target; };

    // paths by length; level_basis[m] lists basis paths of length m, level_reduce[m] maps all
    // paths of length m to coordinates in that basis
    std::vector<std::vector<std::vector<std::size_t>>> all_paths(1), basis_paths(1);
    std::vector<Quotient<F>> reductions(1);
    std::vector<std::map<std::vector<std::size_t>, std::size_t>> path_index(1);
    std::size_t stop = 0;
    bool stable_once = false;
    for (std::size_t m = 1;; ++m) {
        if (m > bound + 1)
            throw algebra_error("algebra is not finite-dimensional within path length bound " + std::to_string(bound));
        std::vector<std::vector<std::size_t>> paths;
        const auto& prev = m == 1 ? std::vector<std::vector<std::size_t>>{} : (monomial ? basis_paths[m - 1] : all_paths[m - 1]);
        if (m == 1) {
            for (std::size_t a = 0; a < q.arrows.size(); ++a) paths.push_back({a});
        } else {
            for (auto& p : prev)
                for (std::size_t a = 0; a < q.arrows.size(); ++a)
                    if (q.arrows[a].source == tgt(p)) {
                        auto np = p;
                        np.push_back(a);
                        paths.push_back(np);
                    }
        }
        std::sort(paths.begin(), paths.end());
        std::map<std::vector<std::size_t>, std::size_t> idx;
        for (std::size_t k = 0; k < paths.size(); ++k) idx[paths[k]] = k;
        Matrix<F> ideal(f, paths.size(), 0);
        for (auto& rel : q.relations) {
            std::size_t len = rel.front().path.size();
            if (len > m) continue;
            for (auto& p : paths) {
                // each occurrence position of a relation window inside a length-m path
                for (std::size_t s = 0; s + len <= m; ++s) {
                    std::vector<std::size_t> pre(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(s));
                    std::vector<std::size_t> post(p.begin() + static_cast<std::ptrdiff_t>(s + len), p.end());
                    Matrix<F> v(f, paths.size(), 1);
                    bool applicable = true;
                    for (auto& term : rel) {
                        std::vector<std::size_t> w = pre;
                        w.insert(w.end(), term.path.begin(), term.path.end());
                        w.insert(w.end(), post.begin(), post.end());
                        bool ok = true;
                        for (std::size_t k = 0; k + 1 < w.size(); ++k)
                            if (q.arrows[w[k]].target != q.arrows[w[k + 1]].source) ok = false;
                        if (!ok) {
                            applicable = false;
                            break;
                        }
                        auto it = idx.find(w);
                        if (it == idx.end()) continue;  // pruned: already zero
                        v(it->second, 0) = f.add(v(it->second, 0), term.coeff);
                    }
                    if (applicable && !v.is_zero()) ideal = hstack(ideal, v);
                }
            }
        }
        auto red = quotient_reps(f, paths.size(), ideal);
        std::vector<std::vector<std::size_t>> survivors;
        for (std::size_t c = 0; c < red.dim(); ++c)
            for (std::size_t k = 0; k < paths.size(); ++k)
                if (!f.is_zero(red.reps(k, c))) survivors.push_back(paths[k]);
        all_paths.push_back(paths);
        basis_paths.push_back(survivors);
        reductions.push_back(red);
        path_index.push_back(idx);
        if (survivors.empty()) {
            if (stable_once || paths.empty()) {
                stop = m;
                break;
            }
            stable_once = true;
        } else {
            stable_once = false;
        }
    }
    (void)src;

    // global basis: trivial paths, then surviving paths by length
    std::vector<std::string> labels;
    std::vector<std::vector<std::size_t>> words;
    std::vector<std::pair<std::size_t, std::size_t>> level_pos;  // (length, index in basis_paths)
    std::vector<std::vector<std::size_t>> level_offset(stop + 1);
    for (std::size_t v = 0; v < nv; ++v) {
        labels.push_back("e" + q.vertices[v]);
        words.push_back({});
        level_pos.push_back({0, v});
    }
    for (std::size_t m = 1; m <= stop; ++m) {
        for (std::size_t k = 0; k < basis_paths[m].size(); ++k) {
            level_offset[m].push_back(labels.size());
            labels.push_back(q.path_label(basis_paths[m][k]));
            words.push_back(basis_paths[m][k]);
            level_pos.push_back({m, k});
        }
    }
    std::size_t d = labels.size();

    // coordinates of an arbitrary path in the global basis
    auto path_coords = [&](const std::vector<std::size_t>& w) {
        Matrix<F> out(f, d, 1);
        std::size_t m = w.size();
        if (m >= stop) return out;
        auto it = path_index[m].find(w);
        if (it == path_index[m].end()) return out;
        const auto& red = reductions[m];
        for (std::size_t c = 0; c < red.dim(); ++c) out(level_offset[m][c], 0) = red.project(c, it->second);
        return out;
    };

    std::vector<Matrix<F>> mult(d, Matrix<F>(f, d, d));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            // basis_i * basis_j = path j followed by path i
            Matrix<F> col(f, d, 1);
            const auto& wi = words[i];
            const auto& wj = words[j];
            if (wi.empty() && wj.empty()) {
                if (i == j) col(i, 0) = f.one();
            } else if (wi.empty()) {
                if (tgt(wj) == level_pos[i].second) col(j, 0) = f.one();
            } else if (wj.empty()) {
                if (q.arrows[wi.front()].source == level_pos[j].second) col(i, 0) = f.one();
            } else if (tgt(wj) == q.arrows[wi.front()].source) {
                std::vector<std::size_t> w = wj;
                w.insert(w.end(), wi.begin(), wi.end());
                col = path_coords(w);
            }
            mult[i].set_block(0, j, col);
        }
    }
    Matrix<F> unit(f, d, 1);
    std::vector<Matrix<F>> idem;
    for (std::size_t v = 0; v < nv; ++v) {
        unit(v, 0) = f.one();
        idem.push_back(Matrix<F>::unit_vector(f, d, v));
    }
    Matrix<F> radical(f, d, d - nv);
    for (std::size_t k = nv; k < d; ++k) radical(k, k - nv) = f.one();
    return Algebra<F>::make(f, labels, mult, unit, idem, radical, q, words);
}

} // namespace phantomcat
