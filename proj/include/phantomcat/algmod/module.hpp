#pragma once

#include "algebra.hpp"

#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace phantomcat {

class module_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Left module of finite dimension: one action matrix per algebra basis element.
template <class F>
class Module {
public:
    using Ptr = std::shared_ptr<const Module>;
    using AlgPtr = AlgebraPtr<F>;

    static Ptr make(AlgPtr alg, std::vector<Matrix<F>> act, std::string name = "") {
        auto m = std::shared_ptr<Module>(new Module());
        m->alg_ = std::move(alg);
        m->act_ = std::move(act);
        m->name_ = std::move(name);
        m->dim_ = m->act_.empty() ? 0 : m->act_.front().rows();
        m->validate();
        m->derive();
        return m;
    }

    /// Builds all action matrices of a quiver algebra module from vertex and arrow matrices.
    static Ptr from_representation(AlgPtr alg, const std::vector<Matrix<F>>& vertex_act,
                                   const std::vector<Matrix<F>>& arrow_act, std::string name = "") {
        if (!alg->quiver()) throw module_error("representation input requires a quiver algebra");
        const auto& words = alg->words();
        std::size_t n = vertex_act.empty() ? 0 : vertex_act.front().rows();
        std::vector<Matrix<F>> act;
        for (std::size_t i = 0; i < alg->dim(); ++i) {
            if (words[i].empty()) {
                act.push_back(vertex_act.at(*alg->trivial_vertex(i)));
                continue;
            }
            Matrix<F> m = Matrix<F>::identity(alg->field(), n);
            for (auto a : words[i]) m = arrow_act.at(a) * m;
            act.push_back(m);
        }
        return make(std::move(alg), std::move(act), std::move(name));
    }

    const AlgPtr& algebra() const { return alg_; }
    const F& field() const { return alg_->field(); }
    std::size_t dim() const { return dim_; }
    const Matrix<F>& act(std::size_t i) const { return act_.at(i); }
    const std::vector<Matrix<F>>& actions() const { return act_; }
    const std::string& name() const { return name_; }
    std::string display_name() const { return name_.empty() ? "module of dim " + std::to_string(dim_) : name_; }
    std::size_t fingerprint() const { return fingerprint_; }

    /// Action matrix of an arbitrary algebra element.
    Matrix<F> act_of(const Matrix<F>& x) const {
        Matrix<F> m(field(), dim_, dim_);
        for (std::size_t i = 0; i < alg_->dim(); ++i)
            if (!field().is_zero(x(i, 0))) m = m + act_[i].scaled(x(i, 0));
        return m;
    }

    /// Basis of e_v M (columns) and the coordinate map M -> e_v M.
    const Matrix<F>& vertex_basis(std::size_t v) const { return vbasis_.at(v); }
    const Matrix<F>& vertex_coords(std::size_t v) const { return vcoords_.at(v); }
    std::size_t vertex_dim(std::size_t v) const { return vbasis_.at(v).cols(); }
    const Matrix<F>& generator_action(std::size_t a) const { return arrow_act_.at(a); }

    std::vector<std::size_t> dim_vector() const {
        std::vector<std::size_t> d;
        for (auto& b : vbasis_) d.push_back(b.cols());
        return d;
    }

    bool same_as(const Module& o) const {
        if (this == &o) return true;
        if (alg_ != o.alg_ || dim_ != o.dim_ || fingerprint_ != o.fingerprint_) return false;
        for (std::size_t i = 0; i < act_.size(); ++i)
            if (act_[i] != o.act_[i]) return false;
        return true;
    }

    Ptr renamed(std::string name) const {
        auto m = std::shared_ptr<Module>(new Module(*this));
        m->name_ = std::move(name);
        return m;
    }

private:
    Module() = default;

    void validate() const {
        const F& f = field();
        if (act_.size() != alg_->dim())
            throw module_error(display_name() + ": expected " + std::to_string(alg_->dim()) + " action matrices");
        for (std::size_t i = 0; i < act_.size(); ++i)
            if (act_[i].rows() != dim_ || act_[i].cols() != dim_)
                throw module_error(display_name() + ": action of " + alg_->labels()[i] + " has wrong shape");
        if (act_of(alg_->unit()) != Matrix<F>::identity(f, dim_))
            throw module_error(display_name() + ": unit does not act as identity");
        std::vector<Matrix<F>> gens = alg_->idempotents();
        for (auto& a : alg_->arrows()) gens.push_back(a.coords);
        for (auto& g : gens) {
            Matrix<F> ag = act_of(g);
            Matrix<F> lg = alg_->left_mult_of(g);
            for (std::size_t j = 0; j < alg_->dim(); ++j)
                if (ag * act_[j] != act_of(lg.col(j)))
                    throw module_error(display_name() + ": action does not respect the product with " +
                                       alg_->labels()[j]);
        }
    }

    void derive() {
        for (std::size_t v = 0; v < alg_->vertex_count(); ++v) {
            Matrix<F> e = act_of(alg_->idempotent(v));
            Matrix<F> b = image_basis(e);
            vbasis_.push_back(b);
            vcoords_.push_back(b.cols() ? Matrix<F>(left_inverse(b) * e) : Matrix<F>(field(), 0, dim_));
        }
        for (auto& a : alg_->arrows()) arrow_act_.push_back(act_of(a.coords));
        std::size_t h = dim_;
        for (auto& m : act_) h = h * 31 + m.hash();
        fingerprint_ = h;
    }

    AlgPtr alg_;
    std::vector<Matrix<F>> act_;
    std::string name_;
    std::size_t dim_ = 0;
    std::vector<Matrix<F>> vbasis_;
    std::vector<Matrix<F>> vcoords_;
    std::vector<Matrix<F>> arrow_act_;
    std::size_t fingerprint_ = 0;
};

template <class F>
using ModPtr = std::shared_ptr<const Module<F>>;

template <class F>
void require_same_algebra(const Module<F>& a, const Module<F>& b) {
    if (a.algebra() != b.algebra())
        throw module_error("algebra mismatch between " + a.display_name() + " and " + b.display_name());
}

/// Module homomorphism given by a dim(target) x dim(source) matrix.
template <class F>
struct ModuleMap {
    ModPtr<F> source;
    ModPtr<F> target;
    Matrix<F> matrix;

    static ModuleMap make(ModPtr<F> s, ModPtr<F> t, Matrix<F> m, bool check = true) {
        require_same_algebra(*s, *t);
        if (m.rows() != t->dim() || m.cols() != s->dim())
            throw module_error("map matrix " + m.shape() + " does not fit " + s->display_name() + " -> " +
                               t->display_name());
        ModuleMap f{std::move(s), std::move(t), std::move(m)};
        if (check && !f.intertwines())
            throw module_error("matrix does not intertwine the actions of " + f.source->display_name() + " and " +
                               f.target->display_name());
        return f;
    }

    static ModuleMap identity(ModPtr<F> m) {
        return {m, m, Matrix<F>::identity(m->field(), m->dim())};
    }
    static ModuleMap zero(ModPtr<F> s, ModPtr<F> t) {
        return {s, t, Matrix<F>(s->field(), t->dim(), s->dim())};
    }

    bool intertwines() const {
        const auto& alg = source->algebra();
        for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
            Matrix<F> e = alg->idempotent(v);
            if (target->act_of(e) * matrix != matrix * source->act_of(e)) return false;
        }
        for (std::size_t a = 0; a < alg->arrows().size(); ++a)
            if (target->generator_action(a) * matrix != matrix * source->generator_action(a)) return false;
        return true;
    }

    bool is_zero() const { return matrix.is_zero(); }
    bool is_injective() const { return rank(matrix) == source->dim(); }
    bool is_surjective() const { return rank(matrix) == target->dim(); }
    bool is_iso() const { return source->dim() == target->dim() && is_injective(); }

    ModuleMap operator+(const ModuleMap& o) const { return {source, target, matrix + o.matrix}; }
    ModuleMap operator-(const ModuleMap& o) const { return {source, target, matrix - o.matrix}; }
    ModuleMap scaled(const typename F::value_type& c) const { return {source, target, matrix.scaled(c)}; }
};

/// g after f.
template <class F>
ModuleMap<F> compose(const ModuleMap<F>& g, const ModuleMap<F>& f) {
    if (!g.source->same_as(*f.target))
        throw module_error("cannot compose: " + f.target->display_name() + " is not " + g.source->display_name());
    return {f.source, g.target, g.matrix * f.matrix};
}

/// Basis of Hom_A(M, N), from the intertwiner system on vertex blocks.
template <class F>
std::vector<ModuleMap<F>> hom_space(const ModPtr<F>& M, const ModPtr<F>& N) {
    require_same_algebra(*M, *N);
    const auto& alg = M->algebra();
    const F& f = alg->field();
    std::size_t r = alg->vertex_count();
    std::vector<std::size_t> off(r + 1, 0);
    for (std::size_t v = 0; v < r; ++v) off[v + 1] = off[v] + N->vertex_dim(v) * M->vertex_dim(v);
    std::size_t unknowns = off[r];
    if (unknowns == 0) return {};
    std::vector<Matrix<F>> eqs;
    std::size_t total_rows = 0;
    for (std::size_t a = 0; a < alg->arrows().size(); ++a) {
        const auto& arr = alg->arrows()[a];
        std::size_t s = arr.source, t = arr.target;
        std::size_t ns = N->vertex_dim(s), nt = N->vertex_dim(t), ms = M->vertex_dim(s), mt = M->vertex_dim(t);
        if (nt * ms == 0) continue;
        Matrix<F> AN = N->vertex_coords(t) * N->generator_action(a) * N->vertex_basis(s);
        Matrix<F> AM = M->vertex_coords(t) * M->generator_action(a) * M->vertex_basis(s);
        Matrix<F> E(f, nt * ms, unknowns);
        for (std::size_t i = 0; i < nt; ++i)
            for (std::size_t c = 0; c < ms; ++c) {
                std::size_t row = i * ms + c;
                for (std::size_t k = 0; k < ns; ++k)
                    if (!f.is_zero(AN(i, k)))
                        E(row, off[s] + k * ms + c) = f.add(E(row, off[s] + k * ms + c), AN(i, k));
                for (std::size_t k = 0; k < mt; ++k)
                    if (!f.is_zero(AM(k, c)))
                        E(row, off[t] + i * mt + k) = f.sub(E(row, off[t] + i * mt + k), AM(k, c));
            }
        total_rows += E.rows();
        eqs.push_back(std::move(E));
    }
    Matrix<F> sys(f, total_rows, unknowns);
    std::size_t row = 0;
    for (auto& E : eqs) {
        sys.set_block(row, 0, E);
        row += E.rows();
    }
    Matrix<F> K = kernel_basis(sys);
    std::vector<ModuleMap<F>> basis;
    for (std::size_t k = 0; k < K.cols(); ++k) {
        Matrix<F> m(f, N->dim(), M->dim());
        for (std::size_t v = 0; v < r; ++v) {
            std::size_t nv = N->vertex_dim(v), mv = M->vertex_dim(v);
            if (nv * mv == 0) continue;
            Matrix<F> X(f, nv, mv);
            for (std::size_t i = 0; i < nv; ++i)
                for (std::size_t j = 0; j < mv; ++j) X(i, j) = K(off[v] + i * mv + j, k);
            m = m + N->vertex_basis(v) * X * M->vertex_coords(v);
        }
        basis.push_back({M, N, std::move(m)});
    }
    return basis;
}

template <class F>
ModuleMap<F> combine(const std::vector<ModuleMap<F>>& basis, const Matrix<F>& coeffs, const ModPtr<F>& M,
                     const ModPtr<F>& N) {
    ModuleMap<F> out = ModuleMap<F>::zero(M, N);
    for (std::size_t k = 0; k < basis.size(); ++k)
        if (!M->field().is_zero(coeffs(k, 0))) out.matrix = out.matrix + basis[k].matrix.scaled(coeffs(k, 0));
    return out;
}

/// Coordinates of a map in a hom basis, or nothing if it is not in the span.
template <class F>
std::optional<Matrix<F>> hom_coords(const std::vector<ModuleMap<F>>& basis, const ModuleMap<F>& g) {
    const F& f = g.matrix.field();
    std::size_t n = g.matrix.rows() * g.matrix.cols();
    Matrix<F> B(f, n, basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k)
        for (std::size_t i = 0; i < n; ++i) B(i, k) = basis[k].matrix.data()[i];
    Matrix<F> v(f, n, 1);
    for (std::size_t i = 0; i < n; ++i) v(i, 0) = g.matrix.data()[i];
    if (basis.empty()) return v.is_zero() ? std::optional<Matrix<F>>(Matrix<F>(f, 0, 1)) : std::nullopt;
    return solve(B, v);
}

template <class F>
ModPtr<F> zero_module(const AlgebraPtr<F>& alg) {
    return Module<F>::make(alg, std::vector<Matrix<F>>(alg->dim(), Matrix<F>(alg->field(), 0, 0)), "0");
}

/// Submodule spanned by the independent columns of S; returns it with its inclusion.
template <class F>
struct SubmoduleResult {
    ModPtr<F> module;
    ModuleMap<F> inclusion;
};

template <class F>
SubmoduleResult<F> submodule(const ModPtr<F>& M, const Matrix<F>& S, std::string name = "") {
    const auto& alg = M->algebra();
    const F& f = M->field();
    if (S.cols() == 0) {
        auto Z = zero_module(alg);
        return {Z, {Z, M, Matrix<F>(f, M->dim(), 0)}};
    }
    Matrix<F> L = left_inverse(S);
    std::vector<Matrix<F>> act;
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        Matrix<F> img = M->act(i) * S;
        Matrix<F> c = L * img;
        if (S * c != img) throw module_error("subspace of " + M->display_name() + " is not a submodule");
        act.push_back(std::move(c));
    }
    auto sub = Module<F>::make(alg, std::move(act), std::move(name));
    return {sub, {sub, M, S}};
}

/// Smallest submodule containing the columns of V.
template <class F>
SubmoduleResult<F> generated_submodule(const ModPtr<F>& M, const Matrix<F>& V, std::string name = "") {
    Matrix<F> span(M->field(), M->dim(), 0);
    for (std::size_t i = 0; i < M->algebra()->dim(); ++i) span = hstack(span, M->act(i) * V);
    return submodule(M, image_basis(span), std::move(name));
}

template <class F>
struct QuotientModuleResult {
    ModPtr<F> module;
    ModuleMap<F> projection;
    Matrix<F> reps;  ///< lifts of the quotient basis; a map vanishing on the submodule factors as h * reps
};

/// Quotient of M by the submodule spanned by the columns of S.
template <class F>
QuotientModuleResult<F> quotient_module(const ModPtr<F>& M, const Matrix<F>& S, std::string name = "") {
    const auto& alg = M->algebra();
    const F& f = M->field();
    auto q = quotient_reps(f, M->dim(), S);
    std::vector<Matrix<F>> act;
    for (std::size_t i = 0; i < alg->dim(); ++i) act.push_back(q.project * M->act(i) * q.reps);
    auto Q = Module<F>::make(alg, std::move(act), std::move(name));
    return {Q, {M, Q, q.project}, q.reps};
}

template <class F>
SubmoduleResult<F> kernel_module(const ModuleMap<F>& f) {
    return submodule(f.source, kernel_basis(f.matrix));
}

template <class F>
struct ImageResult {
    ModPtr<F> module;
    ModuleMap<F> inclusion;
    ModuleMap<F> corestriction;
};

template <class F>
ImageResult<F> image_module(const ModuleMap<F>& f) {
    Matrix<F> B = image_basis(f.matrix);
    auto sub = submodule(f.target, B);
    Matrix<F> co = B.cols() ? Matrix<F>(left_inverse(B) * f.matrix) : Matrix<F>(f.matrix.field(), 0, f.source->dim());
    return {sub.module, sub.inclusion, {f.source, sub.module, co}};
}

template <class F>
QuotientModuleResult<F> cokernel_module(const ModuleMap<F>& f) {
    return quotient_module(f.target, image_basis(f.matrix));
}

template <class F>
struct DirectSum {
    ModPtr<F> module;
    std::vector<ModuleMap<F>> inclusions;
    std::vector<ModuleMap<F>> projections;
};

template <class F>
DirectSum<F> direct_sum(const std::vector<ModPtr<F>>& parts, std::string name = "") {
    if (parts.empty()) throw module_error("empty direct sum");
    const auto& alg = parts.front()->algebra();
    const F& f = alg->field();
    std::size_t total = 0;
    for (auto& p : parts) {
        require_same_algebra(*parts.front(), *p);
        total += p->dim();
    }
    std::vector<Matrix<F>> act(alg->dim(), Matrix<F>(f, total, total));
    std::size_t o = 0;
    for (auto& p : parts) {
        for (std::size_t i = 0; i < alg->dim(); ++i) act[i].set_block(o, o, p->act(i));
        o += p->dim();
    }
    auto S = Module<F>::make(alg, std::move(act), std::move(name));
    DirectSum<F> out{S, {}, {}};
    o = 0;
    for (auto& p : parts) {
        Matrix<F> inc(f, total, p->dim());
        inc.set_block(o, 0, Matrix<F>::identity(f, p->dim()));
        out.inclusions.push_back({p, S, inc});
        out.projections.push_back({S, p, inc.transpose()});
        o += p->dim();
    }
    return out;
}

template <class F>
ModPtr<F> direct_sum_module(const ModPtr<F>& a, const ModPtr<F>& b) {
    return direct_sum<F>({a, b}).module;
}

/// [f; g] : M -> N1 (+) N2
template <class F>
ModuleMap<F> stack_maps(const ModuleMap<F>& f, const ModuleMap<F>& g, const ModPtr<F>& target) {
    return {f.source, target, vstack(f.matrix, g.matrix)};
}

/// [f g] : M1 (+) M2 -> N
template <class F>
ModuleMap<F> juxtapose_maps(const ModuleMap<F>& f, const ModuleMap<F>& g, const ModPtr<F>& source) {
    return {source, f.target, hstack(f.matrix, g.matrix)};
}

template <class F>
ModuleMap<F> diagonal_map(const ModuleMap<F>& f, const ModuleMap<F>& g, const ModPtr<F>& source,
                          const ModPtr<F>& target) {
    return {source, target, block_diagonal(f.matrix, g.matrix)};
}

/// Vector space dual, a module over the opposite algebra.
template <class F>
ModPtr<F> dual_module(const ModPtr<F>& M) {
    std::vector<Matrix<F>> act;
    for (auto& a : M->actions()) act.push_back(a.transpose());
    std::string n = M->name().empty() ? "" : "D(" + M->name() + ")";
    return Module<F>::make(M->algebra()->opposite(), std::move(act), n);
}

template <class F>
ModuleMap<F> dual_map(const ModuleMap<F>& f, const ModPtr<F>& dual_source, const ModPtr<F>& dual_target) {
    return {dual_target, dual_source, f.matrix.transpose()};
}

template <class F>
ModPtr<F> simple_module(const AlgebraPtr<F>& alg, std::size_t v) {
    const F& f = alg->field();
    std::vector<Matrix<F>> act;
    for (std::size_t i = 0; i < alg->dim(); ++i) {
        Matrix<F> m(f, 1, 1);
        m(0, 0) = alg->semisimple_coords()(v, i);
        act.push_back(m);
    }
    return Module<F>::make(alg, std::move(act), "S" + alg->vertex_name(v));
}

template <class F>
ModPtr<F> projective_indec(const AlgebraPtr<F>& alg, std::size_t v) {
    const Matrix<F>& B = alg->vertex_basis(v);
    const Matrix<F>& L = alg->vertex_basis_inverse(v);
    std::vector<Matrix<F>> act;
    for (std::size_t i = 0; i < alg->dim(); ++i) act.push_back(L * alg->left_mult(i) * B);
    return Module<F>::make(alg, std::move(act), "P" + alg->vertex_name(v));
}

template <class F>
ModPtr<F> injective_indec(const AlgebraPtr<F>& alg, std::size_t v) {
    auto p = projective_indec(alg->opposite(), v);
    return dual_module(p)->renamed("I" + alg->vertex_name(v));
}

/// Radical J*M as a submodule.
template <class F>
SubmoduleResult<F> radical_module(const ModPtr<F>& M) {
    const auto& alg = M->algebra();
    Matrix<F> span(M->field(), M->dim(), 0);
    for (std::size_t c = 0; c < alg->radical().cols(); ++c) span = hstack(span, M->act_of(alg->radical().col(c)));
    return submodule(M, image_basis(span));
}

template <class F>
QuotientModuleResult<F> top_module(const ModPtr<F>& M) {
    return quotient_module(M, radical_module(M).inclusion.matrix);
}

template <class F>
SubmoduleResult<F> socle_module(const ModPtr<F>& M) {
    const auto& alg = M->algebra();
    Matrix<F> sys(M->field(), 0, M->dim());
    for (std::size_t c = 0; c < alg->radical().cols(); ++c) sys = vstack(sys, M->act_of(alg->radical().col(c)));
    return submodule(M, kernel_basis(sys));
}

/// Direct sum of indecomposable projectives with recorded generators.
template <class F>
struct ProjSum {
    std::vector<std::size_t> vertices;
    ModPtr<F> module;
    std::vector<std::size_t> offsets;

    std::size_t count() const { return vertices.size(); }

    /// Coordinates in module of the generator e_v of summand k.
    Matrix<F> generator(std::size_t k) const {
        const auto& alg = module->algebra();
        std::size_t v = vertices[k];
        Matrix<F> g(alg->field(), module->dim(), 1);
        g.set_block(offsets[k], 0, alg->vertex_basis_inverse(v) * alg->idempotent(v));
        return g;
    }

    static ProjSum make(const AlgebraPtr<F>& alg, std::vector<std::size_t> vertices) {
        ProjSum P;
        P.vertices = std::move(vertices);
        if (P.vertices.empty()) {
            P.module = zero_module(alg);
            return P;
        }
        std::vector<ModPtr<F>> parts;
        std::size_t o = 0;
        for (auto v : P.vertices) {
            parts.push_back(projective_indec(alg, v));
            P.offsets.push_back(o);
            o += parts.back()->dim();
        }
        std::string name;
        for (std::size_t k = 0; k < P.vertices.size(); ++k) name += (k ? "+" : "") + parts[k]->name();
        P.module = parts.size() == 1 ? parts.front() : direct_sum(parts, name).module;
        return P;
    }
};

/// The module map P -> Y sending generator k to images[k] (which must lie in e_v Y).
template <class F>
ModuleMap<F> map_from_generators(const ProjSum<F>& P, const ModPtr<F>& Y, const std::vector<Matrix<F>>& images) {
    const auto& alg = P.module->algebra();
    const F& f = alg->field();
    Matrix<F> m(f, Y->dim(), P.module->dim());
    for (std::size_t k = 0; k < P.count(); ++k) {
        const Matrix<F>& B = alg->vertex_basis(P.vertices[k]);
        for (std::size_t c = 0; c < B.cols(); ++c) m.set_block(0, P.offsets[k] + c, Y->act_of(B.col(c)) * images.at(k));
    }
    return {P.module, Y, std::move(m)};
}

template <class F>
std::vector<Matrix<F>> generator_images(const ProjSum<F>& P, const ModuleMap<F>& phi) {
    std::vector<Matrix<F>> out;
    for (std::size_t k = 0; k < P.count(); ++k) out.push_back(phi.matrix * P.generator(k));
    return out;
}

/// Solves p * x_k = targets[k] with x_k in e_{v_k} X; throws if impossible.
template <class F>
std::vector<Matrix<F>> lift_generators(const ProjSum<F>& P, const std::vector<Matrix<F>>& targets,
                                       const ModuleMap<F>& p) {
    std::vector<Matrix<F>> out;
    for (std::size_t k = 0; k < P.count(); ++k) {
        std::size_t v = P.vertices[k];
        const Matrix<F>& E = p.source->vertex_basis(v);
        const F& f = p.matrix.field();
        if (E.cols() == 0) {
            if (!targets[k].is_zero()) throw std::logic_error("lift through " + p.source->display_name() + " impossible");
            out.push_back(Matrix<F>(f, p.source->dim(), 1));
            continue;
        }
        auto u = solve(Matrix<F>(p.matrix * E), targets[k]);
        if (!u) throw std::logic_error("lift through " + p.source->display_name() + " impossible");
        out.push_back(E * *u);
    }
    return out;
}

template <class F>
ModuleMap<F> lift_map(const ProjSum<F>& P, const ModuleMap<F>& phi, const ModuleMap<F>& p) {
    return map_from_generators(P, p.source, lift_generators(P, generator_images(P, phi), p));
}

template <class F>
struct ProjectiveCover {
    ProjSum<F> P;
    ModuleMap<F> cover;
};

/// Minimal projective cover: generators lift a basis of the top vertex by vertex.
template <class F>
ProjectiveCover<F> projective_cover(const ModPtr<F>& M) {
    const auto& alg = M->algebra();
    Matrix<F> span = radical_module(M).inclusion.matrix;
    std::vector<std::size_t> verts;
    std::vector<Matrix<F>> gens;
    std::size_t r = span.cols() ? rank(span) : 0;
    for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
        const Matrix<F>& E = M->vertex_basis(v);
        for (std::size_t c = 0; c < E.cols(); ++c) {
            Matrix<F> cand = hstack(span, E.col(c));
            std::size_t nr = rank(cand);
            if (nr > r) {
                span = cand;
                r = nr;
                verts.push_back(v);
                gens.push_back(E.col(c));
            }
        }
    }
    auto P = ProjSum<F>::make(alg, verts);
    if (verts.empty()) return {P, ModuleMap<F>::zero(P.module, M)};
    return {P, map_from_generators(P, M, gens)};
}

template <class F>
struct InjectiveEnvelope {
    std::vector<std::size_t> vertices;
    ModPtr<F> module;
    ModuleMap<F> inflation;
};

/// Injective envelope M -> I(M), dual to the projective cover of D(M) over the opposite algebra.
template <class F>
InjectiveEnvelope<F> injective_envelope(const ModPtr<F>& M) {
    auto DM = dual_module(M);
    auto pc = projective_cover(DM);
    auto I = dual_module(pc.P.module);
    std::string name;
    for (std::size_t k = 0; k < pc.P.vertices.size(); ++k)
        name += (k ? "+" : "") + std::string("I") + M->algebra()->vertex_name(pc.P.vertices[k]);
    I = I->renamed(name.empty() ? "0" : name);
    return {pc.P.vertices, I, {M, I, pc.cover.matrix.transpose()}};
}

template <class F>
struct PullbackResult {
    ModPtr<F> module;
    ModuleMap<F> to_x;
    ModuleMap<F> to_y;
    ModuleMap<F> inclusion;  ///< W -> X (+) Y
};

/// Pull-back of f: X -> Z and g: Y -> Z.
template <class F>
PullbackResult<F> pullback(const ModuleMap<F>& f, const ModuleMap<F>& g) {
    if (!f.target->same_as(*g.target)) throw module_error("pullback: maps have different targets");
    auto S = direct_sum<F>({f.source, g.source});
    ModuleMap<F> h{S.module, f.target, hstack(f.matrix, Matrix<F>(-g.matrix))};
    auto K = kernel_module(h);
    return {K.module, compose(S.projections[0], K.inclusion), compose(S.projections[1], K.inclusion), K.inclusion};
}

template <class F>
struct PushoutResult {
    ModPtr<F> module;
    ModuleMap<F> from_x;
    ModuleMap<F> from_y;
    ModuleMap<F> projection;  ///< X (+) Y -> W
    Matrix<F> reps;
};

/// Push-out of f: Z -> X and g: Z -> Y.
template <class F>
PushoutResult<F> pushout(const ModuleMap<F>& f, const ModuleMap<F>& g) {
    if (!f.source->same_as(*g.source)) throw module_error("pushout: maps have different sources");
    auto S = direct_sum<F>({f.target, g.target});
    ModuleMap<F> h{f.source, S.module, vstack(f.matrix, Matrix<F>(-g.matrix))};
    auto C = cokernel_module(h);
    return {C.module, compose(C.projection, S.inclusions[0]), compose(C.projection, S.inclusions[1]), C.projection,
            C.reps};
}

/// Searches for an isomorphism among random combinations of a hom basis; certified by rank.
template <class F>
std::optional<ModuleMap<F>> find_isomorphism(const ModPtr<F>& M, const ModPtr<F>& N, std::uint64_t seed = 7,
                                             int trials = 64) {
    if (M->dim() != N->dim() || M->dim_vector() != N->dim_vector()) return std::nullopt;
    if (M->dim() == 0) return ModuleMap<F>::zero(M, N);
    auto basis = hom_space(M, N);
    if (basis.empty()) return std::nullopt;
    std::mt19937_64 rng(seed);
    const F& f = M->field();
    for (int t = 0; t < trials; ++t) {
        Matrix<F> c(f, basis.size(), 1);
        for (std::size_t k = 0; k < basis.size(); ++k) c(k, 0) = f.from_int(static_cast<long long>(rng() % 11) - 5);
        auto g = combine(basis, c, M, N);
        if (g.is_iso()) return g;
    }
    return std::nullopt;
}

template <class F>
bool is_isomorphic(const ModPtr<F>& M, const ModPtr<F>& N) {
    return find_isomorphism(M, N).has_value();
}

} // namespace phantomcat
