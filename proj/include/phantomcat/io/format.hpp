#pragma once

#include "../algmod/algebra.hpp"
#include "../algmod/module.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace phantomcat {

class parse_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An algebra with named modules and maps, in file order.
template <class F>
struct Workspace {
    using field_type = F;

    F field{};
    AlgebraPtr<F> algebra;
    std::vector<std::pair<std::string, ModPtr<F>>> modules;
    std::vector<std::pair<std::string, ModuleMap<F>>> maps;

    ModPtr<F> module(const std::string& name) const {
        for (auto& [k, m] : modules)
            if (k == name) return m;
        return nullptr;
    }

    const ModuleMap<F>* map(const std::string& name) const {
        for (auto& [k, f] : maps)
            if (k == name) return &f;
        return nullptr;
    }
};

using AnyWorkspace = std::variant<Workspace<Rationals>, Workspace<PrimeField>>;

namespace detail {

inline std::vector<std::string> split_words(const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

inline std::string strip_comment(const std::string& line) {
    auto p = line.find('#');
    std::string s = p == std::string::npos ? line : line.substr(0, p);
    while (!s.empty() && (s.back() == '\r' || s.back() == ' ' || s.back() == '\t')) s.pop_back();
    std::size_t b = 0;
    while (b < s.size() && (s[b] == ' ' || s[b] == '\t')) ++b;
    return s.substr(b);
}

inline std::size_t parse_count(const std::string& s) {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
        v = std::stoul(s, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != s.size() || s.empty() || s[0] == '-') throw parse_error("not a count: " + s);
    return v;
}

// rows separated by ';' (optional), entries by whitespace
template <class F>
Matrix<F> parse_matrix(const F& f, const std::vector<std::string>& words, std::size_t rows, std::size_t cols) {
    std::vector<typename F::value_type> entries;
    std::vector<std::size_t> row_ends;
    for (auto w : words) {
        bool ends = false;
        while (!w.empty() && w.back() == ';') {
            w.pop_back();
            ends = true;
        }
        if (w == "" && ends) {
            row_ends.push_back(entries.size());
            continue;
        }
        entries.push_back(f.parse(w));
        if (ends) row_ends.push_back(entries.size());
    }
    if (entries.size() != rows * cols)
        throw parse_error("expected " + std::to_string(rows * cols) + " entries for a " + std::to_string(rows) + "x" +
                          std::to_string(cols) + " matrix, got " + std::to_string(entries.size()));
    for (std::size_t k = 0; k < row_ends.size(); ++k)
        if (row_ends[k] != (k + 1) * cols && !(k + 1 == row_ends.size() && row_ends[k] == entries.size()))
            throw parse_error("row " + std::to_string(k + 1) + " does not have " + std::to_string(cols) + " entries");
    Matrix<F> m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j];
    return m;
}

template <class F>
std::vector<typename QuiverPresentation<F>::Term> parse_relation(const F& f, const QuiverPresentation<F>& q,
                                                                 const std::string& text) {
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s.empty()) throw parse_error("empty relation");
    std::vector<typename QuiverPresentation<F>::Term> out;
    std::size_t i = 0;
    while (i < s.size()) {
        bool negative = false;
        if (s[i] == '+' || s[i] == '-') {
            negative = s[i] == '-';
            ++i;
        } else if (!out.empty()) {
            throw parse_error("expected '+' or '-' in relation");
        }
        std::size_t j = i;
        while (j < s.size() && s[j] != '+' && !(s[j] == '-' && j > i && s[j - 1] != '*')) ++j;
        std::string term = s.substr(i, j - i);
        i = j;
        auto star = term.find('*');
        typename F::value_type c = f.one();
        std::string path = term;
        if (star != std::string::npos) {
            c = f.parse(term.substr(0, star));
            path = term.substr(star + 1);
        }
        if (negative) c = f.neg(c);
        if (path.empty()) throw parse_error("relation term without a path");
        std::vector<std::size_t> p;
        std::size_t a = 0;
        for (;;) {
            auto dot = path.find('.', a);
            p.push_back(q.arrow_index(path.substr(a, dot == std::string::npos ? std::string::npos : dot - a)));
            if (dot == std::string::npos) break;
            a = dot + 1;
        }
        for (std::size_t k = 0; k + 1 < p.size(); ++k)
            if (q.arrows[p[k]].target != q.arrows[p[k + 1]].source)
                throw parse_error("path " + path + " is not composable");
        out.push_back({c, p});
    }
    for (auto& t : out) {
        if (q.arrows[t.path.front()].source != q.arrows[out.front().path.front()].source ||
            q.arrows[t.path.back()].target != q.arrows[out.front().path.back()].target)
            throw parse_error("relation mixes paths with different endpoints");
    }
    return out;
}

template <class F>
class Parser {
public:
    Parser(F f, std::size_t bound) : bound_(bound) { ws_.field = std::move(f); }

    void line(std::size_t number, const std::vector<std::string>& w) {
        const auto& key = w.front();
        at_ = number;
        if (key == "quiver" || key == "algebra-table" || key == "module" || key == "map") {
            close();
            section_ = key;
            start_ = number;
            if (key == "quiver" || key == "algebra-table") algebra_start_ = number;
        }
        at_ = number;
        if (key == "quiver") {
            if (ws_.algebra || quiver_ || table_) throw parse_error("a second algebra section");
            quiver_.emplace();
            quiver_->field = ws_.field;
        } else if (key == "algebra-table") {
            if (ws_.algebra || quiver_ || table_) throw parse_error("a second algebra section");
            table_.emplace();
        } else if (key == "module") {
            build_algebra();
            at_ = number;
            if (w.size() != 2) throw parse_error("expected: module <name>");
            if (ws_.module(w[1])) throw parse_error("module " + w[1] + " defined twice");
            module_ = PendingModule{w[1], std::nullopt, {}};
        } else if (key == "map") {
            build_algebra();
            at_ = number;
            parse_map(w);
            section_.clear();
        } else if (section_ == "quiver") {
            quiver_line(w);
        } else if (section_ == "algebra-table") {
            table_line(w);
        } else if (section_ == "module") {
            module_line(w);
        } else {
            throw parse_error("unexpected '" + key + "'");
        }
    }

    Workspace<F> finish() {
        close();
        build_algebra();
        return std::move(ws_);
    }

    /// Line to blame for the current error.
    std::size_t at() const { return at_; }

private:
    struct Table {
        std::optional<std::size_t> dim;
        std::vector<std::string> labels;
        std::optional<Matrix<F>> unit;
        std::map<std::size_t, Matrix<F>> idem;
        std::vector<std::tuple<std::size_t, std::size_t, Matrix<F>>> mult;
        std::vector<Matrix<F>> radical;
    };
    struct PendingModule {
        std::string name;
        std::optional<std::size_t> dim;
        std::map<std::string, Matrix<F>> act;
    };

    Workspace<F> ws_;
    std::size_t bound_;
    std::string section_;
    std::size_t start_ = 0;
    std::size_t algebra_start_ = 0;
    std::size_t at_ = 0;
    std::optional<QuiverPresentation<F>> quiver_;
    std::optional<Table> table_;
    std::optional<PendingModule> module_;

    void close() {
        if (module_) {
            at_ = start_;
            auto m = std::move(*module_);
            module_.reset();
            finish_module(m);
        }
    }

    void build_algebra() {
        if (ws_.algebra) return;
        at_ = algebra_start_;
        if (quiver_) {
            if (quiver_->vertices.empty()) throw parse_error("quiver without vertices");
            ws_.algebra = algebra_from_quiver(*quiver_, bound_);
        } else if (table_) {
            ws_.algebra = build_table(*table_);
        } else {
            throw parse_error("no algebra section");
        }
    }

    void quiver_line(const std::vector<std::string>& w) {
        auto& q = *quiver_;
        if (w[0] == "vertex") {
            if (w.size() != 2) throw parse_error("expected: vertex <name>");
            for (auto& v : q.vertices)
                if (v == w[1]) throw parse_error("vertex " + w[1] + " defined twice");
            q.vertices.push_back(w[1]);
        } else if (w[0] == "arrow") {
            if (w.size() != 4) throw parse_error("expected: arrow <name> <source> <target>");
            for (auto& a : q.arrows)
                if (a.label == w[1]) throw parse_error("arrow " + w[1] + " defined twice");
            if (w[1].find_first_of(".*+-") != std::string::npos)
                throw parse_error("arrow name " + w[1] + " contains a reserved character");
            q.arrows.push_back({w[1], vertex(w[2]), vertex(w[3])});
        } else if (w[0] == "relation") {
            std::string rest;
            for (std::size_t k = 1; k < w.size(); ++k) rest += w[k];
            try {
                q.relations.push_back(parse_relation(ws_.field, q, rest));
            } catch (const algebra_error& e) {
                throw parse_error(e.what());
            }
        } else {
            throw parse_error("unexpected '" + w[0] + "' in quiver section");
        }
    }

    std::size_t vertex(const std::string& v) const {
        try {
            return quiver_->vertex_index(v);
        } catch (const algebra_error& e) {
            throw parse_error(e.what());
        }
    }

    Matrix<F> coords(const std::vector<std::string>& w, std::size_t from) const {
        if (!table_->dim) throw parse_error("dim must come first in algebra-table");
        return parse_matrix(ws_.field, std::vector<std::string>(w.begin() + from, w.end()), *table_->dim, 1);
    }

    std::size_t basis_index(const std::string& s) const {
        auto& t = *table_;
        for (std::size_t i = 0; i < t.labels.size(); ++i)
            if (t.labels[i] == s) return i;
        throw parse_error("unknown basis label '" + s + "'");
    }

    void table_line(const std::vector<std::string>& w) {
        auto& t = *table_;
        if (w[0] == "dim") {
            if (w.size() != 2 || t.dim) throw parse_error("expected a single: dim <d>");
            t.dim = parse_count(w[1]);
            for (std::size_t i = 0; i < *t.dim; ++i) t.labels.push_back("b" + std::to_string(i + 1));
        } else if (w[0] == "labels") {
            if (!t.dim) throw parse_error("dim must come first in algebra-table");
            if (w.size() != *t.dim + 1) throw parse_error("expected " + std::to_string(*t.dim) + " labels");
            t.labels.assign(w.begin() + 1, w.end());
        } else if (w[0] == "unit") {
            t.unit = coords(w, 1);
        } else if (w[0] == "e") {
            if (w.size() < 2) throw parse_error("expected: e <i> <coords>");
            std::size_t i = parse_count(w[1]);
            if (i == 0 || t.idem.count(i)) throw parse_error("bad or repeated idempotent index " + w[1]);
            t.idem.emplace(i, coords(w, 2));
        } else if (w[0] == "mult") {
            if (w.size() < 4 || w[3] != "->") throw parse_error("expected: mult <i> <j> -> <coords>");
            t.mult.emplace_back(basis_index(w[1]), basis_index(w[2]), coords(w, 4));
        } else if (w[0] == "radical") {
            t.radical.push_back(coords(w, 1));
        } else {
            throw parse_error("unexpected '" + w[0] + "' in algebra-table section");
        }
    }

    AlgebraPtr<F> build_table(const Table& t) {
        if (!t.dim) throw parse_error("algebra-table without dim");
        std::size_t d = *t.dim;
        const F& f = ws_.field;
        if (!t.unit) throw parse_error("algebra-table without unit");
        std::vector<Matrix<F>> mult(d, Matrix<F>(f, d, d));
        for (auto& [i, j, c] : t.mult) mult[i].set_block(0, j, c);
        std::vector<Matrix<F>> idem;
        for (auto& [i, e] : t.idem) {
            if (i != idem.size() + 1) throw parse_error("idempotent indices must run 1.." + std::to_string(t.idem.size()));
            idem.push_back(e);
        }
        Matrix<F> rad(f, d, 0);
        for (auto& r : t.radical) rad = hstack(rad, r);
        return Algebra<F>::make(f, t.labels, mult, *t.unit, idem, rad);
    }

    void module_line(const std::vector<std::string>& w) {
        auto& m = *module_;
        if (w[0] == "dim") {
            if (w.size() != 2 || m.dim) throw parse_error("expected a single: dim <d>");
            m.dim = parse_count(w[1]);
        } else if (w[0] == "act") {
            if (!m.dim) throw parse_error("dim must come first in a module section");
            if (w.size() < 2) throw parse_error("expected: act <label> <matrix>");
            if (m.act.count(w[1])) throw parse_error("action of " + w[1] + " given twice");
            ws_.algebra->label_index(w[1]);
            m.act.emplace(w[1], parse_matrix(ws_.field, std::vector<std::string>(w.begin() + 2, w.end()), *m.dim,
                                             *m.dim));
        } else {
            throw parse_error("unexpected '" + w[0] + "' in module section");
        }
    }

    void finish_module(const PendingModule& m) {
        const auto& alg = ws_.algebra;
        if (!m.dim) throw parse_error("module " + m.name + " without dim");
        const F& f = ws_.field;
        std::size_t d = *m.dim;
        bool all = true;
        for (auto& l : alg->labels()) all = all && m.act.count(l);
        ModPtr<F> M;
        if (all || d == 0) {
            std::vector<Matrix<F>> act;
            for (auto& l : alg->labels()) act.push_back(d == 0 ? Matrix<F>(f, 0, 0) : m.act.at(l));
            M = Module<F>::make(alg, act, m.name);
        } else if (alg->quiver()) {
            const auto& q = *alg->quiver();
            std::vector<Matrix<F>> va, aa;
            for (std::size_t v = 0; v < q.vertices.size(); ++v) {
                std::string key;
                for (std::size_t i = 0; i < alg->dim(); ++i)
                    if (alg->trivial_vertex(i) == v) key = alg->labels()[i];
                if (!m.act.count(key)) throw parse_error("module " + m.name + ": missing action of " + key);
                va.push_back(m.act.at(key));
            }
            for (auto& a : q.arrows) {
                if (!m.act.count(a.label))
                    throw parse_error("module " + m.name + ": missing action of " + a.label);
                aa.push_back(m.act.at(a.label));
            }
            M = Module<F>::from_representation(alg, va, aa, m.name);
            for (auto& [l, mat] : m.act)
                if (M->act(alg->label_index(l)) != mat)
                    throw parse_error("module " + m.name + ": action of " + l + " disagrees with the arrows");
        } else {
            for (auto& l : alg->labels())
                if (!m.act.count(l)) throw parse_error("module " + m.name + ": missing action of " + l);
        }
        ws_.modules.emplace_back(m.name, M);
    }

    void parse_map(const std::vector<std::string>& w) {
        if (w.size() < 4) throw parse_error("expected: map <name> <source> <target> <matrix>");
        if (ws_.map(w[1])) throw parse_error("map " + w[1] + " defined twice");
        auto s = ws_.module(w[2]), t = ws_.module(w[3]);
        if (!s) throw parse_error("unknown module " + w[2]);
        if (!t) throw parse_error("unknown module " + w[3]);
        auto mat = parse_matrix(ws_.field, std::vector<std::string>(w.begin() + 4, w.end()), t->dim(), s->dim());
        ws_.maps.emplace_back(w[1], ModuleMap<F>::make(s, t, mat));
    }
};

template <class F>
Workspace<F> parse_body(F f, const std::vector<std::pair<std::size_t, std::vector<std::string>>>& lines,
                        std::size_t bound) {
    Parser<F> p(std::move(f), bound);
    try {
        for (auto& [n, w] : lines) p.line(n, w);
        return p.finish();
    } catch (const std::invalid_argument& e) {
        throw parse_error("line " + std::to_string(p.at()) + ": " + e.what());
    } catch (const std::out_of_range&) {
        throw parse_error("line " + std::to_string(p.at()) + ": number out of range");
    }
}

} // namespace detail

/// Reads the line-oriented workspace format; `bound` limits path lengths for quiver algebras.
inline AnyWorkspace parse_workspace(std::istream& in, std::size_t bound = 12) {
    std::vector<std::pair<std::size_t, std::vector<std::string>>> lines;
    std::string raw;
    std::size_t n = 0;
    while (std::getline(in, raw)) {
        ++n;
        auto s = detail::strip_comment(raw);
        if (!s.empty()) lines.emplace_back(n, detail::split_words(s));
    }
    if (lines.empty() || lines.front().second[0] != "field")
        throw parse_error("line " + std::to_string(lines.empty() ? n : lines.front().first) +
                          ": the first entry must be 'field Q' or 'field F <p>'");
    auto [fl, w] = lines.front();
    lines.erase(lines.begin());
    if (w.size() == 2 && w[1] == "Q") return detail::parse_body(Rationals{}, lines, bound);
    if (w.size() == 3 && w[1] == "F") {
        unsigned long p = 0;
        try {
            std::size_t pos = 0;
            p = std::stoul(w[2], &pos);
            if (pos != w[2].size()) throw std::invalid_argument(w[2]);
            return detail::parse_body(PrimeField(static_cast<std::uint32_t>(p)), lines, bound);
        } catch (const parse_error&) {
            throw;
        } catch (const std::exception& e) {
            throw parse_error("line " + std::to_string(fl) + ": bad prime: " + e.what());
        }
    }
    throw parse_error("line " + std::to_string(fl) + ": expected 'field Q' or 'field F <p>'");
}

inline AnyWorkspace parse_workspace_string(const std::string& text, std::size_t bound = 12) {
    std::istringstream in(text);
    return parse_workspace(in, bound);
}

inline AnyWorkspace load_workspace(const std::string& path, std::size_t bound = 12) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open " + path);
    return parse_workspace(in, bound);
}

namespace detail {

template <class F>
std::string format_entries(const Matrix<F>& m) {
    std::string s;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (i) s += " ;";
        for (std::size_t j = 0; j < m.cols(); ++j) s += " " + m.field().format(m(i, j));
    }
    return s;
}

} // namespace detail

/// Writes a workspace in the format read by parse_workspace.
template <class F>
std::string dump(const Workspace<F>& ws) {
    std::ostringstream out;
    const F& f = ws.field;
    const auto& alg = ws.algebra;
    if (f.characteristic() == 0)
        out << "field Q\n";
    else
        out << "field F " << f.characteristic() << "\n";
    if (alg->quiver()) {
        const auto& q = *alg->quiver();
        out << "\nquiver\n";
        for (auto& v : q.vertices) out << "vertex " << v << "\n";
        for (auto& a : q.arrows) out << "arrow " << a.label << " " << q.vertices[a.source] << " " << q.vertices[a.target] << "\n";
        for (auto& r : q.relations) {
            out << "relation";
            for (std::size_t k = 0; k < r.size(); ++k)
                out << (k ? " + " : " ") << f.format(r[k].coeff) << "*" << q.path_label(r[k].path);
            out << "\n";
        }
    } else {
        std::size_t d = alg->dim();
        out << "\nalgebra-table\ndim " << d << "\nlabels";
        for (auto& l : alg->labels()) out << " " << l;
        out << "\nunit" << detail::format_entries(alg->unit().transpose()) << "\n";
        for (std::size_t v = 0; v < alg->vertex_count(); ++v)
            out << "e " << v + 1 << detail::format_entries(alg->idempotent(v).transpose()) << "\n";
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) {
                auto c = alg->left_mult(i).block(0, j, d, 1);
                if (!c.is_zero())
                    out << "mult " << alg->labels()[i] << " " << alg->labels()[j] << " ->"
                        << detail::format_entries(c.transpose()) << "\n";
            }
        for (std::size_t r = 0; r < alg->radical().cols(); ++r)
            out << "radical" << detail::format_entries(alg->radical().block(0, r, d, 1).transpose()) << "\n";
    }
    for (auto& [name, M] : ws.modules) {
        out << "\nmodule " << name << "\ndim " << M->dim() << "\n";
        if (M->dim() == 0) continue;
        for (std::size_t i = 0; i < alg->dim(); ++i)
            out << "act " << alg->labels()[i] << detail::format_entries(M->act(i)) << "\n";
    }
    if (!ws.maps.empty()) out << "\n";
    for (auto& [name, g] : ws.maps) {
        std::string src, dst;
        for (auto& [k, m] : ws.modules) {
            if (m == g.source && src.empty()) src = k;
            if (m == g.target && dst.empty()) dst = k;
        }
        if (src.empty() || dst.empty()) throw parse_error("map " + name + " refers to an unnamed module");
        out << "map " << name << " " << src << " " << dst << detail::format_entries(g.matrix) << "\n";
    }
    return out.str();
}

} // namespace phantomcat
