#include <CLI11.hpp>

#include <phantomcat/frobenius/inventory.hpp>
#include <phantomcat/frobenius/search.hpp>
#include <phantomcat/io/format.hpp>
#include <phantomcat/stablecat/stable.hpp>

#include "acceptance_suite.hpp"

#include <iostream>
#include <string>

using namespace phantomcat;

namespace {

class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Settings {
    std::string fixture;
    std::string file;
    std::string fixture_dir = FIXTURE_DIR;
    std::optional<std::size_t> bound;
    std::optional<std::size_t> n;
    std::uint64_t seed = acceptance::Options{}.seed;
    bool timing = false;
};

template <class F>
std::string row(const Matrix<F>& m) {
    std::string s = "[";
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) s += (i || j ? " " : "") + m.field().format(m(i, j));
    return s + "]";
}

/// A loaded workspace together with its context, resolving names of modules and maps.
template <class F>
class Session {
public:
    Session(Workspace<F> ws, const Settings& s) : ws_(std::move(ws)), settings_(s) {}

    const Workspace<F>& workspace() const { return ws_; }

    const Context<F>& ctx() {
        if (!ctx_) ctx_ = detect_context(ws_.algebra, settings_.n, settings_.bound);
        return *ctx_;
    }

    const std::vector<ModPtr<F>>& inv() {
        if (!inv_) inv_ = inventory(ctx());
        return *inv_;
    }

    /// Named modules, then S<v>, P<v>, I<v>, inventory names and Omega(X), Omega^-1(X).
    ModPtr<F> module(const std::string& name) {
        if (auto m = ws_.module(name)) return m;
        const auto& alg = ws_.algebra;
        for (std::size_t v = 0; v < alg->vertex_count(); ++v) {
            auto tag = alg->vertex_name(v);
            if (name == "S" + tag) return simple_module(alg, v);
            if (name == "P" + tag) return projective_indec(alg, v);
            if (name == "I" + tag) return injective_indec(alg, v);
        }
        auto inner = [&](const std::string& prefix) -> std::optional<std::string> {
            if (name.size() > prefix.size() + 1 && name.rfind(prefix, 0) == 0 && name.back() == ')')
                return name.substr(prefix.size(), name.size() - prefix.size() - 1);
            return std::nullopt;
        };
        if (auto x = inner("Omega(")) return ctx().syzygy(module(*x), 1)->renamed(name);
        if (auto x = inner("Omega^-1(")) return ctx().cosyzygy(module(*x), 1)->renamed(name);
        for (auto& M : inv())
            if (M->display_name() == name) return M;
        throw input_error("unknown module '" + name + "'");
    }

    /// Named maps, or id:<module>.
    ModuleMap<F> map(const std::string& name) {
        if (auto f = ws_.map(name)) return *f;
        if (name.rfind("id:", 0) == 0) return ModuleMap<F>::identity(module(name.substr(3)));
        throw input_error("unknown map '" + name + "'");
    }

private:
    Workspace<F> ws_;
    Settings settings_;
    std::shared_ptr<Context<F>> ctx_;
    std::optional<std::vector<ModPtr<F>>> inv_;
};

template <class F>
int cmd_load(Session<F>& s, std::ostream& out) {
    const auto& ws = s.workspace();
    const auto& alg = ws.algebra;
    out << "field " << ws.field.name() << "\n";
    out << "algebra dim " << alg->dim() << ", " << alg->vertex_count() << " vertices, " << alg->arrows().size()
        << " arrows\n";
    for (auto& [name, M] : ws.modules) out << "module " << name << " dim " << M->dim() << "\n";
    for (auto& [name, f] : ws.maps) out << "map " << name << " " << f.source->name() << " -> " << f.target->name() << "\n";
    return 0;
}

template <class F>
int cmd_check(Session<F>& s, std::ostream& out) {
    const auto& ws = s.workspace();
    const auto& alg = ws.algebra;
    bool ok = true;
    auto report = [&](bool pass, const std::string& what, const std::string& why = "") {
        out << (pass ? "ok " : "fail ") << what << (why.empty() ? "" : ": " + why) << "\n";
        ok = ok && pass;
    };
    try {
        Algebra<F>::make(alg->field(), alg->labels(), alg->left_mults(), alg->unit(), alg->idempotents(),
                         alg->radical());
        report(true, "algebra");
    } catch (const algebra_error& e) {
        report(false, "algebra", e.what());
    }
    for (auto& [name, M] : ws.modules) {
        try {
            Module<F>::make(alg, M->actions(), name);
            report(true, "module " + name);
        } catch (const module_error& e) {
            report(false, "module " + name, e.what());
        }
    }
    for (auto& [name, f] : ws.maps) report(f.intertwines(), "map " + name, f.intertwines() ? "" : "not a module map");
    auto text = dump(ws);
    auto again = parse_workspace_string(text);
    report(std::holds_alternative<Workspace<F>>(again) && dump(std::get<Workspace<F>>(again)) == text, "round trip");
    return ok ? 0 : 1;
}

template <class F>
int cmd_gorenstein(Session<F>& s, bool search, std::ostream& out) {
    if (search) {
        auto hit = search_gorenstein(s.workspace().field, 1);
        if (!hit) {
            out << "no parameter-one candidate over " << s.workspace().field.name() << "\n";
            return 1;
        }
        out << "found " << hit->description << " after " << hit->candidates_tried << " candidates\n";
        out << "parameter " << hit->parameter << "\n";
        return 0;
    }
    auto d = gorenstein_parameter(s.workspace().algebra);
    if (!d) throw input_error("algebra is not Iwanaga-Gorenstein within the search bound");
    const auto& ctx = s.ctx();
    out << "parameter " << *d << "\n";
    out << "n " << ctx.n() << "\n";
    out << "global dimension " << (has_finite_global_dimension(ctx) ? "finite" : "infinite") << "\n";
    for (auto& M : s.inv())
        out << M->display_name() << ": dim " << M->dim() << (is_n_projective(ctx, M) ? ", n-projective" : "")
            << (is_gproj(ctx, M) ? ", G-projective" : "") << "\n";
    return 0;
}

template <class F>
int cmd_stablehom(Session<F>& s, const std::string& m, const std::string& n, std::ostream& out) {
    auto M = s.module(m), N = s.module(n);
    auto H = stable_hom(s.ctx(), M, N);
    out << "dim " << H.dim() << "\n";
    auto reps = H.basis_classes();
    for (std::size_t i = 0; i < H.dim(); ++i) out << "basis " << i + 1 << ": " << row(reps.col(i).transpose()) << "\n";
    return 0;
}

template <class F>
int cmd_ring(Session<F>& s, const std::string& m, std::ostream& out) {
    auto R = ext_ring(s.ctx(), s.module(m));
    out << "dim " << R.dim << "\n";
    out << "identity " << row(R.identity.transpose()) << "\n";
    for (std::size_t i = 0; i < R.dim; ++i)
        for (std::size_t j = 0; j < R.dim; ++j)
            out << "e" << i + 1 << " * e" << j + 1 << " = " << row(R.product(i, j).transpose()) << "\n";
    return 0;
}

template <class F>
int cmd_omega(Session<F>& s, const std::string& m, const std::string& n, std::ostream& out) {
    auto w = omega_iso(s.ctx(), s.module(m), s.module(n));
    std::size_t r = w.rows() && w.cols() ? rank(w) : 0;
    out << "dim " << w.cols() << " -> " << w.rows() << "\n";
    out << "rank " << r << "\n";
    out << "bijective " << (r == w.cols() && r == w.rows() ? "true" : "false") << "\n";
    return 0;
}

template <class F>
int dispatch(Session<F>& s, const std::string& cmd, const std::vector<std::string>& args, bool search,
             std::ostream& out) {
    auto need = [&](std::size_t k) {
        if (args.size() != k) throw input_error(cmd + " expects " + std::to_string(k) + " arguments");
    };
    if (cmd == "load") return cmd_load(s, out);
    if (cmd == "check") return cmd_check(s, out);
    if (cmd == "dump") {
        out << dump(s.workspace());
        return 0;
    }
    if (cmd == "gorenstein") return cmd_gorenstein(s, search, out);
    if (cmd == "ext") {
        need(3);
        auto deg = std::stoul(args[2]);
        out << "dim " << ext_space(s.ctx(), s.module(args[0]), s.module(args[1]), deg)->dim() << "\n";
        return 0;
    }
    if (cmd == "pspace") {
        need(2);
        auto P = p_subspace(s.ctx(), s.module(args[0]), s.module(args[1]));
        out << "ext " << P->ext->dim() << "\nP " << P->p_dim() << "\nquotient " << P->dim() << "\n";
        return 0;
    }
    if (cmd == "sigma") {
        need(1);
        out << (is_quasi_invertible(s.ctx(), s.map(args[0])) ? "true" : "false") << "\n";
        return 0;
    }
    if (cmd == "phantom") {
        need(1);
        auto f = s.map(args[0]);
        out << (is_phantom(s.ctx(), f) ? "true" : "false") << "\n";
        out << "left " << (is_left_phantom(s.ctx(), f) ? "true" : "false") << "\n";
        return 0;
    }
    if (cmd == "stablehom") {
        need(2);
        return cmd_stablehom(s, args[0], args[1], out);
    }
    if (cmd == "ring") {
        need(1);
        return cmd_ring(s, args[0], out);
    }
    if (cmd == "omega") {
        need(2);
        return cmd_omega(s, args[0], args[1], out);
    }
    throw input_error("unknown command " + cmd);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Phantom stable categories of finite-dimensional algebras"};
    app.require_subcommand(1);
    Settings st;
    app.add_option("--fixture", st.fixture, "Shipped fixture: dual-numbers, trunc-poly-3, hereditary-a2, gorenstein-1-search");
    app.add_option("--file", st.file, "Workspace file");
    app.add_option("--fixtures-dir", st.fixture_dir, "Directory of the shipped fixtures");
    app.add_option("--bound", st.bound, "Resolution bound");
    app.add_option("--n", st.n, "Use n above the Gorenstein parameter");
    app.add_option("--seed", st.seed, "Seed for randomized sampling");
    app.add_flag("--timing", st.timing, "Print timings in suite reports");

    std::vector<std::string> args;
    bool search = false;
    std::string suite = "all";
    struct Sub {
        std::string name, help;
        std::size_t arity;
    };
    std::vector<Sub> subs{{"load", "Load a workspace and summarize it", 0},
                          {"check", "Re-run structural checks on the workspace", 0},
                          {"dump", "Print the workspace in file format", 0},
                          {"gorenstein", "Gorenstein parameter and inventory", 0},
                          {"ext", "dim Ext^n(M, N): M N n", 3},
                          {"pspace", "Ext^n(M, N) and its P-subspace: M N", 2},
                          {"sigma", "Quasi-invertibility of a map", 1},
                          {"phantom", "Right and left phantom tests of a map", 1},
                          {"stablehom", "Stable hom space: M N", 2},
                          {"ring", "Multiplication table of Ext^n(M, Omega^n M)/P", 1},
                          {"omega", "Syzygy map on stable homs: M N", 2}};
    for (auto& s : subs) {
        auto* c = app.add_subcommand(s.name, s.help);
        if (s.arity) c->add_option("args", args)->expected(static_cast<int>(s.arity))->required();
        if (s.name == "gorenstein") c->add_flag("--search", search, "Run the parameter-one search over the field");
    }
    auto* suite_cmd = app.add_subcommand("suite", "Run acceptance criteria: all or a number 1-13");
    suite_cmd->add_option("name", suite);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }
    std::string cmd = app.get_subcommands().front()->get_name();

    try {
        if (cmd == "suite") {
            acceptance::Options o;
            o.fixture_dir = st.fixture_dir;
            o.seed = st.seed;
            o.bound = st.bound;
            o.timing = st.timing;
            return acceptance::run_suite(o, suite, std::cout) ? 0 : 1;
        }
        if (st.fixture.empty() == st.file.empty()) throw input_error("give exactly one of --fixture and --file");
        std::string path = st.file.empty() ? st.fixture_dir + "/" + st.fixture + ".txt" : st.file;
        auto ws = load_workspace(path);
        return std::visit(
            [&](auto& w) {
                Session s(std::move(w), st);
                return dispatch(s, cmd, args, search, std::cout);
            },
            ws);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
