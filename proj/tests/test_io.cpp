#include <catch_amalgamated.hpp>

#include <phantomcat/algmod/catalog.hpp>
#include <phantomcat/frobenius/frobenius.hpp>
#include <phantomcat/frobenius/search.hpp>
#include <phantomcat/io/format.hpp>

#include "oracles.hpp"

#include <random>
#include <string>

using namespace phantomcat;

namespace {

std::string fixture(const std::string& name) { return std::string(FIXTURE_DIR) + "/" + name + ".txt"; }

template <class F>
Workspace<F> load_as(const std::string& name) {
    return std::get<Workspace<F>>(load_workspace(fixture(name)));
}

template <class F>
bool same_structure(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b) {
    return a->dim() == b->dim() && a->left_mults() == b->left_mults() && a->unit() == b->unit() &&
           a->idempotents() == b->idempotents();
}

std::string error_of(const std::string& text) {
    try {
        parse_workspace_string(text);
    } catch (const parse_error& e) {
        return e.what();
    }
    return "";
}

const char* square = R"(field Q
quiver
vertex 1
vertex 2
vertex 3
vertex 4
arrow a 1 2
arrow b 2 4
arrow c 1 3
arrow d 3 4
relation 2*a.b + -2*c.d
)";

} // namespace

TEST_CASE("fixtures load as the catalog algebras") {
    auto dn = load_as<PrimeField>("dual-numbers");
    CHECK(same_structure(dn.algebra, truncated_polynomial(PrimeField(2), 2)));
    CHECK(is_isomorphic(dn.module("S"), simple_module(dn.algebra, 0)));
    CHECK(is_isomorphic(dn.module("P"), projective_indec(dn.algebra, 0)));
    CHECK(dn.maps.size() == 4);

    auto t3 = load_as<PrimeField>("trunc-poly-3");
    CHECK(same_structure(t3.algebra, truncated_polynomial(PrimeField(3), 3)));
    CHECK(t3.module("M")->dim() == 2);
    CHECK(is_isomorphic(t3.module("P"), projective_indec(t3.algebra, 0)));

    auto a2 = load_as<Rationals>("hereditary-a2");
    CHECK(same_structure(a2.algebra, linear_quiver(Rationals{}, 2)));
    CHECK(a2.algebra->dim() == 3);
    CHECK(is_isomorphic(a2.module("P1"), projective_indec(a2.algebra, 0)));
    CHECK(is_isomorphic(a2.module("S2"), simple_module(a2.algebra, 1)));
    CHECK(a2.map("half")->matrix(0, 0) == Rationals{}.parse("1/2"));
}

TEST_CASE("the Gorenstein fixture is the first search hit") {
    auto ws = load_as<PrimeField>("gorenstein-1-search");
    auto hit = search_gorenstein(PrimeField(3));
    REQUIRE(hit);
    CHECK(hit->parameter == 1);
    CHECK(same_structure(ws.algebra, hit->algebra));
    CHECK(gorenstein_parameter(ws.algebra) == std::optional<std::size_t>(1));
    for (std::size_t v = 0; v < 2; ++v) {
        auto tag = std::to_string(v + 1);
        CHECK(is_isomorphic(ws.module("S" + tag), simple_module(ws.algebra, v)));
        CHECK(is_isomorphic(ws.module("P" + tag), projective_indec(ws.algebra, v)));
        CHECK(is_isomorphic(ws.module("I" + tag), injective_indec(ws.algebra, v)));
    }
}

TEST_CASE("dump then parse reproduces every fixture") {
    for (auto name : {"dual-numbers", "trunc-poly-3", "hereditary-a2", "gorenstein-1-search"}) {
        auto any = load_workspace(fixture(name));
        std::visit(
            [&](const auto& ws) {
                using W = std::decay_t<decltype(ws)>;
                auto text = dump(ws);
                auto again = std::get<W>(parse_workspace_string(text));
                CHECK(dump(again) == text);
                CHECK(same_structure(again.algebra, ws.algebra));
                REQUIRE(again.modules.size() == ws.modules.size());
                for (std::size_t i = 0; i < ws.modules.size(); ++i)
                    CHECK(again.modules[i].second->actions() == ws.modules[i].second->actions());
                for (std::size_t i = 0; i < ws.maps.size(); ++i)
                    CHECK(again.maps[i].second.matrix == ws.maps[i].second.matrix);
            },
            any);
    }
}

TEST_CASE("random modules survive a round trip") {
    std::mt19937_64 rng(7);
    auto alg = triangular_matrix_algebra(truncated_polynomial(PrimeField(3), 2));
    auto quiv = cyclic_nakayama(PrimeField(5), {3, 2});
    for (int trial = 0; trial < 20; ++trial) {
        for (const auto& A : {alg, quiv}) {
            Workspace<PrimeField> ws{A->field(), A, {}, {}};
            auto M = oracle::random_module(A, rng);
            auto N = oracle::random_module(A, rng);
            ws.modules = {{"M", M}, {"N", N}};
            ws.maps = {{"f", oracle::random_map(M, N, rng)}};
            auto again = std::get<Workspace<PrimeField>>(parse_workspace_string(dump(ws)));
            CHECK(same_structure(again.algebra, A));
            CHECK(again.module("M")->actions() == M->actions());
            CHECK(again.module("N")->actions() == N->actions());
            CHECK(again.map("f")->matrix == ws.maps[0].second.matrix);
        }
    }
}

TEST_CASE("commutativity relations with coefficients") {
    auto ws = std::get<Workspace<Rationals>>(parse_workspace_string(square));
    // four trivial paths, four arrows, one surviving length-two path
    CHECK(ws.algebra->dim() == 9);
    auto again = std::get<Workspace<Rationals>>(parse_workspace_string(dump(ws)));
    CHECK(same_structure(again.algebra, ws.algebra));

    auto minus = std::get<Workspace<Rationals>>(parse_workspace_string(
        "field Q\nquiver\nvertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a 1 2\narrow b 2 4\narrow c 1 3\narrow d 3 4\n"
        "relation a.b - c.d\n"));
    CHECK(same_structure(minus.algebra, ws.algebra));
}

TEST_CASE("modules may be given by vertex and arrow matrices alone") {
    std::string text = std::string(square) + R"(
module R
dim 2
act e1 1 0 ; 0 0
act e4 0 0 ; 0 1
act e2 0 0 ; 0 0
act e3 0 0 ; 0 0
act a 0 0 ; 0 0
act b 0 0 ; 0 0
act c 0 0 ; 0 0
act d 0 0 ; 0 0
)";
    auto ws = std::get<Workspace<Rationals>>(parse_workspace_string(text));
    CHECK(ws.module("R")->dim() == 2);
    CHECK(ws.module("R")->act(ws.algebra->dim() - 1).is_zero());

    // a.b acts through a and b while c.d acts as zero
    std::string line = std::string(square) + R"(
module L
dim 3
act e1 1 0 0 ; 0 0 0 ; 0 0 0
act e2 0 0 0 ; 0 1 0 ; 0 0 0
act e3 0 0 0 ; 0 0 0 ; 0 0 0
act e4 0 0 0 ; 0 0 0 ; 0 0 1
act a 0 0 0 ; 1 0 0 ; 0 0 0
act b 0 0 0 ; 0 0 0 ; 0 1 0
act c 0 0 0 ; 0 0 0 ; 0 0 0
act d 0 0 0 ; 0 0 0 ; 0 0 0
)";
    CHECK_THAT(error_of(line), Catch::Matchers::ContainsSubstring("line 13"));
    CHECK_THAT(error_of(line), Catch::Matchers::ContainsSubstring("respect"));
}

TEST_CASE("errors carry line numbers") {
    using Catch::Matchers::ContainsSubstring;
    CHECK_THAT(error_of("# nothing\nquiver\n"), ContainsSubstring("line 2: the first entry must be"));
    CHECK_THAT(error_of("field F 4\n"), ContainsSubstring("line 1: bad prime"));
    CHECK_THAT(error_of("field R\n"), ContainsSubstring("line 1"));

    std::string dn = "field F 2\nquiver\nvertex 1\narrow x 1 1\nrelation x.x\n";
    CHECK_THAT(error_of(dn + "module S\ndim 1\nact e1 1 1\n"), ContainsSubstring("line 8: expected 1 entries"));
    CHECK_THAT(error_of(dn + "module S\ndim 1\nact e1 1\n"), ContainsSubstring("line 6: module S: missing action of x"));
    CHECK_THAT(error_of(dn + "module S\ndim 1\nact e1 1\nact y 0\n"), ContainsSubstring("line 9: unknown basis label 'y'"));
    CHECK_THAT(error_of(dn + "module S\ndim 1\nact e1 1\nact x 0\nmap f S T 1\n"),
               ContainsSubstring("line 10: unknown module T"));
    CHECK_THAT(error_of(dn + "module P\ndim 2\nact e1 1 0 ; 0 1\nact x 0 0 ; 1 0\nmap f P P 0 1 ; 0 0\n"),
               ContainsSubstring("does not intertwine"));
    CHECK_THAT(error_of(dn + "module P\ndim 2\nact e1 1 0 ; 0 1\nact x 0 0 ; 1 0\nmap f P P 1 0 0 ; 1\n"),
               ContainsSubstring("row 1 does not have 2 entries"));
    CHECK_THAT(error_of("field Q\nquiver\nvertex 1\narrow x 1 2\n"), ContainsSubstring("line 4: unknown vertex '2'"));
    CHECK_THAT(error_of("field Q\nquiver\nvertex 1\nvertex 2\narrow a 1 2\narrow b 2 1\nrelation a.a\n"),
               ContainsSubstring("line 7: path a.a is not composable"));
    CHECK_THAT(error_of("field Q\nquiver\nvertex 1\nvertex 2\narrow a 1 2\narrow b 1 2\nrelation a - b.b\n"),
               ContainsSubstring("line 7"));
    CHECK_THAT(error_of("field Q\nquiver\nvertex 1\narrow x 1 1\n"), ContainsSubstring("not finite-dimensional"));
    CHECK_THAT(error_of("field Q\nmodule S\n"), ContainsSubstring("no algebra section"));
}

TEST_CASE("a non-associative table is rejected at its header") {
    // basis 1, u, v with u*u = v but v*u = u: (u*u)*u = v*u = u while u*(u*u) = u*v = 0
    std::string text = R"(field Q
# broken
algebra-table
dim 3
labels 1 u v
unit 1 0 0
e 1 1 0 0
mult 1 1 -> 1 0 0
mult 1 u -> 0 1 0
mult 1 v -> 0 0 1
mult u 1 -> 0 1 0
mult v 1 -> 0 0 1
mult u u -> 0 0 1
mult v u -> 0 1 0
radical 0 1 0
radical 0 0 1
)";
    auto e = error_of(text);
    CHECK_THAT(e, Catch::Matchers::ContainsSubstring("line 3: structure constants are not associative at product"));
}

TEST_CASE("a well-formed table parses") {
    std::string text = R"(field F 5
algebra-table
dim 2
labels 1 x
unit 1 0
e 1 1 0
mult 1 1 -> 1 0
mult 1 x -> 0 1
mult x 1 -> 0 1
radical 0 1
module S
dim 1
act 1 1
act x 0
)";
    auto ws = std::get<Workspace<PrimeField>>(parse_workspace_string(text));
    CHECK(ws.field.characteristic() == 5);
    CHECK(ws.algebra->dim() == 2);
    CHECK(!ws.algebra->quiver());
    CHECK(ws.module("S")->dim() == 1);
    CHECK(dump(std::get<Workspace<PrimeField>>(parse_workspace_string(dump(ws)))) == dump(ws));
}
