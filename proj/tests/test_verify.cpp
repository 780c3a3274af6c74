#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "crys/monomial_crystal.hpp"
#include "crys/verify.hpp"

using namespace crys;

static CMatrix std_c2() { return CMatrix({{0, 0}, {1, 0}}); }

static CrystalGraph adjoint_a2() {
    auto spec = parse_cartan("A2");
    auto h = make_monomial_handle(spec, MonomialRule::variant(std_c2()));
    return explore(h, {Elem(hw_monomial(Weight({1, 1})))});
}

TEST_CASE("axioms, semi-normality and normality on the A2 adjoint") {
    auto g = adjoint_a2();
    REQUIRE(g.size() == 8);
    CHECK(check_crystal_axioms(g).verdict == Verdict::Pass);
    CHECK(is_semi_normal(g).verdict == Verdict::Pass);
    CHECK(check_normal(g, g.spec).verdict == Verdict::Pass);
    CHECK(stembridge_check(g, g.spec).verdict == Verdict::Pass);
    auto rep = check_component_is_Blam(g, g.spec, Weight({1, 1}));
    CHECK(rep.verdict == Verdict::Pass);
}

TEST_CASE("check_component_is_Blam rejects the wrong weight") {
    auto g = adjoint_a2();
    CHECK(check_component_is_Blam(g, g.spec, Weight({2, 0})).verdict ==
          Verdict::Fail);
}

TEST_CASE("original rule reports EXPECTED_FAIL on the inverse axiom") {
    auto spec = parse_cartan("A1");
    auto h = make_monomial_handle(spec, MonomialRule::original());
    auto g = explore(h, {Elem(parse_monomial("Y1(1) Y1(2)^-1", spec))});
    auto rep = check_crystal_axioms(g);
    CHECK(rep.verdict == Verdict::ExpectedFail);
    bool inverse_witness = false;
    for (const auto& w : rep.witnesses)
        inverse_witness |= w.detail.find("inverse") != std::string::npos;
    CHECK(inverse_witness);
}

TEST_CASE("truncated affine graphs come back inconclusive, not failing") {
    auto spec = parse_cartan("A1~");
    auto h = make_monomial_handle(
        spec, MonomialRule::variant(CMatrix({{0, 0}, {1, 0}})));
    ExploreOptions opt;
    opt.depth = 4;
    auto g = explore(h, {Elem(hw_monomial(Weight({1, 0})))}, opt);
    CHECK(g.truncated);
    CHECK(check_crystal_axioms(g).verdict == Verdict::Pass);
    auto rep = check_component_is_Blam(g, spec, Weight({1, 0}));
    CHECK(rep.verdict == Verdict::Inconclusive);
}

TEST_CASE("Stembridge is out of scope for B2") {
    auto spec = parse_cartan("B2");
    auto h = make_monomial_handle(spec, MonomialRule::variant(std_c2()));
    auto g = explore(h, {Elem(hw_monomial(Weight({0, 1})))});
    CHECK(g.size() == 4);
    CHECK(stembridge_check(g, spec).verdict == Verdict::Inconclusive);
    CHECK(check_component_is_Blam(g, spec, Weight({0, 1})).verdict ==
          Verdict::Pass);
}

TEST_CASE("mutations are detected from cached data alone") {
    auto g = adjoint_a2();
    REQUIRE(!g.edges.empty());

    auto deleted = mutate_delete_edge(g, 0);
    CHECK_FALSE(deleted.has_handle());
    bool caught = check_crystal_axioms(deleted).verdict == Verdict::Fail ||
                  is_semi_normal(deleted).verdict == Verdict::Fail ||
                  check_normal(deleted, g.spec).verdict == Verdict::Fail;
    CHECK(caught);

    int other = g.edges[0].i == 0 ? 1 : 0;
    auto relabeled = mutate_relabel_edge(g, 0, other);
    caught = check_crystal_axioms(relabeled).verdict == Verdict::Fail ||
             is_semi_normal(relabeled).verdict == Verdict::Fail ||
             stembridge_check(relabeled, g.spec).verdict == Verdict::Fail;
    CHECK(caught);

    auto off = mutate_eps_off_by_one(g, 0, 0);
    caught = check_crystal_axioms(off).verdict == Verdict::Fail ||
             is_semi_normal(off).verdict == Verdict::Fail;
    CHECK(caught);
}

TEST_CASE("witnesses re-check standalone") {
    auto g = adjoint_a2();
    auto off = mutate_eps_off_by_one(g, 0, 0);
    auto rep = check_crystal_axioms(off);
    REQUIRE(rep.verdict == Verdict::Fail);
    REQUIRE(!rep.witnesses.empty());
    // the witness names a node whose cached eps disagrees with phi - wt
    const auto& nd = off.nodes[0];
    CHECK(nd.phi[0].value() - nd.eps[0].value() != nd.wt[0]);
}

TEST_CASE("report JSON and exit codes") {
    CheckReport r;
    r.name = "demo";
    r.add_fail("x", "1", "broken");
    auto j = r.to_json();
    CHECK(j["check"] == "demo");
    CHECK(j["verdict"] == "FAIL");
    CHECK(j["witnesses"].size() == 1);

    CheckReport pass;
    pass.name = "p";
    CheckReport inc;
    inc.name = "i";
    inc.verdict = Verdict::Inconclusive;
    CheckReport exp;
    exp.name = "e";
    exp.verdict = Verdict::ExpectedFail;
    CHECK(reports_exit_code({pass, exp}) == 0);
    CHECK(reports_exit_code({pass, inc}) == 2);
    CHECK(reports_exit_code({pass, inc, r}) == 1);
}

TEST_CASE("Phi image on simple inputs") {
    auto spec = parse_cartan("A2");
    CMatrix c = std_c2();
    // all z = 0, one dominant lambda(0)
    std::map<int, Weight> lam{{0, Weight({1, 2})}};
    auto img = phi_image(spec, c, {}, lam);
    CHECK(img == parse_monomial("Y1(0) Y2(0)^2", spec));
    // z_1(0) = -1, lambda = 0: the image is A_1(0)^-1
    auto img2 = phi_image(spec, c, {{0, {-1, 0}}}, {});
    CHECK(img2 == a_monomial_variant(spec, c, 0, 0).inverse());
    auto mc = make_monomial_handle(spec, MonomialRule::variant(c));
    CHECK(mc->eps(Elem(img2), 0) == ExtInt(2));
}

TEST_CASE("Phi morphism spot run") {
    PhiMorphismConfig cfg;
    cfg.samples = 25;
    auto rep = phi_rank2_morphism_check(parse_cartan("A2"), cfg);
    CHECK(rep.verdict == Verdict::Pass);
    CHECK(rep.nodes_visited == 25);
    CHECK_THROWS(phi_rank2_morphism_check(parse_cartan("A3"), cfg));
}
