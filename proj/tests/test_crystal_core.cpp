#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "crys/crystal.hpp"
#include "crys/graph.hpp"

using namespace crys;

static CartanSpec a1() { return parse_cartan("A1"); }
static CartanSpec a2() { return parse_cartan("A2"); }

TEST_CASE("T_lambda is frozen") {
    auto t = std::make_shared<TLambdaCrystal>(a2(), Weight({1, 2}));
    Elem e = t->element();
    CHECK(t->wt(e) == Weight({1, 2}));
    CHECK(t->eps(e, 0) == ExtInt::minus_inf());
    CHECK(t->phi(e, 1) == ExtInt::minus_inf());
    CHECK_FALSE(t->raise(e, 0));
    CHECK_FALSE(t->lower(e, 1));
}

TEST_CASE("elementary crystal B_i") {
    auto b = std::make_shared<ElementaryBCrystal>(a2(), 0);
    Elem e = b->element(2);
    CHECK(b->wt(e) == Weight({4, -2}));  // 2 * alpha_1 in pairing coords
    CHECK(b->eps(e, 0) == ExtInt(-2));
    CHECK(b->phi(e, 0) == ExtInt(2));
    CHECK(b->eps(e, 1) == ExtInt::minus_inf());
    CHECK(*b->lower(e, 0) == b->element(1));
    CHECK(*b->raise(e, 0) == b->element(3));
    CHECK_FALSE(b->lower(e, 1));
}

TEST_CASE("tensor convention golden case") {
    // A1: f~(b(0) (x) b(0)) must act on the right factor
    auto b = std::make_shared<ElementaryBCrystal>(a1(), 0);
    auto bb = tensor(b, b);
    Elem t = Elem::tensor(b->element(0), b->element(0));
    auto down = bb->lower(t, 0);
    REQUIRE(down);
    CHECK(*down == Elem::tensor(b->element(0), b->element(-1)));
    // e~ prefers the left factor on the tie
    auto up = bb->raise(t, 0);
    REQUIRE(up);
    CHECK(*up == Elem::tensor(b->element(1), b->element(0)));
}

TEST_CASE("tensor eps and phi formulas") {
    auto b = std::make_shared<ElementaryBCrystal>(a1(), 0);
    auto bb = tensor(b, b);
    Elem t = Elem::tensor(b->element(1), b->element(-2));
    // eps = max(eps_a, eps_b - <h, wt a>) = max(-1, 2 - 2) = 0
    CHECK(bb->eps(t, 0) == ExtInt(0));
    // phi = max(phi_b, phi_a + <h, wt b>) = max(-2, 1 - 4) = -2
    CHECK(bb->phi(t, 0) == ExtInt(-2));
    CHECK(bb->wt(t) == Weight({-2}));
}

TEST_CASE("tensor with frozen right factor") {
    auto b = std::make_shared<ElementaryBCrystal>(a2(), 0);
    auto t = std::make_shared<TLambdaCrystal>(a2(), Weight({3, 0}));
    auto bt = tensor(b, t);
    Elem e = Elem::tensor(b->element(0), t->element());
    CHECK(bt->eps(e, 0) == ExtInt(0));
    CHECK(bt->phi(e, 0) == ExtInt(3));
    CHECK(bt->eps(e, 1) == ExtInt::minus_inf());
    auto down = bt->lower(e, 0);
    REQUIRE(down);
    CHECK(down->as_pair().a->as_b().n == -1);
}

TEST_CASE("tensor rejects mismatched Cartan data") {
    auto x = std::make_shared<ElementaryBCrystal>(a1(), 0);
    auto y = std::make_shared<ElementaryBCrystal>(a2(), 0);
    CHECK_THROWS(tensor(x, y));
}

TEST_CASE("dual crystal") {
    auto b = std::make_shared<ElementaryBCrystal>(a2(), 0);
    auto d = dual(b);
    Elem e = Elem::dual_of(b->element(2));
    CHECK(d->wt(e) == -b->wt(b->element(2)));
    CHECK(d->eps(e, 0) == b->phi(b->element(2), 0));
    CHECK(d->phi(e, 0) == b->eps(b->element(2), 0));
    auto down = d->lower(e, 0);
    REQUIRE(down);
    CHECK(*down == Elem::dual_of(b->element(3)));
    // double dual acts like the original
    auto dd = dual(d);
    Elem ee = Elem::dual_of(Elem::dual_of(b->element(2)));
    CHECK(dd->wt(ee) == b->wt(b->element(2)));
}

TEST_CASE("restriction") {
    auto b = std::make_shared<ElementaryBCrystal>(a2(), 0);
    auto r = restrict_to(b, {0});
    CHECK(r->index_set() == std::vector<int>{0});
    CHECK(r->eps(b->element(1), 0) == ExtInt(-1));
    CHECK_THROWS(r->eps(b->element(1), 1));
    CHECK_THROWS(restrict_to(b, {5}));
}

TEST_CASE("explore dedups and reports truncation") {
    auto b = std::make_shared<ElementaryBCrystal>(a1(), 0);
    ExploreOptions opt;
    opt.depth = 3;
    auto g = explore(b, {b->element(0)}, opt);
    // b(-3) .. b(3)
    CHECK(g.size() == 7);
    CHECK(g.truncated);
    CHECK(g.edges.size() == 6);

    opt.depth.reset();
    opt.budget = 5;
    auto gb = explore(b, {b->element(0)}, opt);
    CHECK(gb.budget_exceeded);
    CHECK(gb.truncated);
    CHECK(gb.size() == 5);
}

TEST_CASE("canonical form is a relabeling invariant") {
    auto b = std::make_shared<ElementaryBCrystal>(a1(), 0);
    ExploreOptions opt;
    opt.depth = 2;
    auto g1 = explore(b, {b->element(0)}, opt);
    auto g2 = explore(b, {b->element(0)}, opt);
    // force a different node numbering by exploring from a shifted seed of
    // the same abstract graph shape but identical invariants
    CHECK(canonical_form(g1, g1.sources[0]) ==
          canonical_form(g2, g2.sources[0]));
    CHECK_THROWS(canonical_form(g1, 99));
}

TEST_CASE("graph JSON round-trip") {
    auto b = std::make_shared<ElementaryBCrystal>(a2(), 1);
    ExploreOptions opt;
    opt.depth = 2;
    auto g = explore(b, {b->element(0)}, opt);
    auto j = graph_to_json(g);
    auto h = graph_from_json(j);
    CHECK(h.size() == g.size());
    CHECK(h.edges.size() == g.edges.size());
    CHECK(h.truncated == g.truncated);
    CHECK(canonical_form(h, h.sources[0]) == canonical_form(g, g.sources[0]));
    // -inf survives the trip
    bool saw_minus_inf = false;
    for (const auto& nd : h.nodes)
        for (const auto& x : nd.eps) saw_minus_inf |= !x.is_finite();
    CHECK(saw_minus_inf);
}

TEST_CASE("DOT export mentions every node") {
    auto b = std::make_shared<ElementaryBCrystal>(a1(), 0);
    ExploreOptions opt;
    opt.depth = 1;
    auto g = explore(b, {b->element(0)}, opt);
    auto dot = graph_to_dot(g);
    for (const auto& nd : g.nodes)
        CHECK(dot.find(nd.label) != std::string::npos);
}
