// Acceptance suite: one line per criterion, PASS or FAIL, nonzero exit on
// any FAIL.  Each criterion is independent and states what it measured.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "crys/cartan.hpp"
#include "crys/graph.hpp"
#include "crys/lattice.hpp"
#include "crys/monomial_crystal.hpp"
#include "crys/verify.hpp"

using namespace crys;

#ifndef CRYS_SOURCE_DIR
#define CRYS_SOURCE_DIR "."
#endif

namespace {

int failures = 0;

void report(int criterion, bool ok, const std::string& what,
            const std::string& detail = "") {
    std::cout << "criterion " << criterion << ": " << (ok ? "PASS" : "FAIL")
              << " - " << what;
    if (!ok && !detail.empty()) std::cout << " [" << detail << "]";
    std::cout << std::endl;
    if (!ok) ++failures;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CMatrix std_c(int rank) {
    // c_ij = 0 for i < j, 1 for i > j
    std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 0));
    for (int i = 0; i < rank; ++i)
        for (int j = 0; j < i; ++j) m[i][j] = 1;
    return CMatrix(std::move(m));
}

std::vector<CMatrix> all_c01(int rank) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < rank; ++i)
        for (int j = i + 1; j < rank; ++j) slots.push_back({i, j});
    std::vector<CMatrix> out;
    for (int code = 0; code < (1 << slots.size()); ++code) {
        std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 0));
        for (size_t s = 0; s < slots.size(); ++s) {
            int v = (code >> s) & 1;
            m[slots[s].first][slots[s].second] = v;
            m[slots[s].second][slots[s].first] = 1 - v;
        }
        out.push_back(CMatrix(std::move(m)));
    }
    return out;
}

// ---------------------------------------------------------------------------

void criterion1() {
    auto spec = parse_cartan("A2");
    auto h = make_monomial_handle(spec, MonomialRule::original());
    auto g = explore(h, {Elem(parse_monomial("Y1(0)", spec))});
    std::string detail;
    bool ok = g.size() == 3 && g.edges.size() == 2;
    if (!ok) detail = "got " + std::to_string(g.size()) + " nodes";
    if (ok) {
        // the exact path, in order
        ok = g.nodes[0].label == "Y1(0)" &&
             g.nodes[1].label == "Y1(2)^-1 Y2(1)" &&
             g.nodes[2].label == "Y2(3)^-1" && g.out_edge(0, 0) == 1 &&
             g.out_edge(1, 1) == 2;
        if (!ok) detail = "path labels or edges differ";
    }
    if (ok) {
        std::string golden =
            slurp(std::string(CRYS_SOURCE_DIR) + "/tests/golden/a2_path.cert");
        std::string cert = canonical_form(g, g.sources[0]);
        ok = !golden.empty() && cert == golden;
        if (!ok) detail = "certificate differs from the checked-in golden file";
    }
    report(1, ok, "rank-2 original-rule path from Y1(0), byte-exact", detail);
}

void criterion2() {
    auto spec = parse_cartan("A1");
    bool ok = true;
    std::string detail;
    auto m = parse_monomial("Y1(1) Y1(2)^-1", spec);
    auto down = step_original(m, spec, 0, StepDir::F);
    ok = down && *down == parse_monomial("Y1(2)^-1 Y1(3)^-1", spec);
    if (ok) {
        auto back = step_original(*down, spec, 0, StepDir::E);
        ok = back && *back == parse_monomial("Y1(0) Y1(3)^-1", spec);
    }
    if (ok) {
        auto c0 = parse_monomial("Y1(0) Y1(1)", spec);
        auto c1 = step_original(c0, spec, 0, StepDir::F);
        ok = c1 && *c1 == parse_monomial("Y1(0) Y1(3)^-1", spec);
        if (ok) {
            auto c2 = step_original(*c1, spec, 0, StepDir::F);
            ok = c2 && *c2 == parse_monomial("Y1(2)^-1 Y1(3)^-1", spec);
        }
    }
    if (!ok) detail = "operator values differ from the worked example";
    if (ok) {
        auto h = make_monomial_handle(spec, MonomialRule::original());
        auto g = explore(h, {Elem(m)});
        auto rep = check_crystal_axioms(g);
        ok = rep.verdict == Verdict::ExpectedFail;
        if (ok) {
            for (const auto& w : rep.witnesses)
                if (w.detail.find("inverse") == std::string::npos) ok = false;
            ok = ok && !rep.witnesses.empty();
        }
        if (!ok) detail = "axiom check verdict: " + verdict_str(rep.verdict);
    }
    report(2, ok, "known inverse-axiom counterexample, EXPECTED_FAIL only",
           detail);
}

void criterion3() {
    bool ok = true;
    std::string detail;
    for (const char* name : {"A1", "A2", "A3", "B2", "G2"}) {
        auto spec = parse_cartan(name);
        auto h = make_monomial_handle(spec, MonomialRule::original());
        for (const auto& lam : dominant_weights_up_to(spec, 2)) {
            auto g = explore(h, {Elem(hw_monomial(lam))});
            long long dim = weyl_dim(spec, lam);
            if (g.size() != dim) {
                ok = false;
                detail = std::string(name) + " " + lam.str() + ": size " +
                         std::to_string(g.size()) + " != " +
                         std::to_string(dim);
                break;
            }
            auto table = freudenthal_multiplicities(spec, lam);
            std::map<std::vector<int>, long long> found;
            for (const auto& nd : g.nodes) ++found[nd.wt.v];
            if (found != table) {
                ok = false;
                detail = std::string(name) + " " + lam.str() +
                         ": weight multiset differs";
                break;
            }
            if (auto v = good_monomial_violation(g)) {
                ok = false;
                detail = std::string(name) + " " + lam.str() +
                         ": good-monomial violation at " +
                         g.nodes[v->node].label;
                break;
            }
        }
        if (!ok) break;
    }
    report(3, ok,
           "original-rule sweep (A1,A2,A3,B2,G2; pairings <= 2): dimension, "
           "multiplicities, no good-monomial violations",
           detail);
}

void criterion4() {
    bool ok = true;
    std::string detail;
    for (const char* name : {"A1", "A2", "A3", "B2", "G2"}) {
        auto spec = parse_cartan(name);
        for (const auto& c : all_c01(spec.rank())) {
            auto h = make_monomial_handle(spec, MonomialRule::variant(c));
            for (const auto& lam : dominant_weights_up_to(spec, 2)) {
                auto g = explore(h, {Elem(hw_monomial(lam))});
                auto rep = check_component_is_Blam(g, spec, lam);
                if (rep.verdict != Verdict::Pass) {
                    ok = false;
                    detail = std::string(name) + " " + lam.str() + ": " +
                             verdict_str(rep.verdict);
                }
                if (spec.simply_laced() &&
                    stembridge_check(g, spec).verdict != Verdict::Pass) {
                    ok = false;
                    detail = std::string(name) + " " + lam.str() +
                             ": local axioms failed";
                }
                if (!ok) break;
            }
            if (!ok) break;
        }
        if (!ok) break;
    }
    report(4, ok,
           "variant-rule sweep over all c with entries in {0,1}: "
           "component is B(lambda), local axioms on A1/A2/A3",
           detail);
}

void criterion5() {
    bool ok = true;
    std::string detail;
    std::mt19937 rng(501);
    for (const char* name : {"A2", "B2", "A1~"}) {
        auto spec = parse_cartan(name);
        auto h = make_monomial_handle(spec, MonomialRule::variant(std_c(spec.rank())));
        for (int t = 0; t < 1000 && ok; ++t) {
            Monomial m = random_monomial(spec, rng);
            Elem e(m);
            for (int i = 0; i < spec.rank() && ok; ++i) {
                long long phi = h->phi(e, i).value();
                long long eps = h->eps(e, i).value();
                // walk the strings within a depth-8 window
                Elem cur = e;
                long long steps = 0;
                while (steps < 8) {
                    auto d = h->lower(cur, i);
                    if (!d) break;
                    auto back = h->raise(*d, i);
                    if (!back || !(*back == cur)) {
                        ok = false;
                        detail = "round trip failed below " + m.str(spec);
                        break;
                    }
                    cur = *d;
                    ++steps;
                }
                if (ok && std::min<long long>(phi, 8) != steps) {
                    ok = false;
                    detail = "phi != f-string length at " + m.str(spec);
                }
                cur = e;
                steps = 0;
                while (steps < 8) {
                    auto u = h->raise(cur, i);
                    if (!u) break;
                    auto back = h->lower(*u, i);
                    if (!back || !(*back == cur)) {
                        ok = false;
                        detail = "round trip failed above " + m.str(spec);
                        break;
                    }
                    cur = *u;
                    ++steps;
                }
                if (ok && std::min<long long>(eps, 8) != steps) {
                    ok = false;
                    detail = "eps != e-string length at " + m.str(spec);
                }
            }
        }
        if (!ok) break;
    }
    report(5, ok,
           "semi-normality and round trips on 1000 random monomials per "
           "type in {A2, B2, A1~}",
           detail);
}

void criterion6() {
    bool ok = true;
    std::string detail;
    std::mt19937 rng(601);
    auto spec = parse_cartan("A2");
    CMatrix c({{0, 0}, {1, 0}});
    auto src = make_monomial_handle(spec, MonomialRule::variant(c));
    auto dst = make_monomial_handle(spec, MonomialRule::variant(c.transposed()));
    std::vector<int> shifts{2, -1};
    auto sh =
        make_monomial_handle(spec, MonomialRule::variant(shifted_cmatrix(c, shifts)));
    for (int t = 0; t < 500 && ok; ++t) {
        Monomial m = random_monomial(spec, rng);
        Elem e(m), pe(psi_map(m)), se(shift_map(m, shifts));
        if (!(dst->wt(pe) == -src->wt(e)) || !(sh->wt(se) == src->wt(e))) {
            ok = false;
            detail = "weights at " + m.str(spec);
            break;
        }
        for (int i = 0; i < 2 && ok; ++i) {
            if (dst->eps(pe, i) != src->phi(e, i) ||
                dst->phi(pe, i) != src->eps(e, i) ||
                sh->eps(se, i) != src->eps(e, i) ||
                sh->phi(se, i) != src->phi(e, i)) {
                ok = false;
                detail = "eps/phi at " + m.str(spec);
                break;
            }
            auto d = src->lower(e, i);
            auto pu = dst->raise(pe, i);
            if (static_cast<bool>(d) != static_cast<bool>(pu) ||
                (d && !(Elem(psi_map(d->as_monomial())) == *pu))) {
                ok = false;
                detail = "psi vs f~ at " + m.str(spec);
                break;
            }
            auto u = src->raise(e, i);
            auto pd = dst->lower(pe, i);
            if (static_cast<bool>(u) != static_cast<bool>(pd) ||
                (u && !(Elem(psi_map(u->as_monomial())) == *pd))) {
                ok = false;
                detail = "psi vs e~ at " + m.str(spec);
                break;
            }
            for (bool down : {true, false}) {
                auto a = down ? src->lower(e, i) : src->raise(e, i);
                auto b = down ? sh->lower(se, i) : sh->raise(se, i);
                if (static_cast<bool>(a) != static_cast<bool>(b) ||
                    (a && !(Elem(shift_map(a->as_monomial(), shifts)) == *b))) {
                    ok = false;
                    detail = "shift intertwining at " + m.str(spec);
                    break;
                }
            }
        }
    }
    if (ok) {
        // certificate independence of c for B(Lambda_1) in A2
        std::string first;
        for (const auto& cm : all_c01(2)) {
            auto h = make_monomial_handle(spec, MonomialRule::variant(cm));
            auto g = explore(h, {Elem(hw_monomial(Weight({1, 0})))});
            auto cert = canonical_form(g, g.sources[0]);
            if (first.empty())
                first = cert;
            else if (cert != first) {
                ok = false;
                detail = "certificates differ across c";
            }
        }
    }
    report(6, ok,
           "psi duality and reindexing on 500 random monomials; "
           "c-independence of the rank-2 component certificate",
           detail);
}

void criterion7() {
    auto spec = parse_cartan("A1~");
    CMatrix c({{0, 1}, {1, 0}}, true);  // relaxed: c_01 + c_10 = 2
    auto h = make_monomial_handle(spec, MonomialRule::variant(c));
    ExploreOptions opt;
    opt.depth = 6;
    auto g = explore(h, {Elem(parse_monomial("Y0(0)", spec))}, opt);
    auto ax = check_crystal_axioms(g);
    auto sn = is_semi_normal(g);
    auto bl = check_component_is_Blam(g, spec, Weight({1, 0}));
    bool ok = g.truncated && ax.verdict == Verdict::Pass &&
              sn.verdict != Verdict::Fail &&
              bl.verdict == Verdict::Inconclusive;
    std::string detail = "axioms " + verdict_str(ax.verdict) +
                         ", semi-normal " + verdict_str(sn.verdict) +
                         ", component " + verdict_str(bl.verdict);
    report(7, ok,
           "relaxed c on the affine rank-2 type: axioms hold to depth 6, "
           "component check INCONCLUSIVE",
           ok ? "" : detail);
}

void criterion8() {
    bool ok = true;
    std::string detail;
    auto cyclic = [](int rank) {
        std::vector<std::vector<int>> L(rank, std::vector<int>(rank, 0));
        for (int i = 0; i < rank; ++i) {
            L[i][i] = -1;
            L[i][(i + 1) % rank] += 1;
        }
        return LatticeFunctionals(L);
    };
    auto a2t = parse_cartan("A2~");
    auto a3t = parse_cartan("A3~");
    auto a1t = parse_cartan("A1~");
    LatticeFunctionals pm1({{-1, 1}, {1, -1}});
    if (!check_ell_condition(cyclic(3), a2t).ok ||
        !check_ell_condition(cyclic(4), a3t).ok) {
        ok = false;
        detail = "cyclic matrix should satisfy the condition";
    }
    if (ok && check_ell_condition(pm1, a1t).ok) {
        ok = false;
        detail = "the +-1 matrix should not satisfy the condition";
    }
    if (ok) {
        auto r1 = verify_lattice_embedding(a2t, cyclic(3), 3);
        auto r2 = verify_lattice_embedding(a1t, pm1, 3);
        if (!r1.ok() || !r2.ok()) {
            ok = false;
            detail = "embedding: " + (r1.ok() ? r2.witness : r1.witness);
        }
    }
    if (ok && !bl_factorization_check(a1t, LatticeFunctionals({{-1, 2}, {0, -1}}))) {
        ok = false;
        detail = "rank-2 factorization failed on a condition-satisfying L";
    }
    report(8, ok,
           "lattice realization: pairwise condition, depth-3 embedding, "
           "rank-2 factorization",
           detail);
}

void criterion9() {
    bool ok = true;
    std::string detail;
    for (const char* name : {"A1", "A2"}) {
        auto spec = parse_cartan(name);
        const int depth = 4;
        CrystalGraph g;
        try {
            g = binfty_truncated(spec, default_binfty_sequence(spec, depth),
                                 depth);
        } catch (const std::exception& ex) {
            ok = false;
            detail = ex.what();
            break;
        }
        std::map<Weight, long long> counts;
        for (const auto& nd : g.nodes) ++counts[nd.wt];
        std::vector<int> beta(spec.rank(), 0);
        std::function<void(int, int)> walk = [&](int pos, int left) {
            if (!ok) return;
            if (pos == spec.rank()) {
                RootVector rv(beta);
                Weight w = -spec.root_as_weight(rv);
                auto it = counts.find(w);
                long long got = it == counts.end() ? 0 : it->second;
                if (got != kostant_partitions(spec, rv)) {
                    ok = false;
                    detail = std::string(name) + ": count mismatch at height " +
                             std::to_string(rv.height());
                }
                return;
            }
            for (int k = 0; k <= left; ++k) {
                beta[pos] = k;
                walk(pos + 1, left - k);
            }
            beta[pos] = 0;
        };
        walk(0, depth);
        if (!ok) break;
    }
    report(9, ok,
           "truncated model node counts match Kostant partition counts "
           "(A1, A2, depth 4), guard silent",
           detail);
}

void criterion10() {
    PhiMorphismConfig cfg;  // 200 samples, window [-3,3], z in [-2,0]
    auto rep = phi_rank2_morphism_check(parse_cartan("A2"), cfg);
    bool ok = rep.verdict == Verdict::Pass && rep.nodes_visited == 200;
    std::string detail;
    if (!ok && !rep.witnesses.empty())
        detail = rep.witnesses[0].detail;
    report(10, ok, "Phi morphism identities on 200 seeded samples", detail);
}

void criterion11() {
    auto spec = parse_cartan("A2");
    auto h = make_monomial_handle(spec, MonomialRule::variant(CMatrix({{0, 0}, {1, 0}})));
    auto g = explore(h, {Elem(hw_monomial(Weight({1, 1})))});
    auto detected = [&](const CrystalGraph& bad) {
        return check_crystal_axioms(bad).verdict == Verdict::Fail ||
               is_semi_normal(bad).verdict == Verdict::Fail ||
               check_normal(bad, spec).verdict == Verdict::Fail ||
               stembridge_check(bad, spec).verdict == Verdict::Fail;
    };
    bool ok = g.size() == 8;
    std::string detail;
    if (ok && !detected(mutate_delete_edge(g, 0))) {
        ok = false;
        detail = "edge deletion not detected";
    }
    if (ok) {
        int other = g.edges[0].i == 0 ? 1 : 0;
        if (!detected(mutate_relabel_edge(g, 0, other))) {
            ok = false;
            detail = "edge relabel not detected";
        }
    }
    if (ok && !detected(mutate_eps_off_by_one(g, 0, 0))) {
        ok = false;
        detail = "eps off-by-one not detected";
    }
    report(11, ok, "all three standard mutations are caught by the checkers",
           detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    criterion11();
    if (failures) {
        std::cout << failures << " criterion(s) failed" << std::endl;
        return 1;
    }
    std::cout << "all criteria passed" << std::endl;
    return 0;
}
