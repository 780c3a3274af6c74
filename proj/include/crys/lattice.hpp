#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "crys/crystal.hpp"
#include "crys/graph.hpp"

namespace crys {

// The functionals l_i in Q* defining B_l, as the matrix L[i][j] = l_i(alpha_j).
struct LatticeFunctionals {
    std::vector<std::vector<int>> L;

    LatticeFunctionals() = default;
    explicit LatticeFunctionals(std::vector<std::vector<int>> m) : L(std::move(m)) {
        for (size_t i = 0; i < L.size(); ++i) {
            if (L[i].size() != L.size())
                throw std::invalid_argument("L matrix is not square");
            if (L[i][i] != -1)
                throw std::invalid_argument("lattice functionals need l_i(alpha_i) = -1");
        }
    }

    int rank() const { return static_cast<int>(L.size()); }
    int at(int i, int j) const { return L[i][j]; }

    long long eval(int i, const RootVector& x) const {
        long long s = 0;
        for (int j = 0; j < rank(); ++j)
            s += static_cast<long long>(L[i][j]) * x.coeffs[j];
        return s;
    }
};

// B_l: the free crystal on the root lattice with eps_i(v(x)) = l_i(x),
// phi_i = <h_i, x> + eps_i, and e~/f~ translating by alpha_i (never absent).
// Infinite and free: only ever explored inside tensor products or bounded
// windows.
class LatticeCrystal : public Crystal {
public:
    LatticeCrystal(CartanSpec spec, LatticeFunctionals l)
        : Crystal(std::move(spec)), l_(std::move(l)) {
        if (l_.rank() != cartan().rank())
            throw std::invalid_argument("L matrix rank mismatch");
    }

    const LatticeFunctionals& functionals() const { return l_; }
    Elem element(RootVector x) const { return Elem(LatticePart{std::move(x)}); }

    Weight wt(const Elem& b) const override {
        return cartan().root_as_weight(b.as_lattice().x);
    }
    ExtInt eps(const Elem& b, int i) const override {
        return ExtInt(l_.eval(i, b.as_lattice().x));
    }
    ExtInt phi(const Elem& b, int i) const override {
        const auto& x = b.as_lattice().x;
        return ExtInt(cartan().pair_h(i, x) + l_.eval(i, x));
    }
    std::optional<Elem> raise(const Elem& b, int i) const override {
        RootVector x = b.as_lattice().x;
        ++x.coeffs[i];
        return Elem(LatticePart{std::move(x)});
    }
    std::optional<Elem> lower(const Elem& b, int i) const override {
        RootVector x = b.as_lattice().x;
        --x.coeffs[i];
        return Elem(LatticePart{std::move(x)});
    }
    std::string render(const Elem& b) const override {
        const auto& x = b.as_lattice().x;
        std::string s = "v(";
        for (size_t k = 0; k < x.coeffs.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(x.coeffs[k]);
        }
        return s + ")";
    }

private:
    LatticeFunctionals l_;
};

inline CrystalPtr lattice_handle(CartanSpec spec, LatticeFunctionals l) {
    return std::make_shared<LatticeCrystal>(std::move(spec), std::move(l));
}

// Per-pair report for the embedding condition on l: each pair
// (i, j) must satisfy (i) l_i(a_j) = -<h_i, a_j> and l_j(a_i) = 0, or the
// mirror case (ii).
struct EllPairReport {
    int i, j;
    bool case_i = false, case_ii = false;
    bool ok() const { return case_i || case_ii; }
};

struct EllConditionReport {
    bool ok = true;
    std::vector<EllPairReport> pairs;
};

inline EllConditionReport check_ell_condition(const LatticeFunctionals& l,
                                              const CartanSpec& spec) {
    EllConditionReport rep;
    for (int i = 0; i < spec.rank(); ++i)
        for (int j = i + 1; j < spec.rank(); ++j) {
            EllPairReport p{i, j};
            p.case_i = l.at(i, j) == -spec.a(i, j) && l.at(j, i) == 0;
            p.case_ii = l.at(i, j) == 0 && l.at(j, i) == -spec.a(j, i);
            rep.ok = rep.ok && p.ok();
            rep.pairs.push_back(p);
        }
    return rep;
}

// Truncated model of B(infinity) inside B_{i_N} (x) ... (x) B_{i_1} for a
// finite prefix of a sequence cycling through I.  The leftmost factor must
// stay b(0) on every explored node; a violation means the truncation is
// too short to be faithful.
struct BInftyModel {
    CrystalPtr crystal;   // the finite tensor product
    Elem seed;            // all factors b(0)
    std::vector<int> seq; // i_1, i_2, ... (rightmost factor first)
};

inline BInftyModel binfty_model(const CartanSpec& spec,
                                const std::vector<int>& seq) {
    if (seq.empty()) throw std::invalid_argument("empty index sequence");
    // K = B_{i_N} (x) ... (x) B_{i_1}, built left-associated
    auto bi = [&](int i) -> CrystalPtr {
        return std::make_shared<ElementaryBCrystal>(spec, i);
    };
    const int N = static_cast<int>(seq.size());
    CrystalPtr cr = bi(seq[N - 1]);
    Elem el = Elem(BPart{seq[N - 1], 0});
    for (int k = N - 2; k >= 0; --k) {
        cr = tensor(cr, bi(seq[k]));
        el = Elem::tensor(std::move(el), Elem(BPart{seq[k], 0}));
    }
    return {cr, el, seq};
}

// Default sequence: cyclic repetition of I in label order, long enough for
// the requested depth.
inline std::vector<int> default_binfty_sequence(const CartanSpec& spec,
                                                int depth) {
    std::vector<int> seq;
    const int cycles = depth + 1;
    for (int c = 0; c < cycles; ++c)
        for (int i = 0; i < spec.rank(); ++i) seq.push_back(i);
    return seq;
}

inline bool leftmost_factor_untouched(const Elem& e) {
    const Elem* cur = &e;
    while (std::holds_alternative<PairPart>(cur->v))
        cur = cur->as_pair().a.get();
    return cur->as_b().n == 0;
}

// f~-closure of the all-zero element to the given depth, with the
// leftmost-factor guard.
inline CrystalGraph binfty_truncated(const CartanSpec& spec,
                                     const std::vector<int>& seq, int depth,
                                     size_t budget = 1'000'000) {
    if (static_cast<int>(seq.size()) < (depth + 1) * spec.rank())
        throw std::invalid_argument(
            "binfty_truncated: sequence shorter than (depth+1)*|I|");
    auto model = binfty_model(spec, seq);
    ExploreOptions opt;
    opt.depth = depth;
    opt.direction = Direction::FOnly;
    opt.budget = budget;
    auto g = explore(model.crystal, {model.seed}, opt);
    for (int id = 0; id < g.size(); ++id)
        if (!leftmost_factor_untouched(g.elems[id]))
            throw std::runtime_error(
                "binfty_truncated: leftmost factor touched; truncation too "
                "short, increase N");
    return g;
}

// Brute-force Kostant partition function: number of ways to write beta as
// a nonnegative combination of positive roots.  Oracle for the truncation
// fidelity of the model above.
inline long long kostant_partitions(const CartanSpec& spec,
                                    const RootVector& beta) {
    auto roots = positive_roots(spec);
    std::function<long long(const RootVector&, size_t)> count =
        [&](const RootVector& rest, size_t from) -> long long {
        if (rest.height() == 0) return 1;
        long long total = 0;
        for (size_t r = from; r < roots.size(); ++r) {
            RootVector next = rest - roots[r];
            if (next.nonnegative()) total += count(next, r);
        }
        return total;
    };
    if (!beta.nonnegative()) return 0;
    return count(beta, 0);
}

// Report of the truncated verification of B(inf) -> B(inf) (x) B_l.
struct EmbeddingReport {
    bool path_independent = true;
    bool injective = true;
    bool strict = true;
    std::string witness;  // first failure, rendered
    int nodes = 0;
    bool ok() const { return path_independent && injective && strict; }
};

// Builds the truncated B(inf) model, grows the f~-closure of
// (hw element) (x) v(0) in model (x) B_l, and checks that following
// f~-words defines a strict embedding: path-independence, injectivity,
// and e~/f~ strictness on the images.
inline EmbeddingReport verify_lattice_embedding(const CartanSpec& spec,
                                                const LatticeFunctionals& l,
                                                int depth,
                                                size_t budget = 1'000'000) {
    EmbeddingReport rep;
    const auto seq = default_binfty_sequence(spec, depth + 1);
    auto ref = binfty_truncated(spec, seq, depth, budget);
    auto model = binfty_model(spec, seq);
    auto target = tensor(model.crystal, lattice_handle(spec, l));
    const Elem seed =
        Elem::tensor(model.seed, Elem(LatticePart{RootVector::zero(spec.rank())}));

    rep.nodes = ref.size();
    std::vector<std::optional<Elem>> image(ref.size());
    image[ref.sources[0]] = seed;
    // BFS over the reference graph in node order (explore order is BFS)
    for (int id = 0; id < ref.size(); ++id) {
        if (!image[id]) continue;  // unreachable only if graph disconnected
        for (int i : ref.indices) {
            int dst = ref.out_edge(id, i);
            if (dst < 0) continue;
            auto img = target->lower(*image[id], i);
            if (!img) {
                rep.strict = false;
                if (rep.witness.empty())
                    rep.witness = "f~_" + spec.labels[i] + " absent on image of " +
                                  ref.nodes[id].label;
                continue;
            }
            if (!image[dst]) {
                image[dst] = *img;
            } else if (!(*image[dst] == *img)) {
                rep.path_independent = false;
                if (rep.witness.empty())
                    rep.witness = "two f~-words give different images at " +
                                  ref.nodes[dst].label;
            }
        }
    }
    // injectivity
    std::map<std::string, int> seen;
    for (int id = 0; id < ref.size(); ++id) {
        if (!image[id]) continue;
        auto key = target->render(*image[id]);
        auto [it, fresh] = seen.emplace(key, id);
        if (!fresh) {
            rep.injective = false;
            if (rep.witness.empty())
                rep.witness = ref.nodes[it->second].label + " and " +
                              ref.nodes[id].label + " share the image " + key;
        }
    }
    // strictness: e~_i of an image is the image of e~_i (absent <=> absent),
    // and f~ absence must match on interior nodes
    for (int id = 0; id < ref.size(); ++id) {
        if (!image[id]) continue;
        for (int i : ref.indices) {
            auto up_ref = ref.crystal->raise(ref.elems[id], i);
            auto up_img = target->raise(*image[id], i);
            if (static_cast<bool>(up_ref) != static_cast<bool>(up_img)) {
                rep.strict = false;
                if (rep.witness.empty())
                    rep.witness = "e~_" + spec.labels[i] +
                                  " definedness differs at " + ref.nodes[id].label;
                continue;
            }
            if (up_ref) {
                int src = ref.in_edge(id, i);
                // e~ may climb out of the f-closure only above the seed;
                // within the closure the images must match
                if (src >= 0 && image[src] && !(*image[src] == *up_img)) {
                    rep.strict = false;
                    if (rep.witness.empty())
                        rep.witness = "e~_" + spec.labels[i] +
                                      " does not commute at " + ref.nodes[id].label;
                }
            }
            if (ref.nodes[id].depth < depth) {
                auto dn_ref = ref.crystal->lower(ref.elems[id], i);
                auto dn_img = target->lower(*image[id], i);
                if (static_cast<bool>(dn_ref) != static_cast<bool>(dn_img)) {
                    rep.strict = false;
                    if (rep.witness.empty())
                        rep.witness = "f~_" + spec.labels[i] +
                                      " definedness differs at " +
                                      ref.nodes[id].label;
                }
            }
        }
    }
    return rep;
}

// Rank-2 factorization underlying the embedding: under the
// pair condition, v(x) |-> b_1(x_1) (x) b_2(x_2) (in the case-appropriate
// order) intertwines all five crystal maps.  Checked on |coeffs| <= window.
inline bool bl_factorization_check(const CartanSpec& spec,
                                   const LatticeFunctionals& l,
                                   int window = 5) {
    if (spec.rank() != 2)
        throw std::invalid_argument("bl_factorization_check needs rank 2");
    auto rep = check_ell_condition(l, spec);
    int first, second;  // factor order: B_first (x) B_second
    if (l.at(1, 0) == -spec.a(1, 0) && l.at(0, 1) == 0) {
        first = 0;
        second = 1;
    } else if (l.at(0, 1) == -spec.a(0, 1) && l.at(1, 0) == 0) {
        first = 1;
        second = 0;
    } else {
        first = 0;
        second = 1;  // condition fails; test the default order and report
    }
    (void)rep;
    auto bl = lattice_handle(spec, l);
    auto bb = tensor(std::make_shared<ElementaryBCrystal>(spec, first),
                     std::make_shared<ElementaryBCrystal>(spec, second));
    auto to_pair = [&](const RootVector& x) {
        return Elem::tensor(Elem(BPart{first, x.coeffs[first]}),
                            Elem(BPart{second, x.coeffs[second]}));
    };
    for (int x1 = -window; x1 <= window; ++x1)
        for (int x2 = -window; x2 <= window; ++x2) {
            RootVector x({x1, x2});
            Elem v = Elem(LatticePart{x});
            Elem t = to_pair(x);
            if (!(bl->wt(v) == bb->wt(t))) return false;
            for (int i = 0; i < 2; ++i) {
                if (bl->eps(v, i) != bb->eps(t, i)) return false;
                if (bl->phi(v, i) != bb->phi(t, i)) return false;
                auto vu = bl->raise(v, i), tu = bb->raise(t, i);
                auto vd = bl->lower(v, i), td = bb->lower(t, i);
                if (!vu || !tu || !vd || !td) return false;  // both free
                if (!(to_pair(vu->as_lattice().x) == *tu)) return false;
                if (!(to_pair(vd->as_lattice().x) == *td)) return false;
            }
        }
    return true;
}

// L matrix JSON: {"L": [[...]]} with row i = l_i on (alpha_j)_j.
inline LatticeFunctionals parse_lattice_functionals(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.is_array())
        return LatticeFunctionals(j.get<std::vector<std::vector<int>>>());
    return LatticeFunctionals(j.at("L").get<std::vector<std::vector<int>>>());
}

}  // namespace crys
