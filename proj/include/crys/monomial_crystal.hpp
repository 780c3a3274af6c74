#pragma once

#include <algorithm>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include "crys/crystal.hpp"
#include "crys/graph.hpp"
#include "crys/monomial.hpp"

namespace crys {

enum class MonomialRuleTag { Original, Variant };

struct MonomialRule {
    MonomialRuleTag tag;
    CMatrix c;  // only for Variant

    static MonomialRule original() { return {MonomialRuleTag::Original, {}}; }
    static MonomialRule variant(CMatrix c) {
        c.validate();
        return {MonomialRuleTag::Variant, std::move(c)};
    }
};

namespace detail {

// phi, eps and the operator positions for one row of a monomial.
// Prefix sums over the support make the max over all n in Z exact with
// finite work: the sums only change at stored indices.
struct RowAnalysis {
    long long phi = 0, eps = 0;
    int n_f = 0;        // min{n : phi = sum_{k<=n} y(k)}, valid iff phi > 0
    int n_e_orig = 0;   // max{n : eps = -sum_{k>=n} y(k)}, valid iff eps > 0
    int n_e_var = 0;    // max{n : eps = -sum_{k>n} y(k)}, valid iff eps > 0
};

inline RowAnalysis analyze_row(const Monomial& m, int i) {
    RowAnalysis r;
    const auto row = m.row(i);  // sorted (n, y)
    const int k = static_cast<int>(row.size());
    std::vector<long long> prefix(k + 1, 0);  // prefix[j] = sum over first j
    for (int j = 0; j < k; ++j) prefix[j + 1] = prefix[j] + row[j].second;
    const long long total = prefix[k];

    r.phi = 0;
    for (int j = 1; j <= k; ++j) r.phi = std::max(r.phi, prefix[j]);
    r.eps = 0;
    // -sum_{k >= n_j} y = prefix[j-1] - total
    for (int j = 1; j <= k; ++j) r.eps = std::max(r.eps, prefix[j - 1] - total);

    if (r.phi > 0) {
        for (int j = 1; j <= k; ++j)
            if (prefix[j] == r.phi) {
                r.n_f = row[j - 1].first;
                break;
            }
    }
    if (r.eps > 0) {
        for (int j = k; j >= 1; --j)
            if (prefix[j - 1] - total == r.eps) {
                r.n_e_orig = row[j - 1].first;
                break;
            }
        // max{n : -sum_{k>n} y = eps}: the value -sum_{k>n} y equals
        // prefix[j] - total on the plateau of all n with exactly j support
        // points <= n, which ends at row[j].first - 1
        int best = -1;
        for (int j = 0; j < k; ++j)
            if (prefix[j] - total == r.eps) best = j;
        r.n_e_var = row[best].first - 1;
    }
    return r;
}

}  // namespace detail

// Original (section-3 style) multiplier monomial
// A_i(n) = Y_i(n-1) Y_i(n+1) prod_{k != i} Y_k(n)^{<h_k, alpha_i>}.
inline Monomial a_monomial_original(const CartanSpec& spec, int i, int n) {
    Monomial a = Monomial::var(i, n - 1).times(Monomial::var(i, n + 1));
    for (int k = 0; k < spec.rank(); ++k)
        if (k != i && spec.a(k, i))
            a = a.times(Monomial::var(k, n, spec.a(k, i)));
    return a;
}

// Variant multiplier monomial
// A_i(n) = Y_i(n) Y_i(n+1) prod_{j != i} Y_j(n + c_ji)^{<h_j, alpha_i>}.
inline Monomial a_monomial_variant(const CartanSpec& spec, const CMatrix& c,
                                   int i, int n) {
    Monomial a = Monomial::var(i, n).times(Monomial::var(i, n + 1));
    for (int j = 0; j < spec.rank(); ++j)
        if (j != i && spec.a(j, i))
            a = a.times(Monomial::var(j, n + c.at(j, i), spec.a(j, i)));
    return a;
}

inline Weight wt_mon(const Monomial& m, const CartanSpec& spec) {
    return m.weight(spec.rank());
}

inline std::pair<ExtInt, ExtInt> phi_eps_mon(const Monomial& m, int i) {
    auto r = detail::analyze_row(m, i);
    return {ExtInt(r.phi), ExtInt(r.eps)};
}

enum class StepDir { E, F };

inline std::optional<Monomial> step_original(const Monomial& m,
                                             const CartanSpec& spec, int i,
                                             StepDir dir) {
    const auto r = detail::analyze_row(m, i);
    if (dir == StepDir::F) {
        if (r.phi == 0) return {};
        if (!(m.at(i, r.n_f) > 0 && m.at(i, r.n_f + 1) <= 0))
            throw std::logic_error("step_original: n_f sign pattern violated");
        return m.times(a_monomial_original(spec, i, r.n_f + 1).inverse());
    }
    if (r.eps == 0) return {};
    if (!(m.at(i, r.n_e_orig) < 0 && m.at(i, r.n_e_orig - 1) >= 0))
        throw std::logic_error("step_original: n_e sign pattern violated");
    return m.times(a_monomial_original(spec, i, r.n_e_orig - 1));
}

inline std::optional<Monomial> step_variant(const Monomial& m,
                                            const CartanSpec& spec,
                                            const CMatrix& c, int i,
                                            StepDir dir) {
    const auto r = detail::analyze_row(m, i);
    if (dir == StepDir::F) {
        if (r.phi == 0) return {};
        if (!(m.at(i, r.n_f) > 0 && m.at(i, r.n_f + 1) <= 0))
            throw std::logic_error("step_variant: n_f sign pattern violated");
        return m.times(a_monomial_variant(spec, c, i, r.n_f).inverse());
    }
    if (r.eps == 0) return {};
    if (!(m.at(i, r.n_e_var + 1) < 0 && m.at(i, r.n_e_var) >= 0))
        throw std::logic_error("step_variant: n_e sign pattern violated");
    return m.times(a_monomial_variant(spec, c, i, r.n_e_var));
}

// The monomial crystal M with either rule.  The original rule is known
// not to satisfy the inverse axiom (axiom_safe() = false); the variant
// rule gives the true crystal M_c.
class MonomialCrystal : public Crystal {
public:
    MonomialCrystal(CartanSpec spec, MonomialRule rule)
        : Crystal(std::move(spec)), rule_(std::move(rule)) {
        if (rule_.tag == MonomialRuleTag::Variant) {
            if (rule_.c.rank() != cartan().rank())
                throw std::invalid_argument("c matrix rank mismatch");
            rule_.c.validate();
        }
    }

    const MonomialRule& rule() const { return rule_; }

    Elem element(Monomial m) const { return Elem(std::move(m)); }

    Weight wt(const Elem& b) const override {
        return wt_mon(b.as_monomial(), cartan());
    }
    ExtInt eps(const Elem& b, int i) const override {
        return phi_eps_mon(b.as_monomial(), i).second;
    }
    ExtInt phi(const Elem& b, int i) const override {
        return phi_eps_mon(b.as_monomial(), i).first;
    }
    std::optional<Elem> raise(const Elem& b, int i) const override {
        auto r = step(b.as_monomial(), i, StepDir::E);
        if (!r) return {};
        return Elem(std::move(*r));
    }
    std::optional<Elem> lower(const Elem& b, int i) const override {
        auto r = step(b.as_monomial(), i, StepDir::F);
        if (!r) return {};
        return Elem(std::move(*r));
    }
    std::string render(const Elem& b) const override {
        return b.as_monomial().str(cartan());
    }
    bool axiom_safe() const override {
        return rule_.tag == MonomialRuleTag::Variant;
    }

private:
    std::optional<Monomial> step(const Monomial& m, int i, StepDir dir) const {
        return rule_.tag == MonomialRuleTag::Original
                   ? step_original(m, cartan(), i, dir)
                   : step_variant(m, cartan(), rule_.c, i, dir);
    }
    MonomialRule rule_;
};

inline CrystalPtr make_monomial_handle(CartanSpec spec, MonomialRule rule) {
    return std::make_shared<MonomialCrystal>(std::move(spec), std::move(rule));
}

// Highest-weight seed prod_i Y_i(0)^{lambda_i}.
inline Monomial hw_monomial(const Weight& lam) {
    Monomial m;
    for (int i = 0; i < lam.rank(); ++i)
        if (lam[i]) m.exp[{i, 0}] = lam[i];
    return m;
}

// First (node, i, n) with y_i(n) > 0 and y_i(n+1) < 0, or nothing.
struct GoodViolation {
    int node;
    int i;
    int n;
};

// Random monomial with support in n within [-span, span] and exponents in
// [-emax, emax]; used by the seeded property runs.
template <typename Rng>
Monomial random_monomial(const CartanSpec& spec, Rng& rng, int span = 3,
                         int emax = 2, double density = 0.4) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> edist(-emax, emax);
    Monomial m;
    for (int i = 0; i < spec.rank(); ++i)
        for (int n = -span; n <= span; ++n)
            if (u(rng) < density) {
                int e = edist(rng);
                if (e) m.exp[{i, n}] = e;
            }
    return m;
}

inline std::optional<GoodViolation> good_monomial_violation(
    const CrystalGraph& g) {
    for (int id = 0; id < g.size(); ++id) {
        if (!g.has_handle()) throw std::invalid_argument("graph has no elements");
        const auto& m = g.elems[id].as_monomial();
        for (const auto& [key, e] : m.exp)
            if (e > 0 && m.at(key.first, key.second + 1) < 0)
                return GoodViolation{id, key.first, key.second};
    }
    return {};
}

}  // namespace crys
