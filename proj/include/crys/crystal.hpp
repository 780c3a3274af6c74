#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "crys/cartan.hpp"
#include "crys/element.hpp"
#include "crys/extint.hpp"

namespace crys {

// Uniform crystal interface: wt, eps_i, phi_i, and the partial operators
// raise (e~_i) / lower (f~_i).  The crystal value "0" (annihilation) is
// modeled as an empty optional, never a sentinel element.
//
// All implementations are immutable after construction and safe to share
// between threads.
class Crystal {
public:
    explicit Crystal(CartanSpec spec) : spec_(std::move(spec)) {}
    virtual ~Crystal() = default;

    const CartanSpec& cartan() const { return spec_; }

    // Index positions this crystal exposes (restriction shrinks it).
    virtual std::vector<int> index_set() const {
        std::vector<int> idx(spec_.rank());
        for (int i = 0; i < spec_.rank(); ++i) idx[i] = i;
        return idx;
    }

    virtual Weight wt(const Elem& b) const = 0;
    virtual ExtInt eps(const Elem& b, int i) const = 0;
    virtual ExtInt phi(const Elem& b, int i) const = 0;
    virtual std::optional<Elem> raise(const Elem& b, int i) const = 0;
    virtual std::optional<Elem> lower(const Elem& b, int i) const = 0;
    virtual std::string render(const Elem& b) const = 0;

    // False for realizations that are known not to satisfy the full
    // crystal axioms (the original monomial rule): the axiom checker
    // downgrades inverse-axiom failures to expected.
    virtual bool axiom_safe() const { return true; }

private:
    CartanSpec spec_;
};

using CrystalPtr = std::shared_ptr<const Crystal>;

// T_lambda: one frozen element with eps = phi = -inf.
class TLambdaCrystal : public Crystal {
public:
    TLambdaCrystal(CartanSpec spec, Weight lam)
        : Crystal(std::move(spec)), lam_(std::move(lam)) {}

    Elem element() const { return Elem(TLamPart{lam_}); }

    Weight wt(const Elem& b) const override { return b.as_tlam().lam; }
    ExtInt eps(const Elem&, int) const override { return ExtInt::minus_inf(); }
    ExtInt phi(const Elem&, int) const override { return ExtInt::minus_inf(); }
    std::optional<Elem> raise(const Elem&, int) const override { return {}; }
    std::optional<Elem> lower(const Elem&, int) const override { return {}; }
    std::string render(const Elem& b) const override {
        return "t" + b.as_tlam().lam.str();
    }

private:
    Weight lam_;
};

// Elementary crystal B_i on {b_i(n); n in Z}.
class ElementaryBCrystal : public Crystal {
public:
    ElementaryBCrystal(CartanSpec spec, int i) : Crystal(std::move(spec)), i_(i) {}

    Elem element(int n) const { return Elem(BPart{i_, n}); }
    int index() const { return i_; }

    Weight wt(const Elem& b) const override {
        return cartan().simple_root_as_weight(i_).scaled(b.as_b().n);
    }
    ExtInt eps(const Elem& b, int j) const override {
        return j == i_ ? ExtInt(-b.as_b().n) : ExtInt::minus_inf();
    }
    ExtInt phi(const Elem& b, int j) const override {
        return j == i_ ? ExtInt(b.as_b().n) : ExtInt::minus_inf();
    }
    std::optional<Elem> raise(const Elem& b, int j) const override {
        if (j != i_) return {};
        return Elem(BPart{i_, b.as_b().n + 1});
    }
    std::optional<Elem> lower(const Elem& b, int j) const override {
        if (j != i_) return {};
        return Elem(BPart{i_, b.as_b().n - 1});
    }
    std::string render(const Elem& b) const override {
        return "b" + cartan().labels[i_] + "(" + std::to_string(b.as_b().n) + ")";
    }

private:
    int i_;
};

// B^vee: arrows reversed, eps/phi swapped, weights negated.
class DualCrystal : public Crystal {
public:
    explicit DualCrystal(CrystalPtr inner)
        : Crystal(inner->cartan()), inner_(std::move(inner)) {}

    const CrystalPtr& inner() const { return inner_; }
    std::vector<int> index_set() const override { return inner_->index_set(); }

    Weight wt(const Elem& b) const override {
        return -inner_->wt(*b.as_dual().inner);
    }
    ExtInt eps(const Elem& b, int i) const override {
        return inner_->phi(*b.as_dual().inner, i);
    }
    ExtInt phi(const Elem& b, int i) const override {
        return inner_->eps(*b.as_dual().inner, i);
    }
    std::optional<Elem> raise(const Elem& b, int i) const override {
        auto r = inner_->lower(*b.as_dual().inner, i);
        if (!r) return {};
        return Elem::dual_of(std::move(*r));
    }
    std::optional<Elem> lower(const Elem& b, int i) const override {
        auto r = inner_->raise(*b.as_dual().inner, i);
        if (!r) return {};
        return Elem::dual_of(std::move(*r));
    }
    std::string render(const Elem& b) const override {
        return "dual(" + inner_->render(*b.as_dual().inner) + ")";
    }
    bool axiom_safe() const override { return inner_->axiom_safe(); }

private:
    CrystalPtr inner_;
};

// Tensor product with Kashiwara's convention: f~_i prefers the left
// factor on strict inequality phi(a) > eps(b), e~_i on weak inequality.
// This convention is pinned by a golden test.
class TensorCrystal : public Crystal {
public:
    TensorCrystal(CrystalPtr a, CrystalPtr b)
        : Crystal(a->cartan()), a_(std::move(a)), b_(std::move(b)) {
        if (!a_->cartan().same_as(b_->cartan()))
            throw std::invalid_argument("tensor: mismatched Cartan data");
    }

    Elem element(Elem x, Elem y) const {
        return Elem::tensor(std::move(x), std::move(y));
    }
    const CrystalPtr& left() const { return a_; }
    const CrystalPtr& right() const { return b_; }

    Weight wt(const Elem& t) const override {
        const auto& p = t.as_pair();
        return a_->wt(*p.a) + b_->wt(*p.b);
    }
    ExtInt eps(const Elem& t, int i) const override {
        const auto& p = t.as_pair();
        return max(a_->eps(*p.a, i),
                   b_->eps(*p.b, i) - a_->wt(*p.a)[i]);
    }
    ExtInt phi(const Elem& t, int i) const override {
        const auto& p = t.as_pair();
        return max(b_->phi(*p.b, i),
                   a_->phi(*p.a, i) + b_->wt(*p.b)[i]);
    }
    std::optional<Elem> raise(const Elem& t, int i) const override {
        const auto& p = t.as_pair();
        if (a_->phi(*p.a, i) >= b_->eps(*p.b, i)) {
            auto r = a_->raise(*p.a, i);
            if (!r) return {};
            return Elem(PairPart{std::make_shared<const Elem>(std::move(*r)), p.b});
        }
        auto r = b_->raise(*p.b, i);
        if (!r) return {};
        return Elem(PairPart{p.a, std::make_shared<const Elem>(std::move(*r))});
    }
    std::optional<Elem> lower(const Elem& t, int i) const override {
        const auto& p = t.as_pair();
        if (a_->phi(*p.a, i) > b_->eps(*p.b, i)) {
            auto r = a_->lower(*p.a, i);
            if (!r) return {};
            return Elem(PairPart{std::make_shared<const Elem>(std::move(*r)), p.b});
        }
        auto r = b_->lower(*p.b, i);
        if (!r) return {};
        return Elem(PairPart{p.a, std::make_shared<const Elem>(std::move(*r))});
    }
    std::string render(const Elem& t) const override {
        const auto& p = t.as_pair();
        return a_->render(*p.a) + " (x) " + b_->render(*p.b);
    }
    bool axiom_safe() const override {
        return a_->axiom_safe() && b_->axiom_safe();
    }

private:
    CrystalPtr a_, b_;
};

// Psi_J(B): same elements, operators kept only for i in J.
class RestrictCrystal : public Crystal {
public:
    RestrictCrystal(CrystalPtr inner, std::vector<int> J)
        : Crystal(inner->cartan()), inner_(std::move(inner)), J_(std::move(J)) {
        for (int i : J_)
            if (i < 0 || i >= cartan().rank())
                throw std::invalid_argument("restrict: index out of range");
    }

    std::vector<int> index_set() const override { return J_; }

    Weight wt(const Elem& b) const override { return inner_->wt(b); }
    ExtInt eps(const Elem& b, int i) const override {
        check(i);
        return inner_->eps(b, i);
    }
    ExtInt phi(const Elem& b, int i) const override {
        check(i);
        return inner_->phi(b, i);
    }
    std::optional<Elem> raise(const Elem& b, int i) const override {
        check(i);
        return inner_->raise(b, i);
    }
    std::optional<Elem> lower(const Elem& b, int i) const override {
        check(i);
        return inner_->lower(b, i);
    }
    std::string render(const Elem& b) const override { return inner_->render(b); }
    bool axiom_safe() const override { return inner_->axiom_safe(); }

private:
    void check(int i) const {
        for (int j : J_)
            if (j == i) return;
        throw std::invalid_argument("restrict: index not in J");
    }
    CrystalPtr inner_;
    std::vector<int> J_;
};

inline CrystalPtr dual(CrystalPtr b) {
    return std::make_shared<DualCrystal>(std::move(b));
}
inline CrystalPtr tensor(CrystalPtr a, CrystalPtr b) {
    return std::make_shared<TensorCrystal>(std::move(a), std::move(b));
}
inline CrystalPtr restrict_to(CrystalPtr b, std::vector<int> J) {
    return std::make_shared<RestrictCrystal>(std::move(b), std::move(J));
}

}  // namespace crys
