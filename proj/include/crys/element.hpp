#pragma once

#include <functional>
#include <memory>
#include <variant>

#include "crys/cartan.hpp"
#include "crys/monomial.hpp"

namespace crys {

// Type-erased crystal element.  Every realization in the library draws
// its elements from this closed universe; equality and hashing are
// structural, which makes graph dedup exact.
struct Elem;
using ElemPtr = std::shared_ptr<const Elem>;

struct TLamPart {
    Weight lam;
    bool operator==(const TLamPart& o) const { return lam == o.lam; }
};

struct BPart {  // b_i(n)
    int i;
    int n;
    bool operator==(const BPart& o) const { return i == o.i && n == o.n; }
};

struct LatticePart {  // v(x)
    RootVector x;
    bool operator==(const LatticePart& o) const { return x == o.x; }
};

struct PairPart {  // a (x) b
    ElemPtr a, b;
    bool operator==(const PairPart& o) const;
};

struct DualPart {
    ElemPtr inner;
    bool operator==(const DualPart& o) const;
};

struct Elem {
    std::variant<TLamPart, BPart, Monomial, LatticePart, PairPart, DualPart> v;

    Elem() = default;
    template <typename T>
    Elem(T part) : v(std::move(part)) {}

    bool operator==(const Elem& o) const { return v == o.v; }

    static Elem tensor(Elem a, Elem b) {
        return Elem(PairPart{std::make_shared<const Elem>(std::move(a)),
                             std::make_shared<const Elem>(std::move(b))});
    }
    static Elem dual_of(Elem x) {
        return Elem(DualPart{std::make_shared<const Elem>(std::move(x))});
    }

    const PairPart& as_pair() const { return std::get<PairPart>(v); }
    const DualPart& as_dual() const { return std::get<DualPart>(v); }
    const Monomial& as_monomial() const { return std::get<Monomial>(v); }
    const BPart& as_b() const { return std::get<BPart>(v); }
    const LatticePart& as_lattice() const { return std::get<LatticePart>(v); }
    const TLamPart& as_tlam() const { return std::get<TLamPart>(v); }

    size_t hash() const;
};

inline bool PairPart::operator==(const PairPart& o) const {
    return *a == *o.a && *b == *o.b;
}
inline bool DualPart::operator==(const DualPart& o) const {
    return *inner == *o.inner;
}

namespace detail {
inline size_t hash_combine(size_t seed, size_t h) {
    return seed ^ (h + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}
}  // namespace detail

inline size_t Elem::hash() const {
    using detail::hash_combine;
    size_t seed = v.index();
    return std::visit(
        [&](const auto& part) -> size_t {
            using T = std::decay_t<decltype(part)>;
            if constexpr (std::is_same_v<T, TLamPart>) {
                for (int x : part.lam.v)
                    seed = hash_combine(seed, std::hash<int>{}(x));
            } else if constexpr (std::is_same_v<T, BPart>) {
                seed = hash_combine(seed, std::hash<int>{}(part.i));
                seed = hash_combine(seed, std::hash<int>{}(part.n));
            } else if constexpr (std::is_same_v<T, Monomial>) {
                for (const auto& [key, e] : part.exp) {
                    seed = hash_combine(seed, std::hash<int>{}(key.first));
                    seed = hash_combine(seed, std::hash<int>{}(key.second));
                    seed = hash_combine(seed, std::hash<int>{}(e));
                }
            } else if constexpr (std::is_same_v<T, LatticePart>) {
                for (int x : part.x.coeffs)
                    seed = hash_combine(seed, std::hash<int>{}(x));
            } else if constexpr (std::is_same_v<T, PairPart>) {
                seed = hash_combine(seed, part.a->hash());
                seed = hash_combine(seed, part.b->hash());
            } else if constexpr (std::is_same_v<T, DualPart>) {
                seed = hash_combine(seed, part.inner->hash());
            }
            return seed;
        },
        v);
}

struct ElemHash {
    size_t operator()(const Elem& e) const { return e.hash(); }
};

}  // namespace crys
