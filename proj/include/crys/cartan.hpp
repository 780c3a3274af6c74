#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <regex>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

namespace crys {

// Weights live in pairing coordinates only: entry i is <h_i, lambda>.
// In affine types this quotients out delta (since <h_i, delta> = 0 for
// all i), so two distinct P-weights can collide here.  Every crystal
// formula in this library uses only these pairings.
struct Weight {
    std::vector<int> v;

    Weight() = default;
    explicit Weight(std::vector<int> p) : v(std::move(p)) {}
    static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }
    static Weight fundamental(int rank, int i) {
        Weight w = zero(rank);
        w.v[i] = 1;
        return w;
    }

    int rank() const { return static_cast<int>(v.size()); }
    int operator[](int i) const { return v[i]; }

    Weight operator+(const Weight& o) const {
        Weight r = *this;
        for (size_t k = 0; k < v.size(); ++k) r.v[k] += o.v[k];
        return r;
    }
    Weight operator-(const Weight& o) const {
        Weight r = *this;
        for (size_t k = 0; k < v.size(); ++k) r.v[k] -= o.v[k];
        return r;
    }
    Weight operator-() const {
        Weight r = *this;
        for (auto& x : r.v) x = -x;
        return r;
    }
    Weight scaled(int c) const {
        Weight r = *this;
        for (auto& x : r.v) x *= c;
        return r;
    }
    bool dominant() const {
        return std::all_of(v.begin(), v.end(), [](int x) { return x >= 0; });
    }
    bool operator==(const Weight& o) const { return v == o.v; }
    bool operator!=(const Weight& o) const { return v != o.v; }
    bool operator<(const Weight& o) const { return v < o.v; }

    std::string str() const {
        std::string s = "(";
        for (size_t k = 0; k < v.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(v[k]);
        }
        return s + ")";
    }
};

// Element of the root lattice Q, as coefficients of the simple roots.
struct RootVector {
    std::vector<int> coeffs;

    RootVector() = default;
    explicit RootVector(std::vector<int> c) : coeffs(std::move(c)) {}
    static RootVector zero(int rank) {
        return RootVector(std::vector<int>(rank, 0));
    }
    static RootVector simple(int rank, int i) {
        RootVector r = zero(rank);
        r.coeffs[i] = 1;
        return r;
    }

    int rank() const { return static_cast<int>(coeffs.size()); }
    int height() const {
        return std::accumulate(coeffs.begin(), coeffs.end(), 0);
    }
    RootVector operator+(const RootVector& o) const {
        RootVector r = *this;
        for (size_t k = 0; k < coeffs.size(); ++k) r.coeffs[k] += o.coeffs[k];
        return r;
    }
    RootVector operator-(const RootVector& o) const {
        RootVector r = *this;
        for (size_t k = 0; k < coeffs.size(); ++k) r.coeffs[k] -= o.coeffs[k];
        return r;
    }
    bool nonnegative() const {
        return std::all_of(coeffs.begin(), coeffs.end(),
                           [](int x) { return x >= 0; });
    }
    bool operator==(const RootVector& o) const { return coeffs == o.coeffs; }
    bool operator<(const RootVector& o) const { return coeffs < o.coeffs; }
};

// Generalized Cartan matrix with labeled index set.
struct CartanSpec {
    std::vector<std::string> labels;
    std::vector<std::vector<int>> gcm;  // gcm[i][j] = <h_i, alpha_j>
    std::string type_tag;               // "finite" / "affine" / "other"
    std::string name;                   // e.g. "A2", empty for inline input

    int rank() const { return static_cast<int>(labels.size()); }
    int a(int i, int j) const { return gcm[i][j]; }

    bool finite_type() const { return type_tag == "finite"; }
    bool affine_type() const { return type_tag == "affine"; }
    bool simply_laced() const {
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j)
                if (i != j && gcm[i][j] < -1) return false;
        return true;
    }

    int label_index(const std::string& lab) const {
        for (int i = 0; i < rank(); ++i)
            if (labels[i] == lab) return i;
        throw std::invalid_argument("unknown index label: " + lab);
    }

    // <h_j, alpha_i> for all j, i.e. column i of the GCM.
    Weight simple_root_as_weight(int i) const {
        if (i < 0 || i >= rank()) throw std::invalid_argument("index out of range");
        std::vector<int> p(rank());
        for (int j = 0; j < rank(); ++j) p[j] = gcm[j][i];
        return Weight(std::move(p));
    }

    Weight root_as_weight(const RootVector& beta) const {
        Weight w = Weight::zero(rank());
        for (int i = 0; i < rank(); ++i)
            if (beta.coeffs[i])
                w = w + simple_root_as_weight(i).scaled(beta.coeffs[i]);
        return w;
    }

    // <h_i, beta> for beta in the root lattice.
    int pair_h(int i, const RootVector& beta) const {
        int s = 0;
        for (int j = 0; j < rank(); ++j) s += gcm[i][j] * beta.coeffs[j];
        return s;
    }

    bool same_as(const CartanSpec& o) const {
        return labels == o.labels && gcm == o.gcm;
    }

    CartanSpec restricted(const std::vector<int>& J) const;
    std::vector<int> symmetrizers() const;
};

namespace detail {

inline void validate_gcm(const std::vector<std::vector<int>>& A) {
    const int n = static_cast<int>(A.size());
    if (n == 0) throw std::invalid_argument("empty Cartan matrix");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("Cartan matrix is not square");
    for (int i = 0; i < n; ++i) {
        if (A[i][i] != 2)
            throw std::invalid_argument("GCM diagonal entry is not 2");
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (A[i][j] > 0)
                throw std::invalid_argument("GCM off-diagonal entry positive");
            if ((A[i][j] == 0) != (A[j][i] == 0))
                throw std::invalid_argument("GCM zero pattern is not symmetric");
        }
    }
}

// Integer determinant by fraction-free (Bareiss) elimination.
inline long long int_det(std::vector<std::vector<long long>> m) {
    const int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    long long prev = 1;
    int sign = 1;
    for (int k = 0; k < n - 1; ++k) {
        if (m[k][k] == 0) {
            int p = -1;
            for (int r = k + 1; r < n; ++r)
                if (m[r][k] != 0) { p = r; break; }
            if (p < 0) return 0;
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i)
            for (int j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

inline long long principal_minor(const std::vector<std::vector<long long>>& m,
                                 const std::vector<int>& idx) {
    std::vector<std::vector<long long>> sub(idx.size(),
                                            std::vector<long long>(idx.size()));
    for (size_t i = 0; i < idx.size(); ++i)
        for (size_t j = 0; j < idx.size(); ++j) sub[i][j] = m[idx[i]][idx[j]];
    return int_det(sub);
}

}  // namespace detail

// Least positive integers d_i with d_i * a_ij = d_j * a_ji, found by
// propagating ratios along the Dynkin diagram.
inline std::vector<int> CartanSpec::symmetrizers() const {
    const int n = rank();
    std::vector<long long> num(n, 0), den(n, 1);
    for (int start = 0; start < n; ++start) {
        if (num[start]) continue;
        num[start] = 1;
        std::vector<int> stack{start};
        while (!stack.empty()) {
            int i = stack.back();
            stack.pop_back();
            for (int j = 0; j < n; ++j) {
                if (j == i || gcm[i][j] == 0 || num[j]) continue;
                // d_j / d_i = a_ij / a_ji
                num[j] = num[i] * gcm[i][j];
                den[j] = den[i] * gcm[j][i];
                if ((num[j] < 0) != (den[j] < 0)) {
                    num[j] = std::abs(num[j]);
                    den[j] = std::abs(den[j]);
                } else {
                    num[j] = std::abs(num[j]);
                    den[j] = std::abs(den[j]);
                }
                stack.push_back(j);
            }
        }
    }
    long long l = 1;
    for (int i = 0; i < n; ++i) {
        long long g = std::gcd(num[i], den[i]);
        num[i] /= g;
        den[i] /= g;
        l = std::lcm(l, den[i]);
    }
    std::vector<long long> d(n);
    for (int i = 0; i < n; ++i) d[i] = num[i] * (l / den[i]);
    long long g = 0;
    for (int i = 0; i < n; ++i) g = std::gcd(g, d[i]);
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = static_cast<int>(d[i] / g);
    // check d_i a_ij = d_j a_ji; fails only for non-symmetrizable input
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (static_cast<long long>(out[i]) * gcm[i][j] !=
                static_cast<long long>(out[j]) * gcm[j][i])
                throw std::invalid_argument("Cartan matrix is not symmetrizable");
    return out;
}

inline CartanSpec CartanSpec::restricted(const std::vector<int>& J) const {
    CartanSpec s;
    for (int i : J) s.labels.push_back(labels[i]);
    for (int i : J) {
        std::vector<int> row;
        for (int j : J) row.push_back(gcm[i][j]);
        s.gcm.push_back(std::move(row));
    }
    // classify the submatrix
    const int m = static_cast<int>(J.size());
    if (m == 1) {
        s.type_tag = "finite";
    } else if (m == 2) {
        int p = s.gcm[0][1] * s.gcm[1][0];
        s.type_tag = p <= 3 ? "finite" : (p == 4 ? "affine" : "other");
    } else {
        std::vector<int> d;
        try {
            d = s.symmetrizers();
        } catch (const std::invalid_argument&) {
            s.type_tag = "other";
            return s;
        }
        std::vector<std::vector<long long>> sym(m, std::vector<long long>(m));
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                sym[i][j] = static_cast<long long>(d[i]) * s.gcm[i][j];
        bool pd = true;
        std::vector<int> lead;
        for (int k = 0; k < m && pd; ++k) {
            lead.push_back(k);
            if (detail::principal_minor(sym, lead) <= 0) pd = false;
        }
        s.type_tag = pd ? "finite" : "other";
    }
    return s;
}

namespace detail {

inline std::vector<std::vector<int>> finite_gcm(char letter, int n) {
    auto chain = [&](int len) {
        std::vector<std::vector<int>> A(len, std::vector<int>(len, 0));
        for (int i = 0; i < len; ++i) A[i][i] = 2;
        for (int i = 0; i + 1 < len; ++i) A[i][i + 1] = A[i + 1][i] = -1;
        return A;
    };
    switch (letter) {
        case 'A':
            if (n < 1) throw std::invalid_argument("A_n needs n >= 1");
            return chain(n);
        case 'B': {
            if (n < 2) throw std::invalid_argument("B_n needs n >= 2");
            auto A = chain(n);
            A[n - 1][n - 2] = -2;  // alpha_n short
            return A;
        }
        case 'C': {
            if (n < 2) throw std::invalid_argument("C_n needs n >= 2");
            auto A = chain(n);
            A[n - 2][n - 1] = -2;  // alpha_n long
            return A;
        }
        case 'D': {
            if (n < 3) throw std::invalid_argument("D_n needs n >= 3");
            auto A = chain(n - 1);
            for (auto& row : A) row.push_back(0);
            A.push_back(std::vector<int>(n, 0));
            A[n - 1][n - 1] = 2;
            A[n - 3][n - 1] = A[n - 1][n - 3] = -1;
            return A;
        }
        case 'E': {
            if (n < 6 || n > 8) throw std::invalid_argument("E_n needs 6 <= n <= 8");
            // chain 1-3-4-5-..., node 2 attached to node 4 (Bourbaki)
            std::vector<std::vector<int>> A(n, std::vector<int>(n, 0));
            for (int i = 0; i < n; ++i) A[i][i] = 2;
            auto link = [&](int i, int j) { A[i][j] = A[j][i] = -1; };
            link(0, 2);
            link(2, 3);
            link(1, 3);
            for (int i = 3; i + 1 < n; ++i) link(i, i + 1);
            return A;
        }
        case 'F': {
            if (n != 4) throw std::invalid_argument("F_n needs n = 4");
            auto A = chain(4);
            A[1][2] = -2;
            return A;
        }
        case 'G': {
            if (n != 2) throw std::invalid_argument("G_n needs n = 2");
            return {{2, -1}, {-3, 2}};
        }
        default:
            throw std::invalid_argument("unknown type letter");
    }
}

inline std::string classify_gcm(const CartanSpec& s) {
    std::vector<int> d;
    try {
        d = s.symmetrizers();
    } catch (const std::invalid_argument&) {
        return "other";
    }
    const int n = s.rank();
    std::vector<std::vector<long long>> sym(n, std::vector<long long>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sym[i][j] = static_cast<long long>(d[i]) * s.gcm[i][j];
    bool pd = true;
    std::vector<int> lead;
    for (int k = 0; k < n && pd; ++k) {
        lead.push_back(k);
        if (detail::principal_minor(sym, lead) <= 0) pd = false;
    }
    if (pd) return "finite";
    // positive semidefinite with corank 1: every principal minor >= 0,
    // det = 0, and some (n-1)x(n-1) principal minor nonzero
    if (n <= 12) {
        bool psd = true;
        for (unsigned mask = 1; mask < (1u << n) && psd; ++mask) {
            std::vector<int> idx;
            for (int k = 0; k < n; ++k)
                if (mask & (1u << k)) idx.push_back(k);
            if (detail::principal_minor(sym, idx) < 0) psd = false;
        }
        if (psd && detail::int_det(sym) == 0) {
            for (int drop = 0; drop < n; ++drop) {
                std::vector<int> idx;
                for (int k = 0; k < n; ++k)
                    if (k != drop) idx.push_back(k);
                if (detail::principal_minor(sym, idx) != 0) return "affine";
            }
        }
    }
    return "other";
}

}  // namespace detail

// Cartan-type grammar: "<Letter><rank>" for finite types, suffix "~" for
// untwisted affine (A series only), or JSON {"labels":[...],"gcm":[[...]]}
// / bare [[...]] for an inline matrix.
inline CartanSpec parse_cartan(const std::string& text) {
    CartanSpec s;
    auto first = text.find_first_not_of(" \t\n");
    if (first == std::string::npos)
        throw std::invalid_argument("empty Cartan spec");
    if (text[first] == '{' || text[first] == '[') {
        auto j = nlohmann::json::parse(text);
        if (j.is_array()) {
            s.gcm = j.get<std::vector<std::vector<int>>>();
        } else {
            s.gcm = j.at("gcm").get<std::vector<std::vector<int>>>();
            if (j.contains("labels"))
                for (const auto& l : j["labels"])
                    s.labels.push_back(l.is_string()
                                           ? l.get<std::string>()
                                           : std::to_string(l.get<int>()));
        }
        detail::validate_gcm(s.gcm);
        if (s.labels.empty())
            for (size_t i = 0; i < s.gcm.size(); ++i)
                s.labels.push_back(std::to_string(i + 1));
        if (s.labels.size() != s.gcm.size())
            throw std::invalid_argument("labels/gcm size mismatch");
        s.type_tag = detail::classify_gcm(s);
        return s;
    }

    static const std::regex re(R"(^\s*([A-G])(\d+)\s*(~?)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, re))
        throw std::invalid_argument("malformed Cartan type string: " + text);
    const char letter = m[1].str()[0];
    const int n = std::stoi(m[2].str());
    const bool affine = m[3].length() > 0;
    s.name = m[1].str() + m[2].str() + (affine ? "~" : "");

    if (!affine) {
        s.gcm = detail::finite_gcm(letter, n);
        for (int i = 1; i <= n; ++i) s.labels.push_back(std::to_string(i));
        s.type_tag = "finite";
        return s;
    }
    if (letter != 'A')
        throw std::invalid_argument("only A-series affine types are supported");
    if (n == 1) {
        s.gcm = {{2, -2}, {-2, 2}};
        s.labels = {"0", "1"};
    } else {
        const int r = n + 1;  // labels 0..n around a cycle
        s.gcm.assign(r, std::vector<int>(r, 0));
        for (int i = 0; i < r; ++i) {
            s.gcm[i][i] = 2;
            s.gcm[i][(i + 1) % r] = -1;
            s.gcm[i][(i + r - 1) % r] = -1;
        }
        for (int i = 0; i < r; ++i) s.labels.push_back(std::to_string(i));
    }
    s.type_tag = "affine";
    return s;
}

// Positive roots of a finite-type system: closure of the simple roots
// under simple reflections, kept when all coefficients stay nonnegative.
inline std::vector<RootVector> positive_roots(const CartanSpec& spec) {
    if (!spec.finite_type())
        throw std::invalid_argument("positive_roots: spec is not finite type");
    const int n = spec.rank();
    std::set<RootVector> seen;
    std::vector<RootVector> queue;
    for (int i = 0; i < n; ++i) {
        auto r = RootVector::simple(n, i);
        seen.insert(r);
        queue.push_back(r);
    }
    while (!queue.empty()) {
        RootVector beta = queue.back();
        queue.pop_back();
        for (int i = 0; i < n; ++i) {
            RootVector refl = beta;
            refl.coeffs[i] -= spec.pair_h(i, beta);
            if (refl.nonnegative() && seen.insert(refl).second)
                queue.push_back(refl);
        }
    }
    return {seen.begin(), seen.end()};
}

namespace detail {

// (nu, beta) for a weight nu (pairing coords) and beta in Q, with respect
// to the symmetrized form: (nu, beta) = sum_i c_i d_i <h_i, nu>.
inline long long ip_weight_root(const CartanSpec& spec,
                                const std::vector<int>& d, const Weight& nu,
                                const RootVector& beta) {
    long long s = 0;
    for (int i = 0; i < spec.rank(); ++i)
        s += static_cast<long long>(beta.coeffs[i]) * d[i] * nu.v[i];
    return s;
}

inline long long ip_root_root(const CartanSpec& spec, const std::vector<int>& d,
                              const RootVector& a, const RootVector& b) {
    return ip_weight_root(spec, d, spec.root_as_weight(a), b);
}

}  // namespace detail

// dim V(lambda) by the Weyl dimension formula.
inline long long weyl_dim(const CartanSpec& spec, const Weight& lam) {
    if (!spec.finite_type())
        throw std::invalid_argument("weyl_dim: spec is not finite type");
    if (!lam.dominant())
        throw std::invalid_argument("weyl_dim: weight is not dominant");
    const auto d = spec.symmetrizers();
    const Weight rho(std::vector<int>(spec.rank(), 1));
    const Weight lam_rho = lam + rho;
    long long num = 1, den = 1;
    for (const auto& beta : positive_roots(spec)) {
        num *= detail::ip_weight_root(spec, d, lam_rho, beta);
        den *= detail::ip_weight_root(spec, d, rho, beta);
        long long g = std::gcd(num, den);
        num /= g;
        den /= g;
    }
    if (den != 1 || num <= 0)
        throw std::logic_error("weyl_dim: non-integral result");
    return num;
}

// Full weight multiplicity table of V(lambda) via Freudenthal's recursion,
// keyed by pairing coordinates.
inline std::map<std::vector<int>, long long> freudenthal_multiplicities(
    const CartanSpec& spec, const Weight& lam) {
    if (!spec.finite_type())
        throw std::invalid_argument("freudenthal: spec is not finite type");
    if (!lam.dominant())
        throw std::invalid_argument("freudenthal: weight is not dominant");
    const int n = spec.rank();
    const auto d = spec.symmetrizers();
    const auto roots = positive_roots(spec);
    const Weight rho(std::vector<int>(n, 1));
    const Weight lam_rho = lam + rho;

    std::map<std::vector<int>, long long> mult;
    // by-level bookkeeping: level h holds mu = lam - beta with ht(beta) = h
    std::map<RootVector, long long> by_beta;
    by_beta[RootVector::zero(n)] = 1;
    mult[lam.v] = 1;

    // enumerate compositions of h into n nonnegative parts
    std::vector<int> comp(n, 0);
    for (int h = 1; h < 100000; ++h) {
        long long level_total = 0;
        std::fill(comp.begin(), comp.end(), 0);
        comp[0] = h;
        bool more = true;
        while (more) {
            RootVector beta(comp);
            const Weight mu = lam - spec.root_as_weight(beta);
            const long long D = 2 * detail::ip_weight_root(spec, d, lam_rho, beta) -
                                detail::ip_root_root(spec, d, beta, beta);
            if (D > 0) {
                long long S = 0;
                for (const auto& alpha : roots) {
                    const int ha = alpha.height();
                    const long long mu_a =
                        detail::ip_weight_root(spec, d, mu, alpha);
                    const long long a_a =
                        detail::ip_root_root(spec, d, alpha, alpha);
                    for (int k = 1; k * ha <= h; ++k) {
                        RootVector up = beta;
                        bool ok = true;
                        for (int t = 0; t < n && ok; ++t) {
                            up.coeffs[t] -= k * alpha.coeffs[t];
                            if (up.coeffs[t] < 0) ok = false;
                        }
                        if (!ok) continue;
                        auto it = by_beta.find(up);
                        if (it != by_beta.end() && it->second)
                            S += it->second * (mu_a + k * a_a);
                    }
                }
                if (S > 0) {
                    if ((2 * S) % D != 0)
                        throw std::logic_error("freudenthal: non-integral multiplicity");
                    const long long m = 2 * S / D;
                    if (m > 0) {
                        by_beta[beta] = m;
                        mult[mu.v] = m;
                        level_total += m;
                    }
                }
            }
            // next composition
            more = false;
            for (int t = 0; t + 1 < n; ++t) {
                if (comp[t] > 0) {
                    ++comp[t + 1];
                    int tail = 0;
                    for (int u = t + 1; u < n; ++u) tail += comp[u];
                    comp[0] = h - tail;
                    for (int u = 1; u <= t; ++u) comp[u] = 0;
                    more = true;
                    break;
                }
            }
            if (n == 1) more = false;
        }
        if (level_total == 0) break;
    }
    return mult;
}

// All dominant weights with every pairing in [0, max_pairing].
inline std::vector<Weight> dominant_weights_up_to(const CartanSpec& spec,
                                                  int max_pairing) {
    std::vector<Weight> out;
    std::vector<int> v(spec.rank(), 0);
    while (true) {
        out.emplace_back(v);
        int k = spec.rank() - 1;
        while (k >= 0 && v[k] == max_pairing) v[k--] = 0;
        if (k < 0) break;
        ++v[k];
    }
    return out;
}

}  // namespace crys
