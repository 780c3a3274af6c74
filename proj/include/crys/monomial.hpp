#pragma once

#include <limits>
#include <map>
#include <regex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "crys/cartan.hpp"

namespace crys {

// Laurent monomial in the variables Y_i(n), stored as a canonical finite
// map (i, n) -> nonzero exponent.  The empty map is the identity "1".
struct Monomial {
    std::map<std::pair<int, int>, int> exp;

    static Monomial one() { return {}; }

    static Monomial var(int i, int n, int e = 1) {
        Monomial m;
        if (e) m.exp[{i, n}] = e;
        return m;
    }

    int at(int i, int n) const {
        auto it = exp.find({i, n});
        return it == exp.end() ? 0 : it->second;
    }

    Monomial times(const Monomial& o) const {
        Monomial r = *this;
        for (const auto& [key, e] : o.exp) {
            int v = (r.exp[key] += e);
            if (v == 0) r.exp.erase(key);
        }
        return r;
    }

    Monomial inverse() const {
        Monomial r = *this;
        for (auto& [key, e] : r.exp) e = -e;
        return r;
    }

    bool is_one() const { return exp.empty(); }
    bool operator==(const Monomial& o) const { return exp == o.exp; }
    bool operator<(const Monomial& o) const { return exp < o.exp; }

    // Support of the i-th row as sorted (n, exponent) pairs.
    std::vector<std::pair<int, int>> row(int i) const {
        std::vector<std::pair<int, int>> out;
        auto lo = exp.lower_bound({i, std::numeric_limits<int>::min()});
        for (auto it = lo; it != exp.end() && it->first.first == i; ++it)
            out.emplace_back(it->first.second, it->second);
        return out;
    }

    // wt(M) = sum_i (sum_n y_i(n)) Lambda_i, in pairing coordinates.
    Weight weight(int rank) const {
        Weight w = Weight::zero(rank);
        for (const auto& [key, e] : exp) w.v[key.first] += e;
        return w;
    }

    // Rendered with the labels of the ambient Cartan datum,
    // e.g. "Y1(0)^2 Y2(3)^-1"; the identity renders as "1".
    std::string str(const CartanSpec& spec) const {
        if (exp.empty()) return "1";
        std::string s;
        for (const auto& [key, e] : exp) {
            if (!s.empty()) s += " ";
            s += "Y" + spec.labels[key.first] + "(" +
                 std::to_string(key.second) + ")";
            if (e != 1) s += "^" + std::to_string(e);
        }
        return s;
    }
};

// Parses a product of `Y<label>(<n>)[^<exp>]` factors, e.g. "Y1(0)^2 Y2(3)^-1".
inline Monomial parse_monomial(const std::string& text, const CartanSpec& spec) {
    std::string t;
    for (char ch : text)
        if (ch != ' ' && ch != '*' && ch != '\t') t += ch;
    if (t.empty() || t == "1") return Monomial::one();
    static const std::regex factor(R"(Y([A-Za-z0-9]+)\((-?\d+)\)(\^(-?\d+))?)");
    Monomial m;
    auto begin = std::sregex_iterator(t.begin(), t.end(), factor);
    size_t consumed = 0;
    for (auto it = begin; it != std::sregex_iterator(); ++it) {
        const auto& mt = *it;
        if (static_cast<size_t>(mt.position()) != consumed)
            throw std::invalid_argument("bad monomial syntax: " + text);
        consumed += mt.length();
        int i = spec.label_index(mt[1].str());
        int n = std::stoi(mt[2].str());
        int e = mt[4].matched ? std::stoi(mt[4].str()) : 1;
        m = m.times(Monomial::var(i, n, e));
    }
    if (consumed != t.size())
        throw std::invalid_argument("bad monomial syntax: " + text);
    return m;
}

// The integer matrix c = (c_ij), i != j, selecting the variant rule.
// Standard mode requires c_ij + c_ji = 1; relaxed mode (experiments only)
// requires c_ij + c_ji >= 1.
struct CMatrix {
    std::vector<std::vector<int>> c;  // diagonal unused
    bool relaxed = false;

    CMatrix() = default;
    CMatrix(std::vector<std::vector<int>> entries, bool relaxed_mode = false)
        : c(std::move(entries)), relaxed(relaxed_mode) {
        validate();
    }

    static CMatrix zero_below_diagonal(int rank) {
        // c_ij = 1 for i < j, 0 otherwise
        std::vector<std::vector<int>> m(rank, std::vector<int>(rank, 0));
        for (int i = 0; i < rank; ++i)
            for (int j = i + 1; j < rank; ++j) m[i][j] = 1;
        return CMatrix(std::move(m));
    }

    int rank() const { return static_cast<int>(c.size()); }
    int at(int i, int j) const { return c[i][j]; }

    void validate() const {
        const int n = rank();
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(c[i].size()) != n)
                throw std::invalid_argument("c matrix is not square");
            for (int j = i + 1; j < n; ++j) {
                int s = c[i][j] + c[j][i];
                if (relaxed ? s < 1 : s != 1)
                    throw std::invalid_argument(
                        relaxed ? "relaxed c matrix needs c_ij + c_ji >= 1"
                                : "c matrix needs c_ij + c_ji = 1");
            }
        }
    }

    CMatrix transposed() const {
        CMatrix t = *this;
        for (int i = 0; i < rank(); ++i)
            for (int j = 0; j < rank(); ++j) t.c[i][j] = c[j][i];
        return t;
    }

    bool operator==(const CMatrix& o) const { return c == o.c; }
};

// CLI grammar "1,2:0;2,1:1" (labels), with unset mates filled by
// c_ji = 1 - c_ij; also accepts JSON {"c": {"1,2": 0, ...}}.
inline CMatrix parse_cmatrix(const std::string& text, const CartanSpec& spec,
                             bool relaxed = false) {
    const int n = spec.rank();
    std::vector<std::vector<int>> m(n, std::vector<int>(n, 0));
    std::vector<std::vector<bool>> set(n, std::vector<bool>(n, false));
    auto put = [&](const std::string& li, const std::string& lj, int v) {
        int i = spec.label_index(li), j = spec.label_index(lj);
        if (i == j) throw std::invalid_argument("c matrix has no diagonal");
        m[i][j] = v;
        set[i][j] = true;
    };
    auto first = text.find_first_not_of(" \t");
    if (first != std::string::npos && text[first] == '{') {
        auto j = nlohmann::json::parse(text);
        for (const auto& [key, val] : j.at("c").items()) {
            auto comma = key.find(',');
            if (comma == std::string::npos)
                throw std::invalid_argument("bad c key: " + key);
            put(key.substr(0, comma), key.substr(comma + 1), val.get<int>());
        }
    } else {
        static const std::regex entry(
            R"(([A-Za-z0-9]+)\s*,\s*([A-Za-z0-9]+)\s*:\s*(-?\d+))");
        size_t pos = 0;
        bool any = false;
        for (auto it = std::sregex_iterator(text.begin(), text.end(), entry);
             it != std::sregex_iterator(); ++it) {
            put((*it)[1].str(), (*it)[2].str(), std::stoi((*it)[3].str()));
            any = true;
            pos = it->position() + it->length();
        }
        if (!any && !text.empty())
            throw std::invalid_argument("bad c matrix syntax: " + text);
        (void)pos;
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (!set[i][j]) {
                if (set[j][i])
                    m[i][j] = 1 - m[j][i];
                else if (i < j)
                    m[i][j] = 1;  // default orientation
            }
        }
    return CMatrix(std::move(m), relaxed);
}

// psi: Y_i(n) -> Y_i(-n)^{-1}; an involution.
inline Monomial psi_map(const Monomial& m) {
    Monomial out;
    for (const auto& [key, e] : m.exp)
        out.exp[{key.first, -key.second}] = -e;
    return out;
}

// Reindexing Y_i(n) -> Y_i(n + m_i).
inline Monomial shift_map(const Monomial& m, const std::vector<int>& shifts) {
    Monomial out;
    for (const auto& [key, e] : m.exp)
        out.exp[{key.first, key.second + shifts[key.first]}] = e;
    return out;
}

// c'_ij = c_ij + m_i - m_j, the target of shift_map.
inline CMatrix shifted_cmatrix(const CMatrix& c, const std::vector<int>& shifts) {
    CMatrix out = c;
    for (int i = 0; i < c.rank(); ++i)
        for (int j = 0; j < c.rank(); ++j)
            if (i != j) out.c[i][j] = c.c[i][j] + shifts[i] - shifts[j];
    return out;
}

}  // namespace crys
