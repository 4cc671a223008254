#pragma once

// Independent oracles shared by the unit tests and the acceptance binary.
// Nothing here calls the code paths it is used to check: congruence is
// decided by exhaustive search or orbit flooding, orbits by a map-based
// closure, and counts by closed formulas.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "pcube/family.hpp"
#include "pcube/h4_models.hpp"
#include "pcube/lhs_morita.hpp"
#include "pcube/quadforms.hpp"

#include "reference_tables.hpp"

namespace pcube::oracle {

inline std::int64_t mod(std::int64_t a, std::int64_t m)
{
    a %= m;
    return a < 0 ? a + m : a;
}

inline std::size_t orbit_count(Family f, std::int64_t p)
{
    const auto q = static_cast<std::size_t>(p);
    switch (f) {
    case Family::Cyclic: return 7;
    case Family::P2xP: return 16;
    case Family::ElemAbelian: return q + 11;
    case Family::Heisenberg: return 2 * q + 9;
    case Family::Gp: return 3 * q;
    }
    return 0;
}

inline std::size_t aut_order(Family f, std::int64_t p)
{
    const auto q = static_cast<std::size_t>(p);
    switch (f) {
    case Family::Cyclic: return q * q * (q - 1);
    case Family::P2xP: return q * q * q * (q - 1) * (q - 1);
    case Family::ElemAbelian: return (q * q * q - 1) * (q * q * q - q) * (q * q * q - q * q);
    case Family::Heisenberg: return q * q * q * (q - 1) * (q - 1) * (q + 1);
    case Family::Gp: return q * q * q * (q - 1);
    }
    return 0;
}

// ---------------------------------------------------------------- quadratic forms

/// Upper-triangular entries of the leading n x n block, row by row.
inline std::vector<std::int64_t> upper(const quadforms::QuadForm& q)
{
    std::vector<std::int64_t> v;
    for (int i = 0; i < q.n; ++i)
        for (int j = i; j < q.n; ++j)
            v.push_back(q.m[i][j]);
    return v;
}

inline quadforms::Matrix3 mat_mul(const quadforms::Matrix3& a, const quadforms::Matrix3& b, int n, std::int64_t p)
{
    quadforms::Matrix3 r{};
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < n; ++k)
                s += a[i][k] * b[k][j];
            r[i][j] = mod(s, p);
        }
    return r;
}

inline quadforms::Matrix3 congruence(const quadforms::QuadForm& q, const quadforms::Matrix3& a)
{
    quadforms::Matrix3 at{};
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j)
            at[i][j] = a[j][i];
    return mat_mul(mat_mul(at, q.m, q.n, q.p), a, q.n, q.p);
}

inline std::int64_t det(const quadforms::Matrix3& a, int n, std::int64_t p)
{
    if (n == 1)
        return mod(a[0][0], p);
    if (n == 2)
        return mod(a[0][0] * a[1][1] - a[0][1] * a[1][0], p);
    return mod(a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                   a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]),
               p);
}

/// Searches every invertible A for A^T Q1 A = Q2.
inline bool congruent_by_search(const quadforms::QuadForm& q1, const quadforms::QuadForm& q2)
{
    const int n = q1.n;
    const std::int64_t p = q1.p;
    const int cells = n * n;
    std::int64_t total = 1;
    for (int i = 0; i < cells; ++i)
        total *= p;
    for (std::int64_t code = 0; code < total; ++code) {
        quadforms::Matrix3 a{};
        std::int64_t c = code;
        for (int k = 0; k < cells; ++k) {
            a[k / n][k % n] = c % p;
            c /= p;
        }
        if (det(a, n, p) == 0)
            continue;
        const auto r = congruence(q1, a);
        bool eq = true;
        for (int i = 0; i < n && eq; ++i)
            for (int j = 0; j < n && eq; ++j)
                eq = r[i][j] == q2.m[i][j];
        if (eq)
            return true;
    }
    return false;
}

/// Congruence classes of all symmetric n x n forms, found by flooding each
/// form with elementary and diagonal generators of GL(n, p).
class CongruenceOrbits {
public:
    CongruenceOrbits(int n, std::int64_t p) : n_(n), p_(p)
    {
        std::vector<quadforms::Matrix3> gens;
        std::int64_t g = 2;
        while (!is_generator(g))
            ++g;
        for (int i = 0; i < n; ++i) {
            auto d = identity();
            d[i][i] = g;
            gens.push_back(d);
            for (int j = 0; j < n; ++j)
                if (i != j) {
                    auto e = identity();
                    e[i][j] = 1;
                    gens.push_back(e);
                }
        }
        const int k = n * (n + 1) / 2;
        std::size_t states = 1;
        for (int i = 0; i < k; ++i)
            states *= static_cast<std::size_t>(p);
        id_.assign(states, -1);
        int next = 0;
        for (std::size_t s = 0; s < states; ++s) {
            if (id_[s] >= 0)
                continue;
            std::vector<std::size_t> stack{s};
            id_[s] = next;
            while (!stack.empty()) {
                const auto cur = decode(stack.back());
                stack.pop_back();
                for (const auto& a : gens) {
                    const auto t = encode(congruence(cur, a));
                    if (id_[t] < 0) {
                        id_[t] = next;
                        stack.push_back(t);
                    }
                }
            }
            ++next;
        }
        classes_ = next;
    }

    int classes() const { return classes_; }
    int id(const quadforms::QuadForm& q) const { return id_[encode(q.m)]; }
    bool congruent(const quadforms::QuadForm& a, const quadforms::QuadForm& b) const { return id(a) == id(b); }

    quadforms::QuadForm decode(std::size_t code) const
    {
        quadforms::Matrix3 m{};
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) {
                m[i][j] = m[j][i] = static_cast<std::int64_t>(code % static_cast<std::size_t>(p_));
                code /= static_cast<std::size_t>(p_);
            }
        return quadforms::QuadForm::from_matrix(p_, n_, m);
    }

private:
    std::size_t encode(const quadforms::Matrix3& m) const
    {
        std::size_t code = 0, w = 1;
        for (int i = 0; i < n_; ++i)
            for (int j = i; j < n_; ++j) {
                code += static_cast<std::size_t>(mod(m[i][j], p_)) * w;
                w *= static_cast<std::size_t>(p_);
            }
        return code;
    }
    quadforms::Matrix3 identity() const
    {
        quadforms::Matrix3 a{};
        for (int i = 0; i < n_; ++i)
            a[i][i] = 1;
        return a;
    }
    bool is_generator(std::int64_t g) const
    {
        std::int64_t x = 1;
        for (std::int64_t k = 1; k < p_ - 1; ++k) {
            x = x * g % p_;
            if (x == 1)
                return false;
        }
        return true;
    }

    int n_;
    std::int64_t p_;
    std::vector<int> id_;
    int classes_ = 0;
};

// ---------------------------------------------------------------- orbits

/// Orbit of every class under the generated group, by map-based closure.
/// Returns class -> lexicographically smallest member of its orbit.
inline std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> naive_orbits(
    const h4::H4Model& model, const std::vector<h4::ActionGenerator>& gens)
{
    std::map<std::vector<std::int64_t>, std::vector<std::int64_t>> rep;
    std::vector<std::int64_t> c(model.dim(), 0);
    for (;;) {
        if (!rep.count(c)) {
            std::set<std::vector<std::int64_t>> orbit{c};
            std::vector<std::vector<std::int64_t>> todo{c};
            while (!todo.empty()) {
                const auto x = todo.back();
                todo.pop_back();
                for (const auto& g : gens) {
                    auto y = h4::apply(model, g.matrix, x);
                    if (orbit.insert(y).second)
                        todo.push_back(std::move(y));
                }
            }
            for (const auto& x : orbit)
                rep[x] = *orbit.begin();
        }
        std::size_t i = model.dim();
        while (i > 0) {
            --i;
            if (++c[i] < model.moduli[i])
                break;
            c[i] = 0;
            if (i == 0)
                return rep;
        }
    }
}

// ---------------------------------------------------------------- Morita tables

using NodeSet = std::set<std::pair<Family, std::uint32_t>>;

/// Transcribed rows as sets of (family, orbit id). Throws if a row repeats an
/// orbit or two rows coincide.
inline std::set<NodeSet> reference_node_sets(std::int64_t p, const lhs::OrbitIndexes& idx)
{
    std::set<NodeSet> out;
    const auto rows = reference::morita_table(p);
    for (const auto& row : rows) {
        NodeSet s;
        for (const auto& [f, label] : row) {
            const auto& ix = idx[static_cast<int>(f)];
            s.insert({f, ix.id_of(h4::parse_class(ix.model(), label))});
        }
        if (s.size() != row.size())
            throw std::logic_error("reference row with " + row.front().second + " repeats an orbit");
        out.insert(s);
    }
    if (out.size() != rows.size())
        throw std::logic_error("reference rows are not distinct");
    return out;
}

inline std::set<NodeSet> node_sets(const std::vector<std::vector<h4::CohClass>>& comps, const lhs::OrbitIndexes& idx)
{
    std::set<NodeSet> out;
    for (const auto& comp : comps) {
        NodeSet s;
        for (const auto& c : comp)
            s.insert({c.family, idx[static_cast<int>(c.family)].id_of(c)});
        out.insert(s);
    }
    return out;
}

inline std::set<NodeSet> node_sets(const lhs::MoritaGraph& g)
{
    std::set<NodeSet> out;
    for (const auto& comp : g.nontrivial()) {
        NodeSet s;
        for (auto n : comp)
            s.insert({g.nodes[n].family, g.nodes[n].orbit});
        out.insert(s);
    }
    return out;
}

inline bool same_tables(const std::set<NodeSet>& expected, const std::set<NodeSet>& actual,
                        const lhs::OrbitIndexes& idx, std::string* why)
{
    if (expected == actual)
        return true;
    if (why) {
        std::ostringstream os;
        os << expected.size() << " reference rows, " << actual.size() << " components";
        for (const auto& s : expected)
            if (!actual.count(s)) {
                const auto& [f, o] = *s.begin();
                os << "; unmatched row starting " << family_key(f) << " " << idx[static_cast<int>(f)].label(o);
                break;
            }
        *why = os.str();
    }
    return false;
}

/// Nontrivial components of `g` against the transcribed table.
inline bool table_matches(std::int64_t p, const lhs::OrbitIndexes& idx, const lhs::MoritaGraph& g, std::string* why)
{
    return same_tables(reference_node_sets(p, idx), node_sets(g), idx, why);
}

} // namespace pcube::oracle
