#include "pcube/h4_models.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "pcube/modular.hpp"

namespace pcube::h4 {

using ring::GeneratorMap;
using ring::GradedElement;

std::uint64_t H4Model::total_order() const
{
    std::uint64_t n = 1;
    for (auto m : moduli)
        n *= static_cast<std::uint64_t>(m);
    return n;
}

H4Model h4_model(Family family, std::int64_t p)
{
    if (!is_odd_prime(p))
        throw std::invalid_argument("h4_model: p = " + std::to_string(p) + " is not an odd prime");
    H4Model m{family, p, {}, {}};
    switch (family) {
    case Family::Cyclic:
        m.basis = {"s^2"};
        m.moduli = {p * p * p};
        break;
    case Family::P2xP:
        m.basis = {"v^2", "uv", "u^2"};
        m.moduli = {p * p, p, p};
        break;
    case Family::ElemAbelian:
        m.basis = {"y1^2", "y2^2", "y3^2", "y1y2", "y1y3", "y2y3", "b(x1x2x3)"};
        m.moduli.assign(7, p);
        break;
    case Family::Heisenberg:
        m.basis = {"chi", "z1^2", "z2^2", "z1z2"};
        m.moduli.assign(4, p);
        break;
    case Family::Gp:
        m.basis = {"delta", "gamma^2"};
        m.moduli.assign(2, p);
        break;
    }
    return m;
}

CohClass make_class(const H4Model& model, std::vector<std::int64_t> coeffs)
{
    if (coeffs.size() != model.dim())
        throw std::invalid_argument("make_class: expected " + std::to_string(model.dim()) + " coefficients");
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        coeffs[i] = mod(coeffs[i], model.moduli[i]);
    return {model.family, model.p, std::move(coeffs)};
}

std::string render(const H4Model& model, const std::vector<std::int64_t>& coeffs)
{
    std::string out;
    for (std::size_t i = 0; i < model.dim(); ++i) {
        const std::int64_t c = mod(coeffs.at(i), model.moduli[i]);
        if (!c)
            continue;
        if (!out.empty())
            out += " + ";
        if (c != 1)
            out += std::to_string(c) + "*";
        out += model.basis[i];
    }
    return out.empty() ? "0" : out;
}

std::string render(const CohClass& c) { return render(h4_model(c.family, c.p), c.coeffs); }

namespace {

std::string normalize_label(std::string s)
{
    s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return ch == '*' || std::isspace(static_cast<unsigned char>(ch)); }),
            s.end());
    if (s == "beta(x1x2x3)" || s == "b(x1x2x3)")
        return "b(x1x2x3)";
    if (s == "tw1w2" || s == "chi")
        return "chi";
    if (s == "pr^2" || s == "delta")
        return "delta";
    if (s == "vu")
        return "uv";
    // y_a y_b and z_a z_b with the indices out of order
    if (s.size() == 4 && (s[0] == 'y' || s[0] == 'z') && s[2] == s[0] && s[1] > s[3])
        return std::string{s[0], s[3], s[0], s[1]};
    if (s.size() == 4 && (s[0] == 'y' || s[0] == 'z') && s[2] == s[0] && s[1] == s[3])
        return std::string{s[0], s[1]} + "^2";
    return s;
}

} // namespace

CohClass parse_class(const H4Model& model, std::string_view label)
{
    std::vector<std::int64_t> c(model.dim(), 0);
    std::string s(label);
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw std::invalid_argument("cannot parse class '" + std::string(label) + "': " + why);
    };
    auto skip = [&] {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
            ++pos;
    };
    skip();
    if (pos == s.size())
        fail("empty");
    bool first = true;
    while (pos < s.size()) {
        int sign = 1;
        skip();
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1 : 1;
            ++pos;
        } else if (!first) {
            fail("expected '+' or '-'");
        }
        first = false;
        skip();
        std::int64_t coef = 1;
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
            ++pos;
        if (pos > start)
            coef = std::stoll(s.substr(start, pos - start));
        skip();
        if (pos < s.size() && s[pos] == '*')
            ++pos;
        skip();
        start = pos;
        int depth = 0;
        while (pos < s.size() && (depth > 0 || (s[pos] != '+' && s[pos] != '-'))) {
            if (s[pos] == '(')
                ++depth;
            if (s[pos] == ')')
                --depth;
            ++pos;
        }
        std::string term = s.substr(start, pos - start);
        while (!term.empty() && std::isspace(static_cast<unsigned char>(term.back())))
            term.pop_back();
        if (term.empty()) {
            if (coef != 0)
                fail("bare constant");
            continue;
        }
        const std::string key = normalize_label(term);
        auto it = std::find(model.basis.begin(), model.basis.end(), key);
        if (it == model.basis.end())
            fail("unknown basis label '" + term + "'");
        c[static_cast<std::size_t>(it - model.basis.begin())] += sign * coef;
    }
    return make_class(model, std::move(c));
}

// ---------------------------------------------------------------------------
// action matrices

Matrix action_matrix(Family family, std::int64_t p, const std::vector<std::int64_t>& q)
{
    const H4Model model = h4_model(family, p);
    const std::size_t n = model.dim();
    Matrix m(n * n, 0);
    auto at = [&](std::size_t i, std::size_t j) -> std::int64_t& { return m[i * n + j]; };
    auto need = [&](std::size_t k) {
        if (q.size() != k)
            throw std::invalid_argument("action_matrix: expected " + std::to_string(k) + " parameters");
    };
    switch (family) {
    case Family::Cyclic:
        need(1);
        at(0, 0) = q[0] * q[0];
        break;
    case Family::P2xP: {
        need(4);
        const auto i = q[0], j = q[1], k = q[2], l = q[3];
        // columns: v^2 -> k^2 u^2 + 2ik uv + i^2 v^2; uv -> lk u^2 + il uv + pij v^2; u^2 -> l^2 u^2
        at(0, 0) = i * i, at(1, 0) = 2 * i * k, at(2, 0) = k * k;
        at(0, 1) = p * i * j, at(1, 1) = i * l, at(2, 1) = l * k;
        at(2, 2) = l * l;
        break;
    }
    case Family::ElemAbelian: {
        need(9);
        auto A = [&](int r, int c) { return q[static_cast<std::size_t>(3 * r + c)]; };
        // quadratic basis index of y_i y_j
        auto idx = [](int i, int j) -> std::size_t {
            if (i > j)
                std::swap(i, j);
            if (i == j)
                return static_cast<std::size_t>(i);
            return i == 0 ? (j == 1 ? 3 : 4) : 5;
        };
        const std::array<std::pair<int, int>, 6> pairs{{{0, 0}, {1, 1}, {2, 2}, {0, 1}, {0, 2}, {1, 2}}};
        for (std::size_t col = 0; col < 6; ++col) {
            const auto [k, l] = pairs[col];
            // (sum_i A_ki y_i)(sum_j A_lj y_j)
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    at(idx(i, j), col) += A(k, i) * A(l, j);
        }
        at(6, 6) = A(0, 0) * (A(1, 1) * A(2, 2) - A(1, 2) * A(2, 1)) - A(0, 1) * (A(1, 0) * A(2, 2) - A(1, 2) * A(2, 0)) +
                   A(0, 2) * (A(1, 0) * A(2, 1) - A(1, 1) * A(2, 0));
        break;
    }
    case Family::Heisenberg: {
        need(5);
        const auto a = q[0], b = q[1], c = q[2], d = q[3], e = q[4];
        at(0, 0) = e * (a * d - b * c);
        at(1, 1) = a * a, at(2, 1) = c * c, at(3, 1) = 2 * a * c;
        at(1, 2) = b * b, at(2, 2) = d * d, at(3, 2) = 2 * b * d;
        at(1, 3) = a * b, at(2, 3) = c * d, at(3, 3) = a * d + b * c;
        break;
    }
    case Family::Gp:
        need(1);
        at(0, 0) = q[0] * q[0];
        at(1, 1) = 1;
        break;
    }
    return reduce(model, std::move(m));
}

std::vector<ActionGenerator> action_generators(Family family, std::int64_t p)
{
    const std::int64_t g = primitive_root(p);
    const std::int64_t g2 = primitive_root_p2(p);
    std::vector<ActionGenerator> out;
    auto add = [&](std::string name, std::vector<std::int64_t> params) {
        Matrix m = action_matrix(family, p, params);
        out.push_back({std::move(name), std::move(params), std::move(m)});
    };
    switch (family) {
    case Family::Cyclic:
        add("s -> g s", {g2});
        break;
    case Family::P2xP:
        add("rho(g,0,0,1)", {g2, 0, 0, 1});
        add("rho(1,1,0,1)", {1, 1, 0, 1});
        add("rho(1,0,1,1)", {1, 0, 1, 1});
        add("rho(1,0,0,g)", {1, 0, 0, g2 % p});
        break;
    case Family::ElemAbelian:
        add("diag(g,1,1)", {g, 0, 0, 0, 1, 0, 0, 0, 1});
        add("transvection e12", {1, 1, 0, 0, 1, 0, 0, 0, 1});
        add("cyclic permutation", {0, 1, 0, 0, 0, 1, 1, 0, 0});
        break;
    case Family::Heisenberg:
        add("diag(g,1)", {g, 0, 0, 1, g});
        add("[[1,1],[0,1]]", {1, 1, 0, 1, 1});
        add("swap", {0, 1, 1, 0, p - 1});
        break;
    case Family::Gp:
        add("b -> b^g", {g});
        break;
    }
    return out;
}

Matrix identity_matrix(const H4Model& model)
{
    const std::size_t n = model.dim();
    Matrix m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        m[i * n + i] = 1;
    return m;
}

Matrix reduce(const H4Model& model, Matrix m)
{
    const std::size_t n = model.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m[i * n + j] = mod(m[i * n + j], model.moduli[i]);
    return m;
}

Matrix compose(const H4Model& model, const Matrix& a, const Matrix& b)
{
    const std::size_t n = model.dim();
    Matrix r(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            const std::int64_t x = a[i * n + k];
            if (!x)
                continue;
            for (std::size_t j = 0; j < n; ++j)
                r[i * n + j] = mod(r[i * n + j] + x * b[k * n + j], model.moduli[i]);
        }
    return r;
}

std::vector<std::int64_t> apply(const H4Model& model, const Matrix& m, const std::vector<std::int64_t>& c)
{
    const std::size_t n = model.dim();
    std::vector<std::int64_t> r(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::int64_t s = 0;
        for (std::size_t j = 0; j < n; ++j)
            s += m[i * n + j] * c[j];
        r[i] = mod(s, model.moduli[i]);
    }
    return r;
}

bool is_well_defined(const H4Model& model, const Matrix& m)
{
    const std::size_t n = model.dim();
    if (m.size() != n * n)
        return false;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto mi = model.moduli[i], mj = model.moduli[j];
            if (mi > mj && mod(m[i * n + j], mi / mj) != 0)
                return false;
        }
    return true;
}

bool is_invertible(const H4Model& model, const Matrix& m)
{
    // An endomorphism of a sum of cyclic p-groups is invertible iff each
    // block between summands of equal order is invertible mod p.
    const std::size_t n = model.dim();
    const std::int64_t p = model.p;
    std::vector<std::vector<std::int64_t>> a(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const auto mi = model.moduli[i], mj = model.moduli[j];
            if (mi == mj)
                a[i][j] = mod(m[i * n + j], p);
            else
                a[i][j] = 0;
        }
    std::int64_t det = 1;
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = n;
        for (std::size_t r = c; r < n; ++r)
            if (a[r][c]) {
                piv = r;
                break;
            }
        if (piv == n)
            return false;
        std::swap(a[piv], a[c]);
        det = mod(det * a[c][c], p);
        const std::int64_t inv = inv_mod(a[c][c], p);
        for (std::size_t r = c + 1; r < n; ++r) {
            const std::int64_t f = mod(a[r][c] * inv, p);
            for (std::size_t k = c; k < n; ++k)
                a[r][k] = mod(a[r][k] - f * a[c][k], p);
        }
    }
    return det != 0;
}

std::set<Matrix> generated_group(const H4Model& model, const std::vector<Matrix>& gens, std::size_t limit)
{
    std::set<Matrix> seen{identity_matrix(model)};
    std::deque<Matrix> queue{identity_matrix(model)};
    std::vector<Matrix> reduced;
    for (const auto& g : gens)
        reduced.push_back(reduce(model, g));
    while (!queue.empty()) {
        Matrix x = std::move(queue.front());
        queue.pop_front();
        for (const auto& g : reduced) {
            Matrix y = compose(model, g, x);
            if (seen.insert(y).second) {
                if (seen.size() > limit)
                    throw std::length_error("generated_group: more than " + std::to_string(limit) + " elements");
                queue.push_back(std::move(y));
            }
        }
    }
    return seen;
}

Matrix pushforward(const groups::GroupMorphism& phi)
{
    const groups::GroupTable& G = *phi.source;
    const std::int64_t p = G.p();
    auto ex = [&](const char* name) { return G.exponents(phi(G.gen(name))); };
    std::vector<std::int64_t> q;
    switch (G.family()) {
    case Family::Cyclic:
        q = {ex("a")[0]};
        break;
    case Family::P2xP: {
        const auto ea = ex("a"), eb = ex("b");
        if (eb[0] % p)
            throw std::domain_error("pushforward: image of b has order p^2");
        q = {ea[0], ea[1], eb[0] / p, eb[1]};
        break;
    }
    case Family::ElemAbelian: {
        const std::array<std::array<int, 3>, 3> cols{ex("e1"), ex("e2"), ex("e3")};
        q.resize(9);
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k)
                q[static_cast<std::size_t>(3 * i + k)] = cols[k][i];
        break;
    }
    case Family::Heisenberg: {
        const auto eA = ex("A"), eB = ex("B"), eC = ex("C");
        if (eC[0] || eC[1])
            throw std::domain_error("pushforward: C is not mapped into the center");
        q = {eA[0], eA[1], eB[0], eB[1], eC[2]};
        break;
    }
    case Family::Gp:
        q = {ex("b")[0]};
        break;
    }
    return action_matrix(G.family(), p, q);
}

// ---------------------------------------------------------------------------
// symbolic cross-check

SymbolicModel symbolic_model(Family family, std::int64_t p)
{
    auto gen = [](const ring::Ring& r, const char* s) { return GradedElement::generator(r, s); };
    SymbolicModel sm;
    switch (family) {
    case Family::Cyclic: {
        sm.ring = ring::cyclic_ring(p);
        auto s = gen(sm.ring, "s");
        sm.basis = {s * s};
        break;
    }
    case Family::P2xP: {
        sm.ring = ring::p2xp_ring(p);
        auto u = gen(sm.ring, "u"), v = gen(sm.ring, "v");
        sm.basis = {v * v, u * v, u * u};
        break;
    }
    case Family::ElemAbelian: {
        sm.ring = ring::elementary_ring(p, 3);
        auto y1 = gen(sm.ring, "y1"), y2 = gen(sm.ring, "y2"), y3 = gen(sm.ring, "y3");
        sm.basis = {y1 * y1, y2 * y2, y3 * y3, y1 * y2, y1 * y3, y2 * y3,
                    ring::bockstein(gen(sm.ring, "x1") * gen(sm.ring, "x2") * gen(sm.ring, "x3"))};
        break;
    }
    case Family::Heisenberg: {
        sm.ring = ring::heisenberg_ring(p);
        auto z1 = gen(sm.ring, "z1"), z2 = gen(sm.ring, "z2");
        sm.basis = {gen(sm.ring, "t") * gen(sm.ring, "w1") * gen(sm.ring, "w2"), z1 * z1, z2 * z2, z1 * z2};
        break;
    }
    case Family::Gp: {
        sm.ring = ring::gp_ring(p);
        auto r = gen(sm.ring, "r"), gamma = gen(sm.ring, "gamma");
        sm.basis = {p * (r * r), gamma * gamma};
        break;
    }
    }
    return sm;
}

GeneratorMap symbolic_pullback(const SymbolicModel& sm, Family family, std::int64_t p,
                               const std::vector<std::int64_t>& q)
{
    const auto& R = sm.ring;
    auto gen = [&](const std::string& s) { return GradedElement::generator(R, s); };
    std::map<std::string, GradedElement> im;
    switch (family) {
    case Family::Cyclic:
        im.emplace("s", q.at(0) * gen("s"));
        break;
    case Family::P2xP:
        im.emplace("u", q.at(3) * gen("u") + (p * q.at(1)) * gen("v"));
        im.emplace("v", q.at(2) * gen("u") + q.at(0) * gen("v"));
        break;
    case Family::ElemAbelian:
        for (int i = 0; i < 3; ++i) {
            GradedElement x(R), y(R);
            for (int j = 0; j < 3; ++j) {
                x += q.at(static_cast<std::size_t>(3 * i + j)) * gen("x" + std::to_string(j + 1));
                y += q.at(static_cast<std::size_t>(3 * i + j)) * gen("y" + std::to_string(j + 1));
            }
            im.emplace("x" + std::to_string(i + 1), x);
            im.emplace("y" + std::to_string(i + 1), y);
        }
        break;
    case Family::Heisenberg: {
        const auto a = q.at(0), b = q.at(1), c = q.at(2), d = q.at(3), e = q.at(4);
        im.emplace("w1", a * gen("w1") + c * gen("w2"));
        im.emplace("w2", b * gen("w1") + d * gen("w2"));
        im.emplace("z1", a * gen("z1") + c * gen("z2"));
        im.emplace("z2", b * gen("z1") + d * gen("z2"));
        im.emplace("t", e * gen("t"));
        break;
    }
    case Family::Gp:
        im.emplace("r", q.at(0) * gen("r"));
        break;
    }
    return GeneratorMap::ring_map(R, im);
}

std::vector<std::int64_t> coordinates(const SymbolicModel& sm, const H4Model& model, const GradedElement& x)
{
    std::vector<std::int64_t> c(sm.basis.size(), 0);
    GradedElement rebuilt(sm.ring);
    for (std::size_t j = 0; j < sm.basis.size(); ++j) {
        const auto& [lead, l] = *sm.basis[j].terms().begin();
        const std::int64_t v = x.coefficient(lead);
        const std::int64_t k = sm.ring->modulus(lead);
        std::int64_t cj;
        if (k > 0) {
            const std::int64_t g = std::gcd(l, k);
            if (v % g)
                throw std::domain_error("coordinates: " + x.to_string() + " is not in the span");
            cj = k / g == 1 ? 0 : mod((v / g) * inv_mod(l / g, k / g), k / g);
        } else {
            if (v % l)
                throw std::domain_error("coordinates: " + x.to_string() + " is not in the span");
            cj = v / l;
        }
        c[j] = mod(cj, model.moduli[j]);
        rebuilt += c[j] * sm.basis[j];
    }
    if (rebuilt != x)
        throw std::domain_error("coordinates: " + x.to_string() + " is not in the span");
    return c;
}

std::vector<Check> cross_check_actions(Family family, std::int64_t p)
{
    return cross_check_actions(family, p, action_generators(family, p));
}

std::vector<Check> cross_check_actions(Family family, std::int64_t p, const std::vector<ActionGenerator>& gens)
{
    const H4Model model = h4_model(family, p);
    const SymbolicModel sm = symbolic_model(family, p);
    const std::size_t n = model.dim();
    const std::string section = "actions/" + std::string(family_key(family));
    std::vector<Check> out;
    for (const auto& g : gens) {
        std::string detail;
        bool ok = is_well_defined(model, g.matrix) && is_invertible(model, g.matrix);
        if (!ok)
            detail = "matrix is not a well-defined automorphism";
        try {
            const GeneratorMap map = symbolic_pullback(sm, family, p, g.params);
            const Matrix stored = reduce(model, g.matrix);
            for (std::size_t j = 0; j < n && ok; ++j) {
                const auto col = coordinates(sm, model, ring::apply_map(map, sm.basis[j]));
                for (std::size_t i = 0; i < n; ++i)
                    if (col[i] != mod(stored[i * n + j], model.moduli[i])) {
                        ok = false;
                        detail = "column " + model.basis[j] + ", row " + model.basis[i] + ": symbolic " +
                                 std::to_string(col[i]) + ", matrix " + std::to_string(stored[i * n + j]);
                        break;
                    }
            }
        } catch (const std::exception& e) {
            ok = false;
            detail = e.what();
        }
        if (ok)
            detail = "all " + std::to_string(n) + " columns match";
        out.push_back({section, "pullback " + g.name, ok, detail});
    }
    return out;
}

// ---------------------------------------------------------------------------
// JSON

void to_json(nlohmann::json& j, const H4Model& m)
{
    j = nlohmann::json{{"family", std::string(family_key(m.family))}, {"p", m.p}, {"basis", m.basis}, {"moduli", m.moduli}};
}

void to_json(nlohmann::json& j, const CohClass& c)
{
    const H4Model m = h4_model(c.family, c.p);
    to_json(j, m);
    j["coeffs"] = c.coeffs;
}

CohClass class_from_json(const nlohmann::json& j)
{
    const auto fam = parse_family(j.at("family").get<std::string>());
    if (!fam)
        throw std::invalid_argument("class_from_json: unknown family");
    const H4Model m = h4_model(*fam, j.at("p").get<std::int64_t>());
    if (j.contains("basis") && j["basis"].get<std::vector<std::string>>() != m.basis)
        throw std::invalid_argument("class_from_json: basis mismatch");
    if (j.contains("moduli") && j["moduli"].get<std::vector<std::int64_t>>() != m.moduli)
        throw std::invalid_argument("class_from_json: moduli mismatch");
    auto coeffs = j.at("coeffs").get<std::vector<std::int64_t>>();
    for (std::size_t i = 0; i < coeffs.size() && i < m.moduli.size(); ++i)
        if (coeffs[i] < 0 || coeffs[i] >= m.moduli[i])
            throw std::invalid_argument("class_from_json: coefficient out of range");
    return make_class(m, std::move(coeffs));
}

std::vector<Check> check_automorphism_images(Family family, std::int64_t p)
{
    const H4Model model = h4_model(family, p);
    const std::string section = "actions/" + std::string(family_key(family));
    const groups::GroupTable g = groups::build_group(family, p);
    std::set<Matrix> pushed;
    for (const auto& phi : groups::enumerate_automorphisms(g))
        pushed.insert(reduce(model, pushforward(phi)));
    std::vector<Matrix> gens;
    for (const auto& a : action_generators(family, p))
        gens.push_back(a.matrix);
    const std::set<Matrix> generated = generated_group(model, gens);
    std::size_t outside = 0;
    for (const auto& m : pushed)
        outside += generated.count(m) ? 0 : 1;
    std::vector<Check> out;
    out.push_back({section, "Aut(G) images lie in the generated group", outside == 0,
                   std::to_string(pushed.size()) + " images, " + std::to_string(outside) + " outside"});
    if (family == Family::Heisenberg || family == Family::Gp)
        out.push_back({section, "generated group equals the Aut(G) image", pushed == generated,
                       std::to_string(generated.size()) + " generated vs " + std::to_string(pushed.size())});
    return out;
}

Matrix corrupt_entry(const H4Model& model, Matrix m, std::size_t row, std::size_t col)
{
    const std::size_t n = model.dim();
    if (row >= n || col >= n || m.size() != n * n)
        throw std::out_of_range("corrupt_entry: index outside the matrix");
    const std::int64_t mi = model.moduli[row], mj = model.moduli[col];
    m[row * n + col] += mi > mj ? mi / mj : 1;
    return reduce(model, std::move(m));
}

} // namespace pcube::h4
