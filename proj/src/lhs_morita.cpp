#include "pcube/lhs_morita.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pcube/modular.hpp"
#include "pcube/quadforms.hpp"

namespace pcube::lhs {

using ring::GradedElement;

namespace {

std::string num(std::int64_t v) { return std::to_string(v); }

h4::CohClass cls(Family f, std::int64_t p, const std::string& s) { return h4::parse_class(h4::h4_model(f, p), s); }

int log_p(std::uint64_t n, std::int64_t p)
{
    int k = 0;
    while (n > 1) {
        if (n % static_cast<std::uint64_t>(p) != 0)
            throw std::logic_error("log_p: not a power of p");
        n /= static_cast<std::uint64_t>(p);
        ++k;
    }
    return k;
}

const std::vector<std::string> kCaseIds = {"k_zp_a_zp2_trivial",   "k_zp_a_zp2_twisted", "k_zp2_a_zp",
                                           "k_zp_a_zpxzp_trivial", "k_zpxzp_a_zp",       "k_zp_a_zpxzp_twisted"};

void require_case(const std::string& id)
{
    if (std::find(kCaseIds.begin(), kCaseIds.end(), id) == kCaseIds.end())
        throw std::invalid_argument("unknown extension case '" + id + "'");
}

// ---------------------------------------------------------------------------
// F_p linear algebra on ring elements

using Vec = std::vector<std::int64_t>;

class Coords {
public:
    explicit Coords(std::int64_t p) : p_(p) {}

    Vec of(const GradedElement& e)
    {
        for (const auto& [m, c] : e.terms())
            index_.try_emplace(m, index_.size());
        Vec v(index_.size(), 0);
        for (const auto& [m, c] : e.terms())
            v[index_.at(m)] = mod(c, p_);
        return v;
    }

    std::int64_t p() const { return p_; }

private:
    std::int64_t p_;
    std::map<ring::Monomial, std::size_t> index_;
};

// Row echelon form in place; returns pivot columns.
std::vector<std::size_t> echelon(std::vector<Vec>& rows, std::size_t width, std::int64_t p)
{
    for (auto& r : rows)
        r.resize(width, 0);
    std::vector<std::size_t> pivots;
    std::size_t top = 0;
    for (std::size_t col = 0; col < width && top < rows.size(); ++col) {
        std::size_t piv = top;
        while (piv < rows.size() && rows[piv][col] == 0)
            ++piv;
        if (piv == rows.size())
            continue;
        std::swap(rows[top], rows[piv]);
        const std::int64_t inv = inv_mod(rows[top][col], p);
        for (auto& x : rows[top])
            x = mod(x * inv, p);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == top || rows[r][col] == 0)
                continue;
            const std::int64_t f = rows[r][col];
            for (std::size_t k = 0; k < width; ++k)
                rows[r][k] = mod(rows[r][k] - f * rows[top][k], p);
        }
        pivots.push_back(col);
        ++top;
    }
    return pivots;
}

std::size_t width_of(const std::vector<Vec>& vs)
{
    std::size_t w = 0;
    for (const auto& v : vs)
        w = std::max(w, v.size());
    return w;
}

std::size_t rank(std::vector<Vec> vs, std::int64_t p)
{
    const std::size_t w = width_of(vs);
    return echelon(vs, w, p).size();
}

// Coefficient vectors alpha with sum alpha_j cols[j] = 0.
std::vector<Vec> nullspace(const std::vector<Vec>& cols, std::int64_t p)
{
    const std::size_t n = cols.size();
    const std::size_t h = width_of(cols);
    std::vector<Vec> rows(h, Vec(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < cols[j].size(); ++i)
            rows[i][j] = cols[j][i];
    const auto pivots = echelon(rows, n, p);
    std::vector<bool> is_pivot(n, false);
    for (auto c : pivots)
        is_pivot[c] = true;
    std::vector<Vec> basis;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f])
            continue;
        Vec v(n, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r)
            v[pivots[r]] = mod(-rows[r][f], p);
        basis.push_back(std::move(v));
    }
    return basis;
}

// ---------------------------------------------------------------------------
// symbolic spectral sequence pages

using Cell = std::pair<int, int>;
using CellMap = std::map<Cell, std::vector<std::string>>;

struct Differential {
    int r = 0;
    std::function<GradedElement(const GradedElement&)> d;
};

struct SymbolicSpec {
    std::string case_id;
    Family family{};
    std::string variant; ///< distinguishes several computations for one family
    ring::Ring ring;
    CellMap e2;
    std::vector<Differential> diffs;
    std::map<int, CellMap> expected; ///< page -> nonzero cells with a + b <= 4
};

std::string cell_name(Cell c) { return "(" + num(c.first) + "," + num(c.second) + ")"; }

std::string join(const std::vector<std::string>& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? ", " : "") + v[i];
    return "<" + s + ">";
}

CellMap elem_k_zpxzp_cells()
{
    const std::string bx = "(y1*x2 - x1*y2)";
    return {{{0, 4}, {"y3^2"}},
            {{0, 2}, {"y3"}},
            {{1, 2}, {"y3*x1", "y3*x2"}},
            {{2, 2}, {"y3*y1", "y3*y2", "y3*x1*x2"}},
            {{3, 2}, {"y3*x1*y1", "y3*x1*y2", "y3*x2*y1", "y3*x2*y2"}},
            {{2, 0}, {"y1", "y2"}},
            {{3, 0}, {bx}},
            {{4, 0}, {"y1^2", "y1*y2", "y2^2"}},
            {{5, 0}, {"y1*" + bx, "y2*" + bx}}};
}

CellMap elem_k_zp_cells()
{
    const std::string b23 = "(y2*x3 - x2*y3)";
    return {{{0, 4}, {"y2^2", "y2*y3", "y3^2"}},
            {{0, 3}, {b23}},
            {{1, 3}, {"x1*" + b23}},
            {{0, 2}, {"y2", "y3"}},
            {{1, 2}, {"x1*y2", "x1*y3"}},
            {{2, 2}, {"y1*y2", "y1*y3"}},
            {{3, 2}, {"x1*y1*y2", "x1*y1*y3"}},
            {{2, 0}, {"y1"}},
            {{4, 0}, {"y1^2"}}};
}

CellMap low_cells(const CellMap& m)
{
    CellMap out;
    for (const auto& [c, g] : m)
        if (c.first + c.second <= 4)
            out[c] = g;
    return out;
}

std::vector<SymbolicSpec> symbolic_specs(std::int64_t p)
{
    std::vector<SymbolicSpec> out;

    // Center of the Heisenberg group: fiber t, k-invariant w1 w2.
    {
        SymbolicSpec s;
        s.case_id = "k_zpxzp_a_zp";
        s.family = Family::Heisenberg;
        s.variant = "center, fiber t";
        s.ring = ring::heisenberg_ring(p);
        const std::string bw = "(z1*w2 - w1*z2)";
        s.e2 = {{{0, 4}, {"t^2"}},
                {{0, 2}, {"t"}},
                {{1, 2}, {"t*w1", "t*w2"}},
                {{2, 2}, {"t*z1", "t*z2", "t*w1*w2"}},
                {{3, 2}, {"t*w1*z1", "t*w1*z2", "t*w2*z1", "t*w2*z2"}},
                {{2, 0}, {"z1", "z2"}},
                {{3, 0}, {bw}},
                {{4, 0}, {"z1^2", "z1*z2", "z2^2"}},
                {{5, 0}, {"z1*" + bw, "z2*" + bw}}};
        const std::map<std::string, GradedElement> kappa = {{"t", ring::parse(s.ring, "w1*w2")}};
        s.diffs = {{3, [kappa](const GradedElement& e) { return ring::transgress(e, kappa); }}};
        s.expected[4] = {{{1, 2}, {"t*w1", "t*w2"}},
                         {{2, 2}, {"t*w1*w2"}},
                         {{2, 0}, {"z1", "z2"}},
                         {{4, 0}, {"z1^2", "z1*z2", "z2^2"}}};
        out.push_back(std::move(s));
    }

    // K = Z/p x Z/p, A = Z/p: one k-invariant per realized group.
    struct K25 {
        Family f;
        const char* kappa;
        CellMap e4;
    };
    const std::vector<K25> k25 = {
        {Family::ElemAbelian, "0", low_cells(elem_k_zpxzp_cells())},
        {Family::P2xP,
         "y1",
         {{{0, 4}, {"y3^2"}},
          {{0, 2}, {"y3"}},
          {{2, 2}, {"y3*y1", "y3*y2"}},
          {{2, 0}, {"y1", "y2"}},
          {{3, 0}, {"y1*x2 - x1*y2"}},
          {{4, 0}, {"y2^2"}}}},
        {Family::Heisenberg,
         "x1*x2",
         {{{1, 2}, {"y3*x1", "y3*x2"}}, {{2, 2}, {"y3*x1*x2"}}, {{2, 0}, {"y1", "y2"}}, {{4, 0}, {"y1^2", "y1*y2", "y2^2"}}}},
        {Family::Gp, "y2 + x1*x2", {{{2, 2}, {"y3*(y2 - x1*x2)"}}, {{2, 0}, {"y1", "y2"}}, {{4, 0}, {"y1^2"}}}},
    };
    for (const auto& k : k25) {
        SymbolicSpec s;
        s.case_id = "k_zpxzp_a_zp";
        s.family = k.f;
        s.variant = std::string("kappa = ") + k.kappa;
        s.ring = ring::elementary_ring(p, 3);
        s.e2 = elem_k_zpxzp_cells();
        const std::map<std::string, GradedElement> kappa = {{"y3", ring::parse(s.ring, k.kappa)}};
        s.diffs = {{3, [kappa](const GradedElement& e) { return ring::transgress(e, kappa); }}};
        s.expected[4] = k.e4;
        out.push_back(std::move(s));
    }

    // K = Z/p, A = Z/p x Z/p trivial: split (Z/p)^3 and Z/p^2 x Z/p with d2 x2 = y1.
    {
        SymbolicSpec s;
        s.case_id = "k_zp_a_zpxzp_trivial";
        s.family = Family::ElemAbelian;
        s.variant = "split";
        s.ring = ring::elementary_ring(p, 3);
        s.e2 = elem_k_zp_cells();
        s.expected[4] = low_cells(s.e2);
        out.push_back(std::move(s));
    }
    {
        SymbolicSpec s;
        s.case_id = "k_zp_a_zpxzp_trivial";
        s.family = Family::P2xP;
        s.variant = "d2 x2 = y1";
        s.ring = ring::elementary_ring(p, 3);
        s.e2 = elem_k_zp_cells();
        const auto d2 = ring::GeneratorMap::derivation(s.ring, 1, {{"x2", ring::parse(s.ring, "y1")}});
        const std::map<std::string, GradedElement> kappa = {{"y2", ring::parse(s.ring, "y1")},
                                                            {"y3", GradedElement(s.ring)}};
        s.diffs = {{2, [d2](const GradedElement& e) { return ring::apply_map(d2, e); }},
                   {3, [kappa](const GradedElement& e) { return ring::transgress(e, kappa); }}};
        s.expected[3] = {{{0, 4}, {"y2^2", "y2*y3", "y3^2"}},
                         {{0, 2}, {"y2", "y3"}},
                         {{1, 2}, {"x1*y2", "x1*y3"}},
                         {{2, 2}, {"y1*y2"}},
                         {{2, 0}, {"y1"}},
                         {{4, 0}, {"y1^2"}}};
        s.expected[4] = {{{0, 4}, {"y2^2", "y2*y3", "y3^2"}},
                         {{0, 2}, {"y2", "y3"}},
                         {{1, 2}, {"x1*y3"}},
                         {{2, 2}, {"y1*y2"}},
                         {{2, 0}, {"y1"}}};
        out.push_back(std::move(s));
    }
    return out;
}

struct CellState {
    std::vector<GradedElement> gens; // page-2 generators
    std::vector<GradedElement> Z;    // cycles surviving so far
    std::vector<GradedElement> B;    // boundaries so far (spanning set)
};

GradedElement combo(const ring::Ring& R, const std::vector<GradedElement>& xs, const Vec& a)
{
    GradedElement out(R);
    for (std::size_t j = 0; j < xs.size() && j < a.size(); ++j)
        if (a[j] != 0)
            out += a[j] * xs[j];
    return out;
}

std::vector<Vec> vecs(Coords& co, const std::vector<GradedElement>& xs)
{
    std::vector<Vec> out;
    for (const auto& x : xs)
        out.push_back(co.of(x));
    return out;
}

void run_spec(const SymbolicSpec& s, std::int64_t p, std::vector<Check>& out)
{
    const std::string section = "pages/" + s.case_id;
    const std::string who = std::string(family_key(s.family)) + " [" + s.variant + "]";
    Coords co(p);
    std::map<Cell, CellState> st;
    for (const auto& [c, gs] : s.e2) {
        CellState cs;
        for (const auto& g : gs)
            cs.gens.push_back(ring::parse(s.ring, g));
        cs.Z = cs.gens;
        const std::size_t r = rank(vecs(co, cs.gens), p);
        if (r != cs.gens.size())
            out.push_back({section, who + ": page-2 cell " + cell_name(c) + " generators independent", false,
                           "rank " + num(static_cast<std::int64_t>(r))});
        st[c] = std::move(cs);
    }

    auto compare = [&](int page, const CellMap& expected) {
        std::set<Cell> cells;
        for (const auto& [c, _] : st)
            if (c.first + c.second <= 4)
                cells.insert(c);
        for (const auto& [c, _] : expected)
            cells.insert(c);
        for (const Cell& c : cells) {
            std::vector<GradedElement> exp;
            if (auto it = expected.find(c); it != expected.end())
                for (const auto& g : it->second)
                    exp.push_back(ring::parse(s.ring, g));
            const auto sit = st.find(c);
            std::vector<GradedElement> Z, B;
            if (sit != st.end()) {
                Z = sit->second.Z;
                B = sit->second.B;
            }
            const auto vz = vecs(co, Z);
            const auto vb = vecs(co, B);
            const auto ve = vecs(co, exp);
            const std::size_t rz = rank(vz, p);
            const std::size_t rb = rank(vb, p);
            bool ok = true;
            for (const auto& e : ve) {
                auto t = vz;
                t.push_back(e);
                ok = ok && rank(t, p) == rz;
            }
            auto be = vb;
            be.insert(be.end(), ve.begin(), ve.end());
            ok = ok && rank(be, p) == rz && ve.size() == rz - rb;
            std::vector<std::string> names;
            if (auto it = expected.find(c); it != expected.end())
                names = it->second;
            out.push_back({section, who + ": page " + num(page) + " cell " + cell_name(c) + " = " + join(names), ok,
                           "dim " + num(static_cast<std::int64_t>(rz - rb))});
        }
    };

    for (const auto& [r, d] : s.diffs) {
        std::map<Cell, CellState> next = st;
        for (const auto& [c, cs] : st) {
            if (c.first + c.second > 4)
                continue;
            const Cell t{c.first + r, c.second - r + 1};
            if (t.second < 0)
                continue;
            std::vector<GradedElement> img;
            for (const auto& z : cs.Z)
                img.push_back(d(z));
            const auto tit = st.find(t);
            if (tit == st.end()) {
                const bool zero = std::all_of(img.begin(), img.end(), [](const auto& x) { return x.is_zero(); });
                if (!zero)
                    out.push_back({section, who + ": d" + num(r) + " on " + cell_name(c) + " stays in listed cells",
                                   false, "nonzero image in unlisted cell " + cell_name(t)});
                continue;
            }
            // images must lie in the page-2 span of the target
            const auto vt = vecs(co, tit->second.gens);
            const std::size_t rt = rank(vt, p);
            for (std::size_t j = 0; j < img.size(); ++j) {
                auto tt = vt;
                tt.push_back(co.of(img[j]));
                if (rank(tt, p) != rt)
                    out.push_back({section, who + ": d" + num(r) + " on " + cell_name(c) + " lands in " + cell_name(t),
                                   false, img[j].to_string()});
            }
            // Z_{r+1}: combinations whose image is a boundary of the target
            std::vector<Vec> cols = vecs(co, img);
            const auto vb = vecs(co, tit->second.B);
            cols.insert(cols.end(), vb.begin(), vb.end());
            std::vector<GradedElement> z2;
            for (const auto& a : nullspace(cols, p)) {
                GradedElement x = combo(s.ring, cs.Z, a);
                if (!x.is_zero())
                    z2.push_back(std::move(x));
            }
            next[c].Z = z2;
            for (auto& x : img)
                if (!x.is_zero())
                    next[t].B.push_back(std::move(x));
        }
        st = std::move(next);
        if (auto it = s.expected.find(r + 1); it != s.expected.end())
            compare(r + 1, it->second);
    }
    if (s.diffs.empty())
        for (const auto& [page, cells] : s.expected)
            compare(page, cells);
}

// ---------------------------------------------------------------------------
// order-only page tables

PageTable table(const std::string& id, Family f, int page, std::vector<PageCell> cells, bool symbolic = false)
{
    return {id, f, page, symbolic, std::move(cells)};
}

PageTable from_cells(const std::string& id, Family f, int page, const CellMap& m)
{
    std::vector<PageCell> cells;
    for (const auto& [c, g] : m)
        cells.push_back({c.first, c.second, g, static_cast<int>(g.size())});
    return table(id, f, page, std::move(cells), true);
}

// ---------------------------------------------------------------------------
// Omega

struct OmegaSpec {
    const char* case_id;
    Family family;
    std::vector<std::string> sub;
    std::vector<std::string> quot;
};

std::vector<OmegaSpec> omega_specs(std::int64_t p)
{
    const std::string pp = num(p), p2 = num(p * p);
    return {
        {"k_zp_a_zp2_trivial", Family::P2xP, {"u^2"}, {"uv"}},
        {"k_zp_a_zp2_trivial", Family::Cyclic, {}, {p2 + "*s^2"}},
        {"k_zp_a_zp2_twisted", Family::Gp, {"gamma^2"}, {}},
        {"k_zp2_a_zp", Family::P2xP, {"v^2"}, {"uv"}},
        {"k_zp2_a_zp", Family::Cyclic, {p2 + "*s^2"}, {pp + "*s^2"}},
        {"k_zp_a_zpxzp_trivial", Family::ElemAbelian, {"y1^2"}, {"y1y2", "y1y3"}},
        {"k_zp_a_zpxzp_trivial", Family::P2xP, {}, {pp + "*v^2"}},
        {"k_zpxzp_a_zp", Family::ElemAbelian, {"y1^2", "y2^2", "y1y2"}, {"y1y3", "y2y3", "b(x1x2x3)"}},
        {"k_zpxzp_a_zp", Family::P2xP, {"u^2"}, {"uv", pp + "*v^2"}},
        {"k_zpxzp_a_zp", Family::Heisenberg, {"z1^2", "z1z2", "z2^2"}, {"chi"}},
        {"k_zpxzp_a_zp", Family::Gp, {"gamma^2"}, {"delta"}},
        {"k_zp_a_zpxzp_twisted", Family::Heisenberg, {"z1^2"}, {"z1z2"}},
        {"k_zp_a_zpxzp_twisted", Family::Gp, {}, {}},
    };
}

std::vector<std::uint64_t> span_codes(const h4::H4Model& model, const std::vector<h4::CohClass>& gens)
{
    std::vector<std::uint64_t> radix(model.dim(), 1);
    for (std::size_t i = model.dim(); i-- > 1;)
        radix[i - 1] = radix[i] * static_cast<std::uint64_t>(model.moduli[i]);
    auto encode = [&](const std::vector<std::int64_t>& c) {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < c.size(); ++i)
            code += static_cast<std::uint64_t>(c[i]) * radix[i];
        return code;
    };
    std::vector<std::vector<std::int64_t>> elems = {std::vector<std::int64_t>(model.dim(), 0)};
    std::vector<std::uint64_t> codes = {0};
    for (const auto& g : gens) {
        // extend by multiples of g until they fall back into the current span
        std::vector<std::vector<std::int64_t>> add;
        std::vector<std::int64_t> mult(model.dim(), 0);
        std::sort(codes.begin(), codes.end());
        for (;;) {
            for (std::size_t i = 0; i < mult.size(); ++i)
                mult[i] = mod(mult[i] + g.coeffs[i], model.moduli[i]);
            if (std::binary_search(codes.begin(), codes.end(), encode(mult)))
                break;
            add.push_back(mult);
        }
        const std::size_t base = elems.size();
        for (const auto& m : add)
            for (std::size_t k = 0; k < base; ++k) {
                std::vector<std::int64_t> e(model.dim());
                for (std::size_t i = 0; i < e.size(); ++i)
                    e[i] = mod(elems[k][i] + m[i], model.moduli[i]);
                elems.push_back(std::move(e));
            }
        codes.clear();
        for (const auto& e : elems)
            codes.push_back(encode(e));
    }
    std::sort(codes.begin(), codes.end());
    codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
    return codes;
}

} // namespace

// ---------------------------------------------------------------------------
// cases

const Realization* ExtensionCase::find(Family f) const
{
    for (const auto& r : realized)
        if (r.family == f)
            return &r;
    return nullptr;
}

std::vector<ExtensionCase> build_cases(std::int64_t p)
{
    if (!is_odd_prime(p))
        throw std::invalid_argument("build_cases: p must be an odd prime");
    const ring::Ring E = ring::elementary_ring(p, 3);
    auto k = [&](const char* s) { return std::optional<GradedElement>(ring::parse(E, s)); };
    std::vector<ExtensionCase> out;
    out.push_back({"k_zp_a_zp2_trivial",
                   "Z/p",
                   "Z/p^2",
                   "trivial",
                   {{Family::P2xP, "<(1,0)>", "0", {}},
                    {Family::Cyclic, "<p>", "generator of H^2(Z/p; Z/p^2) = Z/p", {}}}});
    out.push_back({"k_zp_a_zp2_twisted", "Z/p", "Z/p^2", "b -> b^(p+1)", {{Family::Gp, "<b>", "0", {}}}});
    out.push_back({"k_zp2_a_zp",
                   "Z/p^2",
                   "Z/p",
                   "trivial",
                   {{Family::P2xP, "<(0,1)>", "0", {}},
                    {Family::Cyclic, "<p^2>", "generator of H^2(Z/p^2; Z/p) = Z/p", {}}}});
    out.push_back({"k_zp_a_zpxzp_trivial",
                   "Z/p",
                   "Z/p x Z/p",
                   "trivial",
                   {{Family::ElemAbelian, "<(0,0,1),(0,1,0)>", "0", k("0")},
                    {Family::P2xP, "<(p,0),(0,1)>", "y1 (d2 x2 = y1)", k("y1")}}});
    out.push_back({"k_zpxzp_a_zp",
                   "Z/p x Z/p",
                   "Z/p",
                   "trivial",
                   {{Family::ElemAbelian, "<(0,0,1)>", "0", k("0")},
                    {Family::P2xP, "<(p,0)>", "y1", k("y1")},
                    {Family::Heisenberg, "<C>", "x1x2", k("x1*x2")},
                    {Family::Gp, "<b^p>", "y2 + x1x2", k("y2 + x1*x2")}}});
    out.push_back({"k_zp_a_zpxzp_twisted",
                   "Z/p",
                   "Z/p x Z/p",
                   "(1,0) -> (1,1), (0,1) -> (0,1)",
                   {{Family::Heisenberg, "<B,C>", "0", {}},
                    {Family::Gp, "<a,b^p>", "nonzero class of H^2(Z/p; Z/p x Z/p) = Z/p", {}}}});
    return out;
}

ExtensionCase find_case(std::int64_t p, const std::string& id)
{
    require_case(id);
    for (auto& c : build_cases(p))
        if (c.id == id)
            return c;
    throw std::logic_error("find_case");
}

// ---------------------------------------------------------------------------
// page tables

int PageTable::log_order(int a, int b) const
{
    for (const auto& c : cells)
        if (c.a == a && c.b == b)
            return c.log_order;
    return 0;
}

int PageTable::h4_log() const
{
    int s = 0;
    for (const auto& c : cells)
        if (c.a + c.b == 4)
            s += c.log_order;
    return s;
}

std::vector<PageTable> page_tables(std::int64_t p)
{
    std::vector<PageTable> out;
    // K = Z/p, A = Z/p^2 trivial: split Z/p^2 x Z/p, and Z/p^3 where d3 kills (1,2) against (4,0).
    out.push_back(table("k_zp_a_zp2_trivial", Family::P2xP, 2,
                        {{0, 4, {"v^2"}, 2}, {0, 2, {"v"}, 2}, {1, 2, {}, 1}, {2, 2, {"uv"}, 1}, {2, 0, {"u"}, 1},
                         {4, 0, {"u^2"}, 1}}));
    out.push_back(table("k_zp_a_zp2_trivial", Family::Cyclic, 4,
                        {{0, 4, {"s^2"}, 2}, {0, 2, {}, 2}, {2, 2, {"p^2 s^2"}, 1}, {2, 0, {}, 1}}));
    out.push_back(table("k_zp_a_zp2_twisted", Family::Gp, 2,
                        {{0, 4, {"p r^2"}, 1}, {0, 2, {"p r"}, 1}, {2, 0, {"gamma"}, 1}, {4, 0, {"gamma^2"}, 1}}));
    out.push_back(table("k_zp2_a_zp", Family::P2xP, 2,
                        {{0, 4, {"u^2"}, 1}, {0, 2, {"u"}, 1}, {1, 2, {}, 1}, {2, 2, {"uv"}, 1}, {2, 0, {"v"}, 2},
                         {4, 0, {"v^2"}, 2}}));
    out.push_back(table("k_zp2_a_zp", Family::Cyclic, 4,
                        {{0, 4, {"s^2 / (p s^2)"}, 1}, {0, 2, {}, 1}, {2, 2, {"p s^2 / (p^2 s^2)"}, 1}, {2, 0, {}, 2},
                         {4, 0, {"p^2 s^2"}, 1}}));
    for (const auto& s : symbolic_specs(p)) {
        if (s.variant.rfind("center", 0) == 0)
            continue;
        const auto last = s.expected.rbegin();
        out.push_back(from_cells(s.case_id, s.family, last->first, last->second));
    }
    out.push_back(table("k_zp_a_zpxzp_twisted", Family::Heisenberg, 2,
                        {{0, 4, {}, 1}, {0, 3, {}, 1}, {1, 3, {}, 1}, {0, 2, {}, 1}, {1, 2, {}, 1}, {2, 2, {"z1z2"}, 1},
                         {2, 0, {}, 1}, {4, 0, {"z1^2"}, 1}}));
    out.push_back(table("k_zp_a_zpxzp_twisted", Family::Gp, 4,
                        {{0, 4, {"gamma^2"}, 1}, {1, 3, {"delta"}, 1}, {0, 2, {}, 1}, {2, 0, {}, 1}}));
    return out;
}

// ---------------------------------------------------------------------------
// Omega

bool OmegaGroup::contains(const h4::CohClass& c) const
{
    if (c.family != family || c.p != p)
        return false;
    std::vector<h4::CohClass> gens = sub_basis;
    gens.insert(gens.end(), quot_basis.begin(), quot_basis.end());
    gens.push_back(c);
    const auto model = h4::h4_model(family, p);
    return log_p(span_codes(model, gens).size(), p) == log_order;
}

OmegaGroup omega(const std::string& case_id, Family family, std::int64_t p)
{
    require_case(case_id);
    for (const auto& s : omega_specs(p)) {
        if (s.case_id != case_id || s.family != family)
            continue;
        OmegaGroup g;
        g.case_id = case_id;
        g.family = family;
        g.p = p;
        for (const auto& x : s.sub)
            g.sub_basis.push_back(cls(family, p, x));
        for (const auto& x : s.quot)
            g.quot_basis.push_back(cls(family, p, x));
        const auto model = h4::h4_model(family, p);
        std::vector<h4::CohClass> all = g.sub_basis;
        all.insert(all.end(), g.quot_basis.begin(), g.quot_basis.end());
        g.sub_log = log_p(span_codes(model, g.sub_basis).size(), p);
        g.log_order = log_p(span_codes(model, all).size(), p);
        return g;
    }
    throw std::invalid_argument("omega: " + std::string(family_key(family)) + " is not realized in " + case_id);
}

std::vector<Check> verify_pages(const std::string& case_id, std::int64_t p)
{
    require_case(case_id);
    std::vector<Check> out;
    const std::string section = "pages/" + case_id;
    for (const auto& s : symbolic_specs(p))
        if (s.case_id == case_id)
            run_spec(s, p, out);

    const ExtensionCase ec = find_case(p, case_id);
    for (const auto& r : ec.realized) {
        if (r.kappa_class) {
            // H^2(K; Z/p) for K = Z/p x Z/p is spanned by y1, y2, x1x2; for K = Z/p by y1
            const auto& kc = *r.kappa_class;
            const std::vector<std::string> allowed = case_id == "k_zpxzp_a_zp"
                                                         ? std::vector<std::string>{"y1", "y2", "x1*x2"}
                                                         : std::vector<std::string>{"y1"};
            std::vector<GradedElement> span;
            for (const auto& a : allowed)
                span.push_back(ring::parse(kc.ring(), a));
            Coords co(p);
            auto vs = vecs(co, span);
            const std::size_t r0 = rank(vs, p);
            vs.push_back(co.of(kc));
            const bool ok = (kc.is_zero() || kc.degree() == 2) && rank(vs, p) == r0;
            out.push_back({section, std::string(family_key(r.family)) + ": k-invariant " + r.kappa + " lies in H^2",
                           ok, kc.to_string()});
        }
    }
    for (const auto& t : page_tables(p)) {
        if (t.case_id != case_id)
            continue;
        const std::string f(family_key(t.family));
        const int want = log_p(h4::h4_model(t.family, p).total_order(), p);
        out.push_back({section, f + ": page " + num(t.page) + " orders along a+b=4 give |H^4|", t.h4_log() == want,
                       "p^" + num(t.h4_log()) + " vs p^" + num(want)});
        const OmegaGroup om = omega(case_id, t.family, p);
        const int e40 = t.log_order(4, 0), e22 = t.log_order(2, 2);
        out.push_back({section, f + ": |Omega| = |E(4,0)| |E(2,2)|", om.log_order == e40 + e22,
                       "p^" + num(om.log_order) + " vs p^" + num(e40 + e22)});
        out.push_back({section, f + ": Omega subgroup matches E(4,0)", om.sub_log == e40,
                       "p^" + num(om.sub_log) + " vs p^" + num(e40)});
    }
    return out;
}

// ---------------------------------------------------------------------------
// edges

std::vector<MoritaEdge> morita_edges(const std::string& case_id, std::int64_t p, KReading reading)
{
    require_case(case_id);
    using F = Family;
    std::vector<MoritaEdge> out;
    auto edge = [&](F fa, const std::string& a, F fb, const std::string& b, std::string params = {}) {
        out.push_back({cls(fa, p, a), cls(fb, p, b), case_id, std::move(params)});
    };
    const std::string b = "b(x1x2x3)";
    if (case_id == "k_zp_a_zp2_trivial") {
        edge(F::Cyclic, "0", F::P2xP, "uv");
    } else if (case_id == "k_zp2_a_zp") {
        edge(F::Cyclic, "0", F::P2xP, "uv");
        const std::int64_t kmax = reading == KReading::Units_p ? p : p * p;
        for (std::int64_t k = 1; k < kmax; ++k)
            if (k % p != 0)
                edge(F::Cyclic, num(mod(k * p * p, p * p * p)) + "*s^2", F::P2xP, "uv + " + num(k) + "*v^2",
                     "k=" + num(k));
    } else if (case_id == "k_zp_a_zpxzp_trivial") {
        edge(F::P2xP, "0", F::ElemAbelian, "y1y2");
    } else if (case_id == "k_zpxzp_a_zp") {
        edge(F::P2xP, "0", F::ElemAbelian, "y3y1");
        for (std::int64_t k = 1; k < p; ++k)
            edge(F::P2xP, num(k) + "*u^2", F::ElemAbelian, "y3y1 + " + num(k) + "*y2^2", "k=" + num(k));
        edge(F::Heisenberg, "0", F::ElemAbelian, b);
        for (std::int64_t a = 0; a < p; ++a)
            for (std::int64_t bb = 0; bb < p; ++bb)
                for (std::int64_t c = 0; c < p; ++c)
                    edge(F::Heisenberg, num(a) + "*z1^2 + " + num(bb) + "*z1z2 + " + num(c) + "*z2^2", F::ElemAbelian,
                         b + " + " + num(a) + "*y1^2 + " + num(bb) + "*y1y2 + " + num(c) + "*y2^2",
                         "a=" + num(a) + ",b=" + num(bb) + ",c=" + num(c));
        edge(F::Gp, "0", F::ElemAbelian, "y3y2 - " + b);
        for (std::int64_t k = 1; k < p; ++k)
            edge(F::Gp, num(k) + "*gamma^2", F::ElemAbelian, "y3y2 - " + b + " + " + num(k) + "*y1^2", "k=" + num(k));
    } else if (case_id == "k_zp_a_zpxzp_twisted") {
        for (std::int64_t l = 0; l < p; ++l)
            edge(F::Gp, "0", F::Heisenberg, "z1z2 + " + num(l) + "*z1^2", "l=" + num(l));
    }
    return out;
}

std::vector<MoritaEdge> all_morita_edges(std::int64_t p, KReading reading)
{
    std::vector<MoritaEdge> out;
    for (const auto& id : kCaseIds) {
        auto e = morita_edges(id, p, reading);
        out.insert(out.end(), e.begin(), e.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// components

OrbitIndexes build_indexes(std::int64_t p, const orbits::EnumerateOptions& opts,
                           const std::map<Family, std::vector<h4::ActionGenerator>>& overrides)
{
    OrbitIndexes idx;
    for (Family f : kAllFamilies) {
        const auto it = overrides.find(f);
        const auto gens = it != overrides.end() ? it->second : h4::action_generators(f, p);
        idx[static_cast<std::size_t>(f)] = orbits::enumerate_orbits(h4::h4_model(f, p), gens, opts);
    }
    return idx;
}

std::size_t MoritaGraph::node_of(Family f, std::uint32_t orbit) const
{
    for (std::size_t i = 0; i < nodes.size(); ++i)
        if (nodes[i].family == f && nodes[i].orbit == orbit)
            return i;
    throw std::out_of_range("MoritaGraph: no such node");
}

std::size_t MoritaGraph::find(std::size_t x) const
{
    while (parent[x] != x)
        x = parent[x];
    return x;
}

std::size_t MoritaGraph::component_of(const h4::CohClass& c, const OrbitIndexes& idx) const
{
    const std::size_t root = find(node_of(c.family, idx[static_cast<std::size_t>(c.family)].id_of(c)));
    for (std::size_t i = 0; i < components.size(); ++i)
        if (find(components[i].front()) == root)
            return i;
    throw std::logic_error("MoritaGraph: node outside every component");
}

std::vector<std::vector<std::size_t>> MoritaGraph::nontrivial() const
{
    std::vector<std::vector<std::size_t>> out;
    for (const auto& c : components)
        if (c.size() > 1)
            out.push_back(c);
    return out;
}

MoritaGraph morita_components(const OrbitIndexes& idx, const std::vector<MoritaEdge>& edges)
{
    MoritaGraph g;
    g.p = idx[0].model().p;
    std::array<std::size_t, 5> offset{};
    for (Family f : kAllFamilies) {
        const auto& ix = idx[static_cast<std::size_t>(f)];
        offset[static_cast<std::size_t>(f)] = g.nodes.size();
        for (std::uint32_t o = 0; o < ix.size(); ++o)
            g.nodes.push_back({f, o, ix.representative(o), ix.label(o)});
    }
    g.parent.resize(g.nodes.size());
    std::iota(g.parent.begin(), g.parent.end(), std::size_t{0});

    auto root = [&](std::size_t x) {
        std::size_t r = x;
        while (g.parent[r] != r)
            r = g.parent[r];
        while (g.parent[x] != r) {
            const std::size_t next = g.parent[x];
            g.parent[x] = r;
            x = next;
        }
        return r;
    };
    auto node = [&](const h4::CohClass& c) {
        const auto f = static_cast<std::size_t>(c.family);
        return offset[f] + idx[f].id_of(c);
    };
    for (const auto& e : edges) {
        const std::size_t a = root(node(e.a)), b = root(node(e.b));
        if (a != b)
            g.parent[std::max(a, b)] = std::min(a, b);
    }
    std::map<std::size_t, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        groups[root(i)].push_back(i);
    for (auto& [r, members] : groups) {
        g.size_histogram[members.size()]++;
        g.components.push_back(std::move(members));
    }
    std::sort(g.components.begin(), g.components.end());
    return g;
}

MoritaGraph morita_components(std::int64_t p, const orbits::EnumerateOptions& opts)
{
    return morita_components(build_indexes(p, opts), all_morita_edges(p));
}

namespace {

std::set<std::set<std::pair<int, std::uint32_t>>> member_sets(const MoritaGraph& g)
{
    std::set<std::set<std::pair<int, std::uint32_t>>> out;
    for (const auto& c : g.components) {
        std::set<std::pair<int, std::uint32_t>> s;
        for (auto n : c)
            s.insert({static_cast<int>(g.nodes[n].family), g.nodes[n].orbit});
        out.insert(std::move(s));
    }
    return out;
}

} // namespace

std::vector<Check> verify_morita(std::int64_t p, const OrbitIndexes& idx)
{
    std::vector<Check> out;
    const std::string sec = "morita";
    auto add = [&](std::string name, bool ok, std::string detail = {}) {
        out.push_back({sec, std::move(name), ok, std::move(detail)});
    };
    auto id = [&](Family f, const std::string& s) { return idx[static_cast<std::size_t>(f)].id_of(cls(f, p, s)); };
    const std::string b = "b(x1x2x3)";
    const std::int64_t g = primitive_root(p);

    const MoritaGraph graph = morita_components(idx, all_morita_edges(p));
    const auto n = static_cast<std::int64_t>(graph.component_count());
    add("component count = 5p+32", n == 5 * p + 32, num(n));
    const auto nt = graph.nontrivial();
    std::size_t two = 0, three = 0, big = 0;
    for (const auto& c : nt) {
        two += c.size() == 2;
        three += c.size() == 3;
        big += c.size() > 3;
    }
    add("nontrivial components = p+10", static_cast<std::int64_t>(nt.size()) == p + 10, num(static_cast<std::int64_t>(nt.size())));
    add("p+9 components of size 2, one of size 3, none larger",
        static_cast<std::int64_t>(two) == p + 9 && three == 1 && big == 0,
        num(static_cast<std::int64_t>(two)) + " / " + num(static_cast<std::int64_t>(three)) + " / " +
            num(static_cast<std::int64_t>(big)));
    {
        const std::size_t c = graph.component_of(cls(Family::ElemAbelian, p, "y2y3 + " + b), idx);
        std::set<std::size_t> want = {graph.node_of(Family::ElemAbelian, id(Family::ElemAbelian, "y2y3 + " + b)),
                                      graph.node_of(Family::Heisenberg, id(Family::Heisenberg, "z1z2")),
                                      graph.node_of(Family::Gp, id(Family::Gp, "0"))};
        const auto& got = graph.components[c];
        add("size-3 component is {y2y3 + b(x1x2x3), z1z2, 0}",
            std::set<std::size_t>(got.begin(), got.end()) == want);
    }

    // every endpoint lies in Omega of its case
    for (const auto& cid : kCaseIds) {
        std::map<Family, OmegaGroup> om;
        std::size_t bad = 0, total = 0;
        std::string first_bad;
        for (const auto& e : morita_edges(cid, p)) {
            for (const auto* c : {&e.a, &e.b}) {
                if (!om.count(c->family))
                    om.emplace(c->family, omega(cid, c->family, p));
                ++total;
                if (!om.at(c->family).contains(*c)) {
                    ++bad;
                    if (first_bad.empty())
                        first_bad = render(*c);
                }
            }
        }
        add("edge endpoints of " + cid + " lie in Omega", bad == 0,
            num(static_cast<std::int64_t>(total)) + " endpoints" + (bad ? ", first outside: " + first_bad : ""));
    }

    add("y3y2 - b(x1x2x3) and y2y3 + b(x1x2x3) share an orbit",
        id(Family::ElemAbelian, "y3y2 - " + b) == id(Family::ElemAbelian, "y2y3 + " + b));

    // Table entries written y1y2 + k y2^2 would coincide; the edge classes y1y3 + k y2^2 do not.
    add("table reading y1y2 + k*y2^2 collapses k = 1 and k = g",
        id(Family::ElemAbelian, "y1y2 + y2^2") == id(Family::ElemAbelian, "y1y2 + " + num(g) + "*y2^2"),
        "entries read as y1y3 + k*y2^2");
    add("y1y3 + k*y2^2 separates k = 1 and k = g",
        id(Family::ElemAbelian, "y1y3 + y2^2") != id(Family::ElemAbelian, "y1y3 + " + num(g) + "*y2^2"));

    // K = Z/p^2: uv + k v^2 and k p^2 s^2 form exactly two matched orbit pairs.
    {
        std::set<std::uint32_t> po, co;
        std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;
        for (std::int64_t k = 1; k < p; ++k) {
            const auto a = id(Family::P2xP, "uv + " + num(k) + "*v^2");
            const auto c = id(Family::Cyclic, num(k * p * p) + "*s^2");
            po.insert(a);
            co.insert(c);
            pairs.insert({c, a});
        }
        add("uv + k*v^2 and k*p^2*s^2 give two matched orbit pairs",
            po.size() == 2 && co.size() == 2 && pairs.size() == 2,
            num(static_cast<std::int64_t>(po.size())) + " / " + num(static_cast<std::int64_t>(co.size())) + " / " +
                num(static_cast<std::int64_t>(pairs.size())));
    }

    // Gp: k gamma^2 are fixed points, so each sits in its own component.
    {
        std::set<std::size_t> comps;
        std::set<std::uint32_t> elem;
        for (std::int64_t k = 1; k < p; ++k) {
            comps.insert(graph.component_of(cls(Family::Gp, p, num(k) + "*gamma^2"), idx));
            elem.insert(id(Family::ElemAbelian, "y3y2 - " + b + " + " + num(k) + "*y1^2"));
        }
        add("k*gamma^2 for distinct k lie in distinct components",
            static_cast<std::int64_t>(comps.size()) == p - 1 && static_cast<std::int64_t>(elem.size()) == p - 1);
    }

    {
        const MoritaGraph alt = morita_components(idx, all_morita_edges(p, KReading::Units_p2));
        add("k in (Z/p)^* and k in (Z/p^2)^* give identical components", member_sets(alt) == member_sets(graph));
    }

    {
        const std::int64_t h = quadforms::select_h(p);
        const std::string hz = num(h) + "*z1^2 + z2^2";
        const bool distinct = id(Family::Heisenberg, hz) != id(Family::Heisenberg, "z1z2");
        const bool merged = graph.component_of(cls(Family::Heisenberg, p, hz), idx) ==
                            graph.component_of(cls(Family::ElemAbelian, p, b + " + " + num(h) + "*y1^2 + y2^2"), idx);
        add("h = " + num(h) + ": h*z1^2 + z2^2 is outside the orbit of z1z2 and pairs with b(x1x2x3) + h*y1^2 + y2^2",
            distinct && merged);
    }

    add("reading: K = Z/p, A = Z/p^2 extensions are Z/p^3 and Z/p^2 x Z/p", true, "printed as Z/8 and Z/4 x Z/2");
    add("reading: the elementary abelian group in the derived equivalences is (Z/p)^3", true, "printed as (Z/2)^3");
    return out;
}

// ---------------------------------------------------------------------------
// tables

TableFormat parse_table_format(const std::string& s)
{
    if (s == "md" || s == "markdown")
        return TableFormat::Markdown;
    if (s == "csv")
        return TableFormat::Csv;
    if (s == "json")
        return TableFormat::Json;
    throw std::invalid_argument("unsupported format '" + s + "' (md, csv, json)");
}

namespace {

using Row = std::array<std::vector<std::size_t>, 5>;

std::vector<Row> table_rows(const MoritaGraph& g)
{
    std::vector<Row> rows;
    for (const auto& c : g.nontrivial()) {
        Row r;
        for (auto n : c)
            r[static_cast<std::size_t>(g.nodes[n].family)].push_back(n);
        rows.push_back(std::move(r));
    }
    auto key = [&](const Row& r) {
        std::array<std::uint32_t, 5> k{};
        for (std::size_t f = 0; f < 5; ++f)
            k[f] = r[f].empty() ? std::numeric_limits<std::uint32_t>::max() : g.nodes[r[f].front()].orbit;
        return k;
    };
    std::stable_sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) { return key(a) < key(b); });
    return rows;
}

std::string entry(const MoritaGraph& g, const std::vector<std::size_t>& ns)
{
    std::string s;
    for (std::size_t i = 0; i < ns.size(); ++i)
        s += (i ? "; " : "") + g.nodes[ns[i]].label;
    return s;
}

std::string csv_quote(const std::string& s) { return "\"" + s + "\""; }

} // namespace

nlohmann::json table_json(const MoritaGraph& g)
{
    nlohmann::json comps = nlohmann::json::array();
    for (const auto& row : table_rows(g)) {
        nlohmann::json members = nlohmann::json::array();
        for (const auto& col : row)
            for (auto n : col) {
                const auto& node = g.nodes[n];
                members.push_back({{"family", std::string(family_key(node.family))},
                                   {"class_label", h4::render(node.canonical)},
                                   {"coeffs", node.canonical.coeffs}});
            }
        comps.push_back({{"members", members}});
    }
    return {{"p", g.p},
            {"component_count", g.component_count()},
            {"h", quadforms::select_h(g.p)},
            {"components", comps}};
}

std::string emit_table(const MoritaGraph& g, TableFormat format)
{
    std::ostringstream os;
    const auto rows = table_rows(g);
    switch (format) {
    case TableFormat::Markdown: {
        os << "p = " << g.p << ": " << g.component_count() << " Morita classes, " << rows.size()
           << " nontrivial (h = " << quadforms::select_h(g.p) << ")\n\n|";
        for (Family f : kAllFamilies)
            os << ' ' << family_display(f, g.p) << " |";
        os << "\n|";
        for (std::size_t i = 0; i < 5; ++i)
            os << "---|";
        os << '\n';
        for (const auto& r : rows) {
            os << '|';
            for (const auto& col : r)
                os << ' ' << entry(g, col) << " |";
            os << '\n';
        }
        break;
    }
    case TableFormat::Csv:
        os << "p";
        for (Family f : kAllFamilies)
            os << ',' << family_key(f);
        os << '\n';
        for (const auto& r : rows) {
            os << g.p;
            for (const auto& col : r)
                os << ',' << (col.empty() ? "" : csv_quote(entry(g, col)));
            os << '\n';
        }
        break;
    case TableFormat::Json: os << table_json(g).dump(2) << '\n'; break;
    }
    return os.str();
}

std::vector<std::vector<h4::CohClass>> components_from_json(const nlohmann::json& j)
{
    const std::int64_t p = j.at("p").get<std::int64_t>();
    std::vector<std::vector<h4::CohClass>> out;
    for (const auto& c : j.at("components")) {
        std::vector<h4::CohClass> members;
        for (const auto& m : c.at("members")) {
            nlohmann::json cj = {{"family", m.at("family")}, {"p", p}, {"coeffs", m.at("coeffs")}};
            members.push_back(h4::class_from_json(cj));
        }
        out.push_back(std::move(members));
    }
    return out;
}

} // namespace pcube::lhs
