#include "pcube/quadforms.hpp"

#include <sstream>
#include <stdexcept>
#include <utility>

#include "pcube/modular.hpp"

namespace pcube::quadforms {

namespace {

void check_args(int n, std::int64_t p)
{
    if (n < 0 || n > 3)
        throw std::invalid_argument("quadratic forms: dimension must be 0..3");
    if (!is_odd_prime(p))
        throw std::invalid_argument("quadratic forms: p must be an odd prime");
}

} // namespace

QuadForm QuadForm::from_polynomial(std::int64_t p, int n, const std::vector<std::int64_t>& sq,
                                   const std::vector<std::int64_t>& cross)
{
    check_args(n, p);
    QuadForm q;
    q.n = n;
    q.p = p;
    const std::int64_t half = inv_mod(2, p);
    for (int i = 0; i < n && i < static_cast<int>(sq.size()); ++i)
        q.m[i][i] = mod(sq[i], p);
    static constexpr std::array<std::pair<int, int>, 3> kPairs{{{0, 1}, {0, 2}, {1, 2}}};
    for (std::size_t k = 0; k < cross.size() && k < kPairs.size(); ++k) {
        auto [i, j] = kPairs[k];
        if (j >= n) {
            if (mod(cross[k], p))
                throw std::invalid_argument("quadratic forms: cross term outside dimension");
            continue;
        }
        q.m[i][j] = q.m[j][i] = mod(cross[k] * half, p);
    }
    return q;
}

QuadForm QuadForm::from_matrix(std::int64_t p, int n, const Matrix3& m)
{
    check_args(n, p);
    QuadForm q;
    q.n = n;
    q.p = p;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (mod(m[i][j] - m[j][i], p))
                throw std::invalid_argument("quadratic forms: matrix is not symmetric");
            q.m[i][j] = mod(m[i][j], p);
        }
    return q;
}

std::int64_t QuadForm::coefficient(int i, int j) const
{
    if (i > j)
        std::swap(i, j);
    return i == j ? m[i][i] : mod(2 * m[i][j], p);
}

std::string QuadForm::to_string(const std::string& var) const
{
    std::ostringstream os;
    bool first = true;
    auto emit = [&](std::int64_t c, const std::string& mono) {
        if (!c)
            return;
        os << (first ? "" : " + ");
        if (c != 1)
            os << c << '*';
        os << mono;
        first = false;
    };
    for (int i = 0; i < n; ++i)
        emit(coefficient(i, i), var + std::to_string(i + 1) + "^2");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            emit(coefficient(i, j), var + std::to_string(i + 1) + var + std::to_string(j + 1));
    return first ? "0" : os.str();
}

bool operator==(const QuadForm& a, const QuadForm& b)
{
    if (a.n != b.n || a.p != b.p)
        return false;
    for (int i = 0; i < a.n; ++i)
        for (int j = 0; j < a.n; ++j)
            if (a.m[i][j] != b.m[i][j])
                return false;
    return true;
}

std::string to_string(DiscClass d)
{
    switch (d) {
    case DiscClass::Square: return "square";
    case DiscClass::Nonsquare: return "nonsquare";
    default: return "undefined";
    }
}

QuadForm transform(const QuadForm& q, const Matrix3& a)
{
    QuadForm r = q;
    for (int i = 0; i < q.n; ++i)
        for (int j = 0; j < q.n; ++j) {
            std::int64_t s = 0;
            for (int k = 0; k < q.n; ++k)
                for (int l = 0; l < q.n; ++l)
                    s += a[k][i] * q.m[k][l] % q.p * a[l][j];
            r.m[i][j] = mod(s, q.p);
        }
    return r;
}

std::vector<std::int64_t> diagonalize(const QuadForm& q)
{
    const std::int64_t p = q.p;
    const int n = q.n;
    Matrix3 m = q.m;
    auto add_to = [&](int dst, int src, std::int64_t f) { // row_dst += f row_src, col_dst += f col_src
        for (int k = 0; k < n; ++k)
            m[dst][k] = mod(m[dst][k] + f * m[src][k], p);
        for (int k = 0; k < n; ++k)
            m[k][dst] = mod(m[k][dst] + f * m[k][src], p);
    };
    auto swap_idx = [&](int a, int b) {
        std::swap(m[a], m[b]);
        for (int k = 0; k < n; ++k)
            std::swap(m[k][a], m[k][b]);
    };
    std::vector<std::int64_t> diag;
    for (int k = 0; k < n; ++k) {
        int piv = -1;
        for (int i = k; i < n && piv < 0; ++i)
            if (m[i][i])
                piv = i;
        if (piv < 0) {
            // all diagonal entries vanish: create one from an off-diagonal entry
            for (int i = k; i < n && piv < 0; ++i)
                for (int j = i + 1; j < n && piv < 0; ++j)
                    if (m[i][j]) {
                        add_to(i, j, 1); // new m[i][i] = 2 m[i][j] != 0
                        piv = i;
                    }
        }
        if (piv < 0)
            break;
        swap_idx(k, piv);
        const std::int64_t inv = inv_mod(m[k][k], p);
        for (int i = k + 1; i < n; ++i)
            if (m[i][k])
                add_to(i, k, mod(-m[i][k] * inv, p));
        diag.push_back(m[k][k]);
    }
    diag.resize(static_cast<std::size_t>(n), 0);
    return diag;
}

CongruenceInvariant congruence_invariant(const QuadForm& q)
{
    check_args(q.n, q.p);
    CongruenceInvariant inv;
    std::int64_t prod = 1;
    for (std::int64_t d : diagonalize(q))
        if (d) {
            ++inv.rank;
            prod = mod(prod * d, q.p);
        }
    if (inv.rank > 0)
        inv.disc = is_square_mod_p(prod, q.p) ? DiscClass::Square : DiscClass::Nonsquare;
    return inv;
}

bool are_congruent(const QuadForm& a, const QuadForm& b)
{
    if (a.n != b.n || a.p != b.p)
        throw std::invalid_argument("are_congruent: forms differ in dimension or prime");
    return congruence_invariant(a) == congruence_invariant(b);
}

std::vector<QuadForm> representatives(int n, std::int64_t p)
{
    check_args(n, p);
    const std::int64_t g = primitive_root(p);
    std::vector<QuadForm> out{QuadForm::from_polynomial(p, n, {})};
    for (int r = 1; r <= n; ++r)
        for (std::int64_t lead : {std::int64_t{1}, g}) {
            std::vector<std::int64_t> sq(static_cast<std::size_t>(n), 0);
            for (int i = 0; i < r; ++i)
                sq[i] = 1;
            sq[0] = lead;
            out.push_back(QuadForm::from_polynomial(p, n, sq));
        }
    return out;
}

std::int64_t select_h(std::int64_t p)
{
    const auto z1z2 = QuadForm::from_polynomial(p, 2, {0, 0}, {1});
    for (std::int64_t h : {std::int64_t{1}, primitive_root(p)})
        if (!are_congruent(QuadForm::from_polynomial(p, 2, {h, 1}), z1z2))
            return h;
    throw std::logic_error("select_h: both candidates congruent to z1z2");
}

} // namespace pcube::quadforms
