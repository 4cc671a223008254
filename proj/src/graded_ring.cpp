#include "pcube/graded_ring.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "pcube/modular.hpp"

namespace pcube::ring {

namespace {

bool is_odd(const RingPresentation& r, std::size_t i) { return (r.gen(i).degree & 1) != 0; }

// Product of two monomials with the Koszul sign; nullopt when an odd
// generator would repeat.
std::optional<std::pair<Monomial, bool>> monomial_product(const RingPresentation& r, const Monomial& a,
                                                          const Monomial& b)
{
    bool negative = false;
    Monomial out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] && b[i] && is_odd(r, i))
            return std::nullopt;
        out[i] = static_cast<std::uint8_t>(a[i] + b[i]);
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (!a[i] || !is_odd(r, i))
            continue;
        for (std::size_t j = 0; j < i; ++j)
            if (b[j] && is_odd(r, j))
                negative = !negative;
    }
    return std::make_pair(std::move(out), negative);
}

void require_same_ring(const GradedElement& a, const GradedElement& b)
{
    if (a.ring() != b.ring())
        throw std::invalid_argument("graded ring: operands belong to different presentations");
}

} // namespace

Ring RingPresentation::make(std::vector<Generator> gens, std::int64_t unit_order,
                            const std::map<std::string, std::string>& bockstein)
{
    std::stable_sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        return a.degree != b.degree ? a.degree < b.degree : a.label < b.label;
    });
    auto r = std::make_shared<RingPresentation>();
    r->gens_ = std::move(gens);
    r->unit_order_ = unit_order;
    r->beta_.assign(r->gens_.size(), std::nullopt);
    for (const auto& [from, to] : bockstein) {
        std::size_t i = r->index_of(from);
        if (to == "0" || to.empty()) {
            r->beta_[i] = -1;
        } else {
            std::size_t j = r->index_of(to);
            if (r->gens_[j].degree != r->gens_[i].degree + 1)
                throw std::invalid_argument("bockstein image of " + from + " has the wrong degree");
            r->beta_[i] = static_cast<int>(j);
        }
    }
    return r;
}

std::size_t RingPresentation::index_of(std::string_view label) const
{
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i].label == label)
            return i;
    throw std::out_of_range("unknown generator '" + std::string(label) + "'");
}

bool RingPresentation::has(std::string_view label) const
{
    return std::any_of(gens_.begin(), gens_.end(), [&](const Generator& g) { return g.label == label; });
}

int RingPresentation::degree(const Monomial& m) const
{
    int d = 0;
    for (std::size_t i = 0; i < m.size(); ++i)
        d += m[i] * gens_[i].degree;
    return d;
}

std::int64_t RingPresentation::modulus(const Monomial& m) const
{
    std::int64_t best = 0;
    bool any = false;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i])
            continue;
        std::int64_t o = gens_[i].order;
        if (o == 0)
            continue;
        best = any ? std::min(best, o) : o;
        any = true;
    }
    if (!any)
        return std::all_of(m.begin(), m.end(), [](std::uint8_t e) { return e == 0; }) ? unit_order_ : 0;
    return best;
}

std::string RingPresentation::render(const Monomial& m) const
{
    std::string s;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!m[i])
            continue;
        s += gens_[i].label;
        if (m[i] > 1)
            s += "^" + std::to_string(m[i]);
    }
    return s.empty() ? "1" : s;
}

GradedElement::GradedElement(Ring ring) : ring_(std::move(ring)) {}

GradedElement GradedElement::generator(const Ring& ring, std::string_view label)
{
    Monomial m(ring->size(), 0);
    m[ring->index_of(label)] = 1;
    return term(ring, std::move(m), 1);
}

GradedElement GradedElement::constant(const Ring& ring, std::int64_t c)
{
    return term(ring, Monomial(ring->size(), 0), c);
}

GradedElement GradedElement::term(const Ring& ring, Monomial m, std::int64_t c)
{
    GradedElement e(ring);
    e.add_term(m, c);
    return e;
}

void GradedElement::add_term(const Monomial& m, std::int64_t c)
{
    const std::int64_t k = ring_->modulus(m);
    auto it = terms_.find(m);
    std::int64_t v = (it == terms_.end() ? 0 : it->second) + c;
    if (k > 0)
        v = mod(v, k);
    if (v == 0) {
        if (it != terms_.end())
            terms_.erase(it);
    } else if (it != terms_.end()) {
        it->second = v;
    } else {
        terms_.emplace(m, v);
    }
}

std::optional<int> GradedElement::degree() const
{
    if (terms_.empty() || !is_homogeneous())
        return std::nullopt;
    return ring_->degree(terms_.begin()->first);
}

bool GradedElement::is_homogeneous() const
{
    if (terms_.empty())
        return true;
    const int d = ring_->degree(terms_.begin()->first);
    return std::all_of(terms_.begin(), terms_.end(),
                       [&](const auto& t) { return ring_->degree(t.first) == d; });
}

std::int64_t GradedElement::coefficient(const Monomial& m) const
{
    auto it = terms_.find(m);
    return it == terms_.end() ? 0 : it->second;
}

std::int64_t GradedElement::coefficient(std::string_view monomial_expr) const
{
    GradedElement m = parse(ring_, monomial_expr);
    if (m.terms().size() != 1)
        throw std::invalid_argument("coefficient: expected a single monomial");
    const auto& [mono, c] = *m.terms().begin();
    std::int64_t k = ring_->modulus(mono);
    std::int64_t v = coefficient(mono);
    // m may carry a sign from reordering odd generators
    if (k > 0)
        return mod(v * inv_mod(c, k), k);
    return c == 1 ? v : -v;
}

std::string GradedElement::to_string() const
{
    if (terms_.empty())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const std::int64_t k = ring_->modulus(m);
        std::int64_t v = c;
        if (k > 0 && v > k / 2)
            v -= k;
        const bool neg = v < 0;
        const std::int64_t a = neg ? -v : v;
        if (first)
            os << (neg ? "-" : "");
        else
            os << (neg ? " - " : " + ");
        first = false;
        const bool unit_monomial = std::all_of(m.begin(), m.end(), [](std::uint8_t e) { return e == 0; });
        if (unit_monomial)
            os << a;
        else if (a == 1)
            os << ring_->render(m);
        else
            os << a << '*' << ring_->render(m);
    }
    return os.str();
}

GradedElement& GradedElement::operator+=(const GradedElement& o)
{
    require_same_ring(*this, o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

GradedElement& GradedElement::operator-=(const GradedElement& o)
{
    require_same_ring(*this, o);
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

GradedElement GradedElement::operator-() const
{
    GradedElement r(ring_);
    for (const auto& [m, c] : terms_)
        r.add_term(m, -c);
    return r;
}

GradedElement operator*(std::int64_t c, const GradedElement& a)
{
    GradedElement r(a.ring_);
    for (const auto& [m, v] : a.terms_)
        r.add_term(m, c * v);
    return r;
}

GradedElement operator*(const GradedElement& a, const GradedElement& b) { return multiply(a, b); }

bool operator==(const GradedElement& a, const GradedElement& b)
{
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
}

GradedElement GradedElement::without(const std::vector<Monomial>& vanishing) const
{
    GradedElement r(*this);
    for (const auto& m : vanishing)
        r.terms_.erase(m);
    return r;
}

GradedElement multiply(const GradedElement& a, const GradedElement& b)
{
    require_same_ring(a, b);
    GradedElement r(a.ring());
    for (const auto& [ma, ca] : a.terms())
        for (const auto& [mb, cb] : b.terms()) {
            auto prod = monomial_product(*a.ring(), ma, mb);
            if (!prod)
                continue;
            // coefficients are below 2^31 in every presentation used here
            std::int64_t c = ca * cb;
            r.add_term(prod->first, prod->second ? -c : c);
        }
    return r;
}

namespace {

// Expands a monomial into its factor sequence (generator indices, repeated).
std::vector<std::size_t> factors_of(const Monomial& m)
{
    std::vector<std::size_t> f;
    for (std::size_t i = 0; i < m.size(); ++i)
        for (int e = 0; e < m[i]; ++e)
            f.push_back(i);
    return f;
}

template <class ImageFn>
GradedElement apply_derivation(const GradedElement& a, int shift, ImageFn&& image_of)
{
    const Ring& R = a.ring();
    GradedElement out(R);
    for (const auto& [m, c] : a.terms()) {
        const auto f = factors_of(m);
        for (std::size_t k = 0; k < f.size(); ++k) {
            Monomial prefix(R->size(), 0), suffix(R->size(), 0);
            for (std::size_t t = 0; t < k; ++t)
                ++prefix[f[t]];
            for (std::size_t t = k + 1; t < f.size(); ++t)
                ++suffix[f[t]];
            const GradedElement d = image_of(f[k]);
            if (d.is_zero())
                continue;
            const bool negative = ((shift * R->degree(prefix)) & 1) != 0;
            GradedElement piece = GradedElement::term(R, prefix, 1) * d * GradedElement::term(R, suffix, 1);
            out += (negative ? -c : c) * piece;
        }
    }
    return out;
}

} // namespace

GradedElement bockstein(const GradedElement& a)
{
    const Ring& R = a.ring();
    return apply_derivation(a, 1, [&R](std::size_t i) {
        auto t = R->bockstein_target(i);
        if (!t)
            throw std::domain_error("bockstein: undeclared on generator " + R->gen(i).label);
        if (*t < 0)
            return GradedElement(R);
        Monomial m(R->size(), 0);
        m[static_cast<std::size_t>(*t)] = 1;
        return GradedElement::term(R, m, 1);
    });
}

// ---------------------------------------------------------------------------
// parser

namespace {

class Parser {
public:
    Parser(const Ring& r, std::string_view s) : ring_(r), s_(s) {}

    GradedElement parse_all()
    {
        GradedElement e = expression();
        skip();
        if (pos_ != s_.size())
            fail("unexpected character");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) const
    {
        throw std::invalid_argument("parse error at " + std::to_string(pos_) + " in '" + std::string(s_) +
                                    "': " + why);
    }
    void skip()
    {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }
    bool accept(char c)
    {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    std::int64_t number()
    {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        if (start == pos_)
            fail("expected a number");
        return std::stoll(std::string(s_.substr(start, pos_ - start)));
    }

    GradedElement expression()
    {
        GradedElement acc(ring_);
        bool negative = accept('-');
        if (!negative)
            accept('+');
        acc = negative ? -product() : product();
        for (;;) {
            if (accept('+'))
                acc += product();
            else if (accept('-'))
                acc -= product();
            else
                return acc;
        }
    }

    GradedElement product()
    {
        GradedElement acc = factor();
        while (accept('*'))
            acc = acc * factor();
        return acc;
    }

    GradedElement factor()
    {
        GradedElement base = atom();
        if (!accept('^'))
            return base;
        const std::int64_t e = number();
        GradedElement r = GradedElement::constant(ring_, 1);
        for (std::int64_t k = 0; k < e; ++k)
            r = r * base;
        return r;
    }

    GradedElement atom()
    {
        skip();
        if (accept('(')) {
            GradedElement e = expression();
            if (!accept(')'))
                fail("expected ')'");
            return e;
        }
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_])))
            return GradedElement::constant(ring_, number());
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        if (start == pos_)
            fail("expected a generator");
        return GradedElement::generator(ring_, s_.substr(start, pos_ - start));
    }

    const Ring& ring_;
    std::string_view s_;
    std::size_t pos_ = 0;
};

} // namespace

GradedElement parse(const Ring& ring, std::string_view expr) { return Parser(ring, expr).parse_all(); }

// ---------------------------------------------------------------------------
// generator maps

GeneratorMap::GeneratorMap(Ring ring, Kind kind, int shift, const std::map<std::string, GradedElement>& images,
                           Fill fill)
    : ring_(std::move(ring)), kind_(kind), shift_(kind == Kind::RingMap ? 0 : shift)
{
    images_.assign(ring_->size(), std::nullopt);
    for (const auto& [label, img] : images) {
        const std::size_t i = ring_->index_of(label);
        if (img.ring() != ring_)
            throw std::invalid_argument("generator map: image of " + label + " lives in another ring");
        if (!img.is_zero()) {
            auto d = img.degree();
            if (!d || *d != ring_->gen(i).degree + shift_)
                throw std::invalid_argument("generator map: image of " + label + " has the wrong degree");
        }
        images_[i] = img;
    }
    for (std::size_t i = 0; i < images_.size(); ++i) {
        if (images_[i])
            continue;
        if (fill == Fill::Identity) {
            if (kind_ != Kind::RingMap)
                throw std::invalid_argument("generator map: identity fill needs a ring map");
            images_[i] = GradedElement::generator(ring_, ring_->gen(i).label);
        } else if (fill == Fill::Zero) {
            images_[i] = GradedElement(ring_);
        }
    }
}

GeneratorMap GeneratorMap::ring_map(const Ring& ring, const std::map<std::string, GradedElement>& images)
{
    return GeneratorMap(ring, Kind::RingMap, 0, images, Fill::Identity);
}

GeneratorMap GeneratorMap::derivation(const Ring& ring, int shift, const std::map<std::string, GradedElement>& images)
{
    return GeneratorMap(ring, Kind::Derivation, shift, images, Fill::Zero);
}

const GradedElement& GeneratorMap::image(std::size_t i) const
{
    if (!images_.at(i))
        throw std::domain_error("generator map: no image for " + ring_->gen(i).label);
    return *images_[i];
}

GradedElement apply_map(const GeneratorMap& map, const GradedElement& a)
{
    if (a.ring() != map.ring())
        throw std::invalid_argument("apply_map: element lives in another ring");
    const Ring& R = a.ring();
    if (map.kind() == GeneratorMap::Kind::Derivation)
        return apply_derivation(a, map.shift(), [&map](std::size_t i) { return map.image(i); });

    GradedElement out(R);
    for (const auto& [m, c] : a.terms()) {
        const auto f = factors_of(m);
        if (f.empty()) {
            out += GradedElement::constant(R, c);
            continue;
        }
        GradedElement prod = map.image(f[0]);
        for (std::size_t k = 1; k < f.size(); ++k)
            prod = prod * map.image(f[k]);
        out += c * prod;
    }
    return out;
}

GradedElement transgress(const GradedElement& a, const std::map<std::string, GradedElement>& kappa)
{
    const Ring& R = a.ring();
    std::vector<bool> fiber(R->size(), false);
    for (const auto& [label, k] : kappa) {
        (void)k;
        fiber[R->index_of(label)] = true;
    }
    auto kappa_of = [&](std::size_t i) { return kappa.at(R->gen(i).label); };

    GradedElement out(R);
    for (const auto& [m, c] : a.terms()) {
        Monomial base = m;
        std::vector<std::size_t> f;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (fiber[i]) {
                for (int e = 0; e < m[i]; ++e)
                    f.push_back(i);
                base[i] = 0;
            }
        const GradedElement P = GradedElement::term(R, base, 1);
        if (f.empty())
            continue; // base classes are permanent cycles
        if (f.size() == 1) {
            out += c * bockstein(kappa_of(f[0]) * P);
        } else if (f.size() == 2) {
            const GradedElement g0 = GradedElement::generator(R, R->gen(f[0]).label);
            const GradedElement g1 = GradedElement::generator(R, R->gen(f[1]).label);
            GradedElement t = bockstein(kappa_of(f[0])) * g1 + g0 * bockstein(kappa_of(f[1]));
            out += c * (t * P);
        } else {
            throw std::domain_error("transgress: fiber degree above 2 is not covered");
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// standard presentations

Ring elementary_ring(std::int64_t p, int n)
{
    std::vector<Generator> g;
    std::map<std::string, std::string> beta;
    for (int i = 1; i <= n; ++i) {
        const std::string x = "x" + std::to_string(i), y = "y" + std::to_string(i);
        g.push_back({x, 1, p});
        g.push_back({y, 2, p});
        beta[x] = y;
        beta[y] = "0";
    }
    return RingPresentation::make(std::move(g), p, beta);
}

Ring heisenberg_ring(std::int64_t p)
{
    return RingPresentation::make({{"w1", 1, p}, {"w2", 1, p}, {"z1", 2, p}, {"z2", 2, p}, {"t", 2, p}}, p,
                                  {{"w1", "z1"}, {"w2", "z2"}, {"z1", "0"}, {"z2", "0"}, {"t", "0"}});
}

Ring p2xp_ring(std::int64_t p) { return RingPresentation::make({{"u", 2, p}, {"v", 2, p * p}}, 0); }

Ring cyclic_ring(std::int64_t p) { return RingPresentation::make({{"s", 2, p * p * p}}, 0); }

Ring gp_ring(std::int64_t p) { return RingPresentation::make({{"gamma", 2, p}, {"r", 2, p * p}}, 0); }

} // namespace pcube::ring
