#include "pcube/groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "pcube/modular.hpp"

namespace pcube::groups {

namespace {

void require(bool cond, const char* what)
{
    if (!cond)
        throw std::logic_error(std::string("group construction: relation failed: ") + what);
}

struct SpanningTree {
    std::vector<Element> bfs_order;
    std::vector<Element> parent;
    std::vector<int> via;
};

// Breadth-first tree of right multiplications by the generators.
SpanningTree spanning_tree(const GroupTable& g)
{
    const auto& gens = g.generators();
    SpanningTree t;
    t.parent.assign(g.order(), 0);
    t.via.assign(g.order(), -1);
    std::vector<char> seen(g.order(), 0);
    seen[g.identity()] = 1;
    t.bfs_order.push_back(g.identity());
    for (std::size_t head = 0; head < t.bfs_order.size(); ++head) {
        Element x = t.bfs_order[head];
        for (std::size_t i = 0; i < gens.size(); ++i) {
            Element y = g.mul(x, gens[i]);
            if (!seen[y]) {
                seen[y] = 1;
                t.parent[y] = x;
                t.via[y] = static_cast<int>(i);
                t.bfs_order.push_back(y);
            }
        }
    }
    if (static_cast<int>(t.bfs_order.size()) != g.order())
        throw std::logic_error("generators do not generate the group");
    return t;
}

std::vector<char> closure_mask(const GroupTable& g, const std::vector<Element>& gens)
{
    std::vector<char> in(g.order(), 0);
    std::vector<Element> queue{g.identity()};
    in[g.identity()] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        Element x = queue[head];
        for (Element s : gens) {
            Element y = g.mul(x, s);
            if (!in[y]) {
                in[y] = 1;
                queue.push_back(y);
            }
        }
    }
    return in;
}

std::vector<int> order_histogram(const GroupTable& g)
{
    std::vector<int> h(g.order() + 1, 0);
    for (int x = 0; x < g.order(); ++x)
        ++h[g.element_order(static_cast<Element>(x))];
    return h;
}

} // namespace

Element GroupTable::pow(Element x, std::int64_t e) const
{
    e = mod(e, elem_order_[x]);
    Element r = identity();
    for (std::int64_t i = 0; i < e; ++i)
        r = mul(r, x);
    return r;
}

Element GroupTable::gen(const std::string& name) const
{
    auto it = gen_names_.find(name);
    if (it == gen_names_.end())
        throw std::out_of_range("unknown generator '" + name + "'");
    return it->second;
}

Element GroupTable::from_exponents(const std::array<int, 3>& e) const
{
    int idx = 0;
    for (int i = 0; i < 3; ++i)
        idx = idx * radix_[i] + static_cast<int>(mod(e[i], radix_[i]));
    return static_cast<Element>(idx);
}

std::string GroupTable::word(Element x) const
{
    std::ostringstream os;
    const auto& e = exps_[x];
    bool any = false;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (e[i] == 0)
            continue;
        os << letters_[i];
        if (e[i] != 1)
            os << '^' << e[i];
        any = true;
    }
    return any ? os.str() : "1";
}

bool GroupTable::is_abelian() const
{
    for (int x = 0; x < order_; ++x)
        for (Element s : generators_)
            if (mul(static_cast<Element>(x), s) != mul(s, static_cast<Element>(x)))
                return false;
    return true;
}

bool GroupTable::check_group_axioms() const
{
    for (int x = 0; x < order_; ++x) {
        const auto ex = static_cast<Element>(x);
        if (mul(ex, identity()) != ex || mul(identity(), ex) != ex)
            return false;
        if (mul(ex, inv(ex)) != identity() || mul(inv(ex), ex) != identity())
            return false;
        for (int y = 0; y < order_; ++y) {
            Element xy = mul(ex, static_cast<Element>(y));
            for (int z = 0; z < order_; ++z)
                if (mul(xy, static_cast<Element>(z)) != mul(ex, mul(static_cast<Element>(y), static_cast<Element>(z))))
                    return false;
        }
    }
    return true;
}

GroupTable build_group(Family family, std::int64_t p, std::int64_t prime_bound)
{
    if (!is_odd_prime(p))
        throw std::invalid_argument("build_group: p = " + std::to_string(p) + " is not an odd prime");
    if (p > prime_bound)
        throw std::invalid_argument("build_group: p = " + std::to_string(p) + " exceeds the prime bound " +
                                    std::to_string(prime_bound));

    GroupTable g;
    g.family_ = family;
    g.p_ = p;
    const int pi = static_cast<int>(p);
    const int n = pi * pi * pi;
    g.order_ = n;

    using Word = std::array<int, 3>;
    std::function<Word(const Word&, const Word&)> op;
    switch (family) {
    case Family::Cyclic:
        g.radix_ = {n, 1, 1};
        g.letters_ = {"a"};
        op = [n](const Word& x, const Word& y) { return Word{(x[0] + y[0]) % n, 0, 0}; };
        break;
    case Family::P2xP:
        g.radix_ = {pi * pi, pi, 1};
        g.letters_ = {"a", "b"};
        op = [pi](const Word& x, const Word& y) {
            return Word{(x[0] + y[0]) % (pi * pi), (x[1] + y[1]) % pi, 0};
        };
        break;
    case Family::ElemAbelian:
        g.radix_ = {pi, pi, pi};
        g.letters_ = {"e1", "e2", "e3"};
        op = [pi](const Word& x, const Word& y) {
            return Word{(x[0] + y[0]) % pi, (x[1] + y[1]) % pi, (x[2] + y[2]) % pi};
        };
        break;
    case Family::Heisenberg:
        // B^y A^x = A^x B^y C^(-xy)
        g.radix_ = {pi, pi, pi};
        g.letters_ = {"A", "B", "C"};
        op = [pi](const Word& x, const Word& y) {
            return Word{(x[0] + y[0]) % pi, (x[1] + y[1]) % pi,
                        static_cast<int>(mod(x[2] + y[2] - y[0] * x[1], pi))};
        };
        break;
    case Family::Gp: {
        // a^y b^x = b^(x (1+p)^y) a^y
        g.radix_ = {pi * pi, pi, 1};
        g.letters_ = {"b", "a"};
        const int m = pi * pi;
        std::vector<int> twist(pi);
        for (int k = 0; k < pi; ++k)
            twist[k] = static_cast<int>(pow_mod(1 + p, k, m));
        op = [m, pi, twist](const Word& x, const Word& y) {
            return Word{static_cast<int>((x[0] + static_cast<std::int64_t>(y[0]) * twist[x[1]]) % m),
                        (x[1] + y[1]) % pi, 0};
        };
        break;
    }
    }

    g.exps_.resize(n);
    for (int i = 0; i < n; ++i) {
        Word w{};
        int rest = i;
        for (int k = 2; k >= 0; --k) {
            w[k] = rest % g.radix_[k];
            rest /= g.radix_[k];
        }
        g.exps_[i] = w;
    }
    g.mul_.resize(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            g.mul_[static_cast<std::size_t>(i) * n + j] = g.from_exponents(op(g.exps_[i], g.exps_[j]));

    g.inv_.assign(n, 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (g.mul(static_cast<Element>(i), static_cast<Element>(j)) == 0) {
                g.inv_[i] = static_cast<Element>(j);
                break;
            }
    g.elem_order_.assign(n, 1);
    for (int i = 0; i < n; ++i) {
        Element x = static_cast<Element>(i);
        int k = 1;
        while (x != 0) {
            x = g.mul(x, static_cast<Element>(i));
            ++k;
        }
        g.elem_order_[i] = k;
    }

    auto letter = [&g](int slot) {
        Word w{0, 0, 0};
        w[slot] = 1;
        return g.from_exponents(w);
    };
    for (std::size_t k = 0; k < g.letters_.size(); ++k)
        g.gen_names_[g.letters_[k]] = letter(static_cast<int>(k));

    switch (family) {
    case Family::Cyclic: {
        Element a = g.gen("a");
        require(g.element_order(a) == n, "a has order p^3");
        g.generators_ = {a};
        break;
    }
    case Family::P2xP: {
        Element a = g.gen("a"), b = g.gen("b");
        require(g.element_order(a) == pi * pi && g.element_order(b) == pi, "orders p^2, p");
        require(g.mul(a, b) == g.mul(b, a), "ab = ba");
        g.generators_ = {a, b};
        break;
    }
    case Family::ElemAbelian: {
        std::vector<Element> e{g.gen("e1"), g.gen("e2"), g.gen("e3")};
        for (Element x : e)
            require(g.element_order(x) == pi, "e_i^p = 1");
        require(g.is_abelian(), "abelian");
        g.generators_ = e;
        break;
    }
    case Family::Heisenberg: {
        Element A = g.gen("A"), B = g.gen("B"), C = g.gen("C");
        require(g.pow(A, p) == 0 && g.pow(B, p) == 0 && g.pow(C, p) == 0, "A^p = B^p = C^p = 1");
        require(g.mul(A, C) == g.mul(C, A) && g.mul(B, C) == g.mul(C, B), "C central in <A,B,C>");
        require(g.mul(g.mul(A, B), g.inv(A)) == g.mul(B, C), "A B A^-1 = B C");
        g.generators_ = {A, B};
        break;
    }
    case Family::Gp: {
        Element a = g.gen("a"), b = g.gen("b");
        require(g.element_order(a) == pi && g.element_order(b) == pi * pi, "a^p = b^(p^2) = 1");
        require(g.mul(g.mul(a, b), g.inv(a)) == g.pow(b, p + 1), "a b a^-1 = b^(p+1)");
        g.generators_ = {b, a};
        break;
    }
    }
    auto span = closure_mask(g, g.generators_);
    require(std::all_of(span.begin(), span.end(), [](char c) { return c != 0; }), "generators generate");
    if (n <= kBruteForceOrderBound)
        require(g.check_group_axioms(), "group axioms");
    return g;
}

bool GroupMorphism::is_homomorphism() const
{
    const int n = source->order();
    if (static_cast<int>(image.size()) != n)
        return false;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (image[source->mul(static_cast<Element>(x), static_cast<Element>(y))] !=
                target->mul(image[x], image[y]))
                return false;
    return true;
}

bool GroupMorphism::is_bijective() const
{
    if (source->order() != target->order())
        return false;
    std::vector<char> hit(target->order(), 0);
    for (Element y : image) {
        if (hit[y])
            return false;
        hit[y] = 1;
    }
    return true;
}

GroupMorphism compose(const GroupMorphism& outer, const GroupMorphism& inner)
{
    GroupMorphism r{inner.source, outer.target, std::vector<Element>(inner.image.size())};
    for (std::size_t x = 0; x < inner.image.size(); ++x)
        r.image[x] = outer.image[inner.image[x]];
    return r;
}

GroupMorphism inverse(const GroupMorphism& m)
{
    GroupMorphism r{m.target, m.source, std::vector<Element>(m.image.size())};
    for (std::size_t x = 0; x < m.image.size(); ++x)
        r.image[m.image[x]] = static_cast<Element>(x);
    return r;
}

std::vector<Element> center(const GroupTable& g)
{
    std::vector<Element> z;
    for (int x = 0; x < g.order(); ++x) {
        bool central = true;
        for (Element s : g.generators())
            if (g.mul(static_cast<Element>(x), s) != g.mul(s, static_cast<Element>(x))) {
                central = false;
                break;
            }
        if (central)
            z.push_back(static_cast<Element>(x));
    }
    return z;
}

std::size_t for_each_isomorphism(const GroupTable& g, const GroupTable& h,
                                 const std::function<bool(const GroupMorphism&)>& visit)
{
    if (g.order() != h.order() || order_histogram(g) != order_histogram(h))
        return 0;

    const auto& gens = g.generators();
    const std::size_t k = gens.size();
    const SpanningTree tree = spanning_tree(g);

    std::vector<std::vector<Element>> candidates(k);
    for (std::size_t i = 0; i < k; ++i)
        for (int y = 0; y < h.order(); ++y)
            if (h.element_order(static_cast<Element>(y)) == g.element_order(gens[i]))
                candidates[i].push_back(static_cast<Element>(y));

    // Pairwise invariants of the source generators used for pruning.
    std::vector<std::vector<char>> commute(k, std::vector<char>(k));
    std::vector<std::vector<int>> prod_order(k, std::vector<int>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            commute[i][j] = g.mul(gens[i], gens[j]) == g.mul(gens[j], gens[i]);
            prod_order[i][j] = g.element_order(g.mul(gens[i], gens[j]));
        }
    std::vector<char> independent(k, 1);
    for (std::size_t i = 0; i < k; ++i) {
        auto span = closure_mask(g, std::vector<Element>(gens.begin(), gens.begin() + static_cast<long>(i)));
        independent[i] = !span[gens[i]];
    }

    std::vector<Element> img(k);
    std::size_t found = 0;
    bool stop = false;
    GroupMorphism phi{&g, &h, std::vector<Element>(g.order())};
    std::vector<char> hit(h.order());

    std::function<void(std::size_t)> extend = [&](std::size_t depth) {
        if (stop)
            return;
        if (depth == k) {
            phi.image[g.identity()] = h.identity();
            for (std::size_t t = 1; t < tree.bfs_order.size(); ++t) {
                Element x = tree.bfs_order[t];
                phi.image[x] = h.mul(phi.image[tree.parent[x]], img[tree.via[x]]);
            }
            for (int x = 0; x < g.order(); ++x)
                for (std::size_t i = 0; i < k; ++i)
                    if (phi.image[g.mul(static_cast<Element>(x), gens[i])] !=
                        h.mul(phi.image[x], img[i]))
                        return;
            std::fill(hit.begin(), hit.end(), 0);
            for (Element y : phi.image) {
                if (hit[y])
                    return;
                hit[y] = 1;
            }
            ++found;
            if (!visit(phi))
                stop = true;
            return;
        }
        std::vector<char> span;
        if (independent[depth])
            span = closure_mask(h, std::vector<Element>(img.begin(), img.begin() + static_cast<long>(depth)));
        for (Element y : candidates[depth]) {
            if (independent[depth] && span[y])
                continue;
            bool ok = true;
            for (std::size_t j = 0; j < depth && ok; ++j) {
                bool c = h.mul(img[j], y) == h.mul(y, img[j]);
                ok = (c == static_cast<bool>(commute[j][depth])) &&
                     h.element_order(h.mul(img[j], y)) == prod_order[j][depth];
            }
            if (!ok)
                continue;
            img[depth] = y;
            extend(depth + 1);
            if (stop)
                return;
        }
    };
    extend(0);
    return found;
}

std::vector<GroupMorphism> enumerate_automorphisms(const GroupTable& g)
{
    if (g.order() > kBruteForceOrderBound)
        throw std::invalid_argument("enumerate_automorphisms: |G| = " + std::to_string(g.order()) +
                                    " exceeds the brute-force bound " + std::to_string(kBruteForceOrderBound));
    std::vector<GroupMorphism> out;
    for_each_isomorphism(g, g, [&out](const GroupMorphism& m) {
        out.push_back(m);
        return true;
    });
    return out;
}

std::size_t count_automorphisms(const GroupTable& g)
{
    if (g.order() > kBruteForceOrderBound)
        throw std::invalid_argument("count_automorphisms: |G| exceeds the brute-force bound");
    return for_each_isomorphism(g, g, [](const GroupMorphism&) { return true; });
}

bool are_isomorphic(const GroupTable& g, const GroupTable& h)
{
    return for_each_isomorphism(g, h, [](const GroupMorphism&) { return false; }) > 0;
}

std::vector<Element> subgroup_closure(const GroupTable& g, const std::vector<Element>& gens)
{
    auto mask = closure_mask(g, gens);
    std::vector<Element> out;
    for (int x = 0; x < g.order(); ++x)
        if (mask[x])
            out.push_back(static_cast<Element>(x));
    return out;
}

std::vector<std::vector<Element>> all_subgroups(const GroupTable& g)
{
    struct Node {
        std::vector<Element> elems;
        std::vector<Element> gens;
    };
    std::set<std::vector<Element>> seen;
    std::vector<Node> nodes{{{g.identity()}, {}}};
    seen.insert(nodes[0].elems);
    for (std::size_t head = 0; head < nodes.size(); ++head) {
        std::vector<char> in(g.order(), 0);
        for (Element x : nodes[head].elems)
            in[x] = 1;
        for (int x = 0; x < g.order(); ++x) {
            if (in[x])
                continue;
            std::vector<Element> gens = nodes[head].gens;
            gens.push_back(static_cast<Element>(x));
            auto elems = subgroup_closure(g, gens);
            if (seen.insert(elems).second)
                nodes.push_back({std::move(elems), std::move(gens)});
        }
    }
    std::vector<std::vector<Element>> out(seen.begin(), seen.end());
    std::stable_sort(out.begin(), out.end(),
                     [](const auto& a, const auto& b) { return a.size() < b.size(); });
    return out;
}

bool is_normal(const GroupTable& g, const std::vector<Element>& subgroup)
{
    std::vector<char> in(g.order(), 0);
    for (Element x : subgroup)
        in[x] = 1;
    for (Element s : g.generators())
        for (Element x : subgroup)
            if (!in[g.mul(g.mul(s, x), g.inv(s))])
                return false;
    return true;
}

bool is_abelian_subset(const GroupTable& g, const std::vector<Element>& subgroup)
{
    for (Element x : subgroup)
        for (Element y : subgroup)
            if (g.mul(x, y) != g.mul(y, x))
                return false;
    return true;
}

std::vector<std::int64_t> abelian_invariants(const GroupTable& g, const std::vector<Element>& subgroup)
{
    const std::int64_t p = g.p();
    auto log_p = [p](std::int64_t n) {
        int k = 0;
        while (n > 1) {
            n /= p;
            ++k;
        }
        return k;
    };
    // r[j] = number of invariant factors divisible by p^j = log_p(|Omega_j| / |Omega_{j-1}|)
    std::vector<int> omega_log{0};
    for (std::int64_t pj = p;; pj *= p) {
        std::int64_t count = 0;
        for (Element x : subgroup)
            if (pj % g.element_order(x) == 0)
                ++count;
        omega_log.push_back(log_p(count));
        if (count == static_cast<std::int64_t>(subgroup.size()))
            break;
    }
    std::vector<int> r(omega_log.size() + 1, 0);
    for (std::size_t j = 1; j < omega_log.size(); ++j)
        r[j] = omega_log[j] - omega_log[j - 1];
    std::vector<std::int64_t> inv;
    for (std::size_t j = 1; j < omega_log.size(); ++j) {
        int exact = r[j] - r[j + 1];
        for (int c = 0; c < exact; ++c)
            inv.push_back(ipow(p, static_cast<int>(j)));
    }
    std::sort(inv.begin(), inv.end());
    return inv;
}

std::string describe_invariants(const std::vector<std::int64_t>& inv)
{
    if (inv.empty())
        return "1";
    std::string s;
    for (std::size_t i = 0; i < inv.size(); ++i) {
        if (i)
            s += " x ";
        s += "Z/" + std::to_string(inv[i]);
    }
    return s;
}

std::vector<SubgroupClass> normal_abelian_subgroup_classes(const GroupTable& g)
{
    if (g.order() > kBruteForceOrderBound)
        throw std::invalid_argument("normal_abelian_subgroup_classes: |G| exceeds the brute-force bound");

    std::vector<std::vector<Element>> subs;
    for (auto& s : all_subgroups(g)) {
        if (s.size() == 1 || static_cast<int>(s.size()) == g.order())
            continue;
        if (is_normal(g, s) && is_abelian_subset(g, s))
            subs.push_back(std::move(s));
    }
    std::map<std::vector<Element>, std::size_t> index;
    for (std::size_t i = 0; i < subs.size(); ++i)
        index[subs[i]] = i;

    std::vector<std::size_t> parent(subs.size());
    std::iota(parent.begin(), parent.end(), 0);
    std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    for_each_isomorphism(g, g, [&](const GroupMorphism& phi) {
        for (std::size_t i = 0; i < subs.size(); ++i) {
            std::vector<Element> img;
            img.reserve(subs[i].size());
            for (Element x : subs[i])
                img.push_back(phi(x));
            std::sort(img.begin(), img.end());
            std::size_t a = find(i), b = find(index.at(img));
            if (a != b)
                parent[std::max(a, b)] = std::min(a, b);
        }
        return true;
    });

    std::map<std::size_t, SubgroupClass> by_root;
    for (std::size_t i = 0; i < subs.size(); ++i)
        by_root[find(i)].members.push_back(subs[i]);

    std::vector<SubgroupClass> out;
    for (auto& [root, cls] : by_root) {
        std::sort(cls.members.begin(), cls.members.end());
        cls.representative = cls.members.front();
        cls.isomorphism_type = abelian_invariants(g, cls.representative);
        std::vector<Element> gens;
        std::vector<char> span(g.order(), 0);
        span[g.identity()] = 1;
        for (Element x : cls.representative) {
            if (span[x])
                continue;
            gens.push_back(x);
            span = closure_mask(g, gens);
        }
        std::string d = "<";
        for (std::size_t i = 0; i < gens.size(); ++i)
            d += (i ? ", " : "") + g.word(gens[i]);
        cls.generators = d + ">";
        out.push_back(std::move(cls));
    }
    std::sort(out.begin(), out.end(), [](const SubgroupClass& a, const SubgroupClass& b) {
        if (a.representative.size() != b.representative.size())
            return a.representative.size() < b.representative.size();
        if (a.isomorphism_type != b.isomorphism_type)
            return a.isomorphism_type < b.isomorphism_type;
        return a.representative < b.representative;
    });
    return out;
}

} // namespace pcube::groups
