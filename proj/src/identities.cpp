// Symbolic re-derivation of the pullback and differential identities that the
// H4 action matrices and the page tables rely on.

#include <array>
#include <functional>
#include <random>
#include <sstream>

#include "pcube/graded_ring.hpp"
#include "pcube/modular.hpp"

namespace pcube::ring {

namespace {

using Images = std::map<std::string, GradedElement>;

struct Suite {
    std::vector<Check> checks;

    // Runs `body` over a parameter family; the first mismatch is reported.
    void family(const std::string& section, const std::string& name,
                const std::function<void(const std::function<void(bool, const std::string&)>&)>& body)
    {
        std::size_t cases = 0;
        std::string first_failure;
        body([&](bool ok, const std::string& what) {
            ++cases;
            if (!ok && first_failure.empty())
                first_failure = what;
        });
        const bool passed = first_failure.empty() && cases > 0;
        checks.push_back({section, name, passed,
                          passed ? std::to_string(cases) + " cases" : (cases ? "mismatch: " + first_failure : "no cases")});
    }

    void single(const std::string& section, const std::string& name, const GradedElement& got,
                const GradedElement& want)
    {
        const bool ok = got == want;
        checks.push_back({section, name, ok,
                          ok ? got.to_string() : "got " + got.to_string() + ", expected " + want.to_string()});
    }
};

GradedElement g(const Ring& r, const char* label) { return GradedElement::generator(r, label); }
GradedElement e(const Ring& r, const std::string& expr) { return parse(r, expr); }

std::vector<std::array<std::int64_t, 4>> gl2(std::int64_t p)
{
    std::vector<std::array<std::int64_t, 4>> out;
    for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b)
            for (std::int64_t c = 0; c < p; ++c)
                for (std::int64_t d = 0; d < p; ++d)
                    if (mod(a * d - b * c, p) != 0)
                        out.push_back({a, b, c, d});
    return out;
}

std::int64_t det3(const std::array<std::array<std::int64_t, 3>, 3>& A)
{
    return A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1]) - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0]) +
           A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]);
}

void p2xp_pullbacks(Suite& s, std::int64_t p)
{
    const Ring R = p2xp_ring(p);
    const auto u = g(R, "u"), v = g(R, "v");
    const std::int64_t p2 = p * p;
    auto run = [&](const std::function<bool(std::int64_t, std::int64_t, std::int64_t, std::int64_t, std::string&)>& f) {
        return [&, f](const std::function<void(bool, const std::string&)>& report) {
            for (std::int64_t i = 1; i < p2; ++i) {
                if (i % p == 0)
                    continue;
                for (std::int64_t j = 0; j < p; ++j)
                    for (std::int64_t k = 0; k < p; ++k)
                        for (std::int64_t l = 1; l < p; ++l) {
                            std::string what;
                            bool ok = f(i, j, k, l, what);
                            report(ok, what);
                        }
            }
        };
    };
    auto rho = [&](std::int64_t i, std::int64_t j, std::int64_t k, std::int64_t l) {
        return GeneratorMap::ring_map(R, {{"u", l * u + (p * j) * v}, {"v", k * u + i * v}});
    };
    s.family("identities/p2xp", "rho* u^2 = l^2 u^2", run([&](auto i, auto j, auto k, auto l, std::string& w) {
                 auto got = apply_map(rho(i, j, k, l), u * u);
                 w = got.to_string();
                 return got == (l * l) * (u * u);
             }));
    s.family("identities/p2xp", "rho* uv = lk u^2 + il uv + pij v^2",
             run([&](auto i, auto j, auto k, auto l, std::string& w) {
                 auto got = apply_map(rho(i, j, k, l), u * v);
                 w = got.to_string();
                 return got == (l * k) * (u * u) + (i * l) * (u * v) + (p * i * j) * (v * v);
             }));
    s.family("identities/p2xp", "rho* v^2 = k^2 u^2 + 2ik uv + i^2 v^2",
             run([&](auto i, auto j, auto k, auto l, std::string& w) {
                 auto got = apply_map(rho(i, j, k, l), v * v);
                 w = got.to_string();
                 return got == (k * k) * (u * u) + (2 * i * k) * (u * v) + (i * i) * (v * v);
             }));
}

void cyclic_pullback(Suite& s, std::int64_t p)
{
    const Ring R = cyclic_ring(p);
    const auto sg = g(R, "s");
    const std::int64_t n = p * p * p;
    s.family("identities/cyclic", "unit i acts on s^2 by i^2", [&](const auto& report) {
        for (std::int64_t i = 1; i < n; ++i) {
            if (i % p == 0)
                continue;
            auto got = apply_map(GeneratorMap::ring_map(R, {{"s", i * sg}}), sg * sg);
            report(got == (i * i) * (sg * sg), got.to_string());
        }
    });
}

void heisenberg_identities(Suite& s, std::int64_t p)
{
    const Ring R = heisenberg_ring(p);
    const auto w1 = g(R, "w1"), w2 = g(R, "w2"), z1 = g(R, "z1"), z2 = g(R, "z2"), t = g(R, "t");
    const auto mats = gl2(p);
    auto Mbar = [&](const std::array<std::int64_t, 4>& m) {
        const auto [a, b, c, d] = m;
        return GeneratorMap::ring_map(R, {{"w1", a * w1 + c * w2},
                                          {"w2", b * w1 + d * w2},
                                          {"z1", a * z1 + c * z2},
                                          {"z2", b * z1 + d * z2},
                                          {"t", (a * d - b * c) * t}});
    };
    auto over_gl2 = [&](const std::function<bool(const std::array<std::int64_t, 4>&, std::string&)>& f) {
        return [&, f](const std::function<void(bool, const std::string&)>& report) {
            for (const auto& m : mats) {
                std::string w;
                bool ok = f(m, w);
                report(ok, w);
            }
        };
    };
    s.family("identities/heisenberg", "M* z1^2 = a^2 z1^2 + 2ac z1z2 + c^2 z2^2", over_gl2([&](const auto& m, std::string& w) {
                 const auto [a, b, c, d] = m;
                 auto got = apply_map(Mbar(m), z1 * z1);
                 w = got.to_string();
                 return got == (a * a) * (z1 * z1) + (2 * a * c) * (z1 * z2) + (c * c) * (z2 * z2);
             }));
    s.family("identities/heisenberg", "M* z2^2 = b^2 z1^2 + 2bd z1z2 + d^2 z2^2", over_gl2([&](const auto& m, std::string& w) {
                 const auto [a, b, c, d] = m;
                 auto got = apply_map(Mbar(m), z2 * z2);
                 w = got.to_string();
                 return got == (b * b) * (z1 * z1) + (2 * b * d) * (z1 * z2) + (d * d) * (z2 * z2);
             }));
    s.family("identities/heisenberg", "M* z1z2 = ab z1^2 + (ad+bc) z1z2 + cd z2^2",
             over_gl2([&](const auto& m, std::string& w) {
                 const auto [a, b, c, d] = m;
                 auto got = apply_map(Mbar(m), z1 * z2);
                 w = got.to_string();
                 return got == (a * b) * (z1 * z1) + (a * d + b * c) * (z1 * z2) + (c * d) * (z2 * z2);
             }));
    s.family("identities/heisenberg", "M* (t w1 w2) = det^2 t w1 w2", over_gl2([&](const auto& m, std::string& w) {
                 const auto [a, b, c, d] = m;
                 const std::int64_t det = a * d - b * c;
                 auto got = apply_map(Mbar(m), t * w1 * w2);
                 w = got.to_string();
                 return got == (det * det) * (t * w1 * w2);
             }));

    const Images kappa{{"t", w1 * w2}};
    const auto bw = bockstein(w1 * w2);
    s.single("identities/heisenberg", "beta(w1w2) = z1w2 - w1z2", bw, z1 * w2 - w1 * z2);
    s.single("identities/heisenberg", "d3(t) = beta(w1w2)", transgress(t, kappa), bw);
    s.single("identities/heisenberg", "d3(t^2) = 2 t beta(w1w2)", transgress(t * t, kappa), 2 * (t * bw));
    s.single("identities/heisenberg", "d3(t w1) = 0", transgress(t * w1, kappa), GradedElement(R));
    s.single("identities/heisenberg", "d3(t w2) = 0", transgress(t * w2, kappa), GradedElement(R));
    s.single("identities/heisenberg", "d3(t z1) = beta(w1w2) z1", transgress(t * z1, kappa), bw * z1);
    s.single("identities/heisenberg", "d3(t z2) = beta(w1w2) z2", transgress(t * z2, kappa), bw * z2);
    s.single("identities/heisenberg", "d3(t w1 w2) = 0", transgress(t * w1 * w2, kappa), GradedElement(R));
}

void gp_identities(Suite& s, std::int64_t p)
{
    const Ring R = gp_ring(p);
    const auto gamma = g(R, "gamma"), r = g(R, "r");
    const auto delta = p * (r * r);
    s.family("identities/gp", "rho* (p r^2) = i^2 p r^2 and rho* gamma^2 = gamma^2", [&](const auto& report) {
        for (std::int64_t i = 1; i < p * p; ++i) {
            if (i % p == 0)
                continue;
            auto rho = GeneratorMap::ring_map(R, {{"r", i * r}});
            auto d = apply_map(rho, delta);
            auto q = apply_map(rho, gamma * gamma);
            report(d == (i * i) * delta && q == gamma * gamma, d.to_string() + " / " + q.to_string());
        }
    });
    auto tau = GeneratorMap::ring_map(R, {{"gamma", gamma + p * r}});
    s.single("identities/gp", "tau* (p r) = p r", apply_map(tau, p * r), p * r);
    s.single("identities/gp", "tau* (p r^2) = p r^2", apply_map(tau, delta), delta);
    s.single("identities/gp", "tau* gamma^2 = gamma^2", apply_map(tau, gamma * gamma), gamma * gamma);
}

void elementary_identities(Suite& s, std::int64_t p)
{
    const Ring R = elementary_ring(p, 3);
    const auto x1 = g(R, "x1"), x2 = g(R, "x2"), x3 = g(R, "x3");
    const auto y1 = g(R, "y1"), y2 = g(R, "y2"), y3 = g(R, "y3");
    const auto b123 = bockstein(x1 * x2 * x3);
    s.single("identities/elementary", "beta(x1x2x3) = y1x2x3 - x1y2x3 + x1x2y3", b123,
             y1 * x2 * x3 - x1 * y2 * x3 + x1 * x2 * y3);
    s.single("identities/elementary", "beta(x2x3) = y2x3 - x2y3", bockstein(x2 * x3), y2 * x3 - x2 * y3);
    s.single("identities/elementary", "beta(y1^2) = 0", bockstein(y1 * y1), GradedElement(R));

    // A* x_i = sum_j A_ij x_j; exhaustive over GL(3,3), sampled otherwise.
    std::vector<std::array<std::array<std::int64_t, 3>, 3>> mats;
    if (p == 3) {
        for (int code = 0; code < 19683; ++code) {
            std::array<std::array<std::int64_t, 3>, 3> A{};
            int c = code;
            for (auto& row : A)
                for (auto& x : row) {
                    x = c % 3;
                    c /= 3;
                }
            if (mod(det3(A), p))
                mats.push_back(A);
        }
    } else {
        std::mt19937_64 rng(0x5eed + static_cast<unsigned>(p));
        std::uniform_int_distribution<std::int64_t> coin(0, p - 1);
        while (mats.size() < 300) {
            std::array<std::array<std::int64_t, 3>, 3> A{};
            for (auto& row : A)
                for (auto& x : row)
                    x = coin(rng);
            if (mod(det3(A), p))
                mats.push_back(A);
        }
    }
    const std::array<GradedElement, 3> xs{x1, x2, x3}, ys{y1, y2, y3};
    s.family("identities/elementary", "A* beta(x1x2x3) = det(A) beta(x1x2x3)", [&](const auto& report) {
        for (const auto& A : mats) {
            Images im;
            for (int i = 0; i < 3; ++i) {
                GradedElement xi(R), yi(R);
                for (int j = 0; j < 3; ++j) {
                    xi += A[i][j] * xs[j];
                    yi += A[i][j] * ys[j];
                }
                im.emplace("x" + std::to_string(i + 1), xi);
                im.emplace("y" + std::to_string(i + 1), yi);
            }
            auto got = apply_map(GeneratorMap::ring_map(R, im), b123);
            report(got == det3(A) * b123, got.to_string());
        }
    });

    // Extension of Z/p by (Z/p)^2 with k-invariant y1: d2 x2 = y1.
    const auto d2 = GeneratorMap::derivation(R, 1, {{"x2", y1}});
    s.single("identities/k_zp_a_zpxzp", "d2(beta(x2x3)) = -y1y3", apply_map(d2, bockstein(x2 * x3)), -(y1 * y3));
    s.single("identities/k_zp_a_zpxzp", "d2(x1 beta(x2x3)) = x1y1y3", apply_map(d2, x1 * bockstein(x2 * x3)),
             x1 * y1 * y3);
    const Images k24{{"y2", y1}, {"y3", GradedElement(R)}};
    s.single("identities/k_zp_a_zpxzp", "d3(x1y2) = y1^2", transgress(x1 * y2, k24), y1 * y1);
    s.single("identities/k_zp_a_zpxzp", "d3(x1y3) = 0", transgress(x1 * y3, k24), GradedElement(R));

    // Central extensions of (Z/p)^2 by Z/p: d3(y3 P) = beta(kappa P).
    const std::vector<std::pair<std::string, GradedElement>> kappas{
        {"0", GradedElement(R)}, {"y1", y1}, {"x1x2", x1 * x2}, {"y2+x1x2", y2 + x1 * x2}};
    for (const auto& [name, k] : kappas) {
        const Images km{{"y3", k}};
        const std::string sec = "identities/k_zpxzp_a_zp";
        s.single(sec, "kappa=" + name + ": d3(y3) = beta(kappa)", transgress(y3, km), bockstein(k));
        s.single(sec, "kappa=" + name + ": d3(y3^2) = 2 y3 beta(kappa)", transgress(y3 * y3, km),
                 2 * (y3 * bockstein(k)));
        s.family(sec, "kappa=" + name + ": d3(y3 P) = beta(kappa P) = beta(kappa) P + kappa beta(P)",
                 [&](const auto& report) {
                     for (const char* P : {"x1", "x2", "y1", "y2", "x1*x2", "x1*y2", "x2*y1", "y1*y2"}) {
                         const auto pe = e(R, P);
                         const auto lhs = transgress(y3 * pe, km);
                         const auto rhs = bockstein(k) * pe + k * bockstein(pe);
                         report(lhs == rhs, std::string(P) + ": " + lhs.to_string());
                     }
                 });
    }
    const Images kh{{"y3", x1 * x2}};
    s.single("identities/k_zpxzp_a_zp", "kappa=x1x2: d3(y3 x1x2) = 0", transgress(y3 * x1 * x2, kh),
             GradedElement(R));
}

} // namespace

std::vector<Check> verify_identity_suite(std::int64_t p)
{
    if (!is_odd_prime(p))
        throw std::invalid_argument("identity suite needs an odd prime");
    Suite s;
    p2xp_pullbacks(s, p);
    cyclic_pullback(s, p);
    heisenberg_identities(s, p);
    gp_identities(s, p);
    elementary_identities(s, p);
    return s.checks;
}

} // namespace pcube::ring
