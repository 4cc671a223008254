#pragma once

// Graded-commutative rings over Z/m with per-generator additive orders.
//
// A monomial is an exponent vector over the generators, kept in the fixed
// order (degree, label). Odd-degree generators square to zero and
// anticommute; every sign is normalized when a product is formed. The
// coefficient of a monomial lives in Z/k where k is the smallest additive
// order among the generators it contains, so mixed-torsion rings such as
// Z[u, v]/(p u, p^2 v) are handled without a module-theoretic model.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pcube/report.hpp"

namespace pcube::ring {

struct Generator {
    std::string label;
    int degree = 0;
    std::int64_t order = 0; ///< additive order; 0 means torsion-free
};

using Monomial = std::vector<std::uint8_t>;

class RingPresentation;
using Ring = std::shared_ptr<const RingPresentation>;

class RingPresentation {
public:
    /// `unit_order` is the coefficient modulus of the empty monomial (0 = Z).
    /// `bockstein` maps a generator label to the label of its Bockstein image,
    /// or to "0"; generators missing from the map have no declared Bockstein.
    static Ring make(std::vector<Generator> gens, std::int64_t unit_order,
                     const std::map<std::string, std::string>& bockstein = {});

    std::size_t size() const { return gens_.size(); }
    const Generator& gen(std::size_t i) const { return gens_[i]; }
    std::size_t index_of(std::string_view label) const;
    bool has(std::string_view label) const;
    std::int64_t unit_order() const { return unit_order_; }

    /// -1: Bockstein is zero; >= 0: index of the image generator; nullopt: undeclared.
    std::optional<int> bockstein_target(std::size_t i) const { return beta_[i]; }

    int degree(const Monomial& m) const;
    std::int64_t modulus(const Monomial& m) const;
    std::string render(const Monomial& m) const;

private:
    std::vector<Generator> gens_;
    std::int64_t unit_order_ = 0;
    std::vector<std::optional<int>> beta_;
};

class GradedElement {
public:
    explicit GradedElement(Ring ring);

    static GradedElement generator(const Ring& ring, std::string_view label);
    static GradedElement constant(const Ring& ring, std::int64_t c);
    static GradedElement term(const Ring& ring, Monomial m, std::int64_t c);

    const Ring& ring() const { return ring_; }
    const std::map<Monomial, std::int64_t>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Degree when homogeneous and nonzero.
    std::optional<int> degree() const;
    bool is_homogeneous() const;
    std::int64_t coefficient(const Monomial& m) const;
    std::int64_t coefficient(std::string_view monomial_expr) const;

    /// Signed rendering, e.g. "x2x3y1 - x1x3y2 + x1x2y3".
    std::string to_string() const;

    GradedElement& operator+=(const GradedElement& o);
    GradedElement& operator-=(const GradedElement& o);
    GradedElement operator-() const;
    friend GradedElement operator+(GradedElement a, const GradedElement& b) { return a += b; }
    friend GradedElement operator-(GradedElement a, const GradedElement& b) { return a -= b; }
    friend GradedElement operator*(std::int64_t c, const GradedElement& a);
    friend GradedElement operator*(const GradedElement& a, const GradedElement& b);
    friend bool operator==(const GradedElement& a, const GradedElement& b);
    friend bool operator!=(const GradedElement& a, const GradedElement& b) { return !(a == b); }

    /// Adds c * m with reduction; used by the algebra routines.
    void add_term(const Monomial& m, std::int64_t c);

    /// Drops every term whose monomial is listed.
    GradedElement without(const std::vector<Monomial>& vanishing) const;

private:
    Ring ring_;
    std::map<Monomial, std::int64_t> terms_;
};

GradedElement multiply(const GradedElement& a, const GradedElement& b);

/// Graded derivation of degree +1 extending the declared Bockstein on generators.
GradedElement bockstein(const GradedElement& a);

/// Parses "2*t*w1*w2 - x1*y2 + y1^2"; factors multiply left to right,
/// so "x2*x1" equals "-x1*x2". Parentheses are allowed.
GradedElement parse(const Ring& ring, std::string_view expr);

class GeneratorMap {
public:
    enum class Kind { RingMap, Derivation };
    enum class Fill { None, Identity, Zero };

    /// Images are checked for degree: a ring map preserves degree, a
    /// derivation raises it by `shift`. Unlisted generators follow `fill`.
    GeneratorMap(Ring ring, Kind kind, int shift, const std::map<std::string, GradedElement>& images,
                 Fill fill);

    static GeneratorMap ring_map(const Ring& ring, const std::map<std::string, GradedElement>& images);
    static GeneratorMap derivation(const Ring& ring, int shift, const std::map<std::string, GradedElement>& images);
    static GeneratorMap identity(const Ring& ring) { return ring_map(ring, {}); }

    Kind kind() const { return kind_; }
    int shift() const { return shift_; }
    const Ring& ring() const { return ring_; }
    const GradedElement& image(std::size_t i) const;

private:
    Ring ring_;
    Kind kind_;
    int shift_;
    std::vector<std::optional<GradedElement>> images_;
};

/// Ring maps extend multiplicatively; derivations by the graded Leibniz rule
/// D(ab) = D(a) b + (-1)^(shift |a|) a D(b).
GradedElement apply_map(const GeneratorMap& m, const GradedElement& a);

/// Transgression rule of a central extension with fiber classes f and
/// k-invariants kappa(f):  f * P  ->  beta(kappa(f) * P)  for base classes P,
/// and on quadratic fiber terms f g -> beta(kappa f) g + f beta(kappa g).
GradedElement transgress(const GradedElement& a, const std::map<std::string, GradedElement>& kappa);

// Presentations used across the project.

/// F_p[x1..xn, y1..yn]/(x_i^2), |x|=1, |y|=2, beta(x_i) = y_i.
Ring elementary_ring(std::int64_t p, int n);
/// Base F_p[w1,w2,z1,z2]/(w_i^2) with beta(w_i) = z_i, plus the fiber class t (|t| = 2, order p).
Ring heisenberg_ring(std::int64_t p);
/// Z[u, v] with p u = 0, p^2 v = 0 (|u| = |v| = 2).
Ring p2xp_ring(std::int64_t p);
/// Z[s] with p^3 s = 0.
Ring cyclic_ring(std::int64_t p);
/// Z[gamma, r] with p gamma = 0, p^2 r = 0.
Ring gp_ring(std::int64_t p);

/// Re-derives every printed pullback and differential identity at prime p.
std::vector<Check> verify_identity_suite(std::int64_t p = 3);

} // namespace pcube::ring
