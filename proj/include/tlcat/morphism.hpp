#ifndef TLCAT_MORPHISM_HPP
#define TLCAT_MORPHISM_HPP

#include <map>
#include <string>

#include "tlcat/diagram.hpp"
#include "tlcat/scalar.hpp"

namespace tlcat {

/// Parameters of the star operation.  The diagram part of f* is the upside
/// down reflection; each term also picks up sign_factor^(arc index) and the
/// coefficient is conjugated.  The positive scale r of the general theory is
/// fixed to 1 and not exposed.
struct StarConfig {
    Scalar sign_factor;

    /// sign_factor = d/|d| read through the numeric embedding; the generic
    /// backend takes the principal reading d > 0, hence +1.
    static StarConfig from_loop(const ScalarBackend& backend, const Scalar& d);
};

/// Element of Hom(X^bottom, X^top): a finite linear combination of Kauffman
/// diagrams with matching signature.  The loop parameter d is carried inside
/// the morphism so different specializations can coexist in one process;
/// composition replaces every closed loop by a factor of d.
class Morphism {
public:
    /// The zero morphism.  d defaults to the backend's q + 1/q.
    Morphism(int top, int bottom, const ScalarBackend& backend);
    Morphism(int top, int bottom, const ScalarBackend& backend, Scalar d);

    static Morphism from_diagram(const Diagram& diagram, const ScalarBackend& backend);
    static Morphism from_diagram(const Diagram& diagram, const ScalarBackend& backend,
                                 Scalar d);
    static Morphism identity(int n, const ScalarBackend& backend);
    static Morphism identity(int n, const ScalarBackend& backend, Scalar d);
    /// h_i in End(X^n).
    static Morphism elementary_h(int n, int i, const ScalarBackend& backend);
    static Morphism elementary_h(int n, int i, const ScalarBackend& backend, Scalar d);
    /// Bulk construction; every diagram must carry the given signature.
    static Morphism from_terms(int top, int bottom, const ScalarBackend& backend, Scalar d,
                               std::map<Diagram, Scalar> terms);

    int top_count() const { return top_; }
    int bottom_count() const { return bottom_; }
    const ScalarBackend& backend() const { return backend_; }
    /// The loop parameter of this morphism's category.
    const Scalar& loop_value() const { return d_; }
    const std::map<Diagram, Scalar>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    /// Coefficient of a basis diagram, zero when absent.
    Scalar coefficient(const Diagram& diagram) const;

    Morphism operator-() const;
    Morphism operator+(const Morphism& o) const;
    Morphism operator-(const Morphism& o) const;
    Morphism scaled(const Scalar& s) const;

    /// Composition f*g: f drawn above g, g acting first.
    static Morphism compose(const Morphism& f, const Morphism& g);
    Morphism operator*(const Morphism& o) const { return compose(*this, o); }
    static Morphism tensor(const Morphism& f, const Morphism& g);
    /// Rotation by pi on every term.
    Morphism transpose() const;

    /// Trace by closing all strands around the side: a diagram contributes
    /// d^(number of closed loops).
    Scalar markov_trace() const;
    /// Partial closure of the last bottom_count-keep strands, normalized by
    /// 1/d^(closed strands) so that identities map to identities.
    Morphism conditional_expectation(int keep) const;

    /// Frobenius bends: move one boundary strand around a corner.
    /// right_down: Hom(X^n, X^m (x) X) -> Hom(X^n (x) X, X^m), inverse of
    /// right_up; left_down: Hom(X^n, X (x) X^m) -> Hom(X (x) X^n, X^m),
    /// inverse of left_up.
    Morphism bend_right_down() const;
    Morphism bend_right_up() const;
    Morphism bend_left_down() const;
    Morphism bend_left_up() const;

    /// The dual idempotent (1 (x) eps)(1 (x) p (x) 1)(delta (x) 1) built
    /// with nested arcs on Y = X^n; requires p idempotent.
    Morphism dual_idempotent() const;

    /// Conjugate-linear involution: coefficients conjugated, diagrams turned
    /// upside down, sign_factor^(arc index) applied per term.
    Morphism star(const StarConfig& cfg) const;

    /// The automorphism D -> lambda^(arc index) D for invertible lambda.
    Morphism twist(const Scalar& lambda) const;

    /// Exact coefficient-wise equality (float backend: within backend tol).
    /// Morphisms with different loop values are never equal.
    bool equals(const Morphism& o) const;
    bool operator==(const Morphism& o) const { return equals(o); }
    bool operator!=(const Morphism& o) const { return !equals(o); }

private:
    void insert_term(const Diagram& diagram, const Scalar& coeff);
    void check_context(const Morphism& o) const;
    Scalar d_power(long e) const;

    int top_ = 0;
    int bottom_ = 0;
    ScalarBackend backend_;
    Scalar d_;
    std::map<Diagram, Scalar> terms_;
};

} // namespace tlcat

#endif
