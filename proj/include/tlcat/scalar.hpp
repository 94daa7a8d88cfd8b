#ifndef TLCAT_SCALAR_HPP
#define TLCAT_SCALAR_HPP

#include <complex>
#include <string>
#include <variant>
#include <vector>

#include "tlcat/laurent.hpp"

namespace tlcat {

/// Field of fractions of integer Laurent polynomials in q.
/// Canonical form: den is an honest polynomial (den.low() == 0) with positive
/// leading coefficient, num and den have coprime primitive parts and coprime
/// integer contents.  Monomial units q^k live in the numerator's low
/// exponent.  Structural equality is therefore field equality.
class RationalQ {
public:
    RationalQ() : num_(), den_(1) {}
    explicit RationalQ(long v) : num_(v), den_(1) {}
    explicit RationalQ(const Laurent& numerator) : num_(numerator), den_(1) {}
    RationalQ(Laurent numerator, Laurent denominator);

    static RationalQ q_power(long exp) { return RationalQ(Laurent::q_power(exp)); }

    const Laurent& num() const { return num_; }
    const Laurent& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }
    bool is_polynomial() const { return den_.is_one(); }

    RationalQ operator-() const;
    RationalQ operator+(const RationalQ& o) const;
    RationalQ operator-(const RationalQ& o) const;
    RationalQ operator*(const RationalQ& o) const;
    RationalQ inverse() const;
    /// Substitute q -> q^{-1}; this is the star operation's conjugation.
    RationalQ conjugate() const;

    bool operator==(const RationalQ& o) const {
        return num_ == o.num_ && den_ == o.den_;
    }
    bool operator!=(const RationalQ& o) const { return !(*this == o); }

    /// num.str() when the denominator is 1, otherwise "(num)/(den)".
    std::string str() const;
    static RationalQ parse(const std::string& text);

private:
    void normalize();
    void reduce_units();
    static RationalQ from_coprime(Laurent num, Laurent den);

    Laurent num_;
    Laurent den_;
};

/// Element of the cyclotomic field Q(zeta_N), represented as a rational
/// polynomial in q of degree < deg(Phi_N), reduced modulo Phi_N.  q is the
/// class of the variable, a primitive N-th root of unity.
class Cyclotomic {
public:
    Cyclotomic() : order_(0) {}
    explicit Cyclotomic(int order, long value = 0);
    Cyclotomic(int order, std::vector<mpq_class> rep);

    static Cyclotomic q_class(int order);
    /// Image of an integer Laurent polynomial under q -> zeta_N.
    static Cyclotomic from_laurent(int order, const Laurent& p);
    /// Minimal polynomial Phi_N as integer coefficients (ascending).
    static const std::vector<mpz_class>& minimal_polynomial(int order);

    int order() const { return order_; }
    const std::vector<mpq_class>& rep() const { return rep_; }
    bool is_zero() const;
    bool is_one() const;

    Cyclotomic operator-() const;
    Cyclotomic operator+(const Cyclotomic& o) const;
    Cyclotomic operator-(const Cyclotomic& o) const;
    Cyclotomic operator*(const Cyclotomic& o) const;
    Cyclotomic inverse() const;
    /// Galois conjugation q -> q^{-1}.
    Cyclotomic conjugate() const;

    bool operator==(const Cyclotomic& o) const;
    bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

    /// Numerical image with q = exp(2 pi i / N).
    std::complex<double> to_complex() const;

    /// "1/2 + q - q^2 mod Phi_12"
    std::string str() const;
    static Cyclotomic parse(const std::string& text);

private:
    void reduce();
    void check_order(const Cyclotomic& o) const;

    int order_;
    std::vector<mpq_class> rep_;
};

struct ScalarBackend;

/// Coefficient value from one of the three backends.  Arithmetic between
/// scalars of different backends throws BackendMismatch.
class Scalar {
public:
    enum class Kind { Generic, Cyclotomic, Float };

    Scalar() : v_(RationalQ()) {}
    explicit Scalar(RationalQ v) : v_(std::move(v)) {}
    explicit Scalar(Cyclotomic v) : v_(std::move(v)) {}
    explicit Scalar(std::complex<double> v) : v_(v) {}

    Kind kind() const { return static_cast<Kind>(v_.index()); }
    const RationalQ& rational() const;
    const class Cyclotomic& cyclotomic() const;
    std::complex<double> complex_value() const;

    bool is_zero(double tol = 1e-9) const;
    bool is_one(double tol = 1e-9) const;

    Scalar operator-() const;
    Scalar operator+(const Scalar& o) const;
    Scalar operator-(const Scalar& o) const;
    Scalar operator*(const Scalar& o) const;
    Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
    Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
    Scalar& operator*=(const Scalar& o) { return *this = *this * o; }

    Scalar inverse() const;          // throws DivisionByZero on zero
    Scalar pow(long e) const;        // negative e inverts
    Scalar conjugate() const;

    bool equals(const Scalar& o, double tol = 1e-9) const;
    bool operator==(const Scalar& o) const { return equals(o); }
    bool operator!=(const Scalar& o) const { return !equals(o); }

    /// Numerical image.  Generic scalars have no distinguished numeric
    /// image and throw BackendMismatch.
    std::complex<double> to_complex() const;

    std::string str() const;

private:
    std::variant<RationalQ, Cyclotomic, std::complex<double>> v_;
};

/// Descriptor of a coefficient field.  `order` is N for the cyclotomic
/// backend; `q` is the numeric parameter of the float backend; `tol` is the
/// absolute tolerance used for float comparisons.
struct ScalarBackend {
    Scalar::Kind kind = Scalar::Kind::Generic;
    int order = 0;
    std::complex<double> q{0.0, 0.0};
    double tol = 1e-9;

    static ScalarBackend generic();
    static ScalarBackend cyclotomic(int order);
    static ScalarBackend floating(std::complex<double> q, double tol = 1e-9);
    /// Float backend with q the principal N-th root exp(2 pi i / N).
    static ScalarBackend floating_root(int order, double tol = 1e-9);
    /// Float backend from a loop value d, taking q = (d + sqrt(d^2-4))/2.
    static ScalarBackend floating_d(double d, double tol = 1e-9);

    Scalar zero() const;
    Scalar one() const;
    Scalar integer(long v) const;
    /// The distinguished parameter q as a scalar of this backend.
    Scalar q_value() const;
    /// Loop parameter d = q + q^{-1}.
    Scalar d() const;

    /// Same field: kind and defining parameters agree (tol is advisory).
    /// Float backends compare by loop value within tolerance, so q and
    /// q^{-1} count as the same specialization.
    bool same(const ScalarBackend& o) const;
};

/// Quantum integer [k] = (q^k - q^{-k})/(q - q^{-1}), computed through the
/// recurrence [k+1] = d[k] - [k-1]; [-k] = -[k].
Scalar quantum_integer(long k, const ScalarBackend& backend);

/// Substitute a concrete value for q in a rational function.  Throws
/// DenominatorVanishes when the denominator evaluates to zero and
/// NonInvertibleScalar when negative powers of a non-invertible target are
/// needed.
Scalar evaluate_at(const RationalQ& r, const Scalar& target);

/// Parse a scalar in the textual form matching `backend`.
Scalar parse_scalar(const std::string& text, const ScalarBackend& backend);

/// Recover the backend from a serialized scalar (used when reading morphism
/// JSON, whose "d" field carries the backend's loop value).
ScalarBackend infer_backend(const std::string& scalar_text);

} // namespace tlcat

#endif
