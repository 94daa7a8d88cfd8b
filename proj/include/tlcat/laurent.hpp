#ifndef TLCAT_LAURENT_HPP
#define TLCAT_LAURENT_HPP

#include <gmpxx.h>

#include <string>
#include <vector>

namespace tlcat {

/// Laurent polynomial in q with arbitrary-precision integer coefficients,
/// stored densely as the exponent of the lowest term plus a coefficient
/// vector.  Invariant: the zero polynomial has low() == 0 and an empty
/// vector; otherwise the first and last stored coefficients are nonzero.
class Laurent {
public:
    Laurent() : low_(0) {}
    explicit Laurent(long value);
    explicit Laurent(const mpz_class& value);

    static Laurent monomial(const mpz_class& coeff, long exp);
    /// q^exp
    static Laurent q_power(long exp);

    bool is_zero() const { return c_.empty(); }
    bool is_one() const;
    bool is_unit() const;   // +- q^k
    bool is_constant() const { return c_.empty() || (low_ == 0 && c_.size() == 1); }

    long low() const { return low_; }
    long high() const { return c_.empty() ? 0 : low_ + static_cast<long>(c_.size()) - 1; }
    /// Number of stored coefficients (0 for the zero polynomial).
    long span() const { return static_cast<long>(c_.size()); }
    mpz_class coeff(long exp) const;
    const mpz_class& leading() const;

    Laurent operator-() const;
    Laurent operator+(const Laurent& o) const;
    Laurent operator-(const Laurent& o) const;
    Laurent operator*(const Laurent& o) const;
    Laurent& operator+=(const Laurent& o);
    Laurent& operator-=(const Laurent& o);
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }

    bool operator==(const Laurent& o) const { return low_ == o.low_ && c_ == o.c_; }
    bool operator!=(const Laurent& o) const { return !(*this == o); }

    /// Substitute q -> q^{-1}.
    Laurent mirrored() const;
    /// Multiply by q^k.
    Laurent shifted(long k) const;

    /// gcd of the coefficients, with the sign of the leading coefficient;
    /// 0 for the zero polynomial.
    mpz_class content() const;
    /// *this == content() * primitive_part() * q^low(); the primitive part
    /// has low() == 0 and a positive leading coefficient.
    Laurent primitive_part() const;

    /// Polynomial gcd, ignoring monomial units: the result is primitive,
    /// has low() == 0 and a positive leading coefficient.
    static Laurent gcd(const Laurent& a, const Laurent& b);
    /// Exact division; throws DivisionByZero when b == 0 and fails an
    /// internal check when the division is not exact.
    static Laurent div_exact(const Laurent& a, const Laurent& b);

    /// "q^-2 + 3 - q^2": terms in ascending exponent order.
    std::string str() const;
    static Laurent parse(const std::string& text);

private:
    void trim();
    void accumulate(const Laurent& o, int sign);

    long low_;
    std::vector<mpz_class> c_;
};

} // namespace tlcat

#endif
