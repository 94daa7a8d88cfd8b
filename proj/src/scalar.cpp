#include "tlcat/scalar.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <map>
#include <mutex>
#include <numbers>

#include "tlcat/errors.hpp"

namespace tlcat {

// ---------------------------------------------------------------- RationalQ

RationalQ::RationalQ(Laurent numerator, Laurent denominator)
    : num_(std::move(numerator)), den_(std::move(denominator)) {
    if (den_.is_zero()) throw DivisionByZero("rational function with zero denominator");
    normalize();
}

void RationalQ::normalize() {
    if (num_.is_zero()) {
        den_ = Laurent(1);
        return;
    }
    if (!den_.is_unit()) {
        Laurent g = Laurent::gcd(num_, den_);
        if (!g.is_one()) {
            num_ = Laurent::div_exact(num_, g);
            den_ = Laurent::div_exact(den_, g);
        }
    }
    reduce_units();
}

// Canonicalization steps that need no polynomial gcd: move the denominator's
// monomial unit into the numerator, strip the common integer content, force a
// positive leading denominator coefficient.
void RationalQ::reduce_units() {
    long shift = den_.low();
    if (shift != 0) {
        den_ = den_.shifted(-shift);
        num_ = num_.shifted(-shift);
    }
    mpz_class cn = num_.content();
    mpz_class cd = den_.content();
    mpz_class c;
    mpz_gcd(c.get_mpz_t(), cn.get_mpz_t(), cd.get_mpz_t());
    if (cd < 0) c = -c;
    if (c != 1) {
        num_ = Laurent::div_exact(num_, Laurent(c));
        den_ = Laurent::div_exact(den_, Laurent(c));
    }
}

// Fraction whose numerator and denominator already have coprime primitive
// parts, so only the unit and content cleanup is left to do.
RationalQ RationalQ::from_coprime(Laurent num, Laurent den) {
    RationalQ r;
    if (num.is_zero()) return r;
    r.num_ = std::move(num);
    r.den_ = std::move(den);
    r.reduce_units();
    return r;
}

RationalQ RationalQ::operator-() const {
    RationalQ r = *this;
    r.num_ = -r.num_;
    return r;
}

RationalQ RationalQ::operator+(const RationalQ& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_.is_one() && o.den_.is_one()) return RationalQ(num_ + o.num_);
    // In canonical form only the common part g of the denominators can meet
    // the combined numerator, so one small gcd replaces a full reduction.
    Laurent g = Laurent::gcd(den_, o.den_);
    if (g.is_one())
        return from_coprime(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    Laurent left = Laurent::div_exact(den_, g);
    Laurent num = num_ * Laurent::div_exact(o.den_, g) + o.num_ * left;
    if (num.is_zero()) return RationalQ();
    Laurent t = Laurent::gcd(num, g);
    if (t.is_one()) return from_coprime(std::move(num), left * o.den_);
    return from_coprime(Laurent::div_exact(num, t), left * Laurent::div_exact(o.den_, t));
}

RationalQ RationalQ::operator-(const RationalQ& o) const { return *this + (-o); }

RationalQ RationalQ::operator*(const RationalQ& o) const {
    if (is_zero() || o.is_zero()) return RationalQ();
    if (den_.is_one() && o.den_.is_one()) return RationalQ(num_ * o.num_);
    // Cross-cancel before multiplying; canonical inputs stay coprime.
    Laurent a = num_, b = den_, c = o.num_, d = o.den_;
    if (!d.is_unit()) {
        Laurent g = Laurent::gcd(a, d);
        if (!g.is_one()) {
            a = Laurent::div_exact(a, g);
            d = Laurent::div_exact(d, g);
        }
    }
    if (!b.is_unit()) {
        Laurent g = Laurent::gcd(c, b);
        if (!g.is_one()) {
            c = Laurent::div_exact(c, g);
            b = Laurent::div_exact(b, g);
        }
    }
    return from_coprime(a * c, b * d);
}

RationalQ RationalQ::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    return from_coprime(den_, num_);
}

RationalQ RationalQ::conjugate() const {
    return RationalQ(num_.mirrored(), den_.mirrored());
}

std::string RationalQ::str() const {
    if (den_.is_one()) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RationalQ RationalQ::parse(const std::string& text) {
    size_t i = 0;
    auto ws = [&] {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    ws();
    if (i < text.size() && text[i] == '(') {
        // "(num)/(den)"
        size_t depth = 0;
        size_t start = i;
        size_t close = std::string::npos;
        for (size_t j = i; j < text.size(); ++j) {
            if (text[j] == '(') ++depth;
            if (text[j] == ')') {
                if (--depth == 0) {
                    close = j;
                    break;
                }
            }
        }
        if (close != std::string::npos) {
            size_t k = close + 1;
            while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
            if (k < text.size() && text[k] == '/') {
                ++k;
                while (k < text.size() && std::isspace(static_cast<unsigned char>(text[k]))) ++k;
                if (k >= text.size() || text[k] != '(' || text.back() != ')')
                    throw ParseError("malformed rational function: " + text);
                Laurent num = Laurent::parse(text.substr(start + 1, close - start - 1));
                Laurent den = Laurent::parse(text.substr(k + 1, text.size() - k - 2));
                return RationalQ(std::move(num), std::move(den));
            }
        }
    }
    return RationalQ(Laurent::parse(text));
}

// --------------------------------------------------------------- Cyclotomic

namespace {

using ZPoly = std::vector<mpz_class>;
using QPoly = std::vector<mpq_class>;

void zpoly_trim(ZPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

void qpoly_trim(QPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

// Exact division of integer polynomials with monic-enough divisors; used only
// for products of cyclotomic polynomials, where divisions are exact.
ZPoly zpoly_div_exact(ZPoly a, const ZPoly& b) {
    ZPoly q(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpz_class(0));
    while (!a.empty() && a.size() >= b.size()) {
        mpz_class qc = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = qc;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= qc * b[j];
        zpoly_trim(a);
    }
    return q;
}

std::map<int, ZPoly>& phi_cache() {
    static std::map<int, ZPoly> cache;
    return cache;
}

std::mutex& phi_mutex() {
    static std::mutex m;
    return m;
}

const ZPoly& phi_poly(int n) {
    std::lock_guard<std::mutex> lock(phi_mutex());
    auto& cache = phi_cache();
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    // Phi_n = (x^n - 1) / prod_{d | n, d < n} Phi_d, computed bottom-up.
    for (int m = 1; m <= n; ++m) {
        if (cache.count(m) || n % m != 0) continue;
        ZPoly p(static_cast<size_t>(m) + 1, mpz_class(0));
        p[0] = -1;
        p.back() = 1;
        for (int d = 1; d < m; ++d)
            if (m % d == 0) p = zpoly_div_exact(std::move(p), cache.at(d));
        cache.emplace(m, std::move(p));
    }
    return cache.at(n);
}

QPoly qpoly_mul(const QPoly& a, const QPoly& b) {
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    qpoly_trim(r);
    return r;
}

// Remainder of a modulo the (monic, integer) polynomial m.
QPoly qpoly_mod_monic(QPoly a, const ZPoly& m) {
    while (a.size() >= m.size()) {
        mpq_class lead = a.back();
        size_t shift = a.size() - m.size();
        for (size_t j = 0; j < m.size(); ++j) a[shift + j] -= lead * m[j];
        a.pop_back();
        qpoly_trim(a);
    }
    return a;
}

// Division with remainder over Q.
void qpoly_divmod(QPoly a, const QPoly& b, QPoly& quot, QPoly& rem) {
    quot.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, mpq_class(0));
    while (!a.empty() && a.size() >= b.size()) {
        mpq_class qc = a.back() / b.back();
        size_t shift = a.size() - b.size();
        quot[shift] = qc;
        for (size_t j = 0; j < b.size(); ++j) a[shift + j] -= qc * b[j];
        qpoly_trim(a);
    }
    qpoly_trim(quot);
    rem = std::move(a);
}

} // namespace

Cyclotomic::Cyclotomic(int order, long value) : order_(order) {
    if (order_ < 1) throw IndexOutOfRange("cyclotomic order must be positive");
    if (value != 0) rep_.emplace_back(value);
}

Cyclotomic::Cyclotomic(int order, std::vector<mpq_class> rep)
    : order_(order), rep_(std::move(rep)) {
    if (order_ < 1) throw IndexOutOfRange("cyclotomic order must be positive");
    reduce();
}

Cyclotomic Cyclotomic::q_class(int order) {
    Cyclotomic c(order);
    c.rep_ = {mpq_class(0), mpq_class(1)};
    c.reduce();
    return c;
}

Cyclotomic Cyclotomic::from_laurent(int order, const Laurent& p) {
    Cyclotomic q = q_class(order);
    Cyclotomic acc(order);
    // Horner from the top, then multiply by q^{low} (q is invertible).
    for (long e = p.high(); e >= p.low(); --e) {
        acc = acc * q;
        mpz_class c = p.coeff(e);
        if (c != 0) acc = acc + Cyclotomic(order, {mpq_class(c)});
    }
    if (p.low() != 0) {
        Cyclotomic unit = p.low() > 0 ? q : q.inverse();
        for (long k = 0; k < std::abs(p.low()); ++k) acc = acc * unit;
    }
    return acc;
}

const std::vector<mpz_class>& Cyclotomic::minimal_polynomial(int order) {
    return phi_poly(order);
}

void Cyclotomic::reduce() {
    qpoly_trim(rep_);
    if (rep_.empty()) return;
    const ZPoly& phi = phi_poly(order_);
    if (rep_.size() >= phi.size()) rep_ = qpoly_mod_monic(std::move(rep_), phi);
    for (auto& c : rep_) c.canonicalize();
    qpoly_trim(rep_);
}

void Cyclotomic::check_order(const Cyclotomic& o) const {
    if (order_ != o.order_)
        throw BackendMismatch("cyclotomic orders differ: Phi_" + std::to_string(order_) +
                              " vs Phi_" + std::to_string(o.order_));
}

bool Cyclotomic::is_zero() const { return rep_.empty(); }

bool Cyclotomic::is_one() const { return rep_.size() == 1 && rep_[0] == 1; }

Cyclotomic Cyclotomic::operator-() const {
    Cyclotomic r = *this;
    for (auto& c : r.rep_) c = -c;
    return r;
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& o) const {
    check_order(o);
    Cyclotomic r(order_);
    r.rep_.assign(std::max(rep_.size(), o.rep_.size()), mpq_class(0));
    for (size_t i = 0; i < rep_.size(); ++i) r.rep_[i] += rep_[i];
    for (size_t i = 0; i < o.rep_.size(); ++i) r.rep_[i] += o.rep_[i];
    r.reduce();
    return r;
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& o) const { return *this + (-o); }

Cyclotomic Cyclotomic::operator*(const Cyclotomic& o) const {
    check_order(o);
    Cyclotomic r(order_);
    r.rep_ = qpoly_mul(rep_, o.rep_);
    r.reduce();
    return r;
}

Cyclotomic Cyclotomic::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero cyclotomic");
    // Extended Euclid in Q[x] against Phi_N: s*rep + t*Phi = gcd = const.
    const ZPoly& phi_z = phi_poly(order_);
    QPoly a(phi_z.begin(), phi_z.end());
    QPoly b = rep_;
    QPoly s0{}, s1{mpq_class(1)};   // coefficients of b-combination
    while (true) {
        QPoly quot, rem;
        qpoly_divmod(a, b, quot, rem);
        if (rem.empty()) break;
        QPoly s2 = s0;
        QPoly qs = qpoly_mul(quot, s1);
        s2.resize(std::max(s2.size(), qs.size()), mpq_class(0));
        for (size_t i = 0; i < qs.size(); ++i) s2[i] -= qs[i];
        qpoly_trim(s2);
        a = std::move(b);
        b = std::move(rem);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    // b is a nonzero constant: gcd(rep, Phi) since Phi is squarefree over Q
    // and rep is nonzero of lower degree.
    mpq_class g = b[0];
    Cyclotomic r(order_);
    r.rep_ = std::move(s1);
    for (auto& c : r.rep_) c /= g;
    r.reduce();
    return r;
}

Cyclotomic Cyclotomic::conjugate() const {
    // q -> q^{-1}, a Galois automorphism.
    Cyclotomic qinv = q_class(order_).inverse();
    Cyclotomic result(order_);
    Cyclotomic power(order_, 1);
    for (size_t i = 0; i < rep_.size(); ++i) {
        if (rep_[i] != 0) {
            Cyclotomic term = power;
            for (auto& c : term.rep_) c *= rep_[i];
            term.reduce();
            result = result + term;
        }
        power = power * qinv;
    }
    return result;
}

bool Cyclotomic::operator==(const Cyclotomic& o) const {
    return order_ == o.order_ && rep_ == o.rep_;
}

std::complex<double> Cyclotomic::to_complex() const {
    const double angle = 2.0 * std::numbers::pi / order_;
    std::complex<double> q(std::cos(angle), std::sin(angle));
    std::complex<double> acc(0.0, 0.0);
    for (size_t i = rep_.size(); i-- > 0;)
        acc = acc * q + std::complex<double>(rep_[i].get_d(), 0.0);
    return acc;
}

namespace {

std::string qcoeff_str(const mpq_class& c) {
    return c.get_str();
}

} // namespace

std::string Cyclotomic::str() const {
    std::string poly;
    if (rep_.empty()) {
        poly = "0";
    } else {
        for (size_t i = 0; i < rep_.size(); ++i) {
            if (rep_[i] == 0) continue;
            mpq_class mag = abs(rep_[i]);
            bool neg = rep_[i] < 0;
            if (poly.empty()) {
                if (neg) poly += "-";
            } else {
                poly += neg ? " - " : " + ";
            }
            if (i == 0) {
                poly += qcoeff_str(mag);
            } else {
                if (mag != 1) poly += qcoeff_str(mag);
                poly += "q";
                if (i != 1) poly += "^" + std::to_string(i);
            }
        }
        if (poly.empty()) poly = "0";
    }
    return poly + " mod Phi_" + std::to_string(order_);
}

Cyclotomic Cyclotomic::parse(const std::string& text) {
    const std::string marker = " mod Phi_";
    size_t pos = text.rfind(marker);
    if (pos == std::string::npos) throw ParseError("missing 'mod Phi_N' suffix: " + text);
    int order = 0;
    try {
        order = std::stoi(text.substr(pos + marker.size()));
    } catch (const std::exception&) {
        throw ParseError("bad cyclotomic order in: " + text);
    }
    std::string poly = text.substr(0, pos);
    // Parse with rational coefficients: reuse the Laurent grammar but allow
    // "a/b" coefficients.
    Cyclotomic result(order);
    size_t i = 0;
    auto ws = [&] {
        while (i < poly.size() && std::isspace(static_cast<unsigned char>(poly[i]))) ++i;
    };
    ws();
    if (i >= poly.size()) throw ParseError("empty cyclotomic polynomial: " + text);
    bool first = true;
    Cyclotomic q = q_class(order);
    while (i < poly.size()) {
        int sign = 1;
        ws();
        if (poly[i] == '+' || poly[i] == '-') {
            sign = poly[i] == '-' ? -1 : 1;
            ++i;
            ws();
        } else if (!first) {
            throw ParseError("expected '+' or '-': " + text);
        }
        first = false;
        size_t start = i;
        while (i < poly.size() &&
               (std::isdigit(static_cast<unsigned char>(poly[i])) || poly[i] == '/'))
            ++i;
        mpq_class coeff = 1;
        bool have_digits = i > start;
        if (have_digits) coeff = mpq_class(poly.substr(start, i - start));
        coeff.canonicalize();
        long exp = 0;
        ws();
        if (i < poly.size() && poly[i] == 'q') {
            ++i;
            exp = 1;
            if (i < poly.size() && poly[i] == '^') {
                ++i;
                size_t es = i;
                while (i < poly.size() && std::isdigit(static_cast<unsigned char>(poly[i]))) ++i;
                if (i == es) throw ParseError("missing exponent: " + text);
                exp = std::stol(poly.substr(es, i - es));
            }
        } else if (!have_digits) {
            throw ParseError("expected term: " + text);
        }
        if (sign < 0) coeff = -coeff;
        std::vector<mpq_class> mono(static_cast<size_t>(exp) + 1, mpq_class(0));
        mono.back() = coeff;
        result = result + Cyclotomic(order, std::move(mono));
        ws();
    }
    return result;
}

// ------------------------------------------------------------------- Scalar

const RationalQ& Scalar::rational() const {
    if (kind() != Kind::Generic) throw BackendMismatch("scalar is not generic");
    return std::get<RationalQ>(v_);
}

const Cyclotomic& Scalar::cyclotomic() const {
    if (kind() != Kind::Cyclotomic) throw BackendMismatch("scalar is not cyclotomic");
    return std::get<class Cyclotomic>(v_);
}

std::complex<double> Scalar::complex_value() const {
    if (kind() != Kind::Float) throw BackendMismatch("scalar is not float");
    return std::get<std::complex<double>>(v_);
}

bool Scalar::is_zero(double tol) const {
    switch (kind()) {
        case Kind::Generic: return std::get<RationalQ>(v_).is_zero();
        case Kind::Cyclotomic: return std::get<class Cyclotomic>(v_).is_zero();
        case Kind::Float: return std::abs(std::get<std::complex<double>>(v_)) <= tol;
    }
    return false;
}

bool Scalar::is_one(double tol) const {
    switch (kind()) {
        case Kind::Generic: return std::get<RationalQ>(v_).is_one();
        case Kind::Cyclotomic: return std::get<class Cyclotomic>(v_).is_one();
        case Kind::Float:
            return std::abs(std::get<std::complex<double>>(v_) - std::complex<double>(1.0, 0.0)) <= tol;
    }
    return false;
}

namespace {

[[noreturn]] void mismatch() {
    throw BackendMismatch("scalar backends differ");
}

} // namespace

Scalar Scalar::operator-() const {
    switch (kind()) {
        case Kind::Generic: return Scalar(-std::get<RationalQ>(v_));
        case Kind::Cyclotomic: return Scalar(-std::get<class Cyclotomic>(v_));
        case Kind::Float: return Scalar(-std::get<std::complex<double>>(v_));
    }
    mismatch();
}

Scalar Scalar::operator+(const Scalar& o) const {
    if (kind() != o.kind()) mismatch();
    switch (kind()) {
        case Kind::Generic:
            return Scalar(std::get<RationalQ>(v_) + std::get<RationalQ>(o.v_));
        case Kind::Cyclotomic:
            return Scalar(std::get<class Cyclotomic>(v_) + std::get<class Cyclotomic>(o.v_));
        case Kind::Float:
            return Scalar(std::get<std::complex<double>>(v_) + std::get<std::complex<double>>(o.v_));
    }
    mismatch();
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
    if (kind() != o.kind()) mismatch();
    switch (kind()) {
        case Kind::Generic:
            return Scalar(std::get<RationalQ>(v_) * std::get<RationalQ>(o.v_));
        case Kind::Cyclotomic:
            return Scalar(std::get<class Cyclotomic>(v_) * std::get<class Cyclotomic>(o.v_));
        case Kind::Float:
            return Scalar(std::get<std::complex<double>>(v_) * std::get<std::complex<double>>(o.v_));
    }
    mismatch();
}

Scalar Scalar::inverse() const {
    switch (kind()) {
        case Kind::Generic: return Scalar(std::get<RationalQ>(v_).inverse());
        case Kind::Cyclotomic: return Scalar(std::get<class Cyclotomic>(v_).inverse());
        case Kind::Float: {
            auto z = std::get<std::complex<double>>(v_);
            if (z == std::complex<double>(0.0, 0.0))
                throw DivisionByZero("inverse of zero float scalar");
            return Scalar(std::complex<double>(1.0, 0.0) / z);
        }
    }
    mismatch();
}

namespace {

Scalar one_like(const Scalar& s) {
    switch (s.kind()) {
        case Scalar::Kind::Generic: return Scalar(RationalQ(1));
        case Scalar::Kind::Cyclotomic: return Scalar(Cyclotomic(s.cyclotomic().order(), 1));
        case Scalar::Kind::Float: return Scalar(std::complex<double>(1.0, 0.0));
    }
    throw BackendMismatch("unknown backend kind");
}

} // namespace

Scalar Scalar::pow(long e) const {
    Scalar base = e < 0 ? inverse() : *this;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Scalar acc = one_like(*this);
    while (n > 0) {
        if (n & 1) acc = acc * base;
        base = base * base;
        n >>= 1;
    }
    return acc;
}

Scalar Scalar::conjugate() const {
    switch (kind()) {
        case Kind::Generic: return Scalar(std::get<RationalQ>(v_).conjugate());
        case Kind::Cyclotomic: return Scalar(std::get<class Cyclotomic>(v_).conjugate());
        case Kind::Float: return Scalar(std::conj(std::get<std::complex<double>>(v_)));
    }
    mismatch();
}

bool Scalar::equals(const Scalar& o, double tol) const {
    if (kind() != o.kind()) mismatch();
    switch (kind()) {
        case Kind::Generic: return std::get<RationalQ>(v_) == std::get<RationalQ>(o.v_);
        case Kind::Cyclotomic:
            return std::get<class Cyclotomic>(v_) == std::get<class Cyclotomic>(o.v_);
        case Kind::Float:
            return std::abs(std::get<std::complex<double>>(v_) -
                            std::get<std::complex<double>>(o.v_)) <= tol;
    }
    return false;
}

std::complex<double> Scalar::to_complex() const {
    switch (kind()) {
        case Kind::Generic:
            throw BackendMismatch("generic scalar has no numeric image");
        case Kind::Cyclotomic: return std::get<class Cyclotomic>(v_).to_complex();
        case Kind::Float: return std::get<std::complex<double>>(v_);
    }
    mismatch();
}

namespace {

std::string double_str(double x) {
    if (x == 0.0) x = 0.0;  // normalize -0
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

std::string Scalar::str() const {
    switch (kind()) {
        case Kind::Generic: return std::get<RationalQ>(v_).str();
        case Kind::Cyclotomic: return std::get<class Cyclotomic>(v_).str();
        case Kind::Float: {
            auto z = std::get<std::complex<double>>(v_);
            return "(" + double_str(z.real()) + "," + double_str(z.imag()) + ")";
        }
    }
    return {};
}

// ------------------------------------------------------------ ScalarBackend

ScalarBackend ScalarBackend::generic() { return ScalarBackend{}; }

ScalarBackend ScalarBackend::cyclotomic(int order) {
    if (order < 1) throw IndexOutOfRange("cyclotomic order must be positive");
    ScalarBackend b;
    b.kind = Scalar::Kind::Cyclotomic;
    b.order = order;
    return b;
}

ScalarBackend ScalarBackend::floating(std::complex<double> q, double tol) {
    if (q == std::complex<double>(0.0, 0.0))
        throw NonInvertibleScalar("float backend requires q != 0");
    ScalarBackend b;
    b.kind = Scalar::Kind::Float;
    b.q = q;
    b.tol = tol;
    return b;
}

ScalarBackend ScalarBackend::floating_root(int order, double tol) {
    if (order < 1) throw IndexOutOfRange("root order must be positive");
    const double angle = 2.0 * std::numbers::pi / order;
    return floating({std::cos(angle), std::sin(angle)}, tol);
}

ScalarBackend ScalarBackend::floating_d(double d, double tol) {
    // q + 1/q = d; the principal square root puts q on the unit circle for
    // |d| < 2 and on the real line otherwise.  Either root gives the same d.
    std::complex<double> dc(d, 0.0);
    std::complex<double> q = (dc + std::sqrt(dc * dc - 4.0)) / 2.0;
    return floating(q, tol);
}

Scalar ScalarBackend::zero() const { return integer(0); }

Scalar ScalarBackend::one() const { return integer(1); }

Scalar ScalarBackend::integer(long v) const {
    switch (kind) {
        case Scalar::Kind::Generic: return Scalar(RationalQ(v));
        case Scalar::Kind::Cyclotomic: return Scalar(Cyclotomic(order, v));
        case Scalar::Kind::Float: return Scalar(std::complex<double>(static_cast<double>(v), 0.0));
    }
    throw BackendMismatch("unknown backend kind");
}

Scalar ScalarBackend::q_value() const {
    switch (kind) {
        case Scalar::Kind::Generic: return Scalar(RationalQ::q_power(1));
        case Scalar::Kind::Cyclotomic: return Scalar(Cyclotomic::q_class(order));
        case Scalar::Kind::Float: return Scalar(q);
    }
    throw BackendMismatch("unknown backend kind");
}

Scalar ScalarBackend::d() const {
    Scalar qs = q_value();
    return qs + qs.inverse();
}

bool ScalarBackend::same(const ScalarBackend& o) const {
    if (kind != o.kind) return false;
    switch (kind) {
        case Scalar::Kind::Generic: return true;
        case Scalar::Kind::Cyclotomic: return order == o.order;
        case Scalar::Kind::Float: {
            // q and q^{-1} define the same specialization: d and every [k]
            // agree.  Compare loop values, within tolerance, so a backend
            // survives a serialization round trip that lands on the other
            // root of q^2 - dq + 1.
            if (q == o.q) return true;
            std::complex<double> da = q + 1.0 / q;
            std::complex<double> db = o.q + 1.0 / o.q;
            return std::abs(da - db) <= std::max(tol, o.tol);
        }
    }
    return false;
}

// -------------------------------------------------------- derived operations

Scalar quantum_integer(long k, const ScalarBackend& backend) {
    if (k < 0) return -quantum_integer(-k, backend);
    Scalar prev = backend.zero();   // [0]
    if (k == 0) return prev;
    Scalar cur = backend.one();     // [1]
    Scalar d = backend.d();
    for (long j = 1; j < k; ++j) {
        Scalar next = d * cur - prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

namespace {

// c * one by binary expansion of the mpz magnitude; exact in every backend.
Scalar integer_multiple(const mpz_class& c, const Scalar& one) {
    Scalar term = one - one;
    Scalar bit = one;
    mpz_class m = abs(c);
    while (m != 0) {
        if (mpz_tstbit(m.get_mpz_t(), 0)) term = term + bit;
        bit = bit + bit;
        m >>= 1;
    }
    return c < 0 ? -term : term;
}

Scalar eval_laurent(const Laurent& p, const Scalar& target, const Scalar& one) {
    Scalar acc = one - one;
    for (long e = p.high(); e >= p.low(); --e) {
        acc = acc * target;
        mpz_class c = p.coeff(e);
        if (c != 0) acc = acc + integer_multiple(c, one);
    }
    if (p.low() != 0 && !p.is_zero()) {
        if (target.is_zero())
            throw NonInvertibleScalar("negative powers of a zero scalar");
        acc = acc * target.pow(p.low());
    }
    return acc;
}

} // namespace

Scalar evaluate_at(const RationalQ& r, const Scalar& target) {
    Scalar one = one_like(target);
    Scalar num = eval_laurent(r.num(), target, one);
    Scalar den = eval_laurent(r.den(), target, one);
    if (den.is_zero()) throw DenominatorVanishes("denominator vanishes at evaluation point");
    return num * den.inverse();
}

Scalar parse_scalar(const std::string& text, const ScalarBackend& backend) {
    switch (backend.kind) {
        case Scalar::Kind::Generic: return Scalar(RationalQ::parse(text));
        case Scalar::Kind::Cyclotomic: {
            Cyclotomic c = Cyclotomic::parse(text);
            if (c.order() != backend.order)
                throw BackendMismatch("cyclotomic order does not match backend");
            return Scalar(c);
        }
        case Scalar::Kind::Float: {
            size_t comma = text.find(',');
            if (text.size() < 3 || text.front() != '(' || text.back() != ')' ||
                comma == std::string::npos)
                throw ParseError("malformed float scalar: " + text);
            try {
                double re = std::stod(text.substr(1, comma - 1));
                double im = std::stod(text.substr(comma + 1, text.size() - comma - 2));
                return Scalar(std::complex<double>(re, im));
            } catch (const std::exception&) {
                throw ParseError("malformed float scalar: " + text);
            }
        }
    }
    throw BackendMismatch("unknown backend kind");
}

ScalarBackend infer_backend(const std::string& scalar_text) {
    if (scalar_text.find("mod Phi_") != std::string::npos) {
        Cyclotomic c = Cyclotomic::parse(scalar_text);
        return ScalarBackend::cyclotomic(c.order());
    }
    if (!scalar_text.empty() && scalar_text.front() == '(' &&
        scalar_text.find(',') != std::string::npos &&
        scalar_text.find('/') == std::string::npos) {
        // "(re,im)": recover q from d = q + 1/q.
        Scalar d = parse_scalar(scalar_text, ScalarBackend::floating({1.0, 0.0}));
        std::complex<double> dv = d.complex_value();
        std::complex<double> q = (dv + std::sqrt(dv * dv - 4.0)) / 2.0;
        return ScalarBackend::floating(q);
    }
    return ScalarBackend::generic();
}

} // namespace tlcat
