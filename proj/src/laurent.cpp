#include "tlcat/laurent.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "tlcat/errors.hpp"

namespace tlcat {

Laurent::Laurent(long value) : low_(0) {
    if (value != 0) c_.emplace_back(value);
}

Laurent::Laurent(const mpz_class& value) : low_(0) {
    if (value != 0) c_.push_back(value);
}

Laurent Laurent::monomial(const mpz_class& coeff, long exp) {
    Laurent r;
    if (coeff != 0) {
        r.low_ = exp;
        r.c_.push_back(coeff);
    }
    return r;
}

Laurent Laurent::q_power(long exp) { return monomial(1, exp); }

bool Laurent::is_one() const {
    return low_ == 0 && c_.size() == 1 && c_[0] == 1;
}

bool Laurent::is_unit() const {
    return c_.size() == 1 && (c_[0] == 1 || c_[0] == -1);
}

mpz_class Laurent::coeff(long exp) const {
    if (c_.empty() || exp < low_ || exp > high()) return 0;
    return c_[static_cast<size_t>(exp - low_)];
}

const mpz_class& Laurent::leading() const {
    static const mpz_class zero = 0;
    return c_.empty() ? zero : c_.back();
}

void Laurent::trim() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    size_t tail = c_.size();
    while (tail > lead && c_[tail - 1] == 0) --tail;
    if (lead == tail) {
        c_.clear();
        low_ = 0;
        return;
    }
    if (lead > 0 || tail < c_.size()) {
        std::vector<mpz_class> kept(c_.begin() + static_cast<long>(lead),
                                    c_.begin() + static_cast<long>(tail));
        c_ = std::move(kept);
        low_ += static_cast<long>(lead);
    }
}

Laurent Laurent::operator-() const {
    Laurent r = *this;
    for (auto& x : r.c_) x = -x;
    return r;
}

Laurent Laurent::operator+(const Laurent& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    long lo = std::min(low_, o.low_);
    long hi = std::max(high(), o.high());
    Laurent r;
    r.low_ = lo;
    r.c_.assign(static_cast<size_t>(hi - lo + 1), mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i)
        r.c_[static_cast<size_t>(low_ - lo) + i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i)
        r.c_[static_cast<size_t>(o.low_ - lo) + i] += o.c_[i];
    r.trim();
    return r;
}

Laurent Laurent::operator-(const Laurent& o) const { return *this + (-o); }

// In-place accumulation widens the stored window only when needed, so long
// chains of += stay allocation-free once the window has stabilized.
void Laurent::accumulate(const Laurent& o, int sign) {
    if (o.is_zero()) return;
    if (&o == this) {
        if (sign < 0) {
            c_.clear();
            low_ = 0;
        } else {
            for (auto& x : c_) x *= 2;
        }
        return;
    }
    if (is_zero()) {
        low_ = o.low_;
        c_ = o.c_;
        if (sign < 0)
            for (auto& x : c_) x = -x;
        return;
    }
    long lo = std::min(low_, o.low_);
    long hi = std::max(high(), o.high());
    if (lo < low_ || hi > high()) {
        c_.insert(c_.begin(), static_cast<size_t>(low_ - lo), mpz_class(0));
        c_.resize(static_cast<size_t>(hi - lo + 1));
        low_ = lo;
    }
    size_t off = static_cast<size_t>(o.low_ - low_);
    if (sign > 0)
        for (size_t i = 0; i < o.c_.size(); ++i) c_[off + i] += o.c_[i];
    else
        for (size_t i = 0; i < o.c_.size(); ++i) c_[off + i] -= o.c_[i];
    trim();
}

Laurent& Laurent::operator+=(const Laurent& o) {
    accumulate(o, 1);
    return *this;
}

Laurent& Laurent::operator-=(const Laurent& o) {
    accumulate(o, -1);
    return *this;
}

Laurent Laurent::operator*(const Laurent& o) const {
    if (is_zero() || o.is_zero()) return Laurent();
    Laurent r;
    r.low_ = low_ + o.low_;
    r.c_.assign(c_.size() + o.c_.size() - 1, mpz_class(0));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        for (size_t j = 0; j < o.c_.size(); ++j)
            mpz_addmul(r.c_[i + j].get_mpz_t(), c_[i].get_mpz_t(), o.c_[j].get_mpz_t());
    }
    r.trim();
    return r;
}

Laurent Laurent::mirrored() const {
    Laurent r;
    if (is_zero()) return r;
    r.low_ = -high();
    r.c_.assign(c_.rbegin(), c_.rend());
    return r;
}

Laurent Laurent::shifted(long k) const {
    Laurent r = *this;
    if (!r.is_zero()) r.low_ += k;
    return r;
}

mpz_class Laurent::content() const {
    mpz_class g = 0;
    for (const auto& x : c_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
        if (g == 1) break;
    }
    if (!c_.empty() && c_.back() < 0) g = -g;
    return g;
}

Laurent Laurent::primitive_part() const {
    if (is_zero()) return Laurent();
    mpz_class g = content();
    Laurent r;
    r.low_ = 0;
    r.c_.reserve(c_.size());
    for (const auto& x : c_) r.c_.push_back(x / g);
    return r;
}

namespace {

// Helpers on plain integer polynomials (low exponent 0, dense).
using Poly = std::vector<mpz_class>;


void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

mpz_class poly_content(const Poly& p) {
    mpz_class g = 0;
    for (const auto& x : p) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
    return g;
}

void poly_make_primitive(Poly& p) {
    if (p.empty()) return;
    mpz_class g = poly_content(p);
    if (p.back() < 0) g = -g;
    for (auto& x : p) x /= g;
}

// Pseudo-remainder of a by b, deg(b) <= deg(a), b nonzero.
Poly pseudo_rem(Poly a, const Poly& b) {
    const mpz_class& lb = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        mpz_class la = a.back();
        size_t shift = a.size() - b.size();
        for (auto& x : a) x *= lb;
        for (size_t j = 0; j < b.size(); ++j)
            a[shift + j] -= la * b[j];
        poly_trim(a);
    }
    return a;
}

} // namespace

Laurent Laurent::gcd(const Laurent& a, const Laurent& b) {
    if (a.is_zero()) return b.is_zero() ? Laurent() : b.primitive_part();
    if (b.is_zero()) return a.primitive_part();
    Poly x(a.primitive_part().c_), y(b.primitive_part().c_);
    if (x.size() < y.size()) std::swap(x, y);
    // primitive polynomial remainder sequence
    while (!y.empty()) {
        Poly r = pseudo_rem(x, y);
        poly_make_primitive(r);
        x = std::move(y);
        y = std::move(r);
    }
    Laurent g;
    g.low_ = 0;
    g.c_ = std::move(x);
    poly_make_primitive(g.c_);
    return g;
}

Laurent Laurent::div_exact(const Laurent& a, const Laurent& b) {
    if (b.is_zero()) throw DivisionByZero("exact division by zero polynomial");
    if (a.is_zero()) return Laurent();
    Poly rem(a.c_);
    Poly quot(a.c_.size() >= b.c_.size() ? a.c_.size() - b.c_.size() + 1 : 0,
              mpz_class(0));
    const Poly& div = b.c_;
    while (!rem.empty() && rem.size() >= div.size()) {
        mpz_class qc;
        mpz_class r_mod;
        mpz_tdiv_qr(qc.get_mpz_t(), r_mod.get_mpz_t(), rem.back().get_mpz_t(),
                    div.back().get_mpz_t());
        if (r_mod != 0) throw DivisionByZero("polynomial division is not exact");
        size_t shift = rem.size() - div.size();
        quot[shift] = qc;
        for (size_t j = 0; j < div.size(); ++j)
            rem[shift + j] -= qc * div[j];
        poly_trim(rem);
    }
    if (!rem.empty()) throw DivisionByZero("polynomial division is not exact");
    Laurent q;
    q.low_ = a.low_ - b.low_;
    q.c_ = std::move(quot);
    q.trim();
    return q;
}

std::string Laurent::str() const {
    if (is_zero()) return "0";
    std::string out;
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0) continue;
        long exp = low_ + static_cast<long>(i);
        mpz_class mag = abs(c_[i]);
        bool neg = c_[i] < 0;
        if (out.empty()) {
            if (neg) out += "-";
        } else {
            out += neg ? " - " : " + ";
        }
        if (exp == 0) {
            out += mag.get_str();
        } else {
            if (mag != 1) out += mag.get_str();
            out += "q";
            if (exp != 1) out += "^" + std::to_string(exp);
        }
    }
    return out;
}

namespace {

void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

} // namespace

Laurent Laurent::parse(const std::string& text) {
    Laurent result;
    size_t i = 0;
    skip_ws(text, i);
    if (i >= text.size()) throw ParseError("empty polynomial");
    bool first = true;
    while (i < text.size()) {
        int sign = 1;
        skip_ws(text, i);
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip_ws(text, i);
        } else if (!first) {
            throw ParseError("expected '+' or '-' in polynomial: " + text);
        }
        first = false;
        // coefficient digits (optional)
        size_t start = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        mpz_class coeff = 1;
        bool have_digits = i > start;
        if (have_digits) coeff = mpz_class(text.substr(start, i - start));
        long exp = 0;
        skip_ws(text, i);
        if (i < text.size() && text[i] == 'q') {
            ++i;
            exp = 1;
            if (i < text.size() && text[i] == '^') {
                ++i;
                size_t es = i;
                if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
                size_t digits = i;
                while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
                if (i == digits) throw ParseError("missing exponent: " + text);
                exp = std::strtol(text.substr(es, i - es).c_str(), nullptr, 10);
            }
        } else if (!have_digits) {
            throw ParseError("expected term in polynomial: " + text);
        }
        if (sign < 0) coeff = -coeff;
        result += monomial(coeff, exp);
        skip_ws(text, i);
    }
    return result;
}

} // namespace tlcat
