#include "tlcat/morphism.hpp"

#include <cmath>

#include "tlcat/errors.hpp"

namespace tlcat {

StarConfig StarConfig::from_loop(const ScalarBackend& backend, const Scalar& d) {
    if (backend.kind == Scalar::Kind::Generic) return StarConfig{backend.one()};
    std::complex<double> value = d.to_complex();
    if (std::abs(value.imag()) > backend.tol || std::abs(value.real()) <= backend.tol)
        throw NonInvertibleScalar("sign of the loop value needs a nonzero real d");
    return StarConfig{value.real() > 0 ? backend.one() : -backend.one()};
}

Morphism::Morphism(int top, int bottom, const ScalarBackend& backend)
    : Morphism(top, bottom, backend, backend.d()) {}

Morphism::Morphism(int top, int bottom, const ScalarBackend& backend, Scalar d)
    : top_(top), bottom_(bottom), backend_(backend), d_(std::move(d)) {
    if (top < 0 || bottom < 0) throw IndexOutOfRange("negative boundary count");
}

Morphism Morphism::from_diagram(const Diagram& diagram, const ScalarBackend& backend) {
    return from_diagram(diagram, backend, backend.d());
}

Morphism Morphism::from_diagram(const Diagram& diagram, const ScalarBackend& backend,
                                Scalar d) {
    Morphism f(diagram.top_count(), diagram.bottom_count(), backend, std::move(d));
    f.terms_.emplace(diagram, backend.one());
    return f;
}

Morphism Morphism::identity(int n, const ScalarBackend& backend) {
    return from_diagram(Diagram::identity(n), backend);
}

Morphism Morphism::identity(int n, const ScalarBackend& backend, Scalar d) {
    return from_diagram(Diagram::identity(n), backend, std::move(d));
}

Morphism Morphism::elementary_h(int n, int i, const ScalarBackend& backend) {
    return from_diagram(Diagram::elementary(n, i), backend);
}

Morphism Morphism::elementary_h(int n, int i, const ScalarBackend& backend, Scalar d) {
    return from_diagram(Diagram::elementary(n, i), backend, std::move(d));
}

Morphism Morphism::from_terms(int top, int bottom, const ScalarBackend& backend, Scalar d,
                              std::map<Diagram, Scalar> terms) {
    Morphism f(top, bottom, backend, std::move(d));
    for (auto it = terms.begin(); it != terms.end();) {
        if (it->first.top_count() != top || it->first.bottom_count() != bottom)
            throw SignatureMismatch("term diagram has signature " +
                                    std::to_string(it->first.top_count()) + "," +
                                    std::to_string(it->first.bottom_count()));
        it = it->second.is_zero(backend.tol) ? terms.erase(it) : std::next(it);
    }
    f.terms_ = std::move(terms);
    return f;
}

Scalar Morphism::coefficient(const Diagram& diagram) const {
    auto it = terms_.find(diagram);
    return it == terms_.end() ? backend_.zero() : it->second;
}

void Morphism::insert_term(const Diagram& diagram, const Scalar& coeff) {
    auto it = terms_.find(diagram);
    if (it == terms_.end()) {
        if (!coeff.is_zero(backend_.tol)) terms_.emplace(diagram, coeff);
        return;
    }
    it->second += coeff;
    if (it->second.is_zero(backend_.tol)) terms_.erase(it);
}

void Morphism::check_context(const Morphism& o) const {
    if (!backend_.same(o.backend_)) throw BackendMismatch("scalar backends differ");
    if (!d_.equals(o.d_, backend_.tol))
        throw BackendMismatch("loop values differ: " + d_.str() + " vs " + o.d_.str());
}

Scalar Morphism::d_power(long e) const {
    return d_.pow(e);
}

Morphism Morphism::operator-() const {
    Morphism r(top_, bottom_, backend_, d_);
    for (const auto& [diagram, coeff] : terms_) r.terms_.emplace(diagram, -coeff);
    return r;
}

Morphism Morphism::operator+(const Morphism& o) const {
    check_context(o);
    if (top_ != o.top_ || bottom_ != o.bottom_)
        throw SignatureMismatch("adding morphisms of different signatures");
    Morphism r = *this;
    for (const auto& [diagram, coeff] : o.terms_) r.insert_term(diagram, coeff);
    return r;
}

Morphism Morphism::operator-(const Morphism& o) const { return *this + (-o); }

Morphism Morphism::scaled(const Scalar& s) const {
    Morphism r(top_, bottom_, backend_, d_);
    if (s.is_zero(backend_.tol)) return r;
    for (const auto& [diagram, coeff] : terms_) {
        Scalar c = coeff * s;
        if (!c.is_zero(backend_.tol)) r.terms_.emplace(diagram, std::move(c));
    }
    return r;
}

Morphism Morphism::compose(const Morphism& f, const Morphism& g) {
    f.check_context(g);
    if (f.bottom_ != g.top_)
        throw SignatureMismatch("composition needs " + std::to_string(f.bottom_) +
                                " = " + std::to_string(g.top_) + " inner strands");
    Morphism r(f.top_, g.bottom_, f.backend_, f.d_);
    std::vector<Scalar> loop_powers{f.backend_.one()};
    for (const auto& [df, cf] : f.terms_) {
        for (const auto& [dg, cg] : g.terms_) {
            ComposeResult glued = Diagram::compose(df, dg);
            while (static_cast<int>(loop_powers.size()) <= glued.loops)
                loop_powers.push_back(loop_powers.back() * f.d_);
            r.insert_term(glued.diagram, cf * cg * loop_powers[glued.loops]);
        }
    }
    return r;
}

Morphism Morphism::tensor(const Morphism& f, const Morphism& g) {
    f.check_context(g);
    Morphism r(f.top_ + g.top_, f.bottom_ + g.bottom_, f.backend_, f.d_);
    for (const auto& [df, cf] : f.terms_)
        for (const auto& [dg, cg] : g.terms_)
            r.insert_term(Diagram::tensor(df, dg), cf * cg);
    return r;
}

Morphism Morphism::transpose() const {
    Morphism r(bottom_, top_, backend_, d_);
    for (const auto& [diagram, coeff] : terms_) r.terms_.emplace(diagram.rotate_pi(), coeff);
    return r;
}

namespace {

int closed_loop_count(const Diagram& d) {
    const int n = d.top_count();
    // Walk the union of the matching with the closure arcs T_k - B_k; the
    // count of cycles is the loop number.
    std::vector<int> next(static_cast<size_t>(2 * n));
    for (int x = 0; x < 2 * n; ++x) next[x] = d.partner(x);
    std::vector<bool> seen(static_cast<size_t>(2 * n), false);
    int loops = 0;
    for (int start = 0; start < 2 * n; ++start) {
        if (seen[start]) continue;
        ++loops;
        int x = start;
        while (!seen[x]) {
            seen[x] = true;
            int y = next[x];   // cross the diagram
            seen[y] = true;
            // follow the closure arc from y
            int k;
            if (y < n) {
                k = y + 1;             // B_k
                x = d.top_position(k);
            } else {
                k = d.top_count() - (y - d.bottom_count());   // T_k
                x = d.bottom_position(k);
            }
        }
    }
    return loops;
}

} // namespace

Scalar Morphism::markov_trace() const {
    if (top_ != bottom_)
        throw NotEndomorphism("trace of a morphism with signature " + std::to_string(top_) +
                              " != " + std::to_string(bottom_));
    Scalar total = backend_.zero();
    for (const auto& [diagram, coeff] : terms_)
        total += coeff * d_power(closed_loop_count(diagram));
    return total;
}

Morphism Morphism::conditional_expectation(int keep) const {
    if (top_ != bottom_)
        throw NotEndomorphism("conditional expectation needs an endomorphism");
    if (keep < 0 || keep > top_)
        throw SignatureMismatch("cannot keep " + std::to_string(keep) + " of " +
                                std::to_string(top_) + " strands");
    const int closed = top_ - keep;
    if (closed == 0) return *this;
    if (d_.is_zero(backend_.tol))
        throw DivisionByZero("conditional expectation at loop value zero");
    Morphism keep_id = identity(keep, backend_, d_);
    Morphism upper = tensor(keep_id, from_diagram(Diagram::nested_cap(closed), backend_, d_));
    Morphism lower = tensor(keep_id, from_diagram(Diagram::nested_cup(closed), backend_, d_));
    Morphism closed_part = compose(compose(upper, tensor(*this, identity(closed, backend_, d_))), lower);
    return closed_part.scaled(d_.pow(-closed));
}

Morphism Morphism::bend_right_down() const {
    if (top_ == 0) throw NoStrand("no top strand to bend down");
    Morphism eps = from_diagram(Diagram::cap(), backend_, d_);
    Morphism upper = tensor(identity(top_ - 1, backend_, d_), eps);
    return compose(upper, tensor(*this, identity(1, backend_, d_)));
}

Morphism Morphism::bend_right_up() const {
    if (bottom_ == 0) throw NoStrand("no bottom strand to bend up");
    Morphism delta = from_diagram(Diagram::cup(), backend_, d_);
    Morphism lower = tensor(identity(bottom_ - 1, backend_, d_), delta);
    return compose(tensor(*this, identity(1, backend_, d_)), lower);
}

Morphism Morphism::bend_left_down() const {
    if (top_ == 0) throw NoStrand("no top strand to bend down");
    Morphism eps = from_diagram(Diagram::cap(), backend_, d_);
    Morphism upper = tensor(eps, identity(top_ - 1, backend_, d_));
    return compose(upper, tensor(identity(1, backend_, d_), *this));
}

Morphism Morphism::bend_left_up() const {
    if (bottom_ == 0) throw NoStrand("no bottom strand to bend up");
    Morphism delta = from_diagram(Diagram::cup(), backend_, d_);
    Morphism lower = tensor(delta, identity(bottom_ - 1, backend_, d_));
    return compose(tensor(identity(1, backend_, d_), *this), lower);
}

Morphism Morphism::dual_idempotent() const {
    if (top_ != bottom_) throw NotEndomorphism("dual idempotent needs an endomorphism");
    if (!compose(*this, *this).equals(*this))
        throw NotIdempotent("morphism is not idempotent");
    const int n = top_;
    Morphism idn = identity(n, backend_, d_);
    Morphism eps = from_diagram(Diagram::nested_cap(n), backend_, d_);
    Morphism delta = from_diagram(Diagram::nested_cup(n), backend_, d_);
    Morphism upper = tensor(idn, eps);
    Morphism middle = tensor(tensor(idn, *this), idn);
    Morphism lower = tensor(delta, idn);
    return compose(compose(upper, middle), lower);
}

Morphism Morphism::star(const StarConfig& cfg) const {
    Morphism r(bottom_, top_, backend_, d_);
    for (const auto& [diagram, coeff] : terms_) {
        Scalar c = coeff.conjugate() * cfg.sign_factor.pow(diagram.arc_index());
        r.insert_term(diagram.reflect_horizontal(), c);
    }
    return r;
}

Morphism Morphism::twist(const Scalar& lambda) const {
    if (lambda.is_zero(backend_.tol))
        throw NonInvertibleScalar("twist by a non-invertible scalar");
    Morphism r(top_, bottom_, backend_, d_);
    for (const auto& [diagram, coeff] : terms_)
        r.insert_term(diagram, coeff * lambda.pow(diagram.arc_index()));
    return r;
}

bool Morphism::equals(const Morphism& o) const {
    if (!backend_.same(o.backend_)) throw BackendMismatch("scalar backends differ");
    if (top_ != o.top_ || bottom_ != o.bottom_) return false;
    if (!d_.equals(o.d_, backend_.tol)) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    while (it != terms_.end() && jt != o.terms_.end()) {
        if (it->first < jt->first) {
            if (!it->second.is_zero(backend_.tol)) return false;
            ++it;
        } else if (jt->first < it->first) {
            if (!jt->second.is_zero(backend_.tol)) return false;
            ++jt;
        } else {
            if (!it->second.equals(jt->second, backend_.tol)) return false;
            ++it;
            ++jt;
        }
    }
    for (; it != terms_.end(); ++it)
        if (!it->second.is_zero(backend_.tol)) return false;
    for (; jt != o.terms_.end(); ++jt)
        if (!jt->second.is_zero(backend_.tol)) return false;
    return true;
}

} // namespace tlcat
