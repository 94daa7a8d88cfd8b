#include "tlcat/jones_wenzl.hpp"

#include <mutex>
#include <utility>
#include <vector>

#include "tlcat/errors.hpp"
#include "tlcat/laurent.hpp"

namespace tlcat {

namespace {

constexpr int kExactLevelCap = 8;
constexpr int kFloatLevelCap = 10;

std::mutex g_memo_mutex;

struct MorphismShard {
    ScalarBackend backend;
    std::map<int, Morphism> levels;
};

std::vector<MorphismShard> g_morphisms;
std::map<int, ProjectorTable> g_tables;

const Laurent& loop_poly() {
    static const Laurent d = Laurent::q_power(-1) + Laurent::q_power(1);
    return d;
}

Laurent quantum_poly(int k) {
    Laurent prev;
    Laurent cur(1);
    for (int j = 1; j < k; ++j) {
        Laurent next = loop_poly() * cur - prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return k == 0 ? prev : cur;
}

using Terms = std::map<Diagram, Laurent>;

Terms compose_terms(const Terms& upper, const Terms& lower) {
    std::vector<Laurent> powers{Laurent(1)};
    Terms out;
    for (const auto& [du, cu] : upper)
        for (const auto& [dl, cl] : lower) {
            ComposeResult step = Diagram::compose(du, dl);
            while (static_cast<int>(powers.size()) <= step.loops)
                powers.push_back(powers.back() * loop_poly());
            Laurent term = cu * cl;
            if (step.loops > 0) term = term * powers[static_cast<size_t>(step.loops)];
            auto [it, fresh] = out.try_emplace(step.diagram, term);
            if (!fresh) it->second += term;
        }
    for (auto it = out.begin(); it != out.end();)
        it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
}

// Clears common factors and puts the denominator into its canonical shape:
// lowest exponent zero, positive leading coefficient.
void reduce_terms(Terms& nums, Laurent& den) {
    Laurent g = den;
    for (const auto& [d, c] : nums) {
        if (g.is_one()) break;
        g = Laurent::gcd(g, c);
    }
    mpz_class content = den.content();
    if (content < 0) content = -content;
    for (const auto& [d, c] : nums) {
        if (content == 1) break;
        mpz_class cc = c.content();
        mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), cc.get_mpz_t());
    }
    if (!g.is_one()) {
        den = Laurent::div_exact(den, g);
        for (auto& [d, c] : nums) c = Laurent::div_exact(c, g);
    }
    if (content != 1) {
        Laurent divisor(content);
        den = Laurent::div_exact(den, divisor);
        for (auto& [d, c] : nums) c = Laurent::div_exact(c, divisor);
    }
    long shift = den.low();
    bool flip = den.leading() < 0;
    if (shift != 0) den = den.shifted(-shift);
    if (flip) den = -den;
    if (shift != 0 || flip)
        for (auto& [d, c] : nums) {
            if (shift != 0) c = c.shifted(-shift);
            if (flip) c = -c;
        }
}

// Extends the table memo up to level k. Caller holds the memo mutex. The
// generic quantum integers never vanish, so every level is reachable.
const ProjectorTable& build_tables(int k) {
    if (g_tables.empty()) {
        g_tables.emplace(0, ProjectorTable{0, Laurent(1), {{Diagram::identity(0), Laurent(1)}}});
        g_tables.emplace(1, ProjectorTable{1, Laurent(1), {{Diagram::identity(1), Laurent(1)}}});
    }
    for (int j = g_tables.rbegin()->first; j < k; ++j) {
        const ProjectorTable& prev = g_tables.at(j);
        Terms wide;
        for (const auto& [d, c] : prev.numerators)
            wide.emplace(Diagram::tensor(d, Diagram::identity(1)), c);
        Terms hook{{Diagram::elementary(j + 1, j), Laurent(1)}};
        Terms outer = compose_terms(wide, compose_terms(hook, wide));

        Laurent lower = quantum_poly(j);
        Laurent upper = quantum_poly(j + 1);
        Laurent den = upper * prev.denominator * prev.denominator;
        Laurent scale = upper * prev.denominator;
        Terms nums;
        for (const auto& [d, c] : wide) nums.emplace(d, c * scale);
        for (const auto& [d, c] : outer) {
            Laurent term = lower * c;
            auto [it, fresh] = nums.try_emplace(d, -term);
            if (!fresh) it->second -= term;
        }
        for (auto it = nums.begin(); it != nums.end();)
            it = it->second.is_zero() ? nums.erase(it) : std::next(it);
        reduce_terms(nums, den);
        g_tables.emplace(j + 1, ProjectorTable{j + 1, std::move(den), std::move(nums)});
    }
    return g_tables.at(k);
}

Morphism morphism_from_table(const ProjectorTable& table, const ScalarBackend& backend) {
    std::map<Diagram, Scalar> terms;
    for (const auto& [d, c] : table.numerators)
        terms.emplace(d, Scalar(RationalQ(c, table.denominator)));
    return Morphism::from_terms(table.level, table.level, backend, backend.d(),
                                std::move(terms));
}

// The direct recursion for the non-generic backends, whose scalars are cheap
// but where quantum integers can vanish. Caller holds the memo mutex.
const Morphism& build_levels(MorphismShard& shard, int k) {
    const ScalarBackend& backend = shard.backend;
    if (shard.levels.empty()) {
        shard.levels.emplace(0, Morphism::identity(0, backend));
        shard.levels.emplace(1, Morphism::identity(1, backend));
    }
    int have = shard.levels.rbegin()->first;
    for (int j = have; j < k; ++j) {
        Scalar lower = quantum_integer(j, backend);
        Scalar upper = quantum_integer(j + 1, backend);
        if (upper.is_zero(backend.tol)) throw VanishingQuantumInteger(j + 1);
        Morphism widened =
            Morphism::tensor(shard.levels.at(j), Morphism::identity(1, backend));
        Morphism hooked = Morphism::compose(
            widened, Morphism::compose(Morphism::elementary_h(j + 1, j, backend), widened));
        Morphism next = widened + hooked.scaled(-(lower * upper.inverse()));
        shard.levels.emplace(j + 1, std::move(next));
    }
    return shard.levels.at(k);
}

MorphismShard& shard_for(const ScalarBackend& backend) {
    for (MorphismShard& shard : g_morphisms)
        if (shard.backend.same(backend)) return shard;
    g_morphisms.push_back({backend, {}});
    return g_morphisms.back();
}

int level_cap(const ScalarBackend& backend, int max_level) {
    if (max_level > 0) return max_level;
    return backend.kind == Scalar::Kind::Float ? kFloatLevelCap : kExactLevelCap;
}

void check_level(int k, int cap) {
    if (k < 0) throw IndexOutOfRange("negative projector level " + std::to_string(k));
    if (k > cap)
        throw SizeLimit("projector level " + std::to_string(k) + " exceeds cap " +
                        std::to_string(cap));
}

} // namespace

JonesWenzl jones_wenzl(int k, const ScalarBackend& backend, int max_level) {
    check_level(k, level_cap(backend, max_level));
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    if (backend.kind == Scalar::Kind::Generic) {
        MorphismShard& shard = shard_for(backend);
        auto it = shard.levels.find(k);
        if (it == shard.levels.end())
            it = shard.levels.emplace(k, morphism_from_table(build_tables(k), backend)).first;
        return {k, it->second};
    }
    return {k, build_levels(shard_for(backend), k)};
}

ProjectorTable jones_wenzl_table(int k, int max_level) {
    check_level(k, max_level > 0 ? max_level : kExactLevelCap);
    std::lock_guard<std::mutex> lock(g_memo_mutex);
    return build_tables(k);
}

Scalar jw_trace(int k, const ScalarBackend& backend) {
    return jones_wenzl(k, backend).morphism.markov_trace();
}

FrobeniusPair frobenius_pair(int n, const ScalarBackend& backend) {
    if (n < 1) throw IndexOutOfRange("Frobenius pair needs a positive level");
    Morphism fn = jones_wenzl(n, backend).morphism;
    Morphism fprev = jones_wenzl(n - 1, backend).morphism;
    Morphism idprev = Morphism::identity(n - 1, backend);
    Morphism wide = Morphism::tensor(fn, Morphism::identity(1, backend));
    Morphism delta = Morphism::from_diagram(Diagram::cup(), backend);
    Morphism eps = Morphism::from_diagram(Diagram::cap(), backend);
    Morphism phi =
        Morphism::compose(wide, Morphism::compose(Morphism::tensor(idprev, delta), fprev));
    Morphism psi =
        Morphism::compose(fprev, Morphism::compose(Morphism::tensor(idprev, eps), wide));
    Scalar lambda = quantum_integer(n + 1, backend) * quantum_integer(n, backend).inverse();
    return {n, std::move(phi), std::move(psi), std::move(lambda)};
}

Morphism wenzl_from_frobenius(int n, const ScalarBackend& backend) {
    Scalar trace_n = jw_trace(n, backend);
    if (trace_n.is_zero(backend.tol)) throw VanishingQuantumInteger(n + 1);
    Scalar trace_prev = jw_trace(n - 1, backend);
    FrobeniusPair pair = frobenius_pair(n, backend);
    Morphism wide =
        Morphism::tensor(jones_wenzl(n, backend).morphism, Morphism::identity(1, backend));
    return wide + Morphism::compose(pair.phi, pair.psi)
                      .scaled(-(trace_prev * trace_n.inverse()));
}

} // namespace tlcat
