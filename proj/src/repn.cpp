#include "tlcat/repn.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <gmpxx.h>
#include <sstream>

#include "tlcat/errors.hpp"

namespace tlcat {

namespace {

// Counts fit in a long for every level up to these caps.
constexpr int kBallotLevelCap = 60;
constexpr int kCatalanLevelCap = 33;

long binomial(int n, int j) {
    if (j < 0 || j > n) return 0;
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(n),
                 static_cast<unsigned long>(j));
    return b.get_si();
}

long catalan(int n) {
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), static_cast<unsigned long>(2 * n),
                 static_cast<unsigned long>(n));
    mpz_class c = b / (n + 1);
    return c.get_si();
}

void check_level(int n, int cap, const char* what) {
    if (n < 0) throw IndexOutOfRange(std::string("negative level for ") + what);
    if (n > cap)
        throw SizeLimit(std::string(what) + " level " + std::to_string(n) +
                        " exceeds cap " + std::to_string(cap));
}

// Loops produced by closing an endomorphism diagram around the side:
// positions p and size-1-p are joined externally, internal arcs come from
// the diagram, and each cycle of the union is one loop.
int closure_loops(const Diagram& e) {
    int size = e.size();
    std::vector<char> seen(static_cast<size_t>(size), 0);
    int cycles = 0;
    for (int start = 0; start < size; ++start) {
        if (seen[static_cast<size_t>(start)]) continue;
        ++cycles;
        int p = start;
        while (!seen[static_cast<size_t>(p)]) {
            seen[static_cast<size_t>(p)] = 1;
            int q = e.partner(p);
            seen[static_cast<size_t>(q)] = 1;
            p = size - 1 - q;
        }
    }
    return cycles;
}

// Reduced row echelon form in place; returns the rank and appends the
// pivot column of each nonzero row to pivot_cols when given.
size_t rref(std::vector<std::vector<Scalar>>& a, const ScalarBackend& backend,
            std::vector<size_t>* pivot_cols) {
    size_t rows = a.size();
    size_t cols = rows == 0 ? 0 : a[0].size();
    size_t rank = 0;
    for (size_t col = 0; col < cols && rank < rows; ++col) {
        size_t pivot = rank;
        while (pivot < rows && a[pivot][col].is_zero(backend.tol)) ++pivot;
        if (pivot == rows) continue;
        std::swap(a[rank], a[pivot]);
        Scalar inv = a[rank][col].inverse();
        for (size_t j = col; j < cols; ++j) a[rank][j] = a[rank][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == rank || a[i][col].is_zero(backend.tol)) continue;
            Scalar factor = a[i][col];
            for (size_t j = col; j < cols; ++j)
                a[i][j] = a[i][j] - factor * a[rank][j];
        }
        if (pivot_cols) pivot_cols->push_back(col);
        ++rank;
    }
    return rank;
}

} // namespace

long ballot(int n, int j) {
    check_level(n, kBallotLevelCap, "ballot");
    if (j < 0 || 2 * j > n)
        throw IndexOutOfRange("ballot index " + std::to_string(j) +
                              " outside 0..n/2 at level " + std::to_string(n));
    return binomial(n, j) - binomial(n, j - 1);
}

BallotTable decompose_power(int n) {
    check_level(n, kBallotLevelCap, "power decomposition");
    BallotTable table;
    table.n = n;
    for (int j = 0; 2 * j <= n; ++j) table.entries[j] = ballot(n, j);
    return table;
}

std::pair<long, long> catalan_identity_check(int n) {
    check_level(n, kCatalanLevelCap, "Catalan identity");
    if (n < 1) throw IndexOutOfRange("Catalan identity needs a positive level");
    long lhs = 0;
    for (int j = 0; 2 * j <= n; ++j) {
        long b = ballot(n, j);
        lhs += b * b;
    }
    return {lhs, catalan(n)};
}

FusionResult clebsch_gordan(int j, int k) {
    if (j < 0 || k < 0) throw IndexOutOfRange("fusion needs nonnegative indices");
    FusionResult r;
    for (int s = std::abs(j - k); s <= j + k; s += 2) r.summands.emplace_back(s, 1);
    return r;
}

FusionResult truncated_fusion(int j, int k, int l) {
    if (l < 3) throw IndexOutOfRange("truncation level must be at least 3");
    if (j < 0 || k < 0 || j > l - 2 || k > l - 2)
        throw IndexOutOfRange("fusion index outside 0..l-2");
    int m = j + k <= l - 2 ? j + k : 2 * (l - 2) - (j + k);
    FusionResult r;
    for (int s = std::abs(j - k); s <= m; s += 2) r.summands.emplace_back(s, 1);
    return r;
}

std::map<int, long> truncated_multiplicities(int n, int l) {
    if (l < 3) throw IndexOutOfRange("truncation level must be at least 3");
    check_level(n, kBallotLevelCap, "truncated decomposition");
    std::vector<long> mult(static_cast<size_t>(l - 1), 0);
    mult[0] = 1;
    for (int step = 0; step < n; ++step) {
        std::vector<long> next(mult.size(), 0);
        for (int k = 0; k <= l - 2; ++k) {
            if (mult[static_cast<size_t>(k)] == 0) continue;
            if (k > 0) next[static_cast<size_t>(k - 1)] += mult[static_cast<size_t>(k)];
            if (k < l - 2) next[static_cast<size_t>(k + 1)] += mult[static_cast<size_t>(k)];
        }
        mult = std::move(next);
    }
    std::map<int, long> r;
    for (int k = 0; k <= l - 2; ++k)
        if (mult[static_cast<size_t>(k)] != 0) r[k] = mult[static_cast<size_t>(k)];
    return r;
}

bool GramMatrix::equals(const GramMatrix& o) const {
    if (m != o.m || n != o.n || !backend.same(o.backend)) return false;
    if (basis != o.basis || entries.size() != o.entries.size()) return false;
    for (size_t i = 0; i < entries.size(); ++i) {
        if (entries[i].size() != o.entries[i].size()) return false;
        for (size_t j = 0; j < entries[i].size(); ++j)
            if (!entries[i][j].equals(o.entries[i][j], backend.tol)) return false;
    }
    return true;
}

GramMatrix gram_matrix(int m, int n, const ScalarBackend& backend) {
    GramMatrix g;
    g.m = m;
    g.n = n;
    g.backend = backend;
    g.basis = Diagram::enumerate(n, m);
    size_t size = g.basis.size();
    std::vector<Diagram> flipped;
    flipped.reserve(size);
    for (const Diagram& d : g.basis) flipped.push_back(d.rotate_pi());
    int max_loops = m + n;
    std::vector<Scalar> powers{backend.one()};
    for (int k = 1; k <= max_loops; ++k) powers.push_back(powers.back() * backend.d());
    g.entries.assign(size, std::vector<Scalar>(size, backend.zero()));
    for (size_t i = 0; i < size; ++i)
        for (size_t j = 0; j < size; ++j) {
            ComposeResult c = Diagram::compose(g.basis[i], flipped[j]);
            g.entries[i][j] = powers[static_cast<size_t>(c.loops + closure_loops(c.diagram))];
        }
    return g;
}

Scalar gram_det(const GramMatrix& g) {
    const ScalarBackend& backend = g.backend;
    size_t size = g.basis.size();
    if (size == 0) return backend.one();
    auto a = g.entries;
    Scalar prev = backend.one();
    bool negate = false;
    for (size_t k = 0; k + 1 < size; ++k) {
        size_t pivot = k;
        if (backend.kind == Scalar::Kind::Float) {
            double best = std::abs(a[k][k].to_complex());
            for (size_t r = k + 1; r < size; ++r) {
                double mag = std::abs(a[r][k].to_complex());
                if (mag > best) {
                    best = mag;
                    pivot = r;
                }
            }
            if (best <= backend.tol) return backend.zero();
        } else {
            while (pivot < size && a[pivot][k].is_zero(backend.tol)) ++pivot;
            if (pivot == size) return backend.zero();
        }
        if (pivot != k) {
            std::swap(a[pivot], a[k]);
            negate = !negate;
        }
        // Bareiss step: the division by the previous pivot is exact.
        Scalar inv_prev = prev.inverse();
        for (size_t i = k + 1; i < size; ++i) {
            for (size_t j = k + 1; j < size; ++j)
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) * inv_prev;
            a[i][k] = backend.zero();
        }
        prev = a[k][k];
    }
    Scalar det = a[size - 1][size - 1];
    return negate ? -det : det;
}

std::vector<Morphism> negligible_basis(int m, int n, const ScalarBackend& backend) {
    if (backend.kind != Scalar::Kind::Cyclotomic)
        throw BackendMismatch("exact nullspace needs a cyclotomic backend");
    GramMatrix g = gram_matrix(m, n, backend);
    size_t size = g.basis.size();
    if (size == 0) return {};
    auto a = g.entries;
    std::vector<size_t> pivot_cols;
    size_t rank = rref(a, backend, &pivot_cols);
    std::vector<Morphism> result;
    size_t next_pivot = 0;
    for (size_t col = 0; col < size; ++col) {
        if (next_pivot < pivot_cols.size() && pivot_cols[next_pivot] == col) {
            ++next_pivot;
            continue;
        }
        std::vector<Scalar> v(size, backend.zero());
        v[col] = backend.one();
        for (size_t r = 0; r < rank; ++r) v[pivot_cols[r]] = -a[r][col];
        size_t lead = 0;
        while (v[lead].is_zero(backend.tol)) ++lead;
        Scalar scale = v[lead].inverse();
        std::map<Diagram, Scalar> terms;
        for (size_t i = 0; i < size; ++i)
            if (!v[i].is_zero(backend.tol)) terms.emplace(g.basis[i], v[i] * scale);
        result.push_back(Morphism::from_terms(n, m, backend, backend.d(), std::move(terms)));
    }
    return result;
}

long quotient_dimension(int n, int l) {
    if (l < 3) throw IndexOutOfRange("truncation level must be at least 3");
    check_level(n, kCatalanLevelCap, "quotient dimension");
    ScalarBackend backend = ScalarBackend::cyclotomic(2 * l);
    GramMatrix g = gram_matrix(n, n, backend);
    auto a = g.entries;
    return static_cast<long>(rref(a, backend, nullptr));
}

BratteliDiagram bratteli(int levels, int truncation) {
    if (levels < 1) throw IndexOutOfRange("a Bratteli diagram needs at least one level");
    if (truncation != 0 && truncation < 3)
        throw IndexOutOfRange("truncation level must be at least 3");
    check_level(levels, kBallotLevelCap, "Bratteli");
    BratteliDiagram b;
    b.truncation = truncation;
    int cap = truncation == 0 ? levels : truncation - 2;
    for (int t = 0; t <= levels; ++t) {
        std::vector<int> verts;
        for (int k = t % 2; k <= std::min(t, cap); k += 2) verts.push_back(k);
        b.levels.push_back(std::move(verts));
    }
    for (int t = 0; t < levels; ++t) {
        const auto& from = b.levels[static_cast<size_t>(t)];
        const auto& to = b.levels[static_cast<size_t>(t + 1)];
        std::vector<std::vector<int>> mat(from.size(), std::vector<int>(to.size(), 0));
        for (size_t i = 0; i < from.size(); ++i)
            for (size_t j = 0; j < to.size(); ++j)
                if (std::abs(from[i] - to[j]) == 1) mat[i][j] = 1;
        b.edges.push_back(std::move(mat));
    }
    return b;
}

std::map<int, long> bratteli_path_counts(const BratteliDiagram& b, int level) {
    if (level < 0 || level >= static_cast<int>(b.levels.size()))
        throw IndexOutOfRange("level outside the diagram");
    std::vector<long> counts{1};
    for (int t = 0; t < level; ++t) {
        const auto& mat = b.edges[static_cast<size_t>(t)];
        std::vector<long> next(b.levels[static_cast<size_t>(t + 1)].size(), 0);
        for (size_t i = 0; i < counts.size(); ++i)
            for (size_t j = 0; j < next.size(); ++j) next[j] += counts[i] * mat[i][j];
        counts = std::move(next);
    }
    std::map<int, long> r;
    const auto& verts = b.levels[static_cast<size_t>(level)];
    for (size_t i = 0; i < verts.size(); ++i) r[verts[i]] = counts[i];
    return r;
}

std::string bratteli_dot(const BratteliDiagram& b) {
    std::ostringstream out;
    out << "digraph bratteli {\n";
    out << "  rankdir=TB;\n";
    for (size_t t = 0; t < b.levels.size(); ++t) {
        out << "  subgraph level" << t << " {\n    rank=same;\n";
        for (int k : b.levels[t]) out << "    \"X" << k << "@" << t << "\";\n";
        out << "  }\n";
    }
    for (size_t t = 0; t + 1 < b.levels.size(); ++t)
        for (size_t i = 0; i < b.levels[t].size(); ++i)
            for (size_t j = 0; j < b.levels[t + 1].size(); ++j)
                if (b.edges[t][i][j] != 0)
                    out << "  \"X" << b.levels[t][i] << "@" << t << "\" -> \"X"
                        << b.levels[t + 1][j] << "@" << t + 1 << "\";\n";
    out << "}\n";
    return out.str();
}

namespace {

// Cyclic Jacobi; the matrix is destroyed.  Absolute accuracy of the
// returned eigenvalues is around 1e-12 times the Frobenius norm.
std::vector<double> jacobi_eigenvalues(std::vector<std::vector<double>>& a) {
    size_t size = a.size();
    if (size == 0) return {};
    double frob = 0;
    for (size_t i = 0; i < size; ++i)
        for (size_t j = 0; j < size; ++j) frob += a[i][j] * a[i][j];
    double target = 1e-12 * std::max(1.0, std::sqrt(frob));
    constexpr int kSweepCap = 64;
    for (int sweep = 0; sweep < kSweepCap; ++sweep) {
        double off = 0;
        for (size_t p = 0; p < size; ++p)
            for (size_t q = p + 1; q < size; ++q) off += 2 * a[p][q] * a[p][q];
        if (std::sqrt(off) <= target) {
            std::vector<double> eig(size);
            for (size_t i = 0; i < size; ++i) eig[i] = a[i][i];
            std::sort(eig.begin(), eig.end());
            return eig;
        }
        for (size_t p = 0; p + 1 < size; ++p)
            for (size_t q = p + 1; q < size; ++q) {
                double apq = a[p][q];
                if (apq == 0.0) continue;
                double theta = (a[q][q] - a[p][p]) / (2 * apq);
                double t = theta >= 0 ? 1.0 / (theta + std::sqrt(theta * theta + 1))
                                      : 1.0 / (theta - std::sqrt(theta * theta + 1));
                double c = 1.0 / std::sqrt(t * t + 1);
                double s = t * c;
                for (size_t k = 0; k < size; ++k) {
                    double akp = a[k][p];
                    double akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (size_t k = 0; k < size; ++k) {
                    double apk = a[p][k];
                    double aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
            }
    }
    throw NumericalFailure("eigenvalue iteration did not converge");
}

} // namespace

PositivityReport positivity_scan(double d, int max_strands, double tol) {
    if (d == 0.0) throw NonInvertibleScalar("positivity scan needs a nonzero loop value");
    if (max_strands < 1) throw IndexOutOfRange("positivity scan needs at least one level");
    PositivityReport report;
    report.d_value = d;
    report.tol = tol;
    for (int level = 1; level <= max_strands; ++level) {
        std::vector<Diagram> basis = Diagram::enumerate(level, level);
        size_t size = basis.size();
        std::vector<Diagram> starred;
        starred.reserve(size);
        for (const Diagram& b : basis) starred.push_back(b.reflect_horizontal());
        std::vector<double> powers{1.0};
        for (int k = 1; k <= 2 * level; ++k) powers.push_back(powers.back() * d);
        std::vector<std::vector<double>> h(size, std::vector<double>(size, 0.0));
        for (size_t i = 0; i < size; ++i)
            for (size_t j = 0; j < size; ++j) {
                ComposeResult c = Diagram::compose(starred[i], basis[j]);
                h[i][j] = powers[static_cast<size_t>(c.loops + closure_loops(c.diagram))];
            }
        std::vector<double> eig = jacobi_eigenvalues(h);
        report.min_eigenvalues.push_back(eig.front());
        if (eig.front() < -tol) {
            report.violated_level = level;
            break;
        }
    }
    return report;
}

} // namespace tlcat
