#ifndef TLCAT_REPN_HPP
#define TLCAT_REPN_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "tlcat/morphism.hpp"

namespace tlcat {

/// Multiplicities of the simple summands of X^n: entries[j] is the number
/// of copies of X_{n-2j}, 0 <= j <= n/2.
struct BallotTable {
    int n = 0;
    std::map<int, long> entries;
};

/// Decomposition of a tensor product into simples, sorted by index.
struct FusionResult {
    std::vector<std::pair<int, int>> summands;

    bool operator==(const FusionResult& o) const { return summands == o.summands; }
};

/// Trace pairing matrix over a diagram basis of Hom(X^m, X^n):
/// entries[i][j] = tr(D_i o transpose(D_j)).  Symmetric.
struct GramMatrix {
    int m = 0;
    int n = 0;
    ScalarBackend backend;
    std::vector<Diagram> basis;
    std::vector<std::vector<Scalar>> entries;

    /// Same signature, same backend, equal basis and entries (float entries
    /// within backend tolerance).
    bool equals(const GramMatrix& o) const;
};

/// Inclusion graph of End(X^0) c End(X^1) c ... with simple indices as
/// vertices.  levels[t] lists the indices present at level t in ascending
/// order; edges[t][i][j] is the multiplicity (here 0 or 1) between
/// levels[t][i] and levels[t+1][j].  truncation is 0 for the generic graph,
/// otherwise vertices are capped at index truncation-2.
struct BratteliDiagram {
    int truncation = 0;
    std::vector<std::vector<int>> levels;
    std::vector<std::vector<std::vector<int>>> edges;

    bool operator==(const BratteliDiagram&) const = default;
};

/// Outcome of a numeric positivity scan of the trace form.
/// min_eigenvalues[t-1] is the smallest eigenvalue of the level-t Gram
/// matrix; violated_level is the first level where it drops below -tol,
/// or 0 when every checked level passed.
struct PositivityReport {
    double d_value = 0;
    double tol = 0;
    std::vector<double> min_eigenvalues;
    int violated_level = 0;

    bool admissible() const { return violated_level == 0; }
    int levels_checked() const { return static_cast<int>(min_eigenvalues.size()); }

    bool operator==(const PositivityReport&) const = default;
};

/// C(n,j) - C(n,j-1): the multiplicity of X_{n-2j} in X^n.  Levels are
/// capped at 60 so every count fits in a long.
long ballot(int n, int j);
BallotTable decompose_power(int n);

/// Left side: sum of squared ballot numbers at level n; right side: the
/// n-th Catalan number.  The two agree; both are returned so callers can
/// assert it.  Capped at n = 33 (the last Catalan number below 2^63).
std::pair<long, long> catalan_identity_check(int n);

/// X_j (x) X_k = X_|j-k| + X_{|j-k|+2} + ... + X_{j+k}, multiplicity one.
FusionResult clebsch_gordan(int j, int k);

/// Fusion of the reduced category at q^2 a primitive l-th root: the series
/// stops at j+k when j+k <= l-2 and at 2(l-2)-(j+k) otherwise.
FusionResult truncated_fusion(int j, int k, int l);

/// Simple multiplicities of X^n in the reduced category, by iterating the
/// truncated level-one fusion.
std::map<int, long> truncated_multiplicities(int n, int l);

GramMatrix gram_matrix(int m, int n, const ScalarBackend& backend);

/// Exact determinant by fraction-free elimination; empty matrices give 1.
Scalar gram_det(const GramMatrix& g);

/// Exact nullspace basis of the trace pairing on Hom(X^m, X^n), each
/// vector normalized so its first nonzero coordinate is 1.  Exactness
/// demands a cyclotomic backend.
std::vector<Morphism> negligible_basis(int m, int n, const ScalarBackend& backend);

/// dim End of the n-th tensor power in the reduced category at q^2 a
/// primitive l-th root: the Catalan number minus the Gram nullity.
long quotient_dimension(int n, int l);

BratteliDiagram bratteli(int levels, int truncation = 0);

/// Number of paths from the root to each vertex at the given level.
std::map<int, long> bratteli_path_counts(const BratteliDiagram& b, int level);

/// Graphviz rendering with one subgraph per level and vertex labels
/// "X{k}@{level}".  Byte-stable for fixed input.
std::string bratteli_dot(const BratteliDiagram& b);

/// Builds the level-n Hermitian Gram matrices H_ij = tr(star(D_i) o D_j)
/// for n = 1..max_strands at the given real loop value and reports their
/// minimum eigenvalues, stopping at the first level that goes negative.
PositivityReport positivity_scan(double d, int max_strands, double tol = 1e-9);

} // namespace tlcat

#endif
