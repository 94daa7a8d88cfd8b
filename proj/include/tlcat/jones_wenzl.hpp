#pragma once

#include <map>

#include "tlcat/morphism.hpp"

namespace tlcat {

// The projector f_k in End(X^k): the unique idempotent killed by every h_i.
struct JonesWenzl {
    int level = 0;
    Morphism morphism;
};

// Frobenius transforms of f_n: phi bends a strand up, psi bends it down, and
// psi∘phi contracts to lambda times f_{n-1}.
struct FrobeniusPair {
    int level = 0;
    Morphism phi;
    Morphism psi;
    Scalar lambda;
};

// f_k over the generic backend as Laurent numerators against one shared
// denominator, fully reduced, denominator monic-positive with lowest term
// q^0. Whole-projector checks run in plain polynomial arithmetic on this
// form; the identity diagram's numerator equals the denominator.
struct ProjectorTable {
    int level = 0;
    Laurent denominator;
    std::map<Diagram, Laurent> numerators;
};

// Builds f_k by the two-term recursion, memoized per backend. Levels whose
// denominator quantum integer vanishes are unreachable and throw. max_level 0
// selects the default cap: 8 on exact backends, 10 on the floating one.
JonesWenzl jones_wenzl(int k, const ScalarBackend& backend, int max_level = 0);

ProjectorTable jones_wenzl_table(int k, int max_level = 0);

// markov_trace(f_k), which equals the quantum integer [k+1].
Scalar jw_trace(int k, const ScalarBackend& backend);

FrobeniusPair frobenius_pair(int n, const ScalarBackend& backend);

// The alternative projector step f_{n+1} = f_n⊗1 − (tr f_{n-1}/tr f_n)·φψ;
// agrees with jones_wenzl(n+1).
Morphism wenzl_from_frobenius(int n, const ScalarBackend& backend);

} // namespace tlcat
