#pragma once

#include <string>
#include <vector>

#include "tlcat/diagram.hpp"
#include "tlcat/morphism.hpp"

namespace tlcat {

// A word in the abstract presentation of the diagram algebra on n strands.
// Letters index the generators h_1 .. h_{n-1}; the leftmost letter is the
// uppermost factor of the product.
struct Word {
    int strand_count = 0;
    std::vector<int> letters;

    std::string str() const;
    static Word parse(const std::string& text);

    bool operator==(const Word&) const = default;
};

// One descending run h_i h_{i-1} ... h_j, so i >= j.
struct Block {
    int i = 0;
    int j = 0;
    bool operator==(const Block&) const = default;
};

// Jones normal form: d^{d_exponent} times a product of descending runs whose
// start indices i_1 < i_2 < ... and end indices j_1 < j_2 < ... both increase.
// The empty block list is the unit.
struct NormalForm {
    int strand_count = 0;
    int d_exponent = 0;
    std::vector<Block> blocks;

    Word flatten() const;
    std::string str() const;
    static NormalForm parse(const std::string& text);

    bool operator==(const NormalForm&) const = default;
};

// Evaluates a word to a single diagram plus the number of closed loops
// removed along the way.
ComposeResult word_to_diagram(const Word& w);

Morphism word_to_morphism(const Word& w, const ScalarBackend& backend);
Morphism word_to_morphism(const Word& w, const ScalarBackend& backend, const Scalar& d);

// The unique normal form with the same evaluation: the word equals
// d^{d_exponent} times the flattened block word, which is reduced.
NormalForm normal_form(const Word& w);

// All normal forms on n strands, count the n-th Catalan number, in a fixed
// order: fewer blocks first, then lexicographic with larger j first per i.
std::vector<NormalForm> enumerate_reduced(int n);

// The mutually inverse bijection between reduced words and diagrams in K_n.
Diagram reduced_to_diagram(const NormalForm& nf);
NormalForm diagram_to_reduced(const Diagram& diagram);

} // namespace tlcat
