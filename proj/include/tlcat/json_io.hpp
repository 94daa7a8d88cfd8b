#ifndef TLCAT_JSON_IO_HPP
#define TLCAT_JSON_IO_HPP

#include <string>
#include <vector>

#include "tlcat/morphism.hpp"
#include "tlcat/repn.hpp"

namespace tlcat {

/// Wire format:
///   {"m":…, "n":…, "d":"…", "terms":[{"coeff":"…","diagram":"m:n:parens"}…]}
/// with terms sorted by the diagram key.  The "d" field carries the loop
/// value; reading infers the coefficient backend from it, so a morphism file
/// is self-describing.
std::string morphism_to_json(const Morphism& f);
Morphism morphism_from_json(const std::string& text);

/// A fusion decomposition together with its inputs.  truncation 0 means the
/// untruncated rule.
struct FusionTable {
    int left = 0;
    int right = 0;
    int truncation = 0;
    FusionResult result;

    bool operator==(const FusionTable& o) const {
        return left == o.left && right == o.right && truncation == o.truncation &&
               result == o.result;
    }
};

std::string fusion_to_json(const FusionTable& t);
std::string fusion_to_text(const FusionTable& t);
FusionTable fusion_from_json(const std::string& text);
FusionTable fusion_from_text(const std::string& text);

std::string positivity_to_json(const PositivityReport& r);
std::string positivity_to_text(const PositivityReport& r);
PositivityReport positivity_from_json(const std::string& text);
PositivityReport positivity_from_text(const std::string& text);

/// Gram matrices serialize entry-exactly; the backend travels as the loop
/// value string, like a morphism's "d" field.
std::string gram_to_json(const GramMatrix& g);
std::string gram_to_text(const GramMatrix& g);
GramMatrix gram_from_json(const std::string& text);
GramMatrix gram_from_text(const std::string& text);

/// Negligible-ideal report for End(X^strands) over the cyclotomic backend of
/// the given order.
struct KernelReport {
    int strands = 0;
    int order = 0;
    std::vector<Morphism> basis;

    bool operator==(const KernelReport& o) const = default;
};

std::string kernel_to_json(const KernelReport& r);
KernelReport kernel_from_json(const std::string& text);

/// Reads back the DOT text produced by bratteli_dot.  The graph itself
/// (levels and edges) is reconstructed; the truncation parameter is not part
/// of the drawing and comes back as 0.
BratteliDiagram bratteli_from_dot(const std::string& text);

} // namespace tlcat

#endif
