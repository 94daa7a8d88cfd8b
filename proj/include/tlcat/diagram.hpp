#ifndef TLCAT_DIAGRAM_HPP
#define TLCAT_DIAGRAM_HPP

#include <string>
#include <vector>

namespace tlcat {

struct ComposeResult;

/// Kauffman diagram: a non-crossing perfect matching of m top points
/// T1..Tm and n bottom points B1..Bn.  Under the counterclockwise boundary
/// walk B1,...,Bn,Tm,...,T1 the matching is non-crossing exactly when the
/// induced parenthesis string is balanced; that walk order is the canonical
/// encoding and the basis of all comparisons.
///
/// Composition convention: a diagram in K_{m,n} is the picture of a morphism
/// X^n -> X^m (domain at the bottom), so compose(upper, lower) glues the
/// bottom of `upper` to the top of `lower`.
class Diagram {
public:
    /// The empty diagram, the identity of K_{0,0}.
    Diagram() = default;

    static Diagram identity(int n);
    /// h_i in K_n: cap (Ti,Ti+1) over cup (Bi,Bi+1), all else vertical.
    static Diagram elementary(int n, int i);
    static Diagram cap();   // K_{0,2}, pairs (B1,B2)
    static Diagram cup();   // K_{2,0}, pairs (T1,T2)
    /// K_{0,2k} with nested arcs (B_j, B_{2k+1-j}); closes k strands at once.
    static Diagram nested_cap(int strands);
    /// K_{2k,0} with nested arcs (T_j, T_{2k+1-j}).
    static Diagram nested_cup(int strands);

    /// All of K_{top,bottom} in ascending order of the canonical encoding.
    /// Empty when top+bottom is odd.
    static std::vector<Diagram> enumerate(int top, int bottom);

    int top_count() const { return top_; }
    int bottom_count() const { return bottom_; }
    /// Number of boundary points, m+n.
    int size() const { return top_ + bottom_; }

    /// Partner of a circular position (0-based along the canonical walk).
    int partner(int position) const;
    /// Circular position of B_j, 1-based j.
    int bottom_position(int j) const { return j - 1; }
    /// Circular position of T_k, 1-based k.
    int top_position(int k) const { return bottom_ + (top_ - k); }
    bool connects(int position_a, int position_b) const;

    static ComposeResult compose(const Diagram& upper, const Diagram& lower);
    static Diagram tensor(const Diagram& left, const Diagram& right);

    /// Rotation by pi, the transpose: K_{m,n} -> K_{n,m}, Tk <-> B(m+1-k),
    /// Bk <-> T(n+1-k).  Involutive.
    Diagram rotate_pi() const;
    /// Upside down: K_{m,n} -> K_{n,m} with Tk <-> Bk.  Involutive.
    Diagram reflect_horizontal() const;
    /// Mirror image: K_{m,n} -> K_{m,n} with left-right index reversal.
    Diagram reflect_vertical() const;

    /// (bottom - top) / 2: the net number of caps inside the diagram.
    int arc_index() const { return (bottom_ - top_) / 2; }

    /// "top:bottom:parens", e.g. identity(2) -> "2:2:(())".
    std::string encode() const;
    static Diagram decode(const std::string& text);

    bool operator==(const Diagram& o) const {
        return top_ == o.top_ && bottom_ == o.bottom_ && partner_ == o.partner_;
    }
    bool operator!=(const Diagram& o) const { return !(*this == o); }
    /// Orders by (top, bottom), then by the parenthesis string.
    bool operator<(const Diagram& o) const;

private:
    int top_ = 0;
    int bottom_ = 0;
    std::vector<int> partner_;
};

struct ComposeResult {
    Diagram diagram;
    int loops = 0;
};

/// Guard against accidentally exponential diagram bases: enumerate and
/// tensor refuse results with more strands than this.  Set once at startup.
int strand_limit();
void set_strand_limit(int strands);

} // namespace tlcat

#endif
