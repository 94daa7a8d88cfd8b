#include "tlcat/diagram.hpp"

#include <atomic>
#include <numeric>

#include "tlcat/errors.hpp"

namespace tlcat {

namespace {

std::atomic<int> g_strand_limit{16};

void check_strands(int boundary_points) {
    if (boundary_points / 2 > strand_limit())
        throw SizeLimit("diagram with " + std::to_string(boundary_points / 2) +
                        " strands exceeds the limit of " + std::to_string(strand_limit()));
}

struct UnionFind {
    std::vector<int> parent;

    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }

    int find(int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(int a, int b) { parent[find(a)] = find(b); }
};

} // namespace

int strand_limit() { return g_strand_limit.load(); }

void set_strand_limit(int strands) {
    if (strands < 0) throw IndexOutOfRange("strand limit must be non-negative");
    g_strand_limit.store(strands);
}

int Diagram::partner(int position) const {
    if (position < 0 || position >= size())
        throw IndexOutOfRange("boundary position " + std::to_string(position) +
                              " out of range");
    return partner_[static_cast<size_t>(position)];
}

bool Diagram::connects(int position_a, int position_b) const {
    return partner(position_a) == position_b;
}

Diagram Diagram::identity(int n) {
    if (n < 0) throw IndexOutOfRange("negative strand count");
    Diagram d;
    d.top_ = n;
    d.bottom_ = n;
    d.partner_.resize(static_cast<size_t>(2 * n));
    for (int j = 1; j <= n; ++j) {
        int b = d.bottom_position(j);
        int t = d.top_position(j);
        d.partner_[b] = t;
        d.partner_[t] = b;
    }
    return d;
}

Diagram Diagram::elementary(int n, int i) {
    if (i < 1 || i > n - 1)
        throw IndexOutOfRange("elementary index " + std::to_string(i) +
                              " not in [1, " + std::to_string(n - 1) + "]");
    Diagram d = identity(n);
    auto pair = [&d](int a, int b) {
        d.partner_[a] = b;
        d.partner_[b] = a;
    };
    pair(d.bottom_position(i), d.bottom_position(i + 1));
    pair(d.top_position(i), d.top_position(i + 1));
    return d;
}

Diagram Diagram::cap() { return nested_cap(1); }

Diagram Diagram::cup() { return nested_cup(1); }

Diagram Diagram::nested_cap(int strands) {
    if (strands < 0) throw IndexOutOfRange("negative strand count");
    Diagram d;
    d.top_ = 0;
    d.bottom_ = 2 * strands;
    d.partner_.resize(static_cast<size_t>(2 * strands));
    for (int j = 1; j <= strands; ++j) {
        int a = d.bottom_position(j);
        int b = d.bottom_position(2 * strands + 1 - j);
        d.partner_[a] = b;
        d.partner_[b] = a;
    }
    return d;
}

Diagram Diagram::nested_cup(int strands) {
    return nested_cap(strands).reflect_horizontal();
}

std::vector<Diagram> Diagram::enumerate(int top, int bottom) {
    if (top < 0 || bottom < 0) throw IndexOutOfRange("negative boundary count");
    if ((top + bottom) % 2 != 0) return {};
    check_strands(top + bottom);
    const int total = top + bottom;
    std::vector<Diagram> out;
    std::string parens(static_cast<size_t>(total), ' ');
    std::vector<int> open_stack;

    Diagram proto;
    proto.top_ = top;
    proto.bottom_ = bottom;
    proto.partner_.assign(static_cast<size_t>(total), -1);

    // Depth-first over balanced prefixes, '(' before ')': ascending
    // encoding order.
    auto rec = [&](auto&& self, int pos, int open) -> void {
        if (pos == total) {
            out.push_back(proto);
            return;
        }
        if (pos + open + 2 <= total) {
            open_stack.push_back(pos);
            self(self, pos + 1, open + 1);
            open_stack.pop_back();
        }
        if (open > 0) {
            int mate = open_stack.back();
            open_stack.pop_back();
            proto.partner_[pos] = mate;
            proto.partner_[mate] = pos;
            self(self, pos + 1, open - 1);
            open_stack.push_back(mate);
        }
    };
    if (total == 0) {
        out.push_back(proto);
    } else {
        rec(rec, 0, 0);
    }
    return out;
}

ComposeResult Diagram::compose(const Diagram& upper, const Diagram& lower) {
    if (upper.bottom_ != lower.top_)
        throw SignatureMismatch("cannot glue " + std::to_string(upper.bottom_) +
                                " bottom points to " + std::to_string(lower.top_) +
                                " top points");
    const int m = upper.top_;
    const int n = upper.bottom_;
    const int p = lower.bottom_;
    const int nu = upper.size();
    const int nl = lower.size();

    UnionFind uf(nu + nl);
    for (int x = 0; x < nu; ++x) uf.unite(x, upper.partner_[x]);
    for (int x = 0; x < nl; ++x) uf.unite(nu + x, nu + lower.partner_[x]);
    for (int i = 1; i <= n; ++i)
        uf.unite(upper.bottom_position(i), nu + lower.top_position(i));

    ComposeResult result;
    result.diagram.top_ = m;
    result.diagram.bottom_ = p;
    result.diagram.partner_.assign(static_cast<size_t>(m + p), -1);

    // Global node index of the result's boundary positions.
    auto node_of = [&](int position) {
        return position < p ? nu + position                  // lower's B_j
                            : n + (position - p);            // upper's T_k
    };
    std::vector<int> seen_root;
    std::vector<int> seen_pos;
    for (int pos = 0; pos < m + p; ++pos) {
        int root = uf.find(node_of(pos));
        bool matched = false;
        for (size_t j = 0; j < seen_root.size(); ++j) {
            if (seen_root[j] == root) {
                result.diagram.partner_[pos] = seen_pos[j];
                result.diagram.partner_[seen_pos[j]] = pos;
                seen_root.erase(seen_root.begin() + static_cast<long>(j));
                seen_pos.erase(seen_pos.begin() + static_cast<long>(j));
                matched = true;
                break;
            }
        }
        if (!matched) {
            seen_root.push_back(root);
            seen_pos.push_back(pos);
        }
    }

    int components = 0;
    for (int x = 0; x < nu + nl; ++x)
        if (uf.find(x) == x) ++components;
    result.loops = components - (m + p) / 2;
    return result;
}

Diagram Diagram::tensor(const Diagram& left, const Diagram& right) {
    check_strands(left.size() + right.size());
    Diagram d;
    d.top_ = left.top_ + right.top_;
    d.bottom_ = left.bottom_ + right.bottom_;
    d.partner_.assign(static_cast<size_t>(d.size()), -1);

    // Result position of each factor's circular position.
    auto map_left = [&](int x) {
        return x < left.bottom_ ? x                                     // B_j stays
                                : d.bottom_ + (x - left.bottom_) + right.top_;
    };
    auto map_right = [&](int x) {
        return x < right.bottom_ ? left.bottom_ + x                     // B_j shifts
                                 : d.bottom_ + (x - right.bottom_);
    };
    for (int x = 0; x < left.size(); ++x)
        d.partner_[map_left(x)] = map_left(left.partner_[x]);
    for (int x = 0; x < right.size(); ++x)
        d.partner_[map_right(x)] = map_right(right.partner_[x]);
    return d;
}

Diagram Diagram::rotate_pi() const {
    // A rotation of the boundary circle by bottom_ steps.
    Diagram d;
    d.top_ = bottom_;
    d.bottom_ = top_;
    d.partner_.assign(partner_.size(), -1);
    const int total = size();
    if (total == 0) return d;
    auto shift = [&](int x) { return (x + top_) % total; };
    for (int x = 0; x < total; ++x)
        d.partner_[shift(x)] = shift(partner_[x]);
    return d;
}

Diagram Diagram::reflect_horizontal() const {
    // Reversal of the boundary walk.
    Diagram d;
    d.top_ = bottom_;
    d.bottom_ = top_;
    d.partner_.assign(partner_.size(), -1);
    const int total = size();
    auto flip = [&](int x) { return total - 1 - x; };
    for (int x = 0; x < total; ++x)
        d.partner_[flip(x)] = flip(partner_[x]);
    return d;
}

Diagram Diagram::reflect_vertical() const {
    // The other reversal, fixing the top/bottom split.
    Diagram d;
    d.top_ = top_;
    d.bottom_ = bottom_;
    d.partner_.assign(partner_.size(), -1);
    const int total = size();
    if (total == 0) return d;
    auto flip = [&](int x) { return ((bottom_ - 1 - x) % total + total) % total; };
    for (int x = 0; x < total; ++x)
        d.partner_[flip(x)] = flip(partner_[x]);
    return d;
}

bool Diagram::operator<(const Diagram& o) const {
    if (top_ != o.top_) return top_ < o.top_;
    if (bottom_ != o.bottom_) return bottom_ < o.bottom_;
    for (int x = 0; x < size(); ++x) {
        bool a_open = partner_[x] > x;
        bool b_open = o.partner_[x] > x;
        if (a_open != b_open) return a_open;   // '(' sorts before ')'
    }
    return false;
}

std::string Diagram::encode() const {
    std::string out = std::to_string(top_) + ":" + std::to_string(bottom_) + ":";
    for (int x = 0; x < size(); ++x) out += partner_[x] > x ? '(' : ')';
    return out;
}

Diagram Diagram::decode(const std::string& text) {
    size_t c1 = text.find(':');
    size_t c2 = c1 == std::string::npos ? std::string::npos : text.find(':', c1 + 1);
    if (c2 == std::string::npos)
        throw ParseError("diagram encoding needs two ':' separators: " + text);
    int top = 0;
    int bottom = 0;
    try {
        size_t used = 0;
        top = std::stoi(text.substr(0, c1), &used);
        if (used != c1 || top < 0) throw std::invalid_argument("top");
        bottom = std::stoi(text.substr(c1 + 1, c2 - c1 - 1), &used);
        if (used != c2 - c1 - 1 || bottom < 0) throw std::invalid_argument("bottom");
    } catch (const std::exception&) {
        throw ParseError("bad boundary counts in diagram encoding: " + text);
    }
    const std::string parens = text.substr(c2 + 1);
    if (static_cast<int>(parens.size()) != top + bottom)
        throw ParseError("parenthesis string length " + std::to_string(parens.size()) +
                         " does not match " + std::to_string(top + bottom) +
                         " boundary points: " + text);
    Diagram d;
    d.top_ = top;
    d.bottom_ = bottom;
    d.partner_.assign(parens.size(), -1);
    std::vector<int> stack;
    for (size_t x = 0; x < parens.size(); ++x) {
        if (parens[x] == '(') {
            stack.push_back(static_cast<int>(x));
        } else if (parens[x] == ')') {
            if (stack.empty())
                throw NotPlanar("unmatched ')' at position " + std::to_string(x) +
                                ": " + text);
            d.partner_[x] = stack.back();
            d.partner_[static_cast<size_t>(stack.back())] = static_cast<int>(x);
            stack.pop_back();
        } else {
            throw ParseError("invalid character at position " + std::to_string(x) +
                             ": " + text);
        }
    }
    if (!stack.empty())
        throw NotPlanar("unmatched '(' at position " + std::to_string(stack.back()) +
                        ": " + text);
    return d;
}

} // namespace tlcat
