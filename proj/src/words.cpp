#include "tlcat/words.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "tlcat/errors.hpp"

namespace tlcat {

namespace {

void check_letters(const Word& w) {
    for (int letter : w.letters)
        if (letter < 1 || letter >= w.strand_count)
            throw IndexOutOfRange("generator index " + std::to_string(letter) +
                                  " out of range on " + std::to_string(w.strand_count) +
                                  " strands");
}

void check_blocks(const NormalForm& nf) {
    if (nf.d_exponent < 0) throw ParseError("negative loop exponent");
    int prev_i = 0;
    int prev_j = 0;
    for (const Block& b : nf.blocks) {
        if (b.j < 1 || b.i >= nf.strand_count || b.i < b.j)
            throw IndexOutOfRange("block (" + std::to_string(b.i) + ".." +
                                  std::to_string(b.j) + ") out of range on " +
                                  std::to_string(nf.strand_count) + " strands");
        if (b.i <= prev_i || b.j <= prev_j)
            throw ParseError("block indices must increase");
        prev_i = b.i;
        prev_j = b.j;
    }
}

void skip_ws(const std::string& text, size_t& pos) {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
}

int parse_int(const std::string& text, size_t& pos) {
    skip_ws(text, pos);
    size_t start = pos;
    if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(text[start]))))
        throw ParseError("expected an integer in '" + text + "'");
    return std::stoi(text.substr(start, pos - start));
}

void expect(const std::string& text, size_t& pos, const std::string& token) {
    skip_ws(text, pos);
    if (text.compare(pos, token.size(), token) != 0)
        throw ParseError("expected '" + token + "' in '" + text + "'");
    pos += token.size();
}

} // namespace

std::string Word::str() const {
    std::ostringstream out;
    out << strand_count << ':';
    for (int letter : letters) out << ' ' << letter;
    return out.str();
}

Word Word::parse(const std::string& text) {
    size_t pos = 0;
    Word w;
    w.strand_count = parse_int(text, pos);
    if (w.strand_count < 0) throw ParseError("negative strand count");
    expect(text, pos, ":");
    skip_ws(text, pos);
    while (pos < text.size()) {
        w.letters.push_back(parse_int(text, pos));
        skip_ws(text, pos);
    }
    check_letters(w);
    return w;
}

Word NormalForm::flatten() const {
    Word w;
    w.strand_count = strand_count;
    for (const Block& b : blocks)
        for (int letter = b.i; letter >= b.j; --letter) w.letters.push_back(letter);
    return w;
}

std::string NormalForm::str() const {
    std::ostringstream out;
    out << strand_count << ": d^" << d_exponent << ';';
    if (!blocks.empty()) {
        out << ' ';
        for (const Block& b : blocks) out << '(' << b.i << ".." << b.j << ')';
    }
    return out.str();
}

NormalForm NormalForm::parse(const std::string& text) {
    size_t pos = 0;
    NormalForm nf;
    nf.strand_count = parse_int(text, pos);
    if (nf.strand_count < 0) throw ParseError("negative strand count");
    expect(text, pos, ":");
    expect(text, pos, "d^");
    nf.d_exponent = parse_int(text, pos);
    expect(text, pos, ";");
    skip_ws(text, pos);
    while (pos < text.size()) {
        expect(text, pos, "(");
        Block b;
        b.i = parse_int(text, pos);
        expect(text, pos, "..");
        b.j = parse_int(text, pos);
        expect(text, pos, ")");
        nf.blocks.push_back(b);
        skip_ws(text, pos);
    }
    check_blocks(nf);
    return nf;
}

ComposeResult word_to_diagram(const Word& w) {
    check_letters(w);
    ComposeResult acc{Diagram::identity(w.strand_count), 0};
    for (int letter : w.letters) {
        ComposeResult step =
            Diagram::compose(acc.diagram, Diagram::elementary(w.strand_count, letter));
        acc.diagram = step.diagram;
        acc.loops += step.loops;
    }
    return acc;
}

Morphism word_to_morphism(const Word& w, const ScalarBackend& backend) {
    return word_to_morphism(w, backend, backend.d());
}

Morphism word_to_morphism(const Word& w, const ScalarBackend& backend, const Scalar& d) {
    check_letters(w);
    Morphism acc = Morphism::identity(w.strand_count, backend, d);
    for (int letter : w.letters)
        acc = Morphism::compose(acc, Morphism::elementary_h(w.strand_count, letter, backend, d));
    return acc;
}

NormalForm normal_form(const Word& w) {
    ComposeResult value = word_to_diagram(w);
    NormalForm nf = diagram_to_reduced(value.diagram);
    nf.d_exponent = value.loops;
    return nf;
}

std::vector<NormalForm> enumerate_reduced(int n) {
    if (n < 0 || n > strand_limit())
        throw SizeLimit("strand count " + std::to_string(n) + " exceeds limit " +
                        std::to_string(strand_limit()));
    std::vector<std::vector<Block>> all;
    std::vector<Block> current;
    // Every extension keeps both index sequences strictly increasing.
    auto extend = [&](auto&& self, int min_i, int min_j) -> void {
        all.push_back(current);
        for (int i = min_i; i < n; ++i)
            for (int j = min_j; j <= i; ++j) {
                current.push_back({i, j});
                self(self, i + 1, j + 1);
                current.pop_back();
            }
    };
    extend(extend, 1, 1);
    std::sort(all.begin(), all.end(),
              [](const std::vector<Block>& a, const std::vector<Block>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  for (size_t t = 0; t < a.size(); ++t) {
                      if (a[t].i != b[t].i) return a[t].i < b[t].i;
                      if (a[t].j != b[t].j) return a[t].j > b[t].j;
                  }
                  return false;
              });
    std::vector<NormalForm> forms;
    forms.reserve(all.size());
    for (auto& blocks : all) forms.push_back({n, 0, std::move(blocks)});
    return forms;
}

Diagram reduced_to_diagram(const NormalForm& nf) {
    check_blocks(nf);
    return word_to_diagram(nf.flatten()).diagram;
}

NormalForm diagram_to_reduced(const Diagram& diagram) {
    if (diagram.top_count() != diagram.bottom_count())
        throw NotEndomorphism("normal forms exist for equal strand counts only, got " +
                              std::to_string(diagram.top_count()) + " and " +
                              std::to_string(diagram.bottom_count()));
    const int n = diagram.top_count();
    // Circular positions: bottom point a sits at a-1, top point k at 2n-k.
    auto bpos = [&](int a) { return a - 1; };
    auto tpos = [&](int k) { return 2 * n - k; };
    std::vector<int> part(static_cast<size_t>(2 * n));
    for (int x = 0; x < 2 * n; ++x) part[static_cast<size_t>(x)] = diagram.partner(x);

    std::vector<Block> blocks;
    int prev_i = n;
    for (;;) {
        // Largest strand that is not a vertical through strand. Everything to
        // its right is untouched, so the final run starts one step below it.
        int i = 0;
        for (int m = n; m >= 1; --m)
            if (part[static_cast<size_t>(bpos(m))] != tpos(m)) {
                i = m - 1;
                break;
            }
        if (i == 0) break;
        // The final run ends at the rightmost adjacent bottom cap.
        int j = 0;
        for (int a = n - 1; a >= 1; --a)
            if (part[static_cast<size_t>(bpos(a))] == bpos(a + 1)) {
                j = a;
                break;
            }
        if (j < 1 || j > i || i >= prev_i) throw Error("run extraction went out of order");
        prev_i = i;
        blocks.push_back({i, j});

        // Peel the run off the bottom. Its cap is the pair (j, j+1); the
        // remainder keeps strand i+1 vertical, which pins where the strand
        // through the run's cup must be cut in two.
        int y = tpos(i + 1);
        int x = part[static_cast<size_t>(y)];
        auto remap = [&](int pos) {
            if (pos >= n) return pos;
            int a = pos + 1;
            return bpos(a <= i + 1 && a >= j + 2 ? a - 2 : a);
        };
        std::vector<int> next(static_cast<size_t>(2 * n), -1);
        auto link = [&](int u, int v) {
            next[static_cast<size_t>(u)] = v;
            next[static_cast<size_t>(v)] = u;
        };
        for (int u = 0; u < 2 * n; ++u) {
            int v = part[static_cast<size_t>(u)];
            if (u > v) continue;
            if (u == bpos(j) && v == bpos(j + 1)) continue;
            if (u == std::min(x, y) && v == std::max(x, y)) continue;
            link(remap(u), remap(v));
        }
        link(remap(x), bpos(i));
        link(bpos(i + 1), tpos(i + 1));
        part = std::move(next);
    }
    std::reverse(blocks.begin(), blocks.end());
    return {n, 0, std::move(blocks)};
}

} // namespace tlcat
