#include "tlcat/diagram.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "doctest.h"
#include "tlcat/errors.hpp"

using tlcat::ComposeResult;
using tlcat::Diagram;

namespace {

const long kCatalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};

// Every perfect matching of `total` points as a partner array, crossings
// included; the independent reference for enumerate.
void all_matchings(std::vector<int>& partner, int total, std::vector<std::vector<int>>& out) {
    int first = -1;
    for (int x = 0; x < total; ++x) {
        if (partner[x] < 0) {
            first = x;
            break;
        }
    }
    if (first < 0) {
        out.push_back(partner);
        return;
    }
    for (int mate = first + 1; mate < total; ++mate) {
        if (partner[mate] >= 0) continue;
        partner[first] = mate;
        partner[mate] = first;
        all_matchings(partner, total, out);
        partner[first] = -1;
        partner[mate] = -1;
    }
}

bool noncrossing(const std::vector<int>& partner) {
    const int total = static_cast<int>(partner.size());
    for (int a = 0; a < total; ++a) {
        int b = partner[a];
        if (b < a) continue;
        for (int c = a + 1; c < b; ++c) {
            int d = partner[c];
            if (d < b && d > a) continue;
            return false;   // c inside (a,b) but d outside: interleaved
        }
    }
    return true;
}

std::vector<std::string> oracle_encodings(int top, int bottom) {
    const int total = top + bottom;
    std::vector<std::vector<int>> matchings;
    if (total % 2 == 0) {
        std::vector<int> partner(total, -1);
        all_matchings(partner, total, matchings);
    }
    std::vector<std::string> keys;
    for (const auto& m : matchings) {
        if (!noncrossing(m)) continue;
        std::string s = std::to_string(top) + ":" + std::to_string(bottom) + ":";
        for (int x = 0; x < total; ++x) s += m[x] > x ? '(' : ')';
        keys.push_back(std::move(s));
    }
    std::sort(keys.begin(), keys.end());
    return keys;
}

std::vector<std::string> encodings(const std::vector<Diagram>& ds) {
    std::vector<std::string> keys;
    for (const auto& d : ds) keys.push_back(d.encode());
    return keys;
}

} // namespace

TEST_CASE("enumerate matches the brute-force matching oracle") {
    for (auto [top, bottom] : std::vector<std::pair<int, int>>{
             {0, 0}, {0, 2}, {2, 0}, {1, 1}, {2, 2}, {1, 3}, {3, 3}, {4, 4}, {5, 3}, {0, 6}}) {
        auto got = encodings(Diagram::enumerate(top, bottom));
        auto want = oracle_encodings(top, bottom);
        CHECK(got == want);   // same set and already in ascending encoding order
    }
    CHECK(Diagram::enumerate(3, 3).size() == 5);
    CHECK(Diagram::enumerate(4, 4).size() == 14);
    CHECK(Diagram::enumerate(0, 0).size() == 1);
    CHECK(Diagram::enumerate(2, 1).empty());
}

TEST_CASE("enumerate counts are Catalan numbers") {
    for (int top = 0; top <= 12; ++top) {
        for (int bottom = 0; top + bottom <= 12; ++bottom) {
            auto ds = Diagram::enumerate(top, bottom);
            if ((top + bottom) % 2 != 0) {
                CHECK(ds.empty());
            } else {
                CHECK(static_cast<long>(ds.size()) == kCatalan[(top + bottom) / 2]);
            }
        }
    }
}

TEST_CASE("enumerate refuses oversized bases") {
    CHECK_THROWS_AS(Diagram::enumerate(17, 17), tlcat::SizeLimit);
    tlcat::set_strand_limit(4);
    CHECK_THROWS_AS(Diagram::enumerate(5, 5), tlcat::SizeLimit);
    tlcat::set_strand_limit(16);
    CHECK(Diagram::enumerate(5, 5).size() == 42);
}

TEST_CASE("special diagrams have the documented encodings") {
    CHECK(Diagram::identity(2).encode() == "2:2:(())");
    CHECK(Diagram::cap().encode() == "0:2:()");
    CHECK(Diagram::cup().encode() == "2:0:()");
    CHECK(Diagram::elementary(2, 1).encode() == "2:2:()()");
    CHECK(Diagram::nested_cap(2).encode() == "0:4:(())");
    CHECK(Diagram::nested_cup(2).encode() == "4:0:(())");
    CHECK(Diagram().encode() == "0:0:");

    // elementary(2,1) is the one non-identity diagram of K_2.
    auto k2 = Diagram::enumerate(2, 2);
    CHECK(k2.size() == 2);
    for (const auto& d : k2)
        CHECK((d == Diagram::identity(2) || d == Diagram::elementary(2, 1)));

    // elementary(4,2) keeps strands 1 and 4 vertical.
    Diagram h2 = Diagram::elementary(4, 2);
    CHECK(h2.connects(h2.bottom_position(1), h2.top_position(1)));
    CHECK(h2.connects(h2.bottom_position(4), h2.top_position(4)));
    CHECK(h2.connects(h2.bottom_position(2), h2.bottom_position(3)));
    auto k4 = Diagram::enumerate(4, 4);
    CHECK(std::find(k4.begin(), k4.end(), h2) != k4.end());
    CHECK(std::find(k4.begin(), k4.end(), Diagram::identity(4)) != k4.end());

    CHECK_THROWS_AS(Diagram::elementary(2, 0), tlcat::IndexOutOfRange);
    CHECK_THROWS_AS(Diagram::elementary(2, 2), tlcat::IndexOutOfRange);
    CHECK_THROWS_AS(Diagram::identity(-1), tlcat::IndexOutOfRange);
    CHECK_THROWS_AS(Diagram::identity(1).partner(2), tlcat::IndexOutOfRange);
}

TEST_CASE("composition glues strands and counts loops") {
    ComposeResult r = Diagram::compose(Diagram::cap(), Diagram::cup());
    CHECK(r.diagram == Diagram());
    CHECK(r.loops == 1);

    for (int n : {1, 2, 3}) {
        for (int p : {0, 1, 2, 3}) {
            if ((n + p) % 2 != 0) continue;
            for (const auto& d : Diagram::enumerate(n, p)) {
                ComposeResult left = Diagram::compose(Diagram::identity(n), d);
                CHECK(left.diagram == d);
                CHECK(left.loops == 0);
                ComposeResult right = Diagram::compose(d, Diagram::identity(p));
                CHECK(right.diagram == d);
                CHECK(right.loops == 0);
            }
        }
    }

    Diagram h1 = Diagram::elementary(2, 1);
    ComposeResult sq = Diagram::compose(h1, h1);
    CHECK(sq.diagram == h1);
    CHECK(sq.loops == 1);

    CHECK_THROWS_AS(Diagram::compose(Diagram::cap(), Diagram::identity(3)),
                    tlcat::SignatureMismatch);
}

TEST_CASE("elementary diagrams satisfy the Temperley-Lieb relations") {
    for (int n = 2; n <= 6; ++n) {
        for (int i = 1; i < n; ++i) {
            Diagram hi = Diagram::elementary(n, i);
            ComposeResult sq = Diagram::compose(hi, hi);
            CHECK(sq.diagram == hi);
            CHECK(sq.loops == 1);
            for (int j = 1; j < n; ++j) {
                Diagram hj = Diagram::elementary(n, j);
                if (std::abs(i - j) >= 2) {
                    ComposeResult ij = Diagram::compose(hi, hj);
                    ComposeResult ji = Diagram::compose(hj, hi);
                    CHECK(ij.diagram == ji.diagram);
                    CHECK(ij.loops == 0);
                    CHECK(ji.loops == 0);
                }
                if (std::abs(i - j) == 1) {
                    ComposeResult inner = Diagram::compose(hj, hi);
                    ComposeResult outer = Diagram::compose(hi, inner.diagram);
                    CHECK(outer.diagram == hi);
                    CHECK(inner.loops + outer.loops == 0);
                }
            }
        }
    }
}

TEST_CASE("composition outputs stay planar and canonical") {
    auto k3 = Diagram::enumerate(3, 3);
    for (const auto& c : k3) {
        for (const auto& d : k3) {
            Diagram out = Diagram::compose(c, d).diagram;
            CHECK(Diagram::decode(out.encode()) == out);
        }
    }
}

TEST_CASE("tensor juxtaposes factors") {
    CHECK(Diagram::tensor(Diagram::identity(1), Diagram::identity(1)) == Diagram::identity(2));
    CHECK(Diagram::tensor(Diagram::cap(), Diagram::cap()).encode() == "0:4:()()");
    CHECK(Diagram::tensor(Diagram::elementary(2, 1), Diagram::identity(1)) ==
          Diagram::elementary(3, 1));
    CHECK(Diagram::tensor(Diagram::identity(1), Diagram::elementary(2, 1)) ==
          Diagram::elementary(3, 2));

    auto k22 = Diagram::enumerate(2, 2);
    auto k13 = Diagram::enumerate(1, 3);
    for (const auto& a : k22) {
        CHECK(Diagram::tensor(a, Diagram()) == a);
        CHECK(Diagram::tensor(Diagram(), a) == a);
        for (const auto& b : k13) {
            for (const auto& c : k22) {
                CHECK(Diagram::tensor(Diagram::tensor(a, b), c) ==
                      Diagram::tensor(a, Diagram::tensor(b, c)));
            }
        }
    }

    tlcat::set_strand_limit(4);
    CHECK_THROWS_AS(Diagram::tensor(Diagram::identity(3), Diagram::identity(3)),
                    tlcat::SizeLimit);
    tlcat::set_strand_limit(16);
}

TEST_CASE("tensor and composition interchange with additive loops") {
    auto k2 = Diagram::enumerate(2, 2);
    for (const auto& a : k2)
        for (const auto& b : k2)
            for (const auto& c : k2)
                for (const auto& d : k2) {
                    ComposeResult ac = Diagram::compose(a, c);
                    ComposeResult bd = Diagram::compose(b, d);
                    ComposeResult joint =
                        Diagram::compose(Diagram::tensor(a, b), Diagram::tensor(c, d));
                    CHECK(joint.diagram == Diagram::tensor(ac.diagram, bd.diagram));
                    CHECK(joint.loops == ac.loops + bd.loops);
                }
}

TEST_CASE("rotation by pi transposes and reverses composition") {
    CHECK(Diagram::identity(3).rotate_pi() == Diagram::identity(3));
    for (int n = 2; n <= 5; ++n)
        for (int i = 1; i < n; ++i)
            CHECK(Diagram::elementary(n, i).rotate_pi() == Diagram::elementary(n, n - i));
    CHECK(Diagram::cap().rotate_pi() == Diagram::cup());

    auto k44 = Diagram::enumerate(4, 4);
    for (const auto& c : k44) {
        CHECK(c.rotate_pi().rotate_pi() == c);
        for (const auto& d : k44) {
            ComposeResult cd = Diagram::compose(c, d);
            ComposeResult flipped = Diagram::compose(d.rotate_pi(), c.rotate_pi());
            CHECK(flipped.diagram == cd.diagram.rotate_pi());
            CHECK(flipped.loops == cd.loops);
        }
    }
    auto k13 = Diagram::enumerate(1, 3);
    for (const auto& c : k13) {
        CHECK(c.rotate_pi().rotate_pi() == c);
        CHECK(c.rotate_pi().top_count() == 3);
        for (const auto& d : k13)
            CHECK(Diagram::tensor(c, d).rotate_pi() ==
                  Diagram::tensor(d.rotate_pi(), c.rotate_pi()));
    }
}

TEST_CASE("reflections are involutive and compose to the rotation") {
    CHECK(Diagram::cap().reflect_horizontal() == Diagram::cup());
    for (int n = 2; n <= 5; ++n)
        for (int i = 1; i < n; ++i) {
            CHECK(Diagram::elementary(n, i).reflect_horizontal() == Diagram::elementary(n, i));
            CHECK(Diagram::elementary(n, i).reflect_vertical() == Diagram::elementary(n, n - i));
        }
    for (auto [top, bottom] : std::vector<std::pair<int, int>>{{3, 3}, {1, 3}, {4, 2}, {0, 4}}) {
        for (const auto& d : Diagram::enumerate(top, bottom)) {
            CHECK(d.reflect_horizontal().reflect_horizontal() == d);
            CHECK(d.reflect_vertical().reflect_vertical() == d);
            CHECK(d.reflect_vertical().reflect_horizontal() == d.rotate_pi());
        }
    }
}

TEST_CASE("arc index is additive") {
    CHECK(Diagram::cap().arc_index() == 1);
    CHECK(Diagram::cup().arc_index() == -1);
    CHECK(Diagram::elementary(3, 1).arc_index() == 0);
    CHECK(Diagram::nested_cap(3).arc_index() == 3);

    auto k44 = Diagram::enumerate(4, 4);
    for (const auto& c : k44)
        for (const auto& d : k44)
            CHECK(Diagram::compose(c, d).diagram.arc_index() == c.arc_index() + d.arc_index());
    for (const auto& c : Diagram::enumerate(1, 3))
        for (const auto& d : Diagram::enumerate(4, 2)) {
            CHECK(Diagram::tensor(c, d).arc_index() == c.arc_index() + d.arc_index());
            CHECK(c.rotate_pi().arc_index() == -c.arc_index());
            CHECK(Diagram::compose(c.rotate_pi(), c).diagram.arc_index() == 0);
        }
}

TEST_CASE("dual snake equations hold with no loops") {
    for (int n : {1, 2, 3}) {
        Diagram idn = Diagram::identity(n);
        Diagram top_right = Diagram::tensor(idn, Diagram::nested_cap(n));
        Diagram bottom_right = Diagram::tensor(Diagram::nested_cup(n), idn);
        ComposeResult zig = Diagram::compose(top_right, bottom_right);
        CHECK(zig.diagram == idn);
        CHECK(zig.loops == 0);

        Diagram top_left = Diagram::tensor(Diagram::nested_cap(n), idn);
        Diagram bottom_left = Diagram::tensor(idn, Diagram::nested_cup(n));
        ComposeResult zag = Diagram::compose(top_left, bottom_left);
        CHECK(zag.diagram == idn);
        CHECK(zag.loops == 0);
    }
}

TEST_CASE("encode and decode are inverse") {
    for (auto [top, bottom] : std::vector<std::pair<int, int>>{{4, 4}, {1, 3}, {0, 6}, {0, 0}})
        for (const auto& d : Diagram::enumerate(top, bottom))
            CHECK(Diagram::decode(d.encode()) == d);

    CHECK(Diagram::decode("2:2:(())") == Diagram::identity(2));
    CHECK_THROWS_AS(Diagram::decode("22(())"), tlcat::ParseError);
    CHECK_THROWS_AS(Diagram::decode("x:2:()"), tlcat::ParseError);
    CHECK_THROWS_AS(Diagram::decode("2:2:()"), tlcat::ParseError);
    CHECK_THROWS_AS(Diagram::decode("2:2:(a))"), tlcat::ParseError);
    CHECK_THROWS_AS(Diagram::decode("2:2:))(("), tlcat::NotPlanar);
    CHECK_THROWS_AS(Diagram::decode("2:2:(((("), tlcat::NotPlanar);
}

TEST_CASE("diagram ordering is by boundary then encoding") {
    auto k33 = Diagram::enumerate(3, 3);
    for (size_t i = 0; i + 1 < k33.size(); ++i) {
        CHECK(k33[i] < k33[i + 1]);
        CHECK(k33[i].encode() < k33[i + 1].encode());
    }
    CHECK(Diagram::cap() < Diagram::identity(1));        // fewer top points first
    CHECK(!(Diagram::identity(2) < Diagram::identity(2)));
}
