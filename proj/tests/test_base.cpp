#include "doctest.h"

#include "arbor/adeleke.hpp"
#include "arbor/chain.hpp"

using namespace arbor;

TEST_CASE("rational formatting round-trips and is exact") {
    CHECK(format_rat(Rat(3)) == "3");
    CHECK(format_rat(Rat(-7, 2)) == "-7/2");
    CHECK(parse_rat("-7/2") == Rat(-7, 2));
    CHECK(parse_rat("6/4") == Rat(3, 2));
    CHECK(parse_rat(format_rat(Rat(1, 3) + Rat(1, 6))) == Rat(1, 2));
    CHECK_THROWS_AS(parse_rat("1.5"), Error);
    CHECK_THROWS_AS(parse_rat("1/0"), Error);
    CHECK_THROWS_AS(parse_rat(""), Error);
}

TEST_CASE("id syntax excludes whitespace and reserved characters") {
    CHECK(valid_id("a"));
    CHECK(valid_id("x1"));
    CHECK(valid_id("•r1"));
    CHECK_FALSE(valid_id(""));
    CHECK_FALSE(valid_id("a b"));
    CHECK_FALSE(valid_id("a-b"));
    CHECK_FALSE(valid_id("a:b"));
    CHECK_FALSE(valid_id("(a"));
    CHECK_FALSE(valid_id("a|b"));
}

TEST_CASE("colour chains: membership and tokens") {
    ColorChain os{Preset::OmegaStar, ""};
    CHECK(os.valid_color(Color(Rat(-1))));
    CHECK_FALSE(os.valid_color(Color(Rat(0))));
    CHECK_FALSE(os.valid_color(Color(Rat(-1, 2))));
    CHECK(os.token() == "omega-star");
    CHECK(ColorChain::from_token("omega-star") == os);

    ColorChain q{Preset::Rationals, ""};
    CHECK(q.valid_color(Color(Rat(7, 3))));
    CHECK(q.token() == "rationals");

    ColorChain lex = ColorChain::from_token("lex:ZQ");
    CHECK(lex.arity() == 2);
    CHECK(lex.valid_color(Color(std::vector<Rat>{Rat(3), Rat(1, 2)})));
    CHECK_FALSE(lex.valid_color(Color(std::vector<Rat>{Rat(1, 2), Rat(1, 2)})));
    CHECK_FALSE(lex.valid_color(Color(Rat(1))));
    CHECK_THROWS_AS(ColorChain::from_token("nope"), Error);
}

TEST_CASE("color_below is a strict lower bound") {
    ColorChain os{Preset::OmegaStar, ""};
    Color b = color_below(os, {Color(Rat(-3)), Color(Rat(-1))});
    CHECK(os.valid_color(b));
    CHECK(b < Color(Rat(-3)));
    CHECK(b == Color(Rat(-4)));
}

TEST_CASE("upper semilinear encoding: order and least upper bounds") {
    auto mk = [](std::vector<Rat> rs, std::vector<char> ws) {
        AdelekeNode n;
        n.rats = std::move(rs);
        n.letters = std::move(ws);
        return n;
    };
    AdelekeNode a = mk({Rat(5)}, {});
    AdelekeNode b = mk({Rat(5), Rat(3)}, {'c'});
    AdelekeNode c = mk({Rat(5), Rat(2)}, {'c'});
    CHECK(a.well_formed());
    CHECK(b.well_formed());
    CHECK_FALSE(mk({Rat(3), Rat(5)}, {'c'}).well_formed());
    CHECK_FALSE(mk({Rat(5), Rat(3)}, {kAdelekeAlpha}).well_formed());

    // Longer sequences extend downward: b < a.
    CHECK(adeleke_leq(b, a));
    CHECK_FALSE(adeleke_leq(a, b));
    // b and c differ only in the final rational; the larger dominates.
    CHECK(adeleke_leq(c, b));

    // The least upper bound is an upper bound and below sampled upper bounds.
    std::vector<AdelekeNode> sample{a, b, c, mk({Rat(6)}, {}), mk({Rat(5), Rat(4)}, {'c'}),
                                    mk({Rat(5), Rat(3)}, {'d'})};
    for (const auto& x : sample)
        for (const auto& y : sample) {
            AdelekeNode lub = adeleke_meet_up(x, y);
            CHECK(adeleke_leq(x, lub));
            CHECK(adeleke_leq(y, lub));
            for (const auto& z : sample)
                if (adeleke_leq(x, z) && adeleke_leq(y, z)) CHECK(adeleke_leq(lub, z));
        }
}
