#include "doctest.h"

#include "arbor/ambient.hpp"

using namespace arbor;

namespace {

AmbientNode n(long long head, std::vector<std::pair<long long, long long>> tail) {
    AmbientNode out;
    out.head = Color(Rat(head));
    for (auto& [c, i] : tail) out.tail.emplace_back(Color(Rat(c)), i);
    return out;
}

}  // namespace

TEST_CASE("node text round-trips") {
    AmbientNode a = n(-3, {{-2, 1}, {-1, 4}});
    CHECK(parse_node(format_node(a)) == a);
    CHECK(format_node(n(-1, {})) == "-1");
    CHECK_THROWS_AS(parse_node("x"), Error);
}

TEST_CASE("tree order: reflexive, head drops, branch indices split") {
    CHECK(node_leq(n(0, {}), n(0, {})));
    CHECK(node_leq(n(-1, {}), n(0, {})));       // lower head is below
    CHECK_FALSE(node_leq(n(0, {}), n(-1, {})));
    CHECK(node_leq(n(0, {}), n(0, {{1, 5}})));  // prefix is below
    CHECK(node_leq(n(0, {{1, 5}}), n(0, {{2, 5}})));  // same branch, colour rises
    CHECK_FALSE(node_leq(n(0, {{1, 5}}), n(0, {{1, 6}})));  // different branches
    CHECK_FALSE(node_leq(n(0, {{1, 5}}), n(0, {{2, 6}})));
}

TEST_CASE("meets: frozen values") {
    CHECK(node_meet(n(0, {{1, 5}}), n(0, {{1, 6}})) == n(0, {}));
    CHECK(node_meet(n(0, {{2, 3}}), n(0, {{1, 3}})) == n(0, {{1, 3}}));
    CHECK(node_meet(n(-2, {{-1, 0}}), n(-3, {{-1, 0}})) == n(-3, {}));
    CHECK(node_meet(n(0, {{1, 5}, {3, 2}}), n(0, {{1, 5}, {2, 7}})) == n(0, {{1, 5}}));
}

TEST_CASE("meet is the greatest lower bound on an enumerated family") {
    std::vector<AmbientNode> fam{n(-3, {}), n(-2, {}), n(-2, {{-1, 0}}), n(-2, {{-1, 1}}),
                                 n(-3, {{-2, 0}}), n(-3, {{-2, 0}, {-1, 0}}), n(-3, {{-1, 0}}),
                                 n(-4, {})};
    for (const auto& a : fam)
        for (const auto& b : fam) {
            AmbientNode m = node_meet(a, b);
            CHECK(node_leq(m, a));
            CHECK(node_leq(m, b));
            for (const auto& c : fam)
                if (node_leq(c, a) && node_leq(c, b)) CHECK(node_leq(c, m));
        }
}

TEST_CASE("points below a node form a chain") {
    AmbientNode top = n(-3, {{-2, 0}, {-1, 2}});
    std::vector<AmbientNode> below;
    std::vector<AmbientNode> fam{n(-3, {}), n(-4, {}), n(-3, {{-2, 0}}), n(-3, {{-2, 1}}),
                                 n(-3, {{-2, 0}, {-1, 2}}), n(-3, {{-2, 0}, {-1, 1}})};
    for (const auto& a : fam)
        if (node_leq(a, top)) below.push_back(a);
    CHECK(below.size() == 4);
    for (const auto& a : below)
        for (const auto& b : below) CHECK((node_leq(a, b) || node_leq(b, a)));
}

TEST_CASE("raise, branch, ancestor_at") {
    AmbientNode a = n(-5, {});
    AmbientNode b = branch(a, Color(Rat(-3)), 2);
    CHECK(b == n(-5, {{-3, 2}}));
    CHECK(node_lt(a, b));
    CHECK(raise(b, Color(Rat(-1))) == n(-5, {{-1, 2}}));
    CHECK(ancestor_at(b, Color(Rat(-4))) == n(-5, {{-4, 2}}));
    CHECK(ancestor_at(b, Color(Rat(-6))) == n(-6, {}));
    CHECK(ancestor_at(n(-5, {{-3, 2}, {-1, 0}}), Color(Rat(-2))) == n(-5, {{-3, 2}, {-2, 0}}));
    CHECK_THROWS_AS(branch(a, Color(Rat(-6)), 0), Error);
    CHECK_THROWS_AS(ancestor_at(a, Color(Rat(-5))), Error);
}

TEST_CASE("meet closure detection") {
    CHECK(is_meet_closed({n(-2, {}), n(-2, {{-1, 0}}), n(-2, {{-1, 1}})}));
    CHECK_FALSE(is_meet_closed({n(-2, {{-1, 0}}), n(-2, {{-1, 1}})}));
}

TEST_CASE("max branch index") {
    CHECK(max_branch_index(n(-3, {})) == 0);
    CHECK(max_branch_index(n(-3, {{-2, 4}, {-1, 2}})) == 4);
}
