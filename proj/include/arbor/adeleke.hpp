#pragma once

// The Adeleke Ω⁺ encoding: alternating sequences q1 w1 q2 ... qk with strictly
// decreasing rationals and letters from a finite alphabet excluding the two
// reserved letters. The order is upper semilinear: smaller means "extends
// downward", so least upper bounds play the role meets play in T_C.

#include <string>
#include <vector>

#include "arbor/base.hpp"

namespace arbor {

// Two reserved letters; never valid in a node.
inline constexpr char kAdelekeAlpha = 'a';
inline constexpr char kAdelekeBeta = 'b';

struct AdelekeNode {
    std::vector<Rat> rats;      // q1 > q2 > ... > qk, k >= 1
    std::vector<char> letters;  // size k-1, drawn from letters other than the reserved two

    bool well_formed() const;

    bool operator==(const AdelekeNode& o) const { return rats == o.rats && letters == o.letters; }
    bool operator!=(const AdelekeNode& o) const { return !(*this == o); }
    bool operator<(const AdelekeNode& o) const {  // structural key order only
        if (rats != o.rats) return rats < o.rats;
        return letters < o.letters;
    }
};

std::string format_adeleke(const AdelekeNode& n);  // "q1 w1 q2 ... qk"

// Order: x <= y iff y is an initial segment of x except that the last rational
// of y may dominate x's rational at that position.
bool adeleke_leq(const AdelekeNode& a, const AdelekeNode& b);

// Least upper bound; always exists.
AdelekeNode adeleke_meet_up(const AdelekeNode& a, const AdelekeNode& b);

}  // namespace arbor
