#include "arbor/adeleke.hpp"

namespace arbor {

bool AdelekeNode::well_formed() const {
    if (rats.empty() || letters.size() + 1 != rats.size()) return false;
    for (std::size_t i = 1; i < rats.size(); ++i)
        if (!(rats[i] < rats[i - 1])) return false;
    for (char w : letters)
        if (w == kAdelekeAlpha || w == kAdelekeBeta) return false;
    return true;
}

std::string format_adeleke(const AdelekeNode& n) {
    std::string out;
    for (std::size_t i = 0; i < n.rats.size(); ++i) {
        if (i) out += std::string(" ") + n.letters[i - 1] + " ";
        out += format_rat(n.rats[i]);
    }
    return out;
}

bool adeleke_leq(const AdelekeNode& a, const AdelekeNode& b) {
    // Longer sequences sit lower: b must be an initial segment of a, except
    // that b's last rational may exceed a's rational at that position.
    std::size_t l = b.rats.size();
    if (l > a.rats.size()) return false;
    for (std::size_t i = 0; i + 1 < l; ++i)
        if (a.rats[i] != b.rats[i] || a.letters[i] != b.letters[i]) return false;
    return a.rats[l - 1] <= b.rats[l - 1];
}

AdelekeNode adeleke_meet_up(const AdelekeNode& a, const AdelekeNode& b) {
    // Shared leading (rat, letter) pairs, then the larger rational at the
    // first divergence; if the letters diverge there, drop that rational too.
    AdelekeNode m;
    std::size_t n = std::min(a.rats.size(), b.rats.size());
    std::size_t i = 0;
    while (i < n && a.rats[i] == b.rats[i] &&
           (i + 1 >= a.rats.size() || i + 1 >= b.rats.size() || a.letters[i] == b.letters[i])) {
        ++i;
    }
    if (i < n && a.rats[i] == b.rats[i]) {
        // Same rational, different following letters: the lub ends here.
        m.rats.assign(a.rats.begin(), a.rats.begin() + i + 1);
        m.letters.assign(a.letters.begin(), a.letters.begin() + i);
        return m;
    }
    if (i == a.rats.size()) return a;  // a is an initial segment of b
    if (i == b.rats.size()) return b;
    m.rats.assign(a.rats.begin(), a.rats.begin() + i);
    m.letters.assign(a.letters.begin(), a.letters.begin() + i);
    m.rats.push_back(std::max(a.rats[i], b.rats[i]));
    return m;
}

}  // namespace arbor
