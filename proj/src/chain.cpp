#include "arbor/chain.hpp"

#include <algorithm>
#include <sstream>

namespace arbor {

bool Color::operator<(const Color& o) const {
    return std::lexicographical_compare(parts.begin(), parts.end(), o.parts.begin(),
                                        o.parts.end());
}

std::string format_color(const Color& c) {
    std::string out;
    for (std::size_t i = 0; i < c.parts.size(); ++i) {
        if (i) out += ";";
        out += format_rat(c.parts[i]);
    }
    return out;
}

Color parse_color(const std::string& s) {
    if (s.empty()) fail(Err::parse, "empty colour");
    Color c;
    std::size_t start = 0;
    while (true) {
        std::size_t semi = s.find(';', start);
        c.parts.push_back(parse_rat(s.substr(start, semi - start)));
        if (semi == std::string::npos) break;
        start = semi + 1;
    }
    return c;
}

bool ColorChain::valid_color(const Color& c) const {
    if (c.parts.size() != arity()) return false;
    switch (preset) {
        case Preset::OmegaStar:
            return c.parts[0].denominator() == 1 && c.parts[0].numerator() < 0;
        case Preset::Rationals:
            return true;
        case Preset::Lex:
            for (std::size_t i = 0; i < word.size(); ++i)
                if (word[i] == 'Z' && c.parts[i].denominator() != 1) return false;
            return true;
    }
    return false;
}

void ColorChain::require_color(const Color& c) const {
    if (!valid_color(c))
        fail(Err::validate, "colour " + format_color(c) + " not in chain " + token());
}

std::string ColorChain::token() const {
    switch (preset) {
        case Preset::OmegaStar: return "omega-star";
        case Preset::Rationals: return "rationals";
        case Preset::Lex: return "lex:" + word;
    }
    return "omega-star";
}

ColorChain ColorChain::from_token(const std::string& tok) {
    if (tok == "omega-star") return {Preset::OmegaStar, ""};
    if (tok == "rationals") return {Preset::Rationals, ""};
    if (tok.rfind("lex:", 0) == 0) {
        std::string w = tok.substr(4);
        if (w.empty()) fail(Err::parse, "empty lex word");
        for (char c : w)
            if (c != 'Z' && c != 'Q') fail(Err::parse, "lex word letters must be Z or Q");
        return {Preset::Lex, w};
    }
    fail(Err::parse, "unknown chain preset '" + tok + "'");
}

Color color_below(const ColorChain& chain, const std::vector<Color>& colours) {
    if (colours.empty()) fail(Err::domain, "color_below of empty set");
    Color m = *std::min_element(colours.begin(), colours.end());
    m.parts.back() -= 1;
    chain.require_color(m);
    return m;
}

}  // namespace arbor
