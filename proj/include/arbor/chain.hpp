#pragma once

// Colour chains: the linear order C of level labels, with no least element.
// Three presets: OmegaStar (negative integers), Rationals, and LexProduct
// (tuples over a word of Z/Q factors, ordered lexicographically).

#include <string>
#include <vector>

#include "arbor/base.hpp"

namespace arbor {

// A colour is a tuple of exact rationals; presets of arity 1 use a single part.
struct Color {
    std::vector<Rat> parts;

    Color() = default;
    explicit Color(Rat single) : parts{single} {}
    explicit Color(std::vector<Rat> p) : parts(std::move(p)) {}

    bool operator==(const Color& o) const { return parts == o.parts; }
    bool operator!=(const Color& o) const { return !(*this == o); }
    // Lexicographic order (total for equal arity).
    bool operator<(const Color& o) const;
    bool operator<=(const Color& o) const { return *this == o || *this < o; }
};

std::string format_color(const Color& c);        // parts joined with ';'
Color parse_color(const std::string& s);

enum class Preset { OmegaStar, Rationals, Lex };

struct ColorChain {
    Preset preset = Preset::OmegaStar;
    std::string word;  // for Lex: letters 'Z'/'Q', length = tuple arity

    std::size_t arity() const { return preset == Preset::Lex ? word.size() : 1; }

    bool operator==(const ColorChain& o) const {
        return preset == o.preset && (preset != Preset::Lex || word == o.word);
    }
    bool operator!=(const ColorChain& o) const { return !(*this == o); }

    // Membership of a colour in the chain (arity, integrality, sign constraints).
    bool valid_color(const Color& c) const;
    void require_color(const Color& c) const;

    // Textual preset token: "omega-star", "rationals", "lex:<word>".
    std::string token() const;
    static ColorChain from_token(const std::string& tok);
};

// A colour strictly below every member of a non-empty set. Deterministic rule:
// min minus one (on the final coordinate for Lex presets).
Color color_below(const ColorChain& chain, const std::vector<Color>& colours);

}  // namespace arbor
