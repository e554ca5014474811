#include "arbor/base.hpp"

#include <cctype>

namespace arbor {

std::string format_rat(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

Rat parse_rat(const std::string& s) {
    auto bad = [&]() -> Rat { fail(Err::parse, "bad rational '" + s + "'"); };
    std::size_t slash = s.find('/');
    auto parse_ll = [&](const std::string& part) {
        if (part.empty()) bad();
        std::size_t i = part[0] == '-' ? 1 : 0;
        if (i == part.size()) bad();
        for (; i < part.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(part[i]))) bad();
        try {
            return std::stoll(part);
        } catch (const std::exception&) {
            bad();
        }
        return 0LL;  // unreachable
    };
    long long num = parse_ll(slash == std::string::npos ? s : s.substr(0, slash));
    long long den = 1;
    if (slash != std::string::npos) {
        den = parse_ll(s.substr(slash + 1));
        if (den <= 0) bad();
    }
    return Rat(num, den);
}

bool valid_id(const std::string& id) {
    if (id.empty()) return false;
    for (char c : id) {
        if (std::isspace(static_cast<unsigned char>(c))) return false;
        if (c == '-' || c == ':' || c == '(' || c == ')' || c == '|') return false;
    }
    return true;
}

}  // namespace arbor
