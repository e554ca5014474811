#pragma once

// Shared basics: error type, exact rational scalars, id syntax rules.

#include <boost/rational.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace arbor {

// Machine-readable error codes; the CLI maps these onto its exit-code and
// "ERR <code>:" contract.
enum class Err {
    parse,      // malformed textual input
    validate,   // structural invariant violated
    domain,     // argument outside an operation's precondition
    internal,   // invariant the library itself should have maintained
};

inline const char* err_code(Err e) {
    switch (e) {
        case Err::parse: return "parse";
        case Err::validate: return "validate";
        case Err::domain: return "domain";
        case Err::internal: return "internal";
    }
    return "internal";
}

class Error : public std::runtime_error {
  public:
    Error(Err code, const std::string& msg) : std::runtime_error(msg), code_(code) {}
    Err code() const { return code_; }

  private:
    Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

// Exact rational scalar. Floating point is banned throughout: every ordering
// decision in the library must be exact.
using Rat = boost::rational<long long>;

std::string format_rat(const Rat& r);   // "p" or "p/q", q > 0
Rat parse_rat(const std::string& s);

// Vertex/element ids: non-empty, free of characters the TOB syntax reserves.
bool valid_id(const std::string& id);

// Fresh ids minted by constructions use this reserved prefix plus a counter,
// so they can never collide with user-supplied ids.
inline const std::string kFreshPrefix = "•";  // "•"

}  // namespace arbor
