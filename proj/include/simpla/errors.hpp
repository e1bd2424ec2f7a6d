#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace simpla {

// Base class for everything this library throws on purpose, so callers can
// catch one type at the CLI boundary and turn it into a diagnostic + exit 2.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// --- syntax ---------------------------------------------------------------

struct SyntaxError : Error {
    SyntaxError(const std::string& what, std::size_t position)
        : Error(what + " (at offset " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// A knowledge operator was built over a body with free variables.  The body
// of K must be closed; the offending variable is reported.
struct FreeVariableUnderK : Error {
    FreeVariableUnderK(const std::string& var, std::size_t position)
        : Error("body of K has free variable '" + var + "'" +
                (position == npos ? std::string()
                                  : " (at offset " + std::to_string(position) + ")")),
          var(var), position(position) {}
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::string var;
    std::size_t position;
};

// phi[y/x] is only defined when x never occurs free inside a [y:=_] scope.
struct InadmissibleSubstitution : Error {
    using Error::Error;
};

// --- models / semantics ---------------------------------------------------

struct ModelError : Error {
    using Error::Error;
};

// Evaluation was requested with an assignment that misses a free variable.
struct UnmappedFreeVariable : Error {
    explicit UnmappedFreeVariable(const std::string& var)
        : Error("no binding for free variable '" + var + "'"), var(var) {}
    std::string var;
};

// Evaluation was requested at a point where some free variable is mapped to
// an agent that is not alive there.  This is a hard error by design: the
// satisfaction relations are simply not defined for inadmissible
// assignments, and silently returning false would hide bugs.
struct InadmissibleAssignment : Error {
    using Error::Error;
};

// A translation or quotient was asked of a Kripke model that lacks the
// required local-epistemic properties.
struct NotLocalEpistemic : Error {
    using Error::Error;
};

}  // namespace simpla
