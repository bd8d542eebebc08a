#pragma once

#include <stdexcept>
#include <string>

namespace ldpcw {

// Error categories. The CLI maps these onto distinct diagnostic prefixes
// (PARSE/, DOMAIN/, BUDGET/) and exit codes.

// Malformed input files (alist, exponent files, CSV).
struct parse_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Arguments outside an operation's domain (divisibility, ranges, bad flags).
struct domain_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A search or enumeration exceeded its configured cap or ran out of
// candidates before satisfying the request.
struct budget_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace ldpcw
