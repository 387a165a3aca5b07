#ifndef ZETAPAIR_ERRORS_HPP
#define ZETAPAIR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zetapair {

// Height below the supported evaluation range of the asymptotic series.
struct DomainTooSmall : std::domain_error {
    explicit DomainTooSmall(double t)
        : std::domain_error("height t=" + std::to_string(t) +
                            " below supported range (t >= 10)"), t(t) {}
    double t;
};

// A Gram block whose sign-change count could not be reconciled with the
// expected zero count at maximum subdivision depth.
struct UnresolvedBlock : std::runtime_error {
    UnresolvedBlock(double t_lo, double t_hi, long expected, long found)
        : std::runtime_error("unresolved Gram block [" + std::to_string(t_lo) +
                             ", " + std::to_string(t_hi) + "]: expected " +
                             std::to_string(expected) + " zeros, found " +
                             std::to_string(found)),
          t_lo(t_lo), t_hi(t_hi), expected(expected), found(found) {}
    double t_lo, t_hi;
    long expected, found;
};

// Query past the certified completeness height of a ZeroSet.
struct RangeBeyondCertified : std::out_of_range {
    RangeBeyondCertified(double requested, double certified)
        : std::out_of_range("requested height " + std::to_string(requested) +
                            " beyond certified t_max " + std::to_string(certified)),
          requested(requested), certified(certified) {}
    double requested, certified;
};

struct ParseError : std::runtime_error {
    ParseError(long line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what),
          line(line) {}
    long line;
};

struct MonotonicityError : std::runtime_error {
    explicit MonotonicityError(long line)
        : std::runtime_error("line " + std::to_string(line) +
                             ": ordinate smaller than its predecessor"),
          line(line) {}
    long line;
};

struct InvalidSpec : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct Infeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InsufficientBins : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct ZeroKNotAllowed : std::invalid_argument {
    ZeroKNotAllowed() : std::invalid_argument("k = 0 has no off-diagonal prediction") {}
};

} // namespace zetapair

#endif
