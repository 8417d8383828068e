#ifndef BOOSTDIFF_ERRORS_HPP
#define BOOSTDIFF_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace boostdiff {

/// Argument outside the mathematical domain of an operation.
class domain_error : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed user input: duplicate indices, non-finite samples, parse failures.
class input_error : public std::invalid_argument {
public:
    explicit input_error(const std::string& what, long line = -1)
        : std::invalid_argument(what), line_(line) {}

    /// 1-based line number for file parse errors, -1 otherwise.
    long line() const { return line_; }

private:
    long line_;
};

/// Result not representable in double precision.
class overflow_error : public std::overflow_error {
public:
    overflow_error(const std::string& what, double growth_exponent)
        : std::overflow_error(what), growth_exponent_(growth_exponent) {}

    /// Natural-log estimate of the magnitude that tripped the guard.
    double growth_exponent() const { return growth_exponent_; }

private:
    double growth_exponent_;
};

/// A quadrature did not reach its declared tolerance.
class accuracy_error : public std::runtime_error {
public:
    accuracy_error(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_(achieved) {}

    double achieved() const { return achieved_; }

private:
    double achieved_;
};

/// An internal cross-check failed (e.g. a real integral came out complex).
class consistency_error : public std::runtime_error {
public:
    consistency_error(const std::string& what, double residue)
        : std::runtime_error(what), residue_(residue) {}

    double residue() const { return residue_; }

private:
    double residue_;
};

/// Time step violates the characteristic (CFL) limit.
class stability_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace boostdiff

#endif
