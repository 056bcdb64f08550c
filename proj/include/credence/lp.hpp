#pragma once

#include "credence/rational.hpp"

#include <string>
#include <vector>

// Exact dense two-phase simplex over GMP rationals. Problems here have at
// most a few dozen variables and a few hundred rows, so a dense tableau with
// Bland's rule is both fast enough and immune to cycling.
namespace credence::lp {

enum class Sense { LessEq, GreaterEq, Equal };

struct Constraint {
    std::vector<Rational> coeffs;  // one per variable
    Sense sense = Sense::LessEq;
    Rational rhs;
};

// All variables are implicitly >= 0.
struct Problem {
    int variables = 0;
    std::vector<Constraint> constraints;
    std::vector<Rational> objective;  // empty means pure feasibility
    bool maximize = true;

    // Appends a row; coefficients beyond `coeffs.size()` are zero.
    void add(std::vector<Rational> coeffs, Sense sense, Rational rhs);
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
    Status status = Status::Infeasible;
    Rational value;
    std::vector<Rational> x;
};

Solution solve(const Problem& problem);

// True when x satisfies every row of the problem and is nonnegative.
bool satisfies(const Problem& problem, const std::vector<Rational>& x);

}  // namespace credence::lp
