#include "credence/lp.hpp"

#include "credence/errors.hpp"

#include <optional>

namespace credence::lp {

void Problem::add(std::vector<Rational> coeffs, Sense sense, Rational rhs) {
    if (static_cast<int>(coeffs.size()) > variables) {
        throw Error(ErrorCode::BadParams, "constraint has more coefficients than variables");
    }
    coeffs.resize(variables);
    constraints.push_back({std::move(coeffs), sense, std::move(rhs)});
}

namespace {

// Tableau rows hold B^-1 A | B^-1 b. `cost` holds reduced costs for a
// maximization, with the current objective value negated in the last slot.
struct Tableau {
    int rows = 0;
    int cols = 0;  // excluding rhs
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> cost;
    std::vector<int> basis;

    void pivot(int r, int c) {
        Rational inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || a[i][c] == 0) continue;
            Rational f = a[i][c];
            for (int j = 0; j <= cols; ++j) {
                if (a[r][j] != 0) a[i][j] -= f * a[r][j];
            }
        }
        if (cost[c] != 0) {
            Rational f = cost[c];
            for (int j = 0; j <= cols; ++j) {
                if (a[r][j] != 0) cost[j] -= f * a[r][j];
            }
        }
        basis[r] = c;
    }

    // Blocks columns >= limit from entering. Returns false when unbounded.
    bool optimize(int limit) {
        for (;;) {
            int enter = -1;
            for (int j = 0; j < limit; ++j) {
                if (cost[j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            Rational best;
            for (int i = 0; i < rows; ++i) {
                if (a[i][enter] <= 0) continue;
                Rational ratio = a[i][cols] / a[i][enter];
                if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void set_objective(const std::vector<Rational>& c) {
        cost.assign(cols + 1, 0);
        for (std::size_t j = 0; j < c.size(); ++j) cost[j] = c[j];
        for (int i = 0; i < rows; ++i) {
            Rational cb = basis[i] < static_cast<int>(c.size()) ? c[basis[i]] : Rational(0);
            if (cb == 0) continue;
            for (int j = 0; j <= cols; ++j) cost[j] -= cb * a[i][j];
        }
    }
};

}  // namespace

Solution solve(const Problem& problem) {
    const int n = problem.variables;
    const int m = static_cast<int>(problem.constraints.size());

    int slacks = 0, artificials = 0;
    for (const auto& c : problem.constraints) {
        bool flip = c.rhs < 0;
        Sense s = c.sense;
        if (flip && s != Sense::Equal) s = s == Sense::LessEq ? Sense::GreaterEq : Sense::LessEq;
        if (s != Sense::Equal) ++slacks;
        if (s != Sense::LessEq) ++artificials;
    }

    Tableau t;
    t.rows = m;
    t.cols = n + slacks + artificials;
    t.a.assign(m, std::vector<Rational>(t.cols + 1));
    t.basis.assign(m, -1);
    int next_slack = n, next_art = n + slacks;
    for (int i = 0; i < m; ++i) {
        const auto& c = problem.constraints[i];
        bool flip = c.rhs < 0;
        Sense s = c.sense;
        if (flip && s != Sense::Equal) s = s == Sense::LessEq ? Sense::GreaterEq : Sense::LessEq;
        for (int j = 0; j < n; ++j) t.a[i][j] = flip ? Rational(-c.coeffs[j]) : c.coeffs[j];
        t.a[i][t.cols] = flip ? Rational(-c.rhs) : c.rhs;
        if (s == Sense::LessEq) {
            t.a[i][next_slack] = 1;
            t.basis[i] = next_slack++;
        } else if (s == Sense::GreaterEq) {
            t.a[i][next_slack++] = -1;
            t.a[i][next_art] = 1;
            t.basis[i] = next_art++;
        } else {
            t.a[i][next_art] = 1;
            t.basis[i] = next_art++;
        }
    }

    const int first_art = n + slacks;
    if (artificials > 0) {
        std::vector<Rational> phase1(t.cols, 0);
        for (int j = first_art; j < t.cols; ++j) phase1[j] = -1;
        t.set_objective(phase1);
        t.optimize(t.cols);
        if (t.cost[t.cols] != 0) return Solution{Status::Infeasible, 0, {}};
        // Drive remaining zero-level artificials out of the basis, dropping
        // rows that turn out to be redundant.
        for (int i = 0; i < t.rows; ++i) {
            if (t.basis[i] < first_art) continue;
            int c = -1;
            for (int j = 0; j < first_art; ++j) {
                if (t.a[i][j] != 0) {
                    c = j;
                    break;
                }
            }
            if (c >= 0) {
                t.pivot(i, c);
            } else {
                t.a.erase(t.a.begin() + i);
                t.basis.erase(t.basis.begin() + i);
                --t.rows;
                --i;
            }
        }
    }

    std::vector<Rational> c(n, 0);
    for (std::size_t j = 0; j < problem.objective.size() && j < static_cast<std::size_t>(n); ++j) {
        c[j] = problem.maximize ? problem.objective[j] : Rational(-problem.objective[j]);
    }
    t.set_objective(c);
    if (!t.optimize(first_art)) return Solution{Status::Unbounded, 0, {}};

    Solution sol;
    sol.status = Status::Optimal;
    sol.x.assign(n, 0);
    for (int i = 0; i < t.rows; ++i) {
        if (t.basis[i] < n) sol.x[t.basis[i]] = t.a[i][t.cols];
    }
    sol.value = 0;
    for (int j = 0; j < n; ++j) {
        if (j < static_cast<int>(problem.objective.size())) sol.value += problem.objective[j] * sol.x[j];
    }
    return sol;
}

bool satisfies(const Problem& problem, const std::vector<Rational>& x) {
    if (static_cast<int>(x.size()) != problem.variables) return false;
    for (const auto& v : x) {
        if (v < 0) return false;
    }
    for (const auto& c : problem.constraints) {
        Rational lhs = 0;
        for (int j = 0; j < problem.variables; ++j) lhs += c.coeffs[j] * x[j];
        switch (c.sense) {
            case Sense::LessEq:
                if (lhs > c.rhs) return false;
                break;
            case Sense::GreaterEq:
                if (lhs < c.rhs) return false;
                break;
            case Sense::Equal:
                if (lhs != c.rhs) return false;
                break;
        }
    }
    return true;
}

}  // namespace credence::lp
