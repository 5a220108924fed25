#pragma once

#include "rational.hpp"

namespace chandeg {

/// Volume of the unit ball in R^dim, via log-Gamma.
double unit_ball_volume(int dim);

/// Worst-case lower bound on the mutual-information drop of degrading a
/// q-input channel to at most L output letters. L may be fractional and
/// astronomically large; everything is evaluated in log space.
double cost_lower_bound(int q, double L);

/// Stirling simplification of cost_lower_bound; tight for large q.
double cost_lower_bound_stirling(int q, double L);

struct UpperBounds {
    double prior;    // 2q * (1/L)^{1/q}
    double sharper;  // 2 * q^{1+2/(q-1)} * (1/L)^{1/(q-1)}
};
UpperBounds cost_upper_bounds(int q, double L);

/// Closed-form inverse of cost_lower_bound in L: the alphabet size at which
/// the lower bound equals eps. Returned as log10(L); L itself may overflow.
double log10_alphabet_size_for_cost(int q, double eps);

struct BoundReport {
    int q = 0;
    double L = 0.0;
    double lower_exact = 0.0;
    double lower_stirling = 0.0;
    double upper_old = 0.0;
    double upper_new = 0.0;
    double sigma = 0.0;  // unit_ball_volume(q-1)
};
BoundReport make_bound_report(int q, double L);

/// Measured volume and quadratic merge-cost surrogate of a lattice ball:
/// all points of the (1/m)-grid in R^{q-1} within distance r of a lattice
/// center, against the sphere predictions they converge to.
struct GridBallCheck {
    double vol;        // |A| / m^{q-1}
    double quad;       // (1/(2 binom(m+q-1,q-1))) * sum of squared distances to the mean
    double vol_pred;   // sigma_{q-1} r^{q-1}
    double quad_pred;  // (q-1)(q-1)!/(2(q+1)) * sigma_{q-1} r^{q+1}
};
GridBallCheck grid_ball_check(int q, long long m, double r);

/// Finite-m form of the equal-volume allocation step: converges to
/// cost_lower_bound(q, L) as m grows.
double equal_volume_allocation_bound(int q, double L, long long m);

}  // namespace chandeg
