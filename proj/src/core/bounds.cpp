#include "bounds.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "errors.hpp"

namespace chandeg {

namespace {

void check_q(int q) {
    if (q < 2) throw std::invalid_argument("bounds require q >= 2");
}

void check_L(double L) {
    if (!(L >= 1.0)) throw std::invalid_argument("bounds require L >= 1");
}

double log_unit_ball_volume(double dim) {
    return 0.5 * dim * std::log(M_PI) - std::lgamma(0.5 * dim + 1.0);
}

// ln of the L-independent factor of the lower bound:
// (q-1)/(2(q+1)) * (1 / (sigma_{q-1} (q-1)!))^{2/(q-1)}
double log_lower_coeff(int q) {
    const double d = q - 1.0;
    return std::log(d / (2.0 * (q + 1.0))) -
           (2.0 / d) * (log_unit_ball_volume(d) + std::lgamma(static_cast<double>(q)));
}

}  // namespace

double unit_ball_volume(int dim) {
    if (dim < 1) throw std::invalid_argument("unit_ball_volume requires dim >= 1");
    return std::exp(log_unit_ball_volume(static_cast<double>(dim)));
}

double cost_lower_bound(int q, double L) {
    check_q(q);
    check_L(L);
    return std::exp(log_lower_coeff(q) - (2.0 / (q - 1.0)) * std::log(L));
}

double cost_lower_bound_stirling(int q, double L) {
    check_q(q);
    check_L(L);
    return std::exp(1.0) / (4.0 * M_PI * (q - 1.0)) *
           std::exp(-(2.0 / (q - 1.0)) * std::log(L));
}

UpperBounds cost_upper_bounds(int q, double L) {
    check_q(q);
    check_L(L);
    UpperBounds ub;
    ub.prior = 2.0 * q * std::exp(-std::log(L) / q);
    ub.sharper = 2.0 * std::exp((1.0 + 2.0 / (q - 1.0)) * std::log(static_cast<double>(q)) -
                                std::log(L) / (q - 1.0));
    return ub;
}

double log10_alphabet_size_for_cost(int q, double eps) {
    check_q(q);
    if (!(eps > 0.0)) throw std::invalid_argument("target cost must be positive");
    // eps = C * L^{-2/(q-1)}  =>  ln L = (q-1)/2 * (ln C - ln eps)
    const double lnL = 0.5 * (q - 1.0) * (log_lower_coeff(q) - std::log(eps));
    return lnL / std::log(10.0);
}

BoundReport make_bound_report(int q, double L) {
    BoundReport r;
    r.q = q;
    r.L = L;
    r.lower_exact = cost_lower_bound(q, L);
    r.lower_stirling = cost_lower_bound_stirling(q, L);
    const UpperBounds ub = cost_upper_bounds(q, L);
    r.upper_old = ub.prior;
    r.upper_new = ub.sharper;
    r.sigma = unit_ball_volume(q - 1);
    return r;
}

GridBallCheck grid_ball_check(int q, long long m, double r) {
    check_q(q);
    if (m < 1) throw std::invalid_argument("grid_ball_check requires m >= 1");
    if (!(r > 0.0)) throw std::invalid_argument("grid_ball_check requires r > 0");
    if (r > 4.0) throw std::invalid_argument("grid_ball_check requires r <= 4");

    const int dim = q - 1;
    const double md = static_cast<double>(m);
    const double lattice_r = r * md;
    const double r2 = lattice_r * lattice_r;
    const long long span = static_cast<long long>(std::floor(lattice_r));
    // Full enumeration box; keeps the sweep a desk-scale computation.
    double box = 1.0;
    for (int d = 0; d < dim; ++d) box *= 2.0 * span + 1.0;
    if (box > 2e8)
        throw ResourceLimitError("grid ball enumeration too large (~" + std::to_string(box) +
                                 " lattice points)");

    // Center at a lattice point (the origin); the ball is symmetric, so its
    // mean is the center and squared distances accumulate directly.
    long long count = 0;
    double sum_sq = 0.0;  // in lattice units
    std::vector<long long> coord(dim, 0);
    // odometer over [-span, span]^dim
    const auto point_radius2 = [&coord]() {
        double s = 0.0;
        for (long long c : coord) s += static_cast<double>(c) * static_cast<double>(c);
        return s;
    };
    for (long long i = 0; i < static_cast<long long>(box); ++i) {
        long long rem = i;
        for (int d = 0; d < dim; ++d) {
            coord[d] = rem % (2 * span + 1) - span;
            rem /= 2 * span + 1;
        }
        const double s = point_radius2();
        if (s <= r2) {
            ++count;
            sum_sq += s;
        }
    }
    if (count == 0) throw std::invalid_argument("grid ball is empty");

    const double binom = to_double(Rat(binomial(m + q - 1, q - 1)));
    GridBallCheck out;
    out.vol = static_cast<double>(count) / std::pow(md, dim);
    out.quad = sum_sq / (md * md) / (2.0 * binom);
    out.vol_pred = unit_ball_volume(dim) * std::pow(r, dim);
    out.quad_pred = (q - 1.0) * std::exp(std::lgamma(static_cast<double>(q))) /
                    (2.0 * (q + 1.0)) * unit_ball_volume(dim) * std::pow(r, q + 1);
    return out;
}

double equal_volume_allocation_bound(int q, double L, long long m) {
    check_q(q);
    check_L(L);
    if (m < 1) throw std::invalid_argument("m >= 1 required");
    const double d = q - 1.0;
    // ln V, V = binom(m+q-1, q-1) / m^{q-1}
    const double lnV = std::lgamma(static_cast<double>(m + q)) -
                       std::lgamma(static_cast<double>(m + 1)) -
                       std::lgamma(static_cast<double>(q)) - d * std::log(static_cast<double>(m));
    const double lnK = std::log(d) + std::lgamma(static_cast<double>(q)) -
                       std::log(2.0 * (q + 1.0)) - (2.0 / d) * log_unit_ball_volume(d);
    return std::exp(lnK + std::log(L) + ((q + 1.0) / d) * (lnV - std::log(L)));
}

}  // namespace chandeg
