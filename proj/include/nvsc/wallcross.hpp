#pragma once

#include <vector>

#include "nvsc/novikov.hpp"

/* Wall-crossing transformations as series automorphisms, order-by-order
 * solving for unknown wall functions, and the glued-chart verification for
 * the F3 mirror. */

namespace nvsc::wc {

/* x -> x f^exp_x, y -> y f^exp_y with f = 1 + sum_k ck q^k for a single wall
 * monomial q of strictly positive valuation. */
struct WallTransform {
    Monomial wall_monomial;
    std::vector<Rat> fn_coeffs; // c1, c2, ...
    int exp_x = 0;
    int exp_y = 0;
};

/* The wall function 1 + sum ck q^k as a series. */
Series wall_function(const WallTransform& t, const Valuation& nu, const Rat& cutoff);

Series apply(const WallTransform& t, const Series& s);

/* Inverse transform; exact when the transform fixes its own wall monomial
 * (exponent vector orthogonal to the monomial's (x,y)-exponents), which is
 * the shape every wall crossing has. */
Series apply_inverse(const WallTransform& t, const Series& s);

/* Solves apply({q, c, exp}, w_dst) = w_src for the coefficients c_1..c_max,
 * order by order in powers of q. Each order is an affine solve on the lowest
 * valuation stratum the new coefficient reaches; mismatches below that
 * stratum throw Inconsistent, coefficients the cutoff cannot see throw
 * Underdetermined. */
std::vector<Rat> solve_wall_function(const Series& w_src, const Series& w_dst,
                                     const Monomial& wall_monomial, int exp_x, int exp_y,
                                     int max_order);

/* Checks the glued F3 mirror chart: u v = 1 + T^A w holds for the chart
 * change, and the two superpotential restrictions agree under it. */
bool verify_gluing(const Valuation& nu, const Rat& cutoff);

/* Same check with an arbitrary candidate wall function 1 + sum hk q^k,
 * q = T^A/y; false unless the candidate is the actual one. */
bool gluing_holds(const Valuation& nu, const Rat& cutoff, const std::vector<Rat>& h_coeffs);

} // namespace nvsc::wc
