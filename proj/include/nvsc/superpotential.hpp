#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "nvsc/novikov.hpp"

/* Builders for the disc-counting superpotentials on the Hirzebruch surfaces
 * F0, F2, F3, F4, closed-form/series equivalence checks, and numeric
 * critical-value extraction. */

namespace nvsc::sp {

enum class Surface { F0, F2, F3, F4 };

enum class Chamber {
    Default,       // the single chart of F0 / F2
    F3Left,        // F3, left of the wall
    F3Right,       // F3, right of the wall
    F4Series,      // F4, the infinite Laurent series chart
    F4Alt,         // F4, the chart reached through the F2 degeneration
    ChamberK,      // scattering chamber k (|k| <= 2 printed)
    PlusInfinity,  // limit of the chambers k -> +infinity
    MinusInfinity, // limit of the chambers k -> -infinity
};

struct SurfaceSpec {
    Surface surface = Surface::F4;
    Chamber chamber = Chamber::F4Series;
    int k = 0; // only read for ChamberK

    std::string str() const;
};

Surface surface_from_name(const std::string& name);

/* The truncated superpotential series; infinite families are emitted up to
 * the cutoff. Throws IllegalChamber for chambers the surface does not have. */
Series build(const SurfaceSpec& spec, const Valuation& nu, const Rat& cutoff);

/* Expands the printed rational closed form through invert_unit and compares
 * with build(). Only the F4 series chart has one; others throw NoClosedForm. */
bool closed_form_equal(const SurfaceSpec& spec, const Valuation& nu, const Rat& cutoff);

/* Invertible monomial coordinate change W(a_x, a_y); the exponent matrix of
 * (a_x, a_y) must be unimodular. */
Series monomial_change(const Series& w, const Monomial& a_x, const Monomial& a_y);

/* -- numeric layer ------------------------------------------------------- */

/* Laurent polynomial in x, y with double coefficients: the series with the
 * Novikov parameter specialized to a numeric value. */
struct NumericPoly {
    std::map<std::pair<int, int>, double> terms;

    double eval(double x, double y) const;
    std::complex<double> eval(std::complex<double> x, std::complex<double> y) const;
    NumericPoly dx() const;
    NumericPoly dy() const;
};

NumericPoly specialize(const Series& s, double t_val);

/* Critical values of the superpotential at a numeric Novikov parameter.
 *
 * Damped Newton on the gradient runs over complex (x, y) from the
 * deterministic multistart grid {±T^a}^2, a in {0, 1/4, ..., 3/2} * nu_B;
 * a second pass with the y-starts rotated by i is added when the real pass
 * yields fewer than four values (two of the four critical points leave the
 * real locus when T^((A-B)/2) grows past ~0.2).
 *
 * The F4 series chart is evaluated through its closed rational form, which
 * is defined on the whole critical locus; the truncated series diverges on
 * the circle |y| = T^(A/2) where two of its critical points can sit. Other
 * charts evaluate the truncated series itself, escalate the cutoff until the
 * dropped tail at every kept point is below tol, and reject points that
 * drift with the cutoff (truncation shadows of the polar locus).
 *
 * Returns the distinct critical values sorted ascending. Throws
 * NoConvergence when a start fails to converge, a residual stays above tol,
 * or the tail bound cannot be met. */
std::vector<double> critical_values_numeric(const SurfaceSpec& spec, const Valuation& nu,
                                            double t_val, double tol);

} // namespace nvsc::sp
