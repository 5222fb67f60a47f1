#pragma once

#include <array>
#include <string>
#include <vector>

#include "nvsc/novikov.hpp"
#include "nvsc/series_io.hpp"

/* Lattice arithmetic for disc and sphere classes on Hirzebruch surfaces:
 * intersection numbers, Maslov indices, inequality-system enumeration, and
 * the small degree/dimension computations behind the obstruction bundles. */

namespace nvsc::hirz {

enum class Basis {
    F3,      // (beta1, beta2, sigma, phi) on F3
    F4,      // (beta1, beta2, sigma, phi) on F4
    F0Chart, // (alpha0, beta0, A, B) on the deformed F4 = P1 x P1
};

std::string basis_name(Basis b);
Basis basis_from_name(const std::string& name);

struct DiscClass {
    Basis basis = Basis::F3;
    std::array<int, 4> c{0, 0, 0, 0};

    friend bool operator==(const DiscClass&, const DiscClass&) = default;
    friend bool operator<(const DiscClass& a, const DiscClass& b) {
        if (a.basis != b.basis)
            return a.basis < b.basis;
        return a.c < b.c;
    }
    std::string str() const;
};

/* Integer covector on a fixed basis; `strict` asks for > 0 instead of >= 0
 * when the functional is used as an inequality. */
struct SphereFunctional {
    std::string name;
    Basis basis = Basis::F3;
    std::array<int, 4> form{0, 0, 0, 0};
    bool strict = false;
};

long intersect(const DiscClass& c, const SphereFunctional& s); // BasisMismatch

/* Twice the pairing with the anticanonical divisor; for the F0 chart both
 * anticanonical representatives are evaluated and must agree. */
long maslov(const DiscClass& c);

struct ConstraintSystem {
    Basis basis = Basis::F3;
    std::vector<SphereFunctional> inequalities;
    SphereFunctional maslov_half; // equality functional, equal to maslov/2
    long maslov_target = 0;
    bool require_nonzero = false;
};

/* All integer vectors with coordinates in [-bound, bound] satisfying every
 * inequality and the Maslov equality, in lexicographic order. */
std::vector<DiscClass> enumerate_classes(const ConstraintSystem& sys, int bound);

/* Branched-cover feasibility for a degree d map of discs: the total
 * ramification of such a map is exactly d - 1, so a configuration forcing
 * ramification R exists only when R <= d - 1. */
bool rh_feasible(long degree, long forced_ramification);

/* dim H^i of a degree-d line bundle on P1. */
long h_dim(long degree, int i);

/* Degree of the obstruction bundle for the family of sections of O(n)
 * vanishing at `marked_points` moving points, one per P1 factor.
 * The fiber over (z_1,...,z_p) is spanned by prod (z' - z_i); the returned
 * multidegree is read off the induced map into the projectivized section
 * space, negated (deg Ob = -deg Ob_dual). Requires h^0 = n+1-p = 1. */
std::vector<int> obstruction_degree(int n, int marked_points);

/* Independent route for n = 1, one point: degree of the dual line bundle from
 * the transition function between the charts z != infinity and z != 0. */
int obstruction_dual_degree_via_transition();

/* F4 <-> F0Chart change of basis (unimodular, inverse of itself composed). */
DiscClass convert(const DiscClass& c, Basis target);

/* Decodes a superpotential term T^(ta*A+tb*B) x^a y^b on F3 into the disc
 * class it counts (coordinates x = T^w(beta1) hol(d beta1),
 * y = T^w(phi-beta2) hol(-d beta2)). */
DiscClass f3_class_of_term(const Rat& ta, const Rat& tb, int xe, int ye);

// Sphere functionals of the F0 chart (rows of the intersection table)
SphereFunctional chart_A0();
SphereFunctional chart_B0();
SphereFunctional chart_Ainf();
SphereFunctional chart_Binf();
SphereFunctional chart_Deps();

// Constraint systems as printed, one per enumeration
ConstraintSystem f3_index0_system();
ConstraintSystem f3_index2_right_system();
/* Positivity against F0, Finf, S+3 and E only; admits the extra families that
 * the sphere-component case analysis removes. Kept for comparison. */
ConstraintSystem f3_index2_right_raw_system();
ConstraintSystem f4_index0_system();
ConstraintSystem f4_index2_system();

Json system_to_json(const ConstraintSystem& sys);
Json classes_to_json(const std::vector<DiscClass>& classes);

// Expected families, for fixtures and pattern-stability checks
std::vector<DiscClass> f3_index0_expected(int bound);
std::vector<DiscClass> f3_index2_expected();
std::vector<DiscClass> f4_index0_expected(int bound);
std::vector<DiscClass> f4_index2_expected(int bound);

} // namespace nvsc::hirz
