#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nvsc/novikov.hpp"
#include "nvsc/series_io.hpp"

/* Rank-2 scattering diagrams: path-ordered products, consistency completion
 * from the two initial walls of the F4 double nodal trade, chamber
 * coordinates and superpotentials, and the limit identities. */

namespace nvsc::sc {

struct IVec {
    int x = 0;
    int y = 0;

    friend bool operator==(const IVec&, const IVec&) = default;
    IVec operator-() const { return {-x, -y}; }
};

/* A wall through the origin. `dir` is the primitive (x,y)-exponent direction
 * of the wall monomial; initial walls are full lines, scattered walls are
 * rays pointing down (dir.y < 0). `fn` is the wall function, a unit series
 * 1 + ... in powers of T^(g A/2) z^(g dir). */
struct Wall {
    IVec dir;
    bool full_line = false;
    Series fn;

    // coinciding-wall metadata: fn == factor^coinciding when recognized
    int coinciding = 1;
    std::optional<Series> factor;

    Wall(IVec d, bool line, Series f) : dir(d), full_line(line), fn(std::move(f)) {}

    /* valuation of the lowest non-constant term of fn */
    Rat grading() const;
};

struct Diagram {
    Valuation nu;
    Rat cutoff;
    std::vector<Wall> walls; // canonical order: clockwise angle from (1,1)

    Diagram(Valuation n, Rat c) : nu(std::move(n)), cutoff(std::move(c)) {}
};

enum class Orientation { Clockwise, Counterclockwise };

/* One crossing event on a loop around the origin: wall w crossed at the ray
 * `ray` (= dir, or -dir for the second crossing of a full line). */
struct Crossing {
    const Wall* wall;
    IVec ray;
};

/* All crossing events of a full loop, ordered by the loop orientation,
 * starting just counterclockwise of the ray (1,1). */
std::vector<Crossing> loop_crossings(const Diagram& d, Orientation o);

/* Images (x-multiplier applied to x, y-multiplier applied to y) of one
 * crossing, as exponents of the wall function: x -> x fn^nx, y -> y fn^ny. */
IVec crossing_exponents(const Crossing& c, Orientation o);

/* The two initial full lines, with functions 1 + T^(A/2)/(xy) on the
 * slope-one line and 1 + T^(A/2) x/y on the slope-minus-one line. */
Diagram initial_diagram(const Valuation& nu, const Rat& cutoff);

/* Composes every crossing of a loop around the origin; a consistent diagram
 * returns (x, y) exactly up to the cutoff. */
std::pair<Series, Series> path_ordered_product(const Diagram& d, Orientation o);

/* Kontsevich-Soibelman completion: inserts rays order by order in the
 * T-grading until the loop around the origin is the identity up to `cutoff`.
 * Deterministic; throws NonTerminating if a failing term falls outside the
 * diagram's grading (an implementation bug, not a mathematical outcome). */
Diagram complete(const Diagram& initial, const Rat& cutoff);

/* Composition of the crossings from chamber 0 to chamber k (clockwise for
 * k > 0); returns the images of (x, y). Throws CutoffTooLow when the diagram
 * does not hold |k| crossings on that side. */
std::pair<Series, Series> chamber_transform(const Diagram& d, int k);

/* The superpotential of chamber k in its own coordinates: the chamber-0
 * superpotential pushed through the inverse of chamber_transform(k). */
Series chamber_superpotential(const Diagram& d, int k, const Rat& cutoff);

/* Stable limit of the chamber superpotentials for k -> +-infinity. */
Series limit_superpotential(const Diagram& d, int sign, const Rat& cutoff);

Json diagram_to_json(const Diagram& d);
std::string diagram_to_svg(const Diagram& d);

} // namespace nvsc::sc
