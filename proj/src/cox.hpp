#pragma once

#include <string>
#include <vector>

#include "lattice.hpp"

namespace coxlink {

// Toric variety presented by Cox data: a weight column per variable and the
// irrelevant ideal as coordinate-prime components (sets of variable names).
struct CoxPresentation {
    std::size_t rank = 0;
    std::vector<std::string> vars;
    std::vector<IntVector> degrees;                      // one column per variable
    std::vector<std::vector<std::string>> irrelevant;    // components

    std::size_t nvars() const { return vars.size(); }
    std::optional<std::size_t> index_of(const std::string& n) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == n) return i;
        return std::nullopt;
    }
    IntMatrix weight_matrix() const;
};

// Sort each component by ambient variable order, drop components that contain
// another one (their loci are redundant), sort the list.
std::vector<std::vector<std::string>> normalize_components(
    const CoxPresentation& c, std::vector<std::vector<std::string>> comps);

std::vector<std::string> validate(const CoxPresentation& c);

struct WellFormResult {
    CoxPresentation pres;
    // variable -> exponent for quasi-reflection moves x -> x^q (identity when
    // only row-lattice saturation was needed)
    std::vector<std::pair<std::string, unsigned long>> exponent_changes;
};

// Iterate row-lattice saturation and quasi-reflection elimination until the
// grading stays surjective after deleting any single column. Saturation
// rewrites the rows in the canonical HNF basis of the saturated sublattice,
// which keeps untouched rows pristine.
WellFormResult well_form(const CoxPresentation& c);

bool column_deletion_surjective(const IntMatrix& m);

struct ChamberFan {
    std::vector<IntVector> rays;                          // primitive, play order
    std::vector<std::vector<std::size_t>> groups;         // variable indices per ray
    std::vector<std::pair<std::size_t, std::size_t>> chambers;  // adjacent ray pairs
    bool full_plane = false;
};

// Rank-2 GIT chamber fan. Rays are sorted rotationally (counterclockwise);
// the sweep starts at the far side of the widest angular gap, so the first
// ray is the clockwise boundary of the effective cone. For a full-plane span
// the sweep starts at the first variable's ray and chambers wrap around.
ChamberFan mori_chambers(const CoxPresentation& c);

// Radical monomial ideal of the chamber's unstable locus, as minimal
// coordinate components: a point is stable iff the chamber lies in the cone
// spanned by the degrees of its nonvanishing coordinates.
std::vector<std::vector<std::string>> irrelevant_ideal_of_chamber(
    const CoxPresentation& c, const ChamberFan& fan, std::size_t chamber);

// Index of the fan chamber whose unstable ideal matches c.irrelevant.
std::optional<std::size_t> match_chamber(const CoxPresentation& c,
                                         const ChamberFan& fan);

// Pass to the open subset (var != 0): rank drops by one. The variable's
// degree must be primitive. Components containing var become empty loci in
// the chart and are removed.
CoxPresentation chart(const CoxPresentation& c, const std::string& var);

// Canonical form under row basis change + column permutation: lexicographically
// minimal HNF over all column orders, with the irrelevant components carried
// through the permutation. Used by model comparison.
struct CanonicalPresentation {
    IntMatrix matrix;
    std::vector<std::vector<std::size_t>> irrelevant;  // components as column sets
    IntMatrix row_transform;  // sends input degree vectors into the canonical basis
    bool operator==(const CanonicalPresentation& o) const {
        return matrix == o.matrix && irrelevant == o.irrelevant;
    }
    std::string str() const;
};
CanonicalPresentation canonical_presentation(const CoxPresentation& c);

}  // namespace coxlink
