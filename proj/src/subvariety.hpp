#pragma once

#include "cox.hpp"
#include "poly.hpp"

namespace coxlink {

// A closed subvariety of a toric ambient, cut by homogeneous equations over
// F_p with generic coefficients already instantiated.
struct Subvariety {
    Fp field;
    CoxPresentation ambient;
    std::vector<Poly<Fp>> equations;
    std::size_t codim = 0;  // of the affine cone, = expected codimension
    std::string provenance;
};

// Every equation must be homogeneous for the ambient grading.
inline std::optional<std::string> homogeneity_violation(const Subvariety& v) {
    for (std::size_t i = 0; i < v.equations.size(); ++i) {
        auto rep = multidegree_of(v.equations[i], v.ambient.degrees);
        if (!rep.degree)
            return "equation " + std::to_string(i + 1) + " is inhomogeneous";
    }
    return std::nullopt;
}

}  // namespace coxlink
