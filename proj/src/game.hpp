#pragma once

#include "sing.hpp"

namespace coxlink {

struct BlowupSpec {
    std::vector<std::string> centre;  // coordinate point, rank-many variables
    std::string exceptional;
    std::optional<std::pair<unsigned long, unsigned long>> kawamata;  // (r, a)
    std::vector<std::string> base;  // P^1 factor, required for rank-2 ambients
};

struct BlowupResult {
    Subvariety model;
    SingularityReport centre_type;
    // new grading row before well-forming: exceptional -> -r, centre -> 0,
    // the rest carry the inferred weights
    std::vector<std::pair<std::string, long>> stacky_row;
};

// Weighted blow-up at a coordinate point. Kawamata weights (the centre's
// residues) go to the non-tangent variables; tangent weights are inferred by
// greedy maximal divisibility of the substituted equations, iterated to a
// fixpoint. The stacky ambient is well-formed afterwards.
BlowupResult blow_up(const Subvariety& v, const BlowupSpec& spec);

enum class CrossingKind { flip, divisorial_contraction, fibration };

struct WallCrossing {
    std::size_t wall_ray = 0;
    IntVector wall;
    CrossingKind kind = CrossingKind::flip;
    // signed type: the primitive wall-normal functional on each off-wall
    // variable, oriented so the strictly smaller side is negative (ties keep
    // the pre-crossing side positive); sorted ascending
    std::vector<long> signed_type;
    std::vector<std::pair<std::string, long>> values;  // per off-wall variable
    bool orientation_flipped = false;  // true when the pre side came out negative
    std::string contracted_var;          // divisorial contraction
    std::vector<std::string> base_vars;  // fibration
};

// Classify the forward wall of the model's chamber; for a flip also build the
// next model (same Cox ring, the next chamber's irrelevant ideal).
struct CrossResult {
    WallCrossing crossing;
    std::optional<Subvariety> next;  // present for flips
};
CrossResult cross_wall(const Subvariety& v);

struct RestrictedCrossing {
    bool supported = true;
    std::string note;
    long count = 0;
    std::vector<std::string> eliminated;
    std::vector<long> restricted_type;  // same orientation rules as ambient
    bool flop = false;
};

// Restrict an ambient crossing to the threefold: count the flopped points in
// the wall's weighted projective space and eliminate the tangent directions
// that have a pivot at every point of the locus.
RestrictedCrossing restrict_crossing(const Subvariety& v, const WallCrossing& cr);

struct ContractionResult {
    Subvariety image;
    std::vector<std::pair<std::string, std::string>> images;  // var -> monomial
    std::vector<std::pair<std::string, unsigned>> k_exponents;
    std::vector<std::string> image_point;  // target of the contracted divisor
};

// Divisorial contraction at the crossing's wall: each surviving variable maps
// to var * contracted^k with k placing the product on the wall degree line.
ContractionResult contract_map(const Subvariety& v, const WallCrossing& cr);

struct EliminationResult {
    Subvariety model;
    std::string mode;  // "unit" or "pair"
    std::size_t dropped = 0;
};

// Remove a variable that some equation solves linearly with an invertible
// monomial coefficient (or a pair of equations whose coefficient variables
// form an irrelevant component). Redundant equations drop by Groebner
// membership. nullopt when no witness exists.
std::optional<EliminationResult> eliminate_variable(const Subvariety& v,
                                                    const std::string& var);

struct FibrationProfile {
    std::vector<std::string> base_vars;
    std::vector<std::string> fibre_vars;
    std::vector<long> fibre_weights;
    std::vector<long> fibre_equation_degrees;
    bool cubic_surface = false;
};

FibrationProfile fibration_profile(const Subvariety& v,
                                   const std::vector<std::string>& base_vars);

struct TraceStep {
    std::string kind;  // blowup | flop | flip | contraction | fibration | elimination
    std::optional<SingularityReport> centre_type;           // blowup
    std::vector<std::pair<std::string, long>> stacky_row;   // blowup
    std::optional<WallCrossing> crossing;                   // flop/flip
    std::optional<RestrictedCrossing> restricted;           // flop/flip
    std::vector<std::pair<std::string, std::string>> images;  // contraction
    std::vector<std::string> image_point;                     // contraction
    std::string image_point_type;                             // contraction
    std::vector<std::string> base_vars;                       // fibration
    std::string eliminated_var;                               // elimination
    std::size_t equations_dropped = 0;                        // elimination
};

struct LinkTrace {
    std::vector<TraceStep> steps;
    Subvariety endpoint;
    std::vector<SingularityReport> endpoint_sings;
    std::optional<FibrationProfile> endpoint_profile;
    std::vector<std::string> annotations;
};

// Play the whole game: blow up, cross walls away from the exceptional side,
// restrict each crossing, finish with a divisorial contraction or fibration,
// run the enabled eliminations and classify the endpoint. Rank-2 inputs go
// through the rank-3 construction and the relative game over the base.
LinkTrace run_link(const Subvariety& v, const BlowupSpec& spec);

struct CompareVerdict {
    bool isomorphic = false;
    std::string witness;
};

// Structural comparison: canonical ambient presentations (weight matrix up to
// row basis and column order, with the irrelevant components), equation
// multidegree multisets, and singularity kind multisets.
CompareVerdict compare_models(const Subvariety& a, const Subvariety& b,
                              const std::vector<std::string>& sings_a,
                              const std::vector<std::string>& sings_b);

// singularity kind strings of all non-smooth coordinate points
std::vector<std::string> singularity_kinds(const Subvariety& v);

}  // namespace coxlink
