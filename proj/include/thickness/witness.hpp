#pragma once

#include <string>

#include "json.hpp"
#include "thickness/covering.hpp"
#include "thickness/net.hpp"

namespace thickness {

// A ball point provably far from every net point, with the bound formula's
// value (guaranteed) and the actually evaluated min-distance (measured).
struct WitnessReport {
    Point witness;
    double guaranteed_distance = 0.0;
    double measured_distance = 0.0;
    std::string construction;
    nlohmann::json params = nlohmann::json::object();
};

// Refines the step grid to n*refine subintervals, picks the one the net has
// the least mass on, returns its scaled indicator. Witness and measured
// distance live in the refined space LpStep(p, n*refine); net points embed
// by repeating coefficients, which preserves the norm exactly.
WitnessReport lp_step_witness(const Net& net, int refine);

// Coordinate (LpSeq) or factor (PSum) with least net mass; witness is the
// unit vector supported there. Bound (1 - eps^p + (1-eps)^p)^(1/p).
WitnessReport tail_witness(const Space& space, const Net& net);

// sup-sum adversary: per-factor far-point searches against the normalized
// heavy blocks; certifies alpha when every net point is heavy in some factor
// whose search cleared alpha + eps, otherwise reports inconclusive.
WitnessReport linf_adversary(const Space& space, const Net& net, double alpha,
                             double eps, const SearchOptions& factor_search = {
                                 .budget = 20000, .restarts = 8});

// (1/sqrt2) e_k in both l_1 blocks of an l_1 +_2 l_1 space, k the
// least-used coordinate; floor sqrt(2+sqrt2) - 4 eps.
WitnessReport lemma3_witness(const Space& space, const Net& net);

// k e_j in PolyK(k,d), j the least-used index; bound (k-eps + k-1)/k.
WitnessReport polyk_witness(const Space& space, const Net& net);

// (0, e_j) in scalar +_1 l_p, j the least-used l_p coordinate; bound
// min over net of 1 - b + (b^p - eps^p + (1-eps)^p)^(1/p).
WitnessReport uns_example_witness(const Space& space, const Net& net);

void to_json(nlohmann::json& j, const WitnessReport& report);
void from_json(const nlohmann::json& j, WitnessReport& report);

}  // namespace thickness
