#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "json.hpp"
#include "thickness/net.hpp"

namespace thickness {

// Bracket for the covering radius of one net over the unit ball.
// certified_lower comes from concrete evaluated points, analytic_upper from
// the construction's closed form when the provenance is recognized.
struct CoveringReport {
    double certified_lower = 0.0;
    double empirical_estimate = 0.0;
    std::optional<double> analytic_upper;
    Point best_witness;
    long long evaluations = 0;
    std::uint64_t seed = 0;
};

struct SearchOptions {
    long long budget = 200000;
    int restarts = 32;
    std::uint64_t seed = 0;
    std::vector<Point> seed_points;  // injected as extra restart starts
};

struct ThicknessSearchResult {
    int m = 0;
    Net net;
    CoveringReport report;
    int iterations = 0;
};

struct NonsquarenessResult {
    double value = 0.0;
    Point x;
    Point y;
    long long evaluations = 0;
    std::uint64_t seed = 0;
};

// min over net of norm(z - x_i); empty net is an input error.
double min_distance(const Space& space, const Net& net, std::span<const double> z);

// Evaluates the candidates (radially projected into the ball) and certifies
// the best one. No search.
CoveringReport covering_radius_lower(const Space& space, const Net& net,
                                     const std::vector<Point>& candidates);

// Multistart pattern-search maximization of z -> min_distance(z) over the
// ball. Deterministic for fixed (seed, budget, restarts) regardless of the
// thread count (THICKNESS_LAB_THREADS caps workers).
CoveringReport covering_radius_estimate(const Space& space, const Net& net,
                                        const SearchOptions& options);

// Closed-form covering-radius bound for recognized provenances; absent
// otherwise.
std::optional<double> analytic_upper(const Net& net);

// Alternating minimax heuristic over m-point nets: move the net point
// nearest the current worst ball point toward it, keep the best net seen.
ThicknessSearchResult thickness_search(const Space& space, int m, long long budget,
                                       std::uint64_t seed);

// Multistart maximization of min{|x-y|, |x+y|} over unit pairs.
NonsquarenessResult nonsquareness_estimate(const Space& space, long long budget,
                                           std::uint64_t seed);

void to_json(nlohmann::json& j, const CoveringReport& report);
void from_json(const nlohmann::json& j, CoveringReport& report);
void to_json(nlohmann::json& j, const ThicknessSearchResult& result);
void to_json(nlohmann::json& j, const NonsquarenessResult& result);

}  // namespace thickness
