#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "json.hpp"
#include "thickness/point.hpp"

namespace thickness {

inline constexpr double P_INF = std::numeric_limits<double>::infinity();

enum class SpaceKind { lp_seq, lp_step, p_sum, poly_k };

// A finite-dimensional normed space presented through its norm oracle.
// Variants:
//   lp_seq  — R^dim with (sum |x_i|^p)^(1/p), max for p = inf
//   lp_step — piecewise-constant functions on dim equal subintervals of [0,1],
//             norm ((1/dim) sum |c_i|^p)^(1/p); coordinates are the step values
//   p_sum   — l_p-combination of factor norms on concatenated coordinates
//   poly_k  — (1/k) * (sum of the k largest |x_i|)
class Space {
  public:
    // defaults to the scalar line (lp_seq, p=2, dim=1)
    Space() = default;

    static Space lp_seq(double p, int dim);
    static Space lp_step(double p, int intervals);
    static Space p_sum(double p, std::vector<Space> factors);
    static Space poly_k(int k, int dim);

    SpaceKind kind() const { return kind_; }
    int dim() const { return dim_; }
    double p() const { return p_; }
    int k() const { return k_; }
    const std::vector<Space>& factors() const { return factors_; }

    double norm(std::span<const double> x) const;

    bool operator==(const Space& other) const;
    bool operator!=(const Space& other) const { return !(*this == other); }

  private:
    SpaceKind kind_ = SpaceKind::lp_seq;
    double p_ = 2.0;
    int dim_ = 1;
    int k_ = 0;
    std::vector<Space> factors_;
};

// x scaled to unit norm; throws std::domain_error on the zero vector.
Point normalize(const Space& space, std::span<const double> x);

// Deterministic ball sample: gaussian direction, radius u^(1/dim).
Point sample_ball(const Space& space, std::uint64_t seed);

// Splits concatenated coordinates of a p_sum point into (factor, block) pairs.
std::vector<std::pair<Space, Point>> psum_split(const Space& space,
                                                std::span<const double> x);

// Canonical unit vector: first basis direction scaled to norm 1
// (recurses into the first factor for p_sum).
Point unit_point(const Space& space);

void to_json(nlohmann::json& j, const Space& space);
void from_json(const nlohmann::json& j, Space& space);

}  // namespace thickness
