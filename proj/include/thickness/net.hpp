#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "thickness/point.hpp"
#include "thickness/space.hpp"
#include "thickness/tolerances.hpp"

namespace thickness {

// A finite set of unit vectors together with how it was built.
struct Net {
    Space space;
    std::vector<Point> points;
    std::string provenance;
    nlohmann::json params = nlohmann::json::object();
};

// Validating constructor: nonempty, dimensions match, every point unit
// within NET_UNIT_TOL. Throws std::invalid_argument.
Net make_net(Space space, std::vector<Point> points, std::string provenance,
             nlohmann::json params = nlohmann::json::object());

// 2n signed indicator steps f_i = n^(1/p) * chi(subinterval i) in LpStep(p,n).
Net lp_func_net(double p, int n);

// {x0, -x0}; x0 must be unit within NET_UNIT_TOL.
Net antipodal_net(const Space& space, const Point& x0);

// eps-net of the unit sphere of (R^N, l_p): normalized nonzero nodes of the
// grid delta*Z^N, delta = eps / (2 N^(1/p)), deduplicated. Throws
// resource_error when the grid would exceed cap.
std::vector<Point> sphere_eps_net(int N, double p, double eps,
                                  long long cap = NET_CARDINALITY_CAP);

// All combinations (lambda_1 x^1_{j_1}, ..., lambda_N x^N_{j_N}) over the
// lambda-grid of sphere_eps_net(N, p, eps), one point per factor net.
// Output lives in PSum(p, factor spaces).
Net product_net(const std::vector<Net>& factor_nets, double p, double eps,
                long long cap = NET_CARDINALITY_CAP);

// Places each net point into block `position` (1-based) of the host p_sum,
// zeros elsewhere.
Net embed_net(const Net& factor_net, int position, const Space& host);

// {(0_X, +1), (0_X, -1)} for host = PSum(inf, [X, scalar]).
Net hyperplane_net(const Space& host);

// {(+-e_1, 0), (0, +-e_1)} for host = PSum(2, [LpSeq(1,d), LpSeq(1,d)]).
Net four_point_net(const Space& host);

// {(e_1, 0), (-e_1, 0)} for host = PSum(p, [LpSeq(p,d), Y]).
Net prop1_net(const Space& host);

// count random unit points; support > 0 restricts them to the first
// `support` coordinates.
Net random_unit_net(const Space& space, int count, std::uint64_t seed,
                    int support = 0);

void to_json(nlohmann::json& j, const Net& net);
void from_json(const nlohmann::json& j, Net& net);

}  // namespace thickness
