#pragma once

#include "json.hpp"
#include "thickness/point.hpp"
#include "thickness/space.hpp"

namespace thickness {

struct IneqCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;  // rhs - lhs
    bool holds = false;  // slack >= -1e-12 * max(1, rhs)
};

// |f+g|^q + |f-g|^q <= 2 (|f|^p + |g|^p)^(q/p), q = p/(p-1).
// Only valid for p in (1,2]; p=1 makes q infinite and is rejected.
IneqCheck clarkson_check(const Space& space, const Point& f, const Point& g);

// |f+g|^p + |f-g|^p <= (|f|+|g|)^p + | |f|-|g| |^p, for finite p >= 2.
IneqCheck hanner_check(const Space& space, const Point& f, const Point& g);

// The two-point net bound 2^(1/p) for p in [1,2]; at p=1 it is the trivial
// diameter bound.
double clarkson_net_bound(double p);

void to_json(nlohmann::json& j, const IneqCheck& check);

}  // namespace thickness
