#include "thickness/inequalities.hpp"

#include <cmath>
#include <stdexcept>

namespace thickness {

namespace {

IneqCheck sealed(double lhs, double rhs) {
    IneqCheck c;
    c.lhs = lhs;
    c.rhs = rhs;
    c.slack = rhs - lhs;
    c.holds = c.slack >= -1e-12 * std::max(1.0, rhs);
    return c;
}

void require_lp(const Space& space, const char* who) {
    if (space.kind() != SpaceKind::lp_seq && space.kind() != SpaceKind::lp_step)
        throw std::invalid_argument(std::string(who) +
                                    " requires an LpSeq or LpStep space");
}

}  // namespace

IneqCheck clarkson_check(const Space& space, const Point& f, const Point& g) {
    require_lp(space, "clarkson_check");
    const double p = space.p();
    if (!(p > 1.0 && p <= 2.0))
        throw std::invalid_argument(
            "clarkson_check: the inequality is valid for p in (1,2] only");
    const double q = p / (p - 1.0);
    const double lhs =
        std::pow(space.norm(add(f, g)), q) + std::pow(space.norm(sub(f, g)), q);
    const double rhs =
        2.0 * std::pow(std::pow(space.norm(f), p) + std::pow(space.norm(g), p),
                       q / p);
    return sealed(lhs, rhs);
}

IneqCheck hanner_check(const Space& space, const Point& f, const Point& g) {
    require_lp(space, "hanner_check");
    const double p = space.p();
    if (std::isinf(p) || !(p >= 2.0))
        throw std::invalid_argument("hanner_check requires finite p >= 2");
    const double nf = space.norm(f);
    const double ng = space.norm(g);
    const double lhs =
        std::pow(space.norm(add(f, g)), p) + std::pow(space.norm(sub(f, g)), p);
    const double rhs = std::pow(nf + ng, p) + std::pow(std::abs(nf - ng), p);
    return sealed(lhs, rhs);
}

double clarkson_net_bound(double p) {
    if (!(p >= 1.0 && p <= 2.0))
        throw std::invalid_argument("clarkson_net_bound requires p in [1,2]");
    return std::pow(2.0, 1.0 / p);
}

void to_json(nlohmann::json& j, const IneqCheck& check) {
    j = {{"lhs", check.lhs},
         {"rhs", check.rhs},
         {"slack", check.slack},
         {"holds", check.holds}};
}

}  // namespace thickness
