#include "thickness/covering.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <string>
#include <thread>

#include "thickness/rng.hpp"
#include "thickness/tolerances.hpp"

namespace thickness {

namespace {

int worker_count() {
    if (const char* env = std::getenv("THICKNESS_LAB_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && v >= 1) return static_cast<int>(std::min(v, 64L));
        return 1;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(std::min(hw, 8u));
}

// Runs fn(0..tasks-1); the partition of work over threads never affects
// results because every task writes only its own slot.
template <typename Fn>
void parallel_for(int tasks, const Fn& fn) {
    const int threads = std::min(worker_count(), tasks);
    if (threads <= 1) {
        for (int i = 0; i < tasks; ++i) fn(i);
        return;
    }
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back([&] {
            for (int i = next.fetch_add(1); i < tasks; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

void project_into_ball(const Space& space, Point& z) {
    const double n = space.norm(z);
    if (n > 1.0)
        for (double& v : z) v /= n;
}

struct RestartResult {
    double value = -1.0;
    Point z;
    long long evals = 0;
};

// Compass search on one start point: axis moves with annealed step plus a
// sphere-snap candidate, radial projection keeps iterates feasible.
RestartResult pattern_search_max(const Space& space, const Net& net, Point start,
                                 long long eval_cap) {
    RestartResult res;
    const int d = space.dim();
    project_into_ball(space, start);

    Point z = std::move(start);
    double v = min_distance(space, net, z);
    res.evals = 1;

    Point cand;
    double h = 0.5;
    while (h >= 1e-4 && res.evals < eval_cap) {
        double best_v = v;
        Point best_z;
        for (int i = 0; i < d && res.evals < eval_cap; ++i) {
            for (int s = -1; s <= 1 && res.evals < eval_cap; s += 2) {
                cand = z;
                cand[i] += s * h;
                project_into_ball(space, cand);
                const double val = min_distance(space, net, cand);
                ++res.evals;
                if (val > best_v) {
                    best_v = val;
                    best_z = cand;
                }
            }
        }
        if (res.evals < eval_cap) {
            const double zn = space.norm(z);
            if (zn > 1e-12) {
                cand = scaled(z, 1.0 / zn);
                const double val = min_distance(space, net, cand);
                ++res.evals;
                if (val > best_v) {
                    best_v = val;
                    best_z = cand;
                }
            }
        }
        if (!best_z.empty()) {
            z = std::move(best_z);
            v = best_v;
        } else {
            h *= 0.5;
        }
    }
    res.value = v;
    res.z = std::move(z);
    return res;
}

std::optional<double> resolve_upper(const Space& space, const std::string& provenance,
                                    const nlohmann::json& params);

}  // namespace

double min_distance(const Space& space, const Net& net, std::span<const double> z) {
    if (net.points.empty()) throw std::invalid_argument("min_distance: empty net");
    double best = std::numeric_limits<double>::infinity();
    Point diff(z.size());
    for (const Point& x : net.points) {
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = z[i] - x[i];
        best = std::min(best, space.norm(diff));
    }
    return best;
}

CoveringReport covering_radius_lower(const Space& space, const Net& net,
                                     const std::vector<Point>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("covering_radius_lower: no candidates");
    CoveringReport report;
    report.certified_lower = -1.0;
    for (const Point& c : candidates) {
        Point z = c;
        project_into_ball(space, z);
        const double v = min_distance(space, net, z);
        ++report.evaluations;
        if (v > report.certified_lower) {
            report.certified_lower = v;
            report.best_witness = std::move(z);
        }
    }
    report.empirical_estimate = report.certified_lower;
    return report;
}

CoveringReport covering_radius_estimate(const Space& space, const Net& net,
                                        const SearchOptions& options) {
    if (options.budget < 1)
        throw std::invalid_argument("covering_radius_estimate: budget must be >= 1");
    const int seeds = static_cast<int>(options.seed_points.size());
    const int restarts = std::max({options.restarts, seeds, 1});
    const long long per_budget = std::max<long long>(32, options.budget / restarts);

    std::vector<RestartResult> slots(restarts);
    parallel_for(restarts, [&](int r) {
        Point start = r < seeds ? options.seed_points[r]
                                : sample_ball(space, sub_seed(options.seed,
                                                              static_cast<std::uint64_t>(r)));
        slots[r] = pattern_search_max(space, net, std::move(start), per_budget);
    });

    CoveringReport report;
    report.seed = options.seed;
    int best = 0;
    for (int r = 0; r < restarts; ++r) {
        report.evaluations += slots[r].evals;
        if (slots[r].value > slots[best].value) best = r;
    }
    report.certified_lower = slots[best].value;
    report.empirical_estimate = slots[best].value;
    report.best_witness = std::move(slots[best].z);
    report.analytic_upper = analytic_upper(net);
    return report;
}

namespace {

std::optional<double> resolve_upper(const Space& space, const std::string& provenance,
                                    const nlohmann::json& params) {
    if (provenance == "lp_func_net") {
        const double p = params.at("p").get<double>();
        const int n = params.at("n").get<int>();
        if (p < 2.0) return std::nullopt;  // the closed form rests on p >= 2
        const double t = std::pow(static_cast<double>(n), -1.0 / p);
        const double inner =
            0.5 * (std::pow(1.0 + t, p) + std::pow(1.0 - t, p)) + 1.0;
        return std::pow(inner, 1.0 / p);
    }
    if (provenance == "antipodal_net") {
        // sup over the ball of min_± |z -/+ x0| is 2^(1/p) in lp coordinates
        if (space.kind() == SpaceKind::lp_seq || space.kind() == SpaceKind::lp_step)
            return std::pow(2.0, std::isinf(space.p()) ? 0.0 : 1.0 / space.p());
        return std::nullopt;
    }
    if (provenance == "four_point_net") return std::sqrt(2.0 + std::sqrt(2.0));
    if (provenance == "hyperplane_net") return 1.0;
    if (provenance == "prop1_antipodal_interpretation") {
        if (space.kind() != SpaceKind::p_sum) return std::nullopt;
        return std::pow(2.0, std::isinf(space.p()) ? 0.0 : 1.0 / space.p());
    }
    if (provenance == "product_net") {
        const double eps = params.at("eps").get<double>();
        double worst = 0.0;
        for (const auto& jf : params.at("factors")) {
            const auto inner =
                resolve_upper(jf.at("space").get<Space>(),
                              jf.at("provenance").get<std::string>(), jf.at("params"));
            if (!inner) return std::nullopt;
            worst = std::max(worst, *inner);
        }
        return worst + 2.0 * eps;
    }
    return std::nullopt;
}

}  // namespace

std::optional<double> analytic_upper(const Net& net) {
    return resolve_upper(net.space, net.provenance, net.params);
}

ThicknessSearchResult thickness_search(const Space& space, int m, long long budget,
                                       std::uint64_t seed) {
    if (m < 1) throw std::invalid_argument("thickness_search requires m >= 1");
    if (budget < 1) throw std::invalid_argument("thickness_search: budget must be >= 1");

    const int d = space.dim();
    const int iterations = std::max(40, 3 * m);
    const long long inner_budget = std::max<long long>(512, budget / (iterations + 1));

    std::vector<Point> points = random_unit_net(space, m, sub_seed(seed, 0xBA5E)).points;

    const auto net_of = [&](const std::vector<Point>& pts) {
        return make_net(space, pts, "thickness_search", {{"m", m}});
    };

    ThicknessSearchResult out;
    out.m = m;
    out.iterations = iterations;
    double best_value = std::numeric_limits<double>::infinity();

    for (int it = 0; it <= iterations; ++it) {
        Net net = net_of(points);

        SearchOptions inner;
        inner.budget = inner_budget;
        inner.restarts = 8;
        inner.seed = sub_seed(seed, 1000 + static_cast<std::uint64_t>(it));
        inner.seed_points.reserve(points.size() + 1);
        for (const Point& x : points) inner.seed_points.push_back(scaled(x, -1.0));
        inner.seed_points.push_back(Point(d, 0.0));

        CoveringReport report = covering_radius_estimate(space, net, inner);
        const Point worst = report.best_witness;
        if (report.empirical_estimate < best_value) {
            best_value = report.empirical_estimate;
            out.net = std::move(net);
            out.report = std::move(report);
        }
        if (it == iterations) break;

        const double wn = space.norm(worst);
        if (wn < 1e-9) continue;
        const Point wdir = scaled(worst, 1.0 / wn);

        std::size_t nearest = 0;
        double nearest_dist = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < points.size(); ++i) {
            const double dist = space.norm(sub(worst, points[i]));
            if (dist < nearest_dist) {
                nearest_dist = dist;
                nearest = i;
            }
        }

        const double frac = iterations <= 1 ? 1.0
                                            : static_cast<double>(it) /
                                                  static_cast<double>(iterations - 1);
        const double step = 0.5 * std::pow(0.015 / 0.5, frac);
        Point moved(d);
        for (int c = 0; c < d; ++c)
            moved[c] = (1.0 - step) * points[nearest][c] + step * wdir[c];
        if (space.norm(moved) > 1e-9) points[nearest] = normalize(space, moved);
    }
    return out;
}

NonsquarenessResult nonsquareness_estimate(const Space& space, long long budget,
                                           std::uint64_t seed) {
    if (budget < 1) throw std::invalid_argument("nonsquareness_estimate: budget must be >= 1");
    const int d = space.dim();

    // unit basis pairs first (they are exact maximizers in the split-sum
    // examples), then random unit pairs
    std::vector<std::pair<Point, Point>> starts;
    const int nb = std::min(d, 4);
    for (int a = 0; a < nb; ++a)
        for (int b = a + 1; b < nb; ++b) {
            Point ea(d, 0.0), eb(d, 0.0);
            ea[a] = 1.0;
            eb[b] = 1.0;
            starts.emplace_back(normalize(space, ea), normalize(space, eb));
        }
    const int random_starts = 16;
    for (int r = 0; r < random_starts; ++r) {
        Rng rng(sub_seed(seed, 0x4000 + static_cast<std::uint64_t>(r)));
        Point x(d), y(d);
        for (int c = 0; c < d; ++c) x[c] = rng.normal();
        for (int c = 0; c < d; ++c) y[c] = rng.normal();
        if (space.norm(x) < 1e-12 || space.norm(y) < 1e-12) continue;
        starts.emplace_back(normalize(space, x), normalize(space, y));
    }

    const int restarts = static_cast<int>(starts.size());
    const long long per_budget = std::max<long long>(32, budget / restarts);

    struct PairResult {
        double value = -1.0;
        Point x, y;
        long long evals = 0;
    };
    std::vector<PairResult> slots(restarts);

    const auto objective = [&](const Point& x, const Point& y) {
        return std::min(space.norm(sub(x, y)), space.norm(add(x, y)));
    };

    parallel_for(restarts, [&](int r) {
        PairResult res;
        Point x = starts[r].first;
        Point y = starts[r].second;
        double v = objective(x, y);
        res.evals = 1;
        double h = 0.5;
        Point raw;
        while (h >= 1e-4 && res.evals < per_budget) {
            double best_v = v;
            Point best_x, best_y;
            for (int side = 0; side < 2; ++side) {
                for (int i = 0; i < d && res.evals < per_budget; ++i) {
                    for (int s = -1; s <= 1 && res.evals < per_budget; s += 2) {
                        raw = side == 0 ? x : y;
                        raw[i] += s * h;
                        const double n = space.norm(raw);
                        if (n < 1e-12) continue;
                        for (double& c : raw) c /= n;
                        const double val =
                            side == 0 ? objective(raw, y) : objective(x, raw);
                        ++res.evals;
                        if (val > best_v) {
                            best_v = val;
                            if (side == 0) {
                                best_x = raw;
                                best_y.clear();
                            } else {
                                best_y = raw;
                                best_x.clear();
                            }
                        }
                    }
                }
            }
            if (!best_x.empty() || !best_y.empty()) {
                if (!best_x.empty()) x = std::move(best_x);
                if (!best_y.empty()) y = std::move(best_y);
                v = best_v;
            } else {
                h *= 0.5;
            }
        }
        res.value = v;
        res.x = std::move(x);
        res.y = std::move(y);
        slots[r] = std::move(res);
    });

    NonsquarenessResult out;
    out.seed = seed;
    int best = 0;
    for (int r = 0; r < restarts; ++r) {
        out.evaluations += slots[r].evals;
        if (slots[r].value > slots[best].value) best = r;
    }
    out.value = slots[best].value;
    out.x = std::move(slots[best].x);
    out.y = std::move(slots[best].y);
    return out;
}

void to_json(nlohmann::json& j, const CoveringReport& report) {
    j = {{"certified_lower", report.certified_lower},
         {"empirical_estimate", report.empirical_estimate},
         {"analytic_upper", report.analytic_upper
                                ? nlohmann::json(*report.analytic_upper)
                                : nlohmann::json(nullptr)},
         {"best_witness", report.best_witness},
         {"evaluations", report.evaluations},
         {"seed", report.seed}};
}

void from_json(const nlohmann::json& j, CoveringReport& report) {
    report.certified_lower = j.at("certified_lower").get<double>();
    report.empirical_estimate = j.at("empirical_estimate").get<double>();
    const auto& ju = j.at("analytic_upper");
    report.analytic_upper =
        ju.is_null() ? std::nullopt : std::optional<double>(ju.get<double>());
    report.best_witness = j.at("best_witness").get<Point>();
    report.evaluations = j.at("evaluations").get<long long>();
    report.seed = j.at("seed").get<std::uint64_t>();
}

void to_json(nlohmann::json& j, const ThicknessSearchResult& result) {
    j = {{"m", result.m},
         {"net", result.net},
         {"report", result.report},
         {"iterations", result.iterations}};
}

void to_json(nlohmann::json& j, const NonsquarenessResult& result) {
    j = {{"value", result.value},
         {"x", result.x},
         {"y", result.y},
         {"evaluations", result.evaluations},
         {"seed", result.seed}};
}

}  // namespace thickness
