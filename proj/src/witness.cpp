#include "thickness/witness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "thickness/rng.hpp"
#include "thickness/tolerances.hpp"

namespace thickness {

namespace {

double clamp0(double v) { return v > 0.0 ? v : 0.0; }

// argmin over values, smallest index on ties
std::size_t argmin(const std::vector<double>& values) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[best]) best = i;
    return best;
}

}  // namespace

WitnessReport lp_step_witness(const Net& net, int refine) {
    if (net.space.kind() != SpaceKind::lp_step)
        throw std::invalid_argument("lp_step_witness: net must live in LpStep");
    if (refine < 1) throw std::invalid_argument("lp_step_witness: refine must be >= 1");
    const double p = net.space.p();
    const int n = net.space.dim();
    const int N = n * refine;
    const Space fine = Space::lp_step(p, N);

    // each refined subinterval inside coarse slot s carries (1/N)|c_i(s)|^p
    // of net point i, so the selection reduces to coarse slots
    std::vector<double> slot_mass(n, 0.0);
    for (int s = 0; s < n; ++s) {
        double worst = 0.0;
        for (const Point& x : net.points)
            worst = std::max(worst, std::pow(std::abs(x[s]), p));
        slot_mass[s] = worst;
    }
    const std::size_t slot = argmin(slot_mass);
    const int interval = static_cast<int>(slot) * refine;
    const double eps_pow = slot_mass[slot] / N;
    const double eps = std::pow(eps_pow, 1.0 / p);

    WitnessReport report;
    report.witness.assign(N, 0.0);
    report.witness[interval] = std::pow(static_cast<double>(N), 1.0 / p);
    report.guaranteed_distance =
        std::pow(1.0 - eps_pow + std::pow(clamp0(1.0 - eps), p), 1.0 / p);
    report.construction = "lp_step_witness";
    report.params = {{"p", p},         {"n", n},
                     {"refine", refine}, {"interval", interval + 1},
                     {"eps", eps},       {"eps_pow_p", eps_pow}};

    // measure in the refined space against repeated-coefficient embeddings
    double measured = std::numeric_limits<double>::infinity();
    Point embedded(N);
    for (const Point& x : net.points) {
        for (int s = 0; s < n; ++s)
            for (int r = 0; r < refine; ++r) embedded[s * refine + r] = x[s];
        measured = std::min(measured, fine.norm(sub(report.witness, embedded)));
    }
    report.measured_distance = measured;
    return report;
}

WitnessReport tail_witness(const Space& space, const Net& net) {
    if (net.points.empty()) throw std::invalid_argument("tail_witness: empty net");
    const double p = space.p();
    if (std::isinf(p)) throw std::invalid_argument("tail_witness requires finite p");

    int blocks = 0;
    if (space.kind() == SpaceKind::lp_seq) {
        blocks = space.dim();
    } else if (space.kind() == SpaceKind::p_sum) {
        blocks = static_cast<int>(space.factors().size());
    } else {
        throw std::invalid_argument("tail_witness requires LpSeq or PSum");
    }
    if (blocks < 2)
        throw std::invalid_argument("tail_witness needs at least 2 blocks");

    std::vector<double> block_mass(blocks, 0.0);
    if (space.kind() == SpaceKind::lp_seq) {
        for (const Point& x : net.points)
            for (int j = 0; j < blocks; ++j)
                block_mass[j] = std::max(block_mass[j], std::abs(x[j]));
    } else {
        for (const Point& x : net.points) {
            std::size_t off = 0;
            for (int j = 0; j < blocks; ++j) {
                const Space& f = space.factors()[j];
                block_mass[j] = std::max(
                    block_mass[j],
                    f.norm(std::span<const double>(x).subspan(off, f.dim())));
                off += f.dim();
            }
        }
    }
    const std::size_t j = argmin(block_mass);
    const double eps = block_mass[j];
    const double u = std::min(eps, 1.0);

    WitnessReport report;
    report.witness.assign(space.dim(), 0.0);
    if (space.kind() == SpaceKind::lp_seq) {
        report.witness[j] = 1.0;
    } else {
        std::size_t off = 0;
        for (std::size_t f = 0; f < j; ++f) off += space.factors()[f].dim();
        const Point inner = unit_point(space.factors()[j]);
        std::copy(inner.begin(), inner.end(),
                  report.witness.begin() + static_cast<long>(off));
    }
    report.guaranteed_distance =
        std::pow(1.0 - std::pow(u, p) + std::pow(clamp0(1.0 - eps), p), 1.0 / p);
    report.measured_distance = min_distance(space, net, report.witness);
    report.construction = "tail_witness";
    report.params = {{"block", j + 1}, {"eps", eps}};
    return report;
}

WitnessReport linf_adversary(const Space& space, const Net& net, double alpha,
                             double eps, const SearchOptions& factor_search) {
    if (space.kind() != SpaceKind::p_sum || !std::isinf(space.p()))
        throw std::invalid_argument("linf_adversary requires PSum(inf, ...)");
    if (!(eps > 0.0) || !(eps < alpha))
        throw std::invalid_argument("linf_adversary requires 0 < eps < alpha");

    const auto& factors = space.factors();
    const int F = static_cast<int>(factors.size());
    const int M = static_cast<int>(net.points.size());

    // block views and norms
    std::vector<std::size_t> offsets(F, 0);
    for (int f = 1; f < F; ++f) offsets[f] = offsets[f - 1] + factors[f - 1].dim();

    std::vector<bool> covered(M, false);
    Point witness(space.dim(), 0.0);
    nlohmann::json factor_log = nlohmann::json::array();

    for (int f = 0; f < F; ++f) {
        const Space& fs = factors[f];
        std::vector<Point> heavy;
        std::vector<int> heavy_idx;
        for (int i = 0; i < M; ++i) {
            std::span<const double> block(net.points[i].data() + offsets[f],
                                          static_cast<std::size_t>(fs.dim()));
            const double bn = fs.norm(block);
            if (bn >= 1.0 - eps) {
                heavy.push_back(normalize(fs, block));
                heavy_idx.push_back(i);
            }
        }
        if (heavy.empty()) {
            factor_log.push_back({{"factor", f + 1}, {"heavy", 0}});
            continue;
        }

        Net targets{fs, heavy, "linf_adversary_targets", nlohmann::json::object()};
        SearchOptions opts = factor_search;
        opts.seed = sub_seed(factor_search.seed, static_cast<std::uint64_t>(f));
        opts.seed_points.clear();
        for (const Point& t : heavy) opts.seed_points.push_back(scaled(t, -1.0));
        const CoveringReport far = covering_radius_estimate(fs, targets, opts);

        const bool success = far.empirical_estimate > alpha + eps;
        if (success) {
            std::copy(far.best_witness.begin(), far.best_witness.end(),
                      witness.begin() + static_cast<long>(offsets[f]));
            for (int i : heavy_idx) covered[i] = true;
        }
        factor_log.push_back({{"factor", f + 1},
                              {"heavy", heavy_idx.size()},
                              {"far_value", far.empirical_estimate},
                              {"success", success}});
    }

    std::vector<int> uncovered;
    for (int i = 0; i < M; ++i)
        if (!covered[i]) uncovered.push_back(i + 1);

    WitnessReport report;
    report.witness = std::move(witness);
    report.measured_distance = min_distance(space, net, report.witness);
    report.construction = "linf_adversary";
    if (uncovered.empty()) {
        report.guaranteed_distance = alpha;
        report.params = {{"status", "certified"},
                         {"alpha", alpha},
                         {"eps", eps},
                         {"factors", std::move(factor_log)},
                         {"note", "witness keeps unscaled factor blocks"}};
    } else {
        report.guaranteed_distance = 0.0;
        report.params = {{"status", "inconclusive"},
                         {"alpha", alpha},
                         {"eps", eps},
                         {"uncovered", std::move(uncovered)},
                         {"factors", std::move(factor_log)},
                         {"note", "witness keeps unscaled factor blocks"}};
    }
    return report;
}

WitnessReport lemma3_witness(const Space& space, const Net& net) {
    const auto bad = [] {
        return std::invalid_argument(
            "lemma3_witness requires PSum(2, [LpSeq(1,d), LpSeq(1,d)])");
    };
    if (space.kind() != SpaceKind::p_sum || space.p() != 2.0 ||
        space.factors().size() != 2)
        throw bad();
    for (const Space& f : space.factors())
        if (f.kind() != SpaceKind::lp_seq || f.p() != 1.0) throw bad();
    const int d = space.factors()[0].dim();
    if (space.factors()[1].dim() != d) throw bad();

    std::vector<double> coord_mass(d, 0.0);
    for (const Point& x : net.points)
        for (int k = 0; k < d; ++k)
            coord_mass[k] =
                std::max({coord_mass[k], std::abs(x[k]), std::abs(x[d + k])});
    const std::size_t k = argmin(coord_mass);
    const double eps = coord_mass[k];
    const double s = 1.0 / std::sqrt(2.0);

    WitnessReport report;
    report.witness.assign(2 * d, 0.0);
    report.witness[k] = s;
    report.witness[d + k] = s;

    double lowest = std::numeric_limits<double>::infinity();
    for (const Point& x : net.points) {
        double a = 0.0, b = 0.0;
        for (int c = 0; c < d; ++c) {
            a += std::abs(x[c]);
            b += std::abs(x[d + c]);
        }
        const double da = clamp0(a - eps) + clamp0(s - eps);
        const double db = clamp0(b - eps) + clamp0(s - eps);
        lowest = std::min(lowest, std::sqrt(da * da + db * db));
    }
    const double floor = std::sqrt(2.0 + std::sqrt(2.0)) - 4.0 * eps;
    report.guaranteed_distance = std::max({lowest, floor, 0.0});
    report.measured_distance = min_distance(space, net, report.witness);
    report.construction = "lemma3_witness";
    report.params = {{"k", k + 1}, {"eps", eps}};
    return report;
}

WitnessReport polyk_witness(const Space& space, const Net& net) {
    if (space.kind() != SpaceKind::poly_k)
        throw std::invalid_argument("polyk_witness requires a PolyK space");
    const int k = space.k();
    const int d = space.dim();
    if (d <= k) throw std::invalid_argument("polyk_witness requires dim > k");

    std::vector<double> coord_mass(d, 0.0);
    for (const Point& x : net.points)
        for (int j = 0; j < d; ++j)
            coord_mass[j] = std::max(coord_mass[j], std::abs(x[j]));
    const std::size_t j = argmin(coord_mass);
    const double eps = coord_mass[j];

    WitnessReport report;
    report.witness.assign(d, 0.0);
    report.witness[j] = static_cast<double>(k);
    // the second summand needs min(k-1, k-eps): the k-1 form holds only
    // while eps <= 1 (a unit point may put mass up to k on one coordinate)
    const double first = clamp0(static_cast<double>(k) - eps);
    const double second = std::min(static_cast<double>(k) - 1.0, first);
    report.guaranteed_distance = (first + clamp0(second)) / k;
    report.measured_distance = min_distance(space, net, report.witness);
    report.construction = "polyk_witness";
    report.params = {{"j", j + 1}, {"eps", eps}, {"k", k}};
    return report;
}

WitnessReport uns_example_witness(const Space& space, const Net& net) {
    const auto bad = [] {
        return std::invalid_argument(
            "uns_example_witness requires PSum(1, [scalar, LpSeq(p,d)])");
    };
    if (space.kind() != SpaceKind::p_sum || space.p() != 1.0 ||
        space.factors().size() != 2)
        throw bad();
    if (space.factors()[0].dim() != 1) throw bad();
    const Space& lp = space.factors()[1];
    if (lp.kind() != SpaceKind::lp_seq || std::isinf(lp.p())) throw bad();
    const int d = lp.dim();
    if (d < 2) throw bad();
    const double p = lp.p();

    std::vector<double> coord_mass(d, 0.0);
    for (const Point& x : net.points)
        for (int j = 0; j < d; ++j)
            coord_mass[j] = std::max(coord_mass[j], std::abs(x[1 + j]));
    const std::size_t j = argmin(coord_mass);
    const double eps = coord_mass[j];

    double lowest = std::numeric_limits<double>::infinity();
    for (const Point& x : net.points) {
        const double b =
            lp.norm(std::span<const double>(x).subspan(1, static_cast<std::size_t>(d)));
        const double inner =
            clamp0(std::pow(b, p) - std::pow(eps, p)) + std::pow(clamp0(1.0 - eps), p);
        lowest = std::min(lowest, clamp0(1.0 - b) + std::pow(inner, 1.0 / p));
    }

    WitnessReport report;
    report.witness.assign(space.dim(), 0.0);
    report.witness[1 + j] = 1.0;
    report.guaranteed_distance = lowest;
    report.measured_distance = min_distance(space, net, report.witness);
    report.construction = "uns_example_witness";
    report.params = {{"j", j + 1}, {"eps", eps}};
    return report;
}

void to_json(nlohmann::json& j, const WitnessReport& report) {
    j = {{"witness", report.witness},
         {"guaranteed", report.guaranteed_distance},
         {"measured", report.measured_distance},
         {"construction", report.construction},
         {"params", report.params}};
}

void from_json(const nlohmann::json& j, WitnessReport& report) {
    report.witness = j.at("witness").get<Point>();
    report.guaranteed_distance = j.at("guaranteed").get<double>();
    report.measured_distance = j.at("measured").get<double>();
    report.construction = j.at("construction").get<std::string>();
    report.params = j.at("params");
}

}  // namespace thickness
