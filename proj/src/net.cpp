#include "thickness/net.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_set>

#include "thickness/rng.hpp"

namespace thickness {

namespace {

// dedup key: coordinates rounded at 1e-12
std::string round_key(const Point& x) {
    std::string key(x.size() * sizeof(long long), '\0');
    for (std::size_t i = 0; i < x.size(); ++i) {
        long long r = std::llround(x[i] * 1e12);
        if (r == 0) r = 0;  // collapse -0
        std::memcpy(key.data() + i * sizeof(long long), &r, sizeof(long long));
    }
    return key;
}

Point basis_point(int dim, int index, double value) {
    Point e(dim, 0.0);
    e[index] = value;
    return e;
}

}  // namespace

Net make_net(Space space, std::vector<Point> points, std::string provenance,
             nlohmann::json params) {
    if (points.empty()) throw std::invalid_argument("net must be nonempty");
    for (const Point& x : points) {
        if (static_cast<int>(x.size()) != space.dim())
            throw std::invalid_argument("net point dimension mismatch");
        const double n = space.norm(x);
        if (std::abs(n - 1.0) > NET_UNIT_TOL)
            throw std::invalid_argument("net point has norm " + std::to_string(n) +
                                        ", not unit within tolerance");
    }
    return Net{std::move(space), std::move(points), std::move(provenance),
               std::move(params)};
}

Net lp_func_net(double p, int n) {
    const Space space = Space::lp_step(p, n);
    const double c = std::pow(static_cast<double>(n), 1.0 / p);
    std::vector<Point> pts;
    pts.reserve(2 * static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pts.push_back(basis_point(n, i, c));
    for (int i = 0; i < n; ++i) pts.push_back(basis_point(n, i, -c));
    return make_net(space, std::move(pts), "lp_func_net", {{"p", p}, {"n", n}});
}

Net antipodal_net(const Space& space, const Point& x0) {
    if (static_cast<int>(x0.size()) != space.dim())
        throw std::invalid_argument("antipodal_net: dimension mismatch");
    if (std::abs(space.norm(x0) - 1.0) > NET_UNIT_TOL)
        throw std::invalid_argument("antipodal_net: x0 is not unit");
    return make_net(space, {x0, scaled(x0, -1.0)}, "antipodal_net",
                    nlohmann::json::object());
}

std::vector<Point> sphere_eps_net(int N, double p, double eps, long long cap) {
    if (N < 1) throw std::invalid_argument("sphere_eps_net requires N >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("sphere_eps_net requires eps > 0");
    if (!(p >= 1.0)) throw std::invalid_argument("sphere_eps_net requires p >= 1");

    const double root = std::isinf(p) ? 1.0 : std::pow(static_cast<double>(N), 1.0 / p);
    const double delta = std::min(1.0, eps / (2.0 * root));
    const long long half = std::max<long long>(1, static_cast<long long>(std::floor(1.0 / delta + 1e-9)));

    // grid size check before any enumeration
    const double count = std::pow(2.0 * static_cast<double>(half) + 1.0, N);
    if (count > static_cast<double>(cap)) {
        const long long required =
            count > 9e18 ? std::numeric_limits<long long>::max()
                         : static_cast<long long>(count);
        throw resource_error(required, cap);
    }

    const Space space = Space::lp_seq(p, N);
    std::vector<Point> out;
    std::unordered_set<std::string> seen;
    std::vector<long long> idx(N, -half);
    Point node(N);
    while (true) {
        bool zero = true;
        for (int i = 0; i < N; ++i) {
            node[i] = static_cast<double>(idx[i]) * delta;
            if (idx[i] != 0) zero = false;
        }
        if (!zero) {
            Point u = normalize(space, node);
            if (seen.insert(round_key(u)).second) out.push_back(std::move(u));
        }
        int c = N - 1;
        while (c >= 0 && idx[c] == half) {
            idx[c] = -half;
            --c;
        }
        if (c < 0) break;
        ++idx[c];
    }
    return out;
}

Net product_net(const std::vector<Net>& factor_nets, double p, double eps,
                long long cap) {
    if (factor_nets.empty())
        throw std::invalid_argument("product_net requires at least one factor net");
    const int N = static_cast<int>(factor_nets.size());
    const std::vector<Point> lambdas = sphere_eps_net(N, p, eps, cap);

    double combos = static_cast<double>(lambdas.size());
    std::vector<Space> factor_spaces;
    factor_spaces.reserve(factor_nets.size());
    for (const Net& fn : factor_nets) {
        combos *= static_cast<double>(fn.points.size());
        factor_spaces.push_back(fn.space);
    }
    if (combos > static_cast<double>(cap)) {
        const long long required =
            combos > 9e18 ? std::numeric_limits<long long>::max()
                          : static_cast<long long>(combos);
        throw resource_error(required, cap);
    }

    const Space host = Space::p_sum(p, factor_spaces);
    std::vector<Point> pts;
    std::unordered_set<std::string> seen;
    std::vector<std::size_t> choice(factor_nets.size(), 0);
    Point z(host.dim());
    for (const Point& lambda : lambdas) {
        std::fill(choice.begin(), choice.end(), 0);
        while (true) {
            std::size_t off = 0;
            for (int f = 0; f < N; ++f) {
                const Point& x = factor_nets[f].points[choice[f]];
                for (std::size_t i = 0; i < x.size(); ++i) z[off + i] = lambda[f] * x[i];
                off += x.size();
            }
            if (seen.insert(round_key(z)).second) pts.push_back(z);
            int c = N - 1;
            while (c >= 0 && choice[c] + 1 == factor_nets[c].points.size()) {
                choice[c] = 0;
                --c;
            }
            if (c < 0) break;
            ++choice[c];
        }
    }

    nlohmann::json factor_descr = nlohmann::json::array();
    for (const Net& fn : factor_nets)
        factor_descr.push_back({{"space", fn.space},
                                {"provenance", fn.provenance},
                                {"params", fn.params}});
    return make_net(host, std::move(pts), "product_net",
                    {{"p", std::isinf(p) ? nlohmann::json("inf") : nlohmann::json(p)},
                     {"eps", eps},
                     {"lambda_count", lambdas.size()},
                     {"factors", std::move(factor_descr)}});
}

Net embed_net(const Net& factor_net, int position, const Space& host) {
    if (host.kind() != SpaceKind::p_sum)
        throw std::invalid_argument("embed_net: host must be a p_sum space");
    const auto& factors = host.factors();
    if (position < 1 || position > static_cast<int>(factors.size()))
        throw std::invalid_argument("embed_net: position out of range");
    if (factors[position - 1] != factor_net.space)
        throw std::invalid_argument("embed_net: host factor does not match net space");
    std::size_t off = 0;
    for (int f = 0; f + 1 < position; ++f) off += factors[f].dim();

    std::vector<Point> pts;
    pts.reserve(factor_net.points.size());
    for (const Point& u : factor_net.points) {
        Point v(host.dim(), 0.0);
        std::copy(u.begin(), u.end(), v.begin() + static_cast<long>(off));
        pts.push_back(std::move(v));
    }
    return make_net(host, std::move(pts), "embed_net",
                    {{"position", position},
                     {"inner_provenance", factor_net.provenance}});
}

Net hyperplane_net(const Space& host) {
    if (host.kind() != SpaceKind::p_sum || !std::isinf(host.p()) ||
        host.factors().size() != 2 || host.factors().back().dim() != 1)
        throw std::invalid_argument(
            "hyperplane_net: host must be an l_inf sum [X, scalar]");
    const int d = host.dim();
    return make_net(host, {basis_point(d, d - 1, 1.0), basis_point(d, d - 1, -1.0)},
                    "hyperplane_net", nlohmann::json::object());
}

Net four_point_net(const Space& host) {
    const auto bad = [] {
        return std::invalid_argument(
            "four_point_net: host must be PSum(2, [LpSeq(1,d), LpSeq(1,d)])");
    };
    if (host.kind() != SpaceKind::p_sum || host.p() != 2.0 ||
        host.factors().size() != 2)
        throw bad();
    for (const Space& f : host.factors())
        if (f.kind() != SpaceKind::lp_seq || f.p() != 1.0) throw bad();
    if (host.factors()[0].dim() != host.factors()[1].dim()) throw bad();
    const int d = host.factors()[0].dim();
    return make_net(host,
                    {basis_point(2 * d, 0, 1.0), basis_point(2 * d, 0, -1.0),
                     basis_point(2 * d, d, 1.0), basis_point(2 * d, d, -1.0)},
                    "four_point_net", {{"d", d}});
}

Net prop1_net(const Space& host) {
    if (host.kind() != SpaceKind::p_sum || host.factors().empty())
        throw std::invalid_argument("prop1_net: host must be a p_sum space");
    const Space& first = host.factors().front();
    const bool same_p =
        first.p() == host.p() || (std::isinf(first.p()) && std::isinf(host.p()));
    if (first.kind() != SpaceKind::lp_seq || !same_p)
        throw std::invalid_argument(
            "prop1_net: first factor must be LpSeq with the host's p");
    // the source text's "z_2 = -z" is not a fixed point; the antipodal pair
    // is what the case split actually uses
    return make_net(host, {basis_point(host.dim(), 0, 1.0),
                           basis_point(host.dim(), 0, -1.0)},
                    "prop1_antipodal_interpretation", nlohmann::json::object());
}

Net random_unit_net(const Space& space, int count, std::uint64_t seed, int support) {
    if (count < 1) throw std::invalid_argument("random_unit_net requires count >= 1");
    if (support < 0 || support > space.dim())
        throw std::invalid_argument("random_unit_net: bad support size");
    const int live = support == 0 ? space.dim() : support;
    std::vector<Point> pts;
    pts.reserve(count);
    for (int i = 0; i < count; ++i) {
        Rng rng(sub_seed(seed, static_cast<std::uint64_t>(i)));
        Point x(space.dim(), 0.0);
        double mass = 0.0;
        while (mass == 0.0) {
            for (int c = 0; c < live; ++c) {
                x[c] = rng.normal();
                mass += std::abs(x[c]);
            }
        }
        pts.push_back(normalize(space, x));
    }
    return make_net(space, std::move(pts), "random_unit",
                    {{"count", count}, {"seed", seed}, {"support", support}});
}

void to_json(nlohmann::json& j, const Net& net) {
    j = {{"space", net.space},
         {"provenance", net.provenance},
         {"params", net.params},
         {"points", net.points}};
}

void from_json(const nlohmann::json& j, Net& net) {
    Space space = j.at("space").get<Space>();
    std::vector<Point> points = j.at("points").get<std::vector<Point>>();
    net = make_net(std::move(space), std::move(points),
                   j.at("provenance").get<std::string>(), j.at("params"));
}

}  // namespace thickness
