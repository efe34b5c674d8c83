#include "thickness/space.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "thickness/rng.hpp"
#include "thickness/tolerances.hpp"

namespace thickness {

namespace {

bool is_inf(double p) { return std::isinf(p); }

// Scaled accumulation of sum |v|^p: factors out the running max so that
// pow never sees extreme arguments. finish() returns (sum |v|^p)^(1/p).
struct PowSum {
    double m = 0.0;
    double acc = 0.0;

    void add(double v, double p) {
        const double av = std::abs(v);
        if (av == 0.0) return;
        if (av > m) {
            if (m > 0.0) acc *= std::pow(m / av, p);
            m = av;
        }
        acc += std::pow(av / m, p);
    }

    double finish(double p) const {
        if (m == 0.0) return 0.0;
        return m * std::pow(acc, 1.0 / p);
    }
};

double lp_norm(std::span<const double> x, double p) {
    if (is_inf(p)) {
        double m = 0.0;
        for (double v : x) m = std::max(m, std::abs(v));
        return m;
    }
    if (p == 1.0) {
        double s = 0.0;
        for (double v : x) s += std::abs(v);
        return s;
    }
    if (p == 2.0) {
        double s = 0.0;
        for (double v : x) s += v * v;
        return std::sqrt(s);
    }
    PowSum ps;
    for (double v : x) ps.add(v, p);
    return ps.finish(p);
}

}  // namespace

Space Space::lp_seq(double p, int dim) {
    if (!(p >= 1.0) || std::isnan(p))
        throw std::invalid_argument("lp_seq requires p in [1, inf]");
    if (dim < 1) throw std::invalid_argument("lp_seq requires dim >= 1");
    Space s;
    s.kind_ = SpaceKind::lp_seq;
    s.p_ = p;
    s.dim_ = dim;
    return s;
}

Space Space::lp_step(double p, int intervals) {
    if (!(p >= 1.0) || is_inf(p))
        throw std::invalid_argument("lp_step requires p in [1, inf)");
    if (intervals < 1) throw std::invalid_argument("lp_step requires n >= 1");
    Space s;
    s.kind_ = SpaceKind::lp_step;
    s.p_ = p;
    s.dim_ = intervals;
    return s;
}

Space Space::p_sum(double p, std::vector<Space> factors) {
    if (!(p >= 1.0) || std::isnan(p))
        throw std::invalid_argument("p_sum requires p in [1, inf]");
    if (factors.empty()) throw std::invalid_argument("p_sum requires at least one factor");
    Space s;
    s.kind_ = SpaceKind::p_sum;
    s.p_ = p;
    s.dim_ = 0;
    for (const Space& f : factors) s.dim_ += f.dim();
    s.factors_ = std::move(factors);
    return s;
}

Space Space::poly_k(int k, int dim) {
    if (dim < 1) throw std::invalid_argument("poly_k requires dim >= 1");
    if (k < 1 || k > dim) throw std::invalid_argument("poly_k requires 1 <= k <= dim");
    Space s;
    s.kind_ = SpaceKind::poly_k;
    s.dim_ = dim;
    s.k_ = k;
    return s;
}

double Space::norm(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("dimension mismatch: point has " +
                                    std::to_string(x.size()) + " coordinates, space has " +
                                    std::to_string(dim_));
    switch (kind_) {
        case SpaceKind::lp_seq:
            return lp_norm(x, p_);
        case SpaceKind::lp_step: {
            const double raw = lp_norm(x, p_);
            return raw * std::pow(1.0 / dim_, 1.0 / p_);
        }
        case SpaceKind::p_sum: {
            if (is_inf(p_)) {
                double m = 0.0;
                std::size_t off = 0;
                for (const Space& f : factors_) {
                    m = std::max(m, f.norm(x.subspan(off, f.dim())));
                    off += f.dim();
                }
                return m;
            }
            PowSum ps;
            std::size_t off = 0;
            for (const Space& f : factors_) {
                ps.add(f.norm(x.subspan(off, f.dim())), p_);
                off += f.dim();
            }
            return ps.finish(p_);
        }
        case SpaceKind::poly_k: {
            thread_local std::vector<double> scratch;
            scratch.resize(x.size());
            for (std::size_t i = 0; i < x.size(); ++i) scratch[i] = std::abs(x[i]);
            std::nth_element(scratch.begin(), scratch.begin() + (k_ - 1), scratch.end(),
                             std::greater<double>());
            double s = 0.0;
            for (int i = 0; i < k_; ++i) s += scratch[i];
            return s / k_;
        }
    }
    throw std::logic_error("unreachable space kind");
}

bool Space::operator==(const Space& other) const {
    if (kind_ != other.kind_ || dim_ != other.dim_) return false;
    switch (kind_) {
        case SpaceKind::lp_seq:
        case SpaceKind::lp_step:
            return p_ == other.p_ || (is_inf(p_) && is_inf(other.p_));
        case SpaceKind::poly_k:
            return k_ == other.k_;
        case SpaceKind::p_sum:
            if (!(p_ == other.p_ || (is_inf(p_) && is_inf(other.p_)))) return false;
            return factors_ == other.factors_;
    }
    return false;
}

Point normalize(const Space& space, std::span<const double> x) {
    const double n = space.norm(x);
    if (n <= 0.0) throw std::domain_error("cannot normalize the zero vector");
    return scaled(x, 1.0 / n);
}

Point sample_ball(const Space& space, std::uint64_t seed) {
    Rng rng(seed);
    const int d = space.dim();
    Point dir(d);
    for (int i = 0; i < d; ++i) dir[i] = rng.normal();
    double n = space.norm(dir);
    if (n <= 0.0) {
        dir.assign(d, 0.0);
        dir[0] = 1.0;
        n = space.norm(dir);
    }
    const double radius = std::pow(rng.uniform(), 1.0 / d);
    Point z = scaled(dir, radius / n);
    const double zn = space.norm(z);
    if (zn > 1.0)
        for (double& v : z) v /= zn;
    return z;
}

std::vector<std::pair<Space, Point>> psum_split(const Space& space,
                                                std::span<const double> x) {
    if (space.kind() != SpaceKind::p_sum)
        throw std::invalid_argument("psum_split requires a p_sum space");
    if (static_cast<int>(x.size()) != space.dim())
        throw std::invalid_argument("psum_split: dimension mismatch");
    std::vector<std::pair<Space, Point>> parts;
    parts.reserve(space.factors().size());
    std::size_t off = 0;
    for (const Space& f : space.factors()) {
        auto block = x.subspan(off, f.dim());
        parts.emplace_back(f, Point(block.begin(), block.end()));
        off += f.dim();
    }
    return parts;
}

Point unit_point(const Space& space) {
    Point e(space.dim(), 0.0);
    if (space.kind() == SpaceKind::p_sum) {
        const Point inner = unit_point(space.factors().front());
        std::copy(inner.begin(), inner.end(), e.begin());
    } else {
        e[0] = 1.0;
    }
    return normalize(space, e);
}

void to_json(nlohmann::json& j, const Space& space) {
    const auto p_field = [](double p) -> nlohmann::json {
        if (std::isinf(p)) return "inf";
        return p;
    };
    switch (space.kind()) {
        case SpaceKind::lp_seq:
            j = {{"kind", "lp_seq"}, {"p", p_field(space.p())}, {"dim", space.dim()}};
            break;
        case SpaceKind::lp_step:
            j = {{"kind", "lp_step"}, {"p", p_field(space.p())}, {"n", space.dim()}};
            break;
        case SpaceKind::p_sum: {
            nlohmann::json factors = nlohmann::json::array();
            for (const Space& f : space.factors()) factors.push_back(f);
            j = {{"kind", "p_sum"}, {"p", p_field(space.p())}, {"factors", std::move(factors)}};
            break;
        }
        case SpaceKind::poly_k:
            j = {{"kind", "poly_k"}, {"k", space.k()}, {"dim", space.dim()}};
            break;
    }
}

void from_json(const nlohmann::json& j, Space& space) {
    const std::string kind = j.at("kind").get<std::string>();
    const auto parse_p = [&]() -> double {
        const auto& jp = j.at("p");
        if (jp.is_string()) {
            if (jp.get<std::string>() == "inf") return P_INF;
            throw std::invalid_argument("p must be a number or \"inf\"");
        }
        return jp.get<double>();
    };
    if (kind == "lp_seq") {
        space = Space::lp_seq(parse_p(), j.at("dim").get<int>());
    } else if (kind == "lp_step") {
        space = Space::lp_step(parse_p(), j.at("n").get<int>());
    } else if (kind == "p_sum") {
        std::vector<Space> factors;
        for (const auto& jf : j.at("factors")) factors.push_back(jf.get<Space>());
        space = Space::p_sum(parse_p(), std::move(factors));
    } else if (kind == "poly_k") {
        space = Space::poly_k(j.at("k").get<int>(), j.at("dim").get<int>());
    } else {
        throw std::invalid_argument("unknown space kind: " + kind);
    }
}

}  // namespace thickness
