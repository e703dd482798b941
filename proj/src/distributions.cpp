#include "maxlin/distributions.hpp"

#include "maxlin/errors.hpp"

#include <boost/math/special_functions/erf.hpp>

#include <cmath>

namespace maxlin {

Distribution::Distribution(Family f, double p1, double p2) : family_(f), p1_(p1), p2_(p2) {}

Distribution Distribution::frechet(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw InvalidArgumentError("Frechet requires shape > 0 and scale > 0");
    }
    return {Family::Frechet, shape, scale};
}

Distribution Distribution::lognormal(double mu, double sigma) {
    if (!(sigma > 0.0) || !std::isfinite(mu)) {
        throw InvalidArgumentError("LogNormal requires finite mu and sigma > 0");
    }
    return {Family::LogNormal, mu, sigma};
}

Distribution Distribution::pareto(double shape, double scale) {
    if (!(shape > 0.0) || !(scale > 0.0)) {
        throw InvalidArgumentError("Pareto requires shape > 0 and scale > 0");
    }
    return {Family::Pareto, shape, scale};
}

Distribution Distribution::uniform(double lo, double hi) {
    if (!(0.0 < lo) || !(lo < hi)) {
        throw InvalidArgumentError("Uniform requires 0 < lo < hi");
    }
    return {Family::Uniform, lo, hi};
}

double Distribution::cdf(double x) const {
    if (x <= 0.0) return 0.0;
    switch (family_) {
        case Family::Frechet:
            return std::exp(-std::pow(x / p2_, -p1_));
        case Family::LogNormal:
            return 0.5 * std::erfc(-(std::log(x) - p1_) / (p2_ * std::sqrt(2.0)));
        case Family::Pareto:
            return 1.0 - std::pow(1.0 + x / p2_, -p1_);
        case Family::Uniform:
            if (x <= p1_) return 0.0;
            if (x >= p2_) return 1.0;
            return (x - p1_) / (p2_ - p1_);
    }
    return 0.0;
}

double Distribution::quantile(double p) const {
    if (!(p > 0.0) || !(p < 1.0)) {
        throw InvalidArgumentError("quantile requires p in (0,1)");
    }
    switch (family_) {
        case Family::Frechet:
            return p2_ * std::pow(-std::log(p), -1.0 / p1_);
        case Family::LogNormal:
            return std::exp(p1_ + p2_ * std::sqrt(2.0) * boost::math::erf_inv(2.0 * p - 1.0));
        case Family::Pareto:
            return p2_ * (std::pow(1.0 - p, -1.0 / p1_) - 1.0);
        case Family::Uniform:
            return p1_ + p * (p2_ - p1_);
    }
    return 0.0;
}

std::string Distribution::family_name() const {
    switch (family_) {
        case Family::Frechet: return "frechet";
        case Family::LogNormal: return "lognormal";
        case Family::Pareto: return "pareto";
        case Family::Uniform: return "uniform";
    }
    return "?";
}

Distribution Distribution::from_name(const std::string& family, double p1, double p2) {
    if (family == "frechet") return frechet(p1, p2);
    if (family == "lognormal") return lognormal(p1, p2);
    if (family == "pareto") return pareto(p1, p2);
    if (family == "uniform") return uniform(p1, p2);
    throw InvalidArgumentError("unknown distribution family '" + family + "'");
}

InnovationSpec::InnovationSpec(std::vector<Distribution> per_node) : dists_(std::move(per_node)) {
    if (dists_.empty()) {
        throw InvalidArgumentError("innovation spec needs at least one node");
    }
}

InnovationSpec InnovationSpec::iid(int d, const Distribution& dist) {
    if (d < 1) throw InvalidArgumentError("dimension must be at least 1");
    return InnovationSpec(std::vector<Distribution>(static_cast<std::size_t>(d), dist));
}

const Distribution& InnovationSpec::node(Node i) const {
    if (i < 1 || i > dim()) {
        throw InvalidArgumentError("node out of range");
    }
    return dists_[static_cast<std::size_t>(i - 1)];
}

bool InnovationSpec::full_support() const {
    for (const auto& d : dists_) {
        if (!d.full_support()) return false;
    }
    return true;
}

} // namespace maxlin
