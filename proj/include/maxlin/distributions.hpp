#pragma once

#include "maxlin/graph.hpp"

#include <string>
#include <vector>

namespace maxlin {

/// One innovation distribution: atom-free on (0,inf), or Uniform(a,b) which
/// is atom-free but restricted-support and flagged as such.
class Distribution {
public:
    enum class Family { Frechet, LogNormal, Pareto, Uniform };

    static Distribution frechet(double shape, double scale);
    static Distribution lognormal(double mu, double sigma);
    /// Pareto here is the Lomax (type II, zero location) form
    /// F(x) = 1 - (1 + x/scale)^{-shape}, whose support is all of (0,inf).
    static Distribution pareto(double shape, double scale);
    static Distribution uniform(double lo, double hi);

    Family family() const { return family_; }
    double param1() const { return p1_; }
    double param2() const { return p2_; }

    double cdf(double x) const;
    /// Inverse CDF; p must lie in (0,1).
    double quantile(double p) const;
    /// True when the support is exactly (0,inf).
    bool full_support() const { return family_ != Family::Uniform; }

    std::string family_name() const;
    static Distribution from_name(const std::string& family, double p1, double p2);

private:
    Distribution(Family f, double p1, double p2);
    Family family_;
    double p1_;
    double p2_;
};

/// Per-node innovation distributions for a d-dimensional model.
class InnovationSpec {
public:
    explicit InnovationSpec(std::vector<Distribution> per_node);
    static InnovationSpec iid(int d, const Distribution& dist);

    int dim() const { return static_cast<int>(dists_.size()); }
    const Distribution& node(Node i) const;
    /// True when every node distribution has support (0,inf).
    bool full_support() const;

private:
    std::vector<Distribution> dists_;
};

} // namespace maxlin
