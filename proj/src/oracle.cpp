#include "hvh/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "hvh/gradient.hpp"
#include "hvh/hessian_nd.hpp"
#include "hvh/hypervolume.hpp"

namespace hvh::oracle {

namespace {

constexpr std::size_t kMaxInclusionExclusion = 20;
constexpr std::size_t kMonteCarloChunk = 1 << 16;

} // namespace

void FdConfig::validate() const {
    if (!(step > 0.0)) throw std::invalid_argument("finite-difference step must be positive");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
}

double hv_inclusion_exclusion(const PointSet& set) {
    const std::size_t n = set.size();
    if (n > kMaxInclusionExclusion) {
        throw std::invalid_argument("inclusion-exclusion is limited to " + std::to_string(kMaxInclusionExclusion) +
                                    " points, got " + std::to_string(n));
    }
    const std::size_t m = set.dim();
    const auto& ref = set.reference();
    double total = 0.0;
    Point corner(m);
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << n); ++mask) {
        std::fill(corner.begin(), corner.end(), -std::numeric_limits<double>::infinity());
        for (std::size_t i = 0; i < n; ++i) {
            if (!(mask & (std::uint32_t{1} << i))) continue;
            for (std::size_t k = 0; k < m; ++k) corner[k] = std::max(corner[k], set[i][k]);
        }
        double volume = 1.0;
        for (std::size_t k = 0; k < m; ++k) volume *= std::max(0.0, ref[k] - corner[k]);
        total += (std::popcount(mask) % 2 == 1) ? volume : -volume;
    }
    return total;
}

std::vector<double> fd_gradient(const ScalarFunction& f, std::span<const double> at, const FdConfig& cfg) {
    cfg.validate();
    std::vector<double> x(at.begin(), at.end());
    std::vector<double> out(x.size());
    for (std::size_t a = 0; a < x.size(); ++a) {
        const double x0 = x[a];
        x[a] = x0 + cfg.step;
        const double up = f(x);
        x[a] = x0 - cfg.step;
        const double down = f(x);
        x[a] = x0;
        out[a] = (up - down) / (2.0 * cfg.step);
    }
    return out;
}

Eigen::MatrixXd fd_hessian(const ScalarFunction& f, std::span<const double> at, const FdConfig& cfg) {
    cfg.validate();
    const double h = cfg.step;
    std::vector<double> x(at.begin(), at.end());
    const auto n = static_cast<Eigen::Index>(x.size());
    Eigen::MatrixXd out(n, n);
    const double center = f(x);

    const auto eval = [&](std::size_t a, double da, std::size_t b, double db) {
        const double xa = x[a];
        const double xb = x[b];
        x[a] += da;
        x[b] += db;
        const double v = f(x);
        x[a] = xa;
        x[b] = xb;
        return v;
    };

    for (std::size_t a = 0; a < x.size(); ++a) {
        const double xa = x[a];
        x[a] = xa + h;
        const double up = f(x);
        x[a] = xa - h;
        const double down = f(x);
        x[a] = xa;
        out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(a)) = (up - 2.0 * center + down) / (h * h);
        for (std::size_t b = a + 1; b < x.size(); ++b) {
            const double pp = eval(a, h, b, h);
            const double pm = eval(a, h, b, -h);
            const double mp = eval(a, -h, b, h);
            const double mm = eval(a, -h, b, -h);
            const double v = (pp - pm - mp + mm) / (4.0 * h * h);
            out(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) = v;
            out(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(a)) = v;
        }
    }
    return out;
}

MonteCarloEstimate hv_monte_carlo(const PointSet& set, std::size_t samples, std::uint64_t seed) {
    if (set.empty()) return {};
    if (samples == 0) throw std::invalid_argument("Monte Carlo needs at least one sample");
    const std::size_t m = set.dim();
    const auto& ref = set.reference();
    Point lo(ref.begin(), ref.end());
    for (const auto& p : set.points()) {
        for (std::size_t k = 0; k < m; ++k) lo[k] = std::min(lo[k], p[k]);
    }
    double box = 1.0;
    for (std::size_t k = 0; k < m; ++k) box *= ref[k] - lo[k];
    if (!(box > 0.0)) throw ValidationError("Monte Carlo bounding box has zero volume");

    std::size_t hits = 0;
    Point u(m);
    for (std::size_t chunk = 0, drawn = 0; drawn < samples; ++chunk) {
        std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                          static_cast<std::uint32_t>(chunk), static_cast<std::uint32_t>(chunk >> 32)};
        std::mt19937_64 rng(seq);
        const std::size_t count = std::min(kMonteCarloChunk, samples - drawn);
        for (std::size_t s = 0; s < count; ++s) {
            for (std::size_t k = 0; k < m; ++k) u[k] = std::uniform_real_distribution<double>(lo[k], ref[k])(rng);
            const bool dominated = std::any_of(set.points().begin(), set.points().end(),
                                               [&](const Point& p) { return weakly_dominates(p, u); });
            hits += dominated ? 1 : 0;
        }
        drawn += count;
    }
    const double frac = static_cast<double>(hits) / static_cast<double>(samples);
    return {frac * box, box * std::sqrt(frac * (1.0 - frac) / static_cast<double>(samples))};
}

Deviation compare(std::span<const double> analytic, std::span<const double> reference, double abs_tol,
                  double rel_tol) {
    if (analytic.size() != reference.size()) throw DimensionError("compare: length mismatch");
    Deviation dev;
    for (std::size_t a = 0; a < analytic.size(); ++a) {
        const double diff = std::abs(analytic[a] - reference[a]);
        dev.max_abs = std::max(dev.max_abs, diff);
        dev.max_rel = std::max(dev.max_rel, diff / std::max(std::abs(reference[a]), 1e-300));
        if (!(diff <= std::max(abs_tol, rel_tol * std::abs(reference[a])))) ++dev.violations;
    }
    return dev;
}

Deviation compare(const Eigen::MatrixXd& analytic, const Eigen::MatrixXd& reference, double abs_tol,
                  double rel_tol) {
    if (analytic.rows() != reference.rows() || analytic.cols() != reference.cols()) {
        throw DimensionError("compare: shape mismatch");
    }
    return compare(std::span<const double>(analytic.data(), static_cast<std::size_t>(analytic.size())),
                   std::span<const double>(reference.data(), static_cast<std::size_t>(reference.size())), abs_tol,
                   rel_tol);
}

DerivativeReport verify_derivatives(const ScalarFunction& f, std::span<const double> x, std::vector<double> gradient,
                                    SparseSymMatrix hessian, const FdConfig& gradient_cfg, const FdConfig& hessian_cfg) {
    if (gradient.size() != x.size() || hessian.dim() != x.size()) {
        throw DimensionError("verify_derivatives: derivative shapes do not match the point");
    }
    DerivativeReport report;
    report.gradient = std::move(gradient);
    report.hessian = std::move(hessian);
    report.fd_gradient = fd_gradient(f, x, gradient_cfg);
    report.fd_hessian = fd_hessian(f, x, hessian_cfg);
    report.gradient_deviation = compare(report.gradient, report.fd_gradient, gradient_cfg.abs_tol, gradient_cfg.rel_tol);

    const Eigen::MatrixXd dense = report.hessian.to_dense();
    report.hessian_deviation = compare(dense, report.fd_hessian, hessian_cfg.abs_tol, hessian_cfg.rel_tol);
    report.hessian_nonzeros = report.hessian.nonzero_count();
    for (Eigen::Index r = 0; r < dense.rows(); ++r) {
        for (Eigen::Index c = 0; c < dense.cols(); ++c) {
            const bool fd_nz = std::abs(report.fd_hessian(r, c)) > 1e-6;
            const bool an_nz = std::abs(dense(r, c)) > 1e-6;
            report.fd_hessian_nonzeros += fd_nz ? 1 : 0;
            report.support_mismatches += fd_nz != an_nz ? 1 : 0;
        }
    }
    return report;
}

DerivativeReport verify_derivatives(const PointSet& set, const FdConfig& gradient_cfg, const FdConfig& hessian_cfg) {
    const std::size_t m = set.dim();
    const Point ref = set.reference();
    const ScalarFunction objective = [m, &ref](std::span<const double> y) {
        return hv_value(PointSet(deconcat(y, m), ref).points(), ref);
    };
    return verify_derivatives(objective, concat(set), hv_gradient(set).values, hessian_objective(set), gradient_cfg,
                              hessian_cfg);
}

double general_position_margin(const PointSet& set) {
    double margin = std::numeric_limits<double>::infinity();
    const std::size_t m = set.dim();
    std::vector<double> column;
    for (std::size_t k = 0; k < m; ++k) {
        column.clear();
        for (const auto& p : set.points()) column.push_back(p[k]);
        column.push_back(set.reference()[k]);
        std::sort(column.begin(), column.end());
        for (std::size_t a = 1; a < column.size(); ++a) margin = std::min(margin, column[a] - column[a - 1]);
    }
    return margin;
}

} // namespace hvh::oracle
