#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <memory>
#include <optional>
#include <ostream>
#include <thread>

#include "CLI11.hpp"

#include "hvh/gradient.hpp"
#include "hvh/hessian3d.hpp"
#include "hvh/hessian_nd.hpp"
#include "hvh/hypervolume.hpp"
#include "hvh/oracle.hpp"
#include "hvh/problems.hpp"
#include "io.hpp"

namespace hvh::cli {

namespace {

struct Options {
    std::string input;
    std::string ref;
    std::string algorithm;
    bool fd_check = false;
    std::optional<double> h;
    std::optional<double> tol;
    std::string heatmap;
    std::string out;
    std::string problem = "quad";
    std::size_t n_points = 5;
    std::uint64_t seed = 1;
    std::size_t steps = 20;
    std::string sizes = "1000,10000,100000";
    std::size_t repeats = 3;
};

/// Where results go: --out if given, the caller's stream otherwise.
class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (path.empty()) return;
        file_ = std::make_unique<std::ofstream>(path);
        if (!*file_) throw ParseError("cannot write " + path);
        stream_ = file_.get();
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

/// The loaded input: objective vectors, plus the model and decision vectors in
/// decision mode.
struct Problem {
    InputDocument doc;
    std::optional<problems::QuadraticMop> model;
    PointSet objectives;

    bool decision() const noexcept { return model.has_value(); }
    std::size_t block() const noexcept { return decision() ? model->num_variables() : objectives.dim(); }

    double value(std::span<const double> flat) const {
        const auto points = deconcat(flat, block());
        if (decision()) return problems::decision_hv(points, *model, doc.reference);
        return hv(PointSet(points, doc.reference)).value;
    }
    std::vector<double> at() const { return concat(doc.points); }
};

Problem load(const Options& opts) {
    std::optional<Point> ref;
    if (!opts.ref.empty()) ref = parse_vector(opts.ref);
    Problem p{read_input(opts.input, ref), std::nullopt, {}};
    if (p.doc.mode == InputMode::decision) {
        p.model.emplace(p.doc.problem->centers);
        p.objectives = evaluate_points(p.doc.points, *p.model, p.doc.reference);
    } else {
        p.objectives = PointSet(p.doc.points, p.doc.reference);
    }
    return p;
}

std::pair<oracle::FdConfig, oracle::FdConfig> fd_configs(const Options& opts) {
    auto g = oracle::FdConfig::gradient_defaults();
    auto h = oracle::FdConfig::hessian_defaults();
    if (opts.h) g.step = h.step = *opts.h;
    if (opts.tol) g.abs_tol = h.abs_tol = *opts.tol;
    g.validate();
    h.validate();
    return {g, h};
}

void print_deviation(std::ostream& out, const std::string& prefix, const oracle::Deviation& dev) {
    out << prefix << "_max_abs=" << format_double(dev.max_abs) << '\n'
        << prefix << "_max_rel=" << format_double(dev.max_rel) << '\n'
        << prefix << "_violations=" << dev.violations << '\n';
}

void warn_dominated(std::ostream& err, const std::vector<std::size_t>& dominated) {
    if (dominated.empty()) return;
    err << "warning: " << dominated.size() << " dominated point(s) have zero derivatives:";
    for (std::size_t i : dominated) err << ' ' << i;
    err << '\n';
}

int cmd_hv(const Options& opts, std::ostream& out) {
    const Problem p = load(opts);
    const HvResult result = hv(p.objectives);
    Sink sink(opts.out, out);
    *sink << "hv=" << format_double(result.value) << '\n' << "dominated=" << result.dominated_count << '\n';
    return exit_ok;
}

int cmd_grad(const Options& opts, std::ostream& out, std::ostream& err) {
    const Problem p = load(opts);
    const GradientVector grad = p.decision() ? hv_gradient_decision(p.doc.points, *p.model, p.doc.reference)
                                             : hv_gradient(p.objectives);
    warn_dominated(err, grad.dominated_points);

    Sink sink(opts.out, out);
    *sink << "dim=" << grad.values.size() << '\n';
    for (std::size_t a = 0; a < grad.values.size(); ++a) *sink << a << ' ' << format_double(grad.values[a]) << '\n';
    if (!opts.fd_check) return exit_ok;

    const auto [gcfg, hcfg] = fd_configs(opts);
    const auto fd = oracle::fd_gradient([&](std::span<const double> x) { return p.value(x); }, p.at(), gcfg);
    const auto dev = oracle::compare(grad.values, fd, gcfg.abs_tol, gcfg.rel_tol);
    print_deviation(*sink, "fd_gradient", dev);
    return dev.ok() ? exit_ok : exit_deviation;
}

SparseSymMatrix analytic_hessian(const Problem& p, const std::string& algorithm) {
    if (p.decision()) {
        if (algorithm == "sweep3d") throw CLI::ValidationError("--algorithm", "sweep3d needs objective-space input");
        return hessian_decision(p.doc.points, *p.model, p.doc.reference);
    }
    const bool sweep = algorithm == "sweep3d" || (algorithm.empty() && p.objectives.dim() == 3);
    if (sweep && p.objectives.dim() != 3) {
        throw CLI::ValidationError("--algorithm", "sweep3d needs m = 3, input has m = " +
                                                      std::to_string(p.objectives.dim()));
    }
    return sweep ? hessian_3d_sweep(p.objectives) : hessian_objective(p.objectives);
}

int cmd_hess(const Options& opts, std::ostream& out) {
    const Problem p = load(opts);
    const SparseSymMatrix hessian = analytic_hessian(p, opts.algorithm);

    if (!opts.heatmap.empty()) {
        std::ofstream heat(opts.heatmap);
        if (!heat) throw ParseError("cannot write " + opts.heatmap);
        write_dense_csv(heat, hessian.to_dense());
    }

    Sink sink(opts.out, out);
    write_sparse(*sink, hessian);
    if (!opts.fd_check) return exit_ok;

    const auto [gcfg, hcfg] = fd_configs(opts);
    const auto fd = oracle::fd_hessian([&](std::span<const double> x) { return p.value(x); }, p.at(), hcfg);
    const auto dense = hessian.to_dense();
    std::size_t mismatches = 0;
    for (Eigen::Index r = 0; r < dense.rows(); ++r) {
        for (Eigen::Index c = 0; c < dense.cols(); ++c) mismatches += (std::abs(dense(r, c)) > 1e-6) != (std::abs(fd(r, c)) > 1e-6);
    }
    const auto dev = oracle::compare(dense, fd, hcfg.abs_tol, hcfg.rel_tol);
    print_deviation(*sink, "fd_hessian", dev);
    *sink << "fd_support_mismatches=" << mismatches << '\n';
    return dev.ok() && mismatches == 0 ? exit_ok : exit_deviation;
}

int cmd_verify(const Options& opts, std::ostream& out) {
    const Problem p = load(opts);
    const auto [gcfg, hcfg] = fd_configs(opts);
    const auto f = [&](std::span<const double> x) { return p.value(x); };
    const oracle::DerivativeReport report =
        p.decision() ? oracle::verify_derivatives(f, p.at(),
                                                  hv_gradient_decision(p.doc.points, *p.model, p.doc.reference).values,
                                                  hessian_decision(p.doc.points, *p.model, p.doc.reference), gcfg, hcfg)
                     : oracle::verify_derivatives(p.objectives, gcfg, hcfg);

    Sink sink(opts.out, out);
    print_deviation(*sink, "gradient", report.gradient_deviation);
    print_deviation(*sink, "hessian", report.hessian_deviation);
    *sink << "support_mismatches=" << report.support_mismatches << '\n'
          << "hessian_nonzeros=" << report.hessian_nonzeros << '\n'
          << "fd_hessian_nonzeros=" << report.fd_hessian_nonzeros << '\n';
    bool ok = report.ok();

    if (!p.decision() && p.objectives.dim() == 3) {
        const SparseSymMatrix sweep = hessian_3d_sweep(p.objectives);
        bool same_support = sweep.stored_count() == report.hessian.stored_count();
        double max_abs = 0.0;
        for (std::size_t a = 0; same_support && a < sweep.stored_count(); ++a) {
            const auto& s = sweep.entries()[a];
            const auto& g = report.hessian.entries()[a];
            same_support = s.row == g.row && s.col == g.col;
            max_abs = std::max(max_abs, std::abs(s.value - g.value));
        }
        *sink << "sweep_general_support=" << (same_support ? "identical" : "different") << '\n'
              << "sweep_general_max_abs=" << format_double(max_abs) << '\n';
        ok = ok && same_support && max_abs <= 1e-12;
    }
    *sink << "ok=" << (ok ? "true" : "false") << '\n';
    return ok ? exit_ok : exit_deviation;
}

int cmd_newton(const Options& opts, std::ostream& out) {
    if (opts.problem != "quad") throw CLI::ValidationError("--problem", "unknown problem '" + opts.problem + "'");
    const auto model = problems::make_quadratic_mop(2, 2, {{0, 0}, {1, 0}});
    const Point ref = opts.ref.empty() ? Point{2, 2} : parse_vector(opts.ref);
    auto x = problems::random_start(model, opts.n_points, opts.seed);

    Sink sink(opts.out, out);
    *sink << "step,hv_before,hv_after,step_length,halvings,kind,rcond\n";
    for (std::size_t s = 0; s < opts.steps; ++s) {
        const auto result = problems::newton_step(x, model, ref);
        *sink << s << ',' << format_double(result.hv_before) << ',' << format_double(result.hv_after) << ','
              << format_double(result.step_length) << ',' << result.halvings << ',' << problems::to_string(result.kind)
              << ',' << format_double(result.rcond) << '\n';
        x = result.next;
    }
    return exit_ok;
}

std::size_t thread_cap(std::ostream& err) {
    const char* env = std::getenv("HVH_THREADS");
    if (env == nullptr || *env == '\0') return 1;
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (*end != '\0' || v < 1) {
        err << "warning: ignoring HVH_THREADS='" << env << "'\n";
        return 1;
    }
    return static_cast<std::size_t>(v);
}

int cmd_bench(const Options& opts, std::ostream& out, std::ostream& err) {
    if (opts.repeats == 0) throw CLI::ValidationError("--repeats", "must be at least 1");
    std::vector<std::size_t> sizes;
    for (double v : parse_vector(opts.sizes)) {
        if (!(v >= 1.0) || v != std::floor(v)) throw ParseError("--sizes needs positive integers");
        sizes.push_back(static_cast<std::size_t>(v));
    }
    const std::size_t threads = std::min(thread_cap(err), opts.repeats);

    Sink sink(opts.out, out);
    *sink << "n,seconds,nonzeros,ratio\n";
    for (std::size_t n : sizes) {
        const PointSet front = problems::random_front(n, 3, opts.seed + n);
        std::vector<double> seconds(opts.repeats);
        std::vector<std::size_t> counts(opts.repeats);
        std::atomic<std::size_t> next{0};
        const auto work = [&] {
            for (std::size_t r = next++; r < opts.repeats; r = next++) {
                const auto t0 = std::chrono::steady_clock::now();
                const SparseSymMatrix h = hessian_3d_sweep(front);
                const auto t1 = std::chrono::steady_clock::now();
                seconds[r] = std::chrono::duration<double>(t1 - t0).count();
                counts[r] = h.nonzero_count();
            }
        };
        std::vector<std::jthread> pool;
        for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(work);
        work();
        pool.clear();

        std::nth_element(seconds.begin(), seconds.begin() + static_cast<std::ptrdiff_t>(seconds.size() / 2),
                         seconds.end());
        const double median = seconds[seconds.size() / 2];
        *sink << n << ',' << format_double(median) << ',' << counts.front() << ',';
        if (n >= 2) *sink << format_double(median / (static_cast<double>(n) * std::log2(static_cast<double>(n))));
        *sink << '\n';
    }
    return exit_ok;
}

void add_input_options(CLI::App& cmd, Options& opts) {
    cmd.add_option("--input", opts.input, "JSON document, or CSV points when the name ends in .csv")->required();
    cmd.add_option("--ref", opts.ref, "reference point \"r1,r2,...\"; replaces the document's");
    cmd.add_option("--out", opts.out, "write results here instead of stdout");
}

void add_fd_options(CLI::App& cmd, Options& opts) {
    cmd.add_option("--h", opts.h, "finite-difference step (default 2^-17 gradient, 2^-13 Hessian)")
        ->check(CLI::PositiveNumber);
    cmd.add_option("--tol", opts.tol, "absolute tolerance of the finite-difference check")->check(CLI::PositiveNumber);
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options opts;
    CLI::App app{"Hypervolume indicator, gradient and Hessian", "hvh"};
    // "-h" would collide with the finite-difference step "--h".
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);

    auto* hv_cmd = app.add_subcommand("hv", "hypervolume of a point set");
    add_input_options(*hv_cmd, opts);

    auto* grad_cmd = app.add_subcommand("grad", "gradient, one \"index value\" line per coordinate");
    add_input_options(*grad_cmd, opts);
    grad_cmd->add_flag("--fd-check", opts.fd_check, "compare with central finite differences");
    add_fd_options(*grad_cmd, opts);

    auto* hess_cmd = app.add_subcommand("hess", "Hessian as sparse \"row col value\" lines");
    add_input_options(*hess_cmd, opts);
    hess_cmd->add_option("--algorithm", opts.algorithm, "sweep3d (m = 3) or general; default sweep3d when m = 3")
        ->check(CLI::IsMember({"sweep3d", "general"}));
    hess_cmd->add_option("--heatmap", opts.heatmap, "also write the dense matrix as CSV");
    hess_cmd->add_flag("--fd-check", opts.fd_check, "compare with central finite differences");
    add_fd_options(*hess_cmd, opts);

    auto* verify_cmd = app.add_subcommand("verify", "check derivatives against finite differences");
    add_input_options(*verify_cmd, opts);
    add_fd_options(*verify_cmd, opts);

    auto* newton_cmd = app.add_subcommand("newton", "hypervolume Newton steps on a built-in problem");
    newton_cmd->add_option("--problem", opts.problem, "built-in problem")->check(CLI::IsMember({"quad"}));
    newton_cmd->add_option("--n-points", opts.n_points, "number of decision points")->check(CLI::PositiveNumber);
    newton_cmd->add_option("--seed", opts.seed, "start seed");
    newton_cmd->add_option("--steps", opts.steps, "number of steps");
    newton_cmd->add_option("--ref", opts.ref, "reference point, default \"2,2\"");
    newton_cmd->add_option("--out", opts.out, "write results here instead of stdout");

    auto* bench_cmd = app.add_subcommand("bench", "time the 3-D sweep on random fronts");
    bench_cmd->add_option("--sizes", opts.sizes, "comma-separated front sizes");
    bench_cmd->add_option("--seed", opts.seed, "front seed");
    bench_cmd->add_option("--repeats", opts.repeats, "timed runs per size; the median is reported");
    bench_cmd->add_option("--out", opts.out, "write results here instead of stdout");

    std::vector<std::string> argv_storage{"hvh"};
    argv_storage.insert(argv_storage.end(), args.begin(), args.end());
    std::vector<const char*> argv;
    for (const auto& a : argv_storage) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
        if (*hv_cmd) return cmd_hv(opts, out);
        if (*grad_cmd) return cmd_grad(opts, out, err);
        if (*hess_cmd) return cmd_hess(opts, out);
        if (*verify_cmd) return cmd_verify(opts, out);
        if (*newton_cmd) return cmd_newton(opts, out);
        return cmd_bench(opts, out, err);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const GeneralPositionError& e) {
        err << "error: points are not in general position\n";
        for (const auto& tie : e.report().offending_pairs) {
            err << "  points " << tie.first << " and " << tie.second << " share coordinate " << tie.axis << '\n';
        }
        return exit_validation;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    } catch (const DimensionError& e) {
        err << "error: " << e.what() << '\n';
        return exit_validation;
    }
}

} // namespace hvh::cli
