// Batch experiment driver: one subcommand per module pipeline, JSON or CSV
// report, exit 0 (all checks pass), 1 (invariant violated), 2 (bad input).
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <random>

#include "CLI11.hpp"
#include "json.hpp"
#include "pathspace/cocycles.hpp"
#include "pathspace/declog.hpp"
#include "pathspace/fock.hpp"
#include "pathspace/forms.hpp"
#include "pathspace/io.hpp"
#include "pathspace/planar.hpp"
#include "pathspace/product.hpp"

using namespace pathspace;
using nlohmann::json;

namespace {

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Config {
    std::string command;
    std::optional<double> grid_step;
    std::optional<int> grid_max;
    std::optional<double> t;
    int dim = 1;
    std::uint64_t seed = 1;
    double tol = kDefaultTol;
    std::string format = "json";
    std::string out;
    int levels = 10;
    std::optional<int> samples;
    std::string demo = "ramp";
    bool counterexample = false;
    bool random = false;
};

struct Check {
    std::string name;
    double value;
    double threshold;
    bool upper;  // value <= threshold when true, value >= threshold otherwise
    bool pass() const { return upper ? value <= threshold : value >= threshold; }
};

struct Report {
    std::vector<Check> checks;
    json data = json::object();
    std::string csv;  // command-specific table; empty means the check table

    void expect_le(std::string name, double v, double bound) { checks.push_back({std::move(name), v, bound, true}); }
    void expect_ge(std::string name, double v, double bound) { checks.push_back({std::move(name), v, bound, false}); }
    bool passed() const {
        for (const auto& c : checks)
            if (!c.pass())
                return false;
        return true;
    }
};

using Rng = std::mt19937_64;

cplx rand_c(Rng& rng, double half = 0.5) {
    std::uniform_real_distribution<double> u(-half, half);
    const double re = u(rng);
    return {re, u(rng)};
}

StepPath random_path(Rng& rng, const TimeGrid& g, int cells, int dim, double half = 0.5) {
    std::vector<cplx> v(static_cast<std::size_t>(cells) * dim);
    for (auto& c : v)
        c = rand_c(rng, half);
    return StepPath(g, dim, std::move(v));
}

StepPath random_real_path(Rng& rng, const TimeGrid& g, int cells, double half) {
    std::uniform_real_distribution<double> u(-half, half);
    std::vector<double> v(static_cast<std::size_t>(cells));
    for (auto& x : v)
        x = u(rng);
    return StepPath::real(g, v);
}

int cells_of(const TimeGrid& g, double t) {
    try {
        return g.cells(t);
    } catch (const Error& e) {
        throw InputError(e.what());
    }
}

TimeGrid make_grid(const Config& c, double default_step, int default_max) {
    const double h = c.grid_step.value_or(default_step);
    const int n = c.grid_max.value_or(default_max);
    if (!(h > 0) || n < 2)
        throw InputError("grid: need --grid-step > 0 and --grid-max >= 2");
    return TimeGrid(h, n);
}

// ---------------------------------------------------------------- commands

Report run_converge_log(const Config& c) {
    const double t = c.t.value_or(1.0);
    if (c.levels < 0 || c.levels > 24)
        throw InputError("--levels must be in [0, 24]");
    const int pieces = 1 << c.levels;
    const TimeGrid g = make_grid(c, t / pieces, pieces);
    const int cells = cells_of(g, t);
    if (cells % pieces != 0)
        throw InputError("converge-log: t must split into 2^levels on-grid pieces");
    if (cells > g.n_max())
        throw InputError("converge-log: t beyond --grid-max");

    Rng rng(c.seed);
    StepPath f = StepPath::constant(g, cells, cplx(1.0));
    StepPath h = f;
    DecompSection e = DecompSection::vacuum(g, cells, 1);
    if (c.random) {
        f = random_path(rng, g, cells, c.dim);
        h = random_path(rng, g, cells, c.dim);
        e = DecompSection::reference(random_path(rng, g, cells, c.dim));
    } else if (c.dim != 1) {
        f = StepPath::constant(g, cells, std::vector<cplx>(static_cast<std::size_t>(c.dim), 1.0));
        h = f;
        e = DecompSection::vacuum(g, cells, c.dim);
    }
    const DecompVector x(1.0, f), y(1.0, h);
    const BLimit lim = B_limit(x, y, e, c.levels);

    const StepPath eps = propagator_cells(e.path(), 0, cells);
    const double nf = std::sqrt(l2_norm_sq(axpy(f, -1.0, eps)));
    const double nh = std::sqrt(l2_norm_sq(axpy(h, -1.0, eps)));
    const auto& last = lim.table.back();
    Report r;
    r.expect_le("final_gap", last.gap, std::max(1e-10, 2.0 * last.mesh * nf * nh));
    double rise = 0.0;
    for (std::size_t k = 1; k < lim.table.size(); ++k)
        rise = std::max(rise, lim.table[k].gap - lim.table[k - 1].gap);
    r.expect_le("gap_increase", rise, c.tol);
    json rows = json::array();
    for (const auto& row : lim.table)
        rows.push_back({{"level", row.level}, {"pieces", row.pieces}, {"mesh", row.mesh},
                        {"B", {row.value.real(), row.value.imag()}}, {"gap", row.gap}});
    r.data = {{"oracle", {lim.oracle.real(), lim.oracle.imag()}}, {"table", rows}};
    r.csv = io::convergence_csv(lim.table);
    return r;
}

PathSection ramp_section(const TimeGrid& g, int horizon) { return PathSection(StepPath::ramp(g, horizon)); }

Report run_cocycle(const Config& c) {
    Report r;
    const TimeGrid g = make_grid(c, 1.0 / 64, 64);
    const int n = g.n_max();
    if (n < 4)
        throw InputError("cocycle: --grid-max must be at least 4");
    const double h = g.step();
    if (c.demo == "ramp") {
        const GammaTable gam = gamma_of_section(ramp_section(g, n));
        const auto triv = trivialize_gamma_full(gam, c.tol, h / 2);
        const int count = triv.phi.count();
        double u_res = 0.0, phi_res = 0.0;
        for (int t = 1; t <= count; ++t) {
            const StepPath& u = triv.u[static_cast<std::size_t>(t) - 1];
            for (int k = 0; k < u.cells(); ++k)
                u_res = std::max(u_res, std::abs(u.at(k) - (k >= t ? g.time(t) : 0.0)));
            const StepPath& phi = triv.phi.at(t);
            for (int k = 0; k < phi.cells(); ++k)
                phi_res = std::max(phi_res, std::abs(phi.at(k) + (k + 0.5) * h));
        }
        const CocycleFamily plain = trivialize_gamma(gam, c.tol);
        double shift_res = 0.0;
        for (int t = 1; t <= count; ++t)
            for (int k = 0; k < t; ++k)
                shift_res = std::max(shift_res, std::abs(plain.at(t).at(k) - (-(k + 0.5) * h + h / 2)));
        r.expect_le("u_closed_form", u_res, 1e-12);
        r.expect_le("phi_closed_form", phi_res, 1e-12);
        r.expect_le("phi_default_anchor", shift_res, 1e-12);
        r.expect_le("coboundary_residual", triv.residual, 1e-12);
        r.data = {{"demo", "ramp"}, {"count", count}, {"phi", io::to_json(triv.phi)}};
    } else if (c.demo == "random") {
        Rng rng(c.seed);
        const int samples = c.samples.value_or(20);
        double gamma_res = 0.0, rec_res = 0.0;
        for (int i = 0; i < samples; ++i) {
            const PathSection sec(random_path(rng, g, n, c.dim));
            const auto triv = trivialize_gamma_full(gamma_of_section(sec), c.tol);
            gamma_res = std::max(gamma_res, triv.residual);
            const StepPath f = random_path(rng, g, n, c.dim);
            const StepPath rec = solve_cocycle1(CocycleFamily::difference(f, n / 2), c.tol, f.cell(0));
            for (int k = 0; k < rec.cells(); ++k)
                for (int d = 0; d < c.dim; ++d)
                    rec_res = std::max(rec_res, std::abs(rec.at(k, d) - f.at(k, d)));
        }
        r.expect_le("gamma_coboundary_residual", gamma_res, c.tol);
        r.expect_le("cocycle_recovery_residual", rec_res, c.tol);
        r.data = {{"demo", "random"}, {"samples", samples}};
    } else {
        throw InputError("cocycle: --demo must be 'ramp' or 'random'");
    }
    return r;
}

Report run_gamma(const Config& c) {
    const TimeGrid g = make_grid(c, 1.0 / 32, 32);
    Rng rng(c.seed);
    const PathSection sec(random_path(rng, g, g.n_max(), c.dim));
    const GammaTable gam = gamma_of_section(sec);
    Report r;
    r.expect_le("cocycle2_residual", cocycle2_residual(gam), c.tol);
    r.expect_le("stabilization_residual", stabilization_residual(gam), c.tol);
    const auto triv = trivialize_gamma_full(gam, c.tol);
    r.expect_le("coboundary_residual", triv.residual, c.tol);
    r.data = {{"gamma", io::to_json(gam)}, {"phi", io::to_json(triv.phi)}};
    return r;
}

Report run_multiplier(const Config& c) {
    const TimeGrid g = make_grid(c, 1.0 / 16, 64);
    const int n = g.n_max();
    Report r;
    const auto c0 = MultiplierTable::tabulate(g, n, [](double s, double t) { return std::polar(1.0, s * t); });
    const auto u = trivialize_multiplier(c0, c.tol);
    // u(t) e^{i t^2 / 2} must be a character e^{i a t}
    std::vector<cplx> q(u.size());
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double tk = g.time(static_cast<int>(k) + 1);
        q[k] = u[k] * std::polar(1.0, tk * tk / 2);
    }
    double char_res = 0.0;
    for (std::size_t k = 0; k < q.size(); ++k)
        char_res = std::max(char_res, std::abs(q[k] - std::pow(q[0], static_cast<double>(k + 1))));
    r.expect_le("exp_ist_reconstruction", multiplier_reconstruction_residual(c0, u), 1e-12);
    r.expect_le("exp_ist_character_residual", char_res, 1e-12);

    Rng rng(c.seed);
    std::uniform_real_distribution<double> ph(-std::numbers::pi, std::numbers::pi);
    double worst = 0.0;
    const int samples = c.samples.value_or(20);
    for (int i = 0; i < samples; ++i) {
        std::vector<cplx> w(static_cast<std::size_t>(n));
        for (auto& x : w)
            x = std::polar(1.0, ph(rng));
        const auto cs = MultiplierTable::tabulate(g, n, [&](double s, double t) {
            const int a = g.cells(s), b = g.cells(t);
            return w[static_cast<std::size_t>(a) - 1] * w[static_cast<std::size_t>(b) - 1] /
                   w[static_cast<std::size_t>(a + b) - 1];
        });
        worst = std::max(worst, multiplier_reconstruction_residual(cs, trivialize_multiplier(cs, c.tol)));
    }
    r.expect_le("random_coboundary_reconstruction", worst, 1e-12);
    json uj = json::array();
    for (cplx x : u)
        uj.push_back({x.real(), x.imag()});
    r.data = {{"u", uj}, {"alpha", std::arg(q[0]) / g.step()}};
    return r;
}

std::vector<StepPath> real_samples(const Config& c, const TimeGrid& g, int cells, int count) {
    Rng rng(c.seed);
    std::vector<StepPath> xs;
    for (int i = 0; i < count; ++i)
        xs.push_back(random_real_path(rng, g, cells, 1.0));
    return xs;
}

Report run_cpd(const Config& c) {
    const TimeGrid g = make_grid(c, 1.0 / 16, 64);
    const int cells = cells_of(g, c.t.value_or(1.0));
    const auto xs = real_samples(c, g, cells, c.samples.value_or(40));
    Report r;
    r.expect_ge("gaussian_min_projected_eig", cpd_check(AdditiveForm::gaussian(1.0), xs), -kEigTol);
    r.expect_ge("poisson_min_projected_eig", cpd_check(AdditiveForm::poisson(1.0, 1.0), xs), -kEigTol);
    r.data = {{"samples", xs.size()}, {"cells", cells}};
    return r;
}

Report run_pd_root(const Config& c) {
    const TimeGrid g = make_grid(c, 1.0 / 16, 64);
    const int cells = cells_of(g, c.t.value_or(1.0));
    const auto xs = real_samples(c, g, cells, c.samples.value_or(40));
    const std::vector<double> roots{1, 2, 4, 8};
    Report r;
    for (const auto& [name, form] : {std::pair{"gaussian", AdditiveForm::gaussian(1.0)},
                                     std::pair{"poisson", AdditiveForm::poisson(1.0, 1.0)}}) {
        const double scale = static_cast<double>(xs.size());  // trace of [e^{g/n}] on the unit diagonal
        r.expect_ge(std::string(name) + "_min_root_eig", pd_root_check(form, xs, roots),
                    -kEigTol * std::max(1.0, scale));
    }
    r.data = {{"roots", roots}, {"samples", xs.size()}};
    return r;
}

TruncFockVector counterexample_zeta() {
    TruncFockVector z(2, 2);
    z.set({2, 0}, 1.0);
    z.set({0, 2}, -1.0);
    return z;
}

Report run_span(const Config& c) {
    const TruncFockVector zeta = counterexample_zeta();
    Rng rng(c.seed);
    Report r;
    if (c.counterexample) {
        std::vector<std::vector<cplx>> s;
        for (int i = 0; i < 20; ++i) {
            const cplx l = rand_c(rng, 2.0);
            s.push_back({l, l});
            s.push_back({l, -l});
        }
        const double w = strong_span_witness(s, zeta);
        const std::vector<cplx> e1{1.0, 0.0};
        const double control = std::abs(pair_entire(zeta, e1));
        r.expect_le("witness", w, 1e-12);
        r.expect_le("control_deviation", std::abs(control - 1.0 / std::sqrt(2.0)), 1e-12);
        r.data = {{"witness", w}, {"control", control}};
    } else {
        std::vector<std::vector<cplx>> s;
        for (int i = 0; i < c.samples.value_or(40); ++i)
            s.push_back({rand_c(rng, 1.0), rand_c(rng, 1.0)});
        const double w = strong_span_witness(s, zeta);
        r.expect_ge("ball_witness", w, 1e-6);
        r.data = {{"witness", w}};
    }
    return r;
}

struct Reference {
    std::string name;
    PathSection section;
    cplx anchor;
};

Report run_iso(const Config& c) {
    const TimeGrid g = make_grid(c, 1.0 / 16, 64);
    const int n = g.n_max();
    const int count = (n - 1) / 3;
    if (count < 2)
        throw InputError("iso: --grid-max too small");
    const int s = count / 2, t = count - s;
    Rng rng(c.seed);
    std::vector<Reference> refs{
        {"vacuum", PathSection(StepPath::zero(g, n, c.dim)), 0.0},
        {"constant", PathSection(StepPath::constant(g, n, std::vector<cplx>(static_cast<std::size_t>(c.dim), cplx(0.7, -0.3)))), 0.0},
    };
    if (c.dim == 1)
        refs.push_back({"ramp", ramp_section(g, n), g.step() / 2});
    else
        refs.push_back({"random", PathSection(random_path(rng, g, n, c.dim)), 0.0});

    auto form = std::make_shared<const AdditiveForm>(AdditiveForm::inner());
    Report r;
    json per = json::object();
    const int samples = c.samples.value_or(20);
    for (const auto& ref : refs) {
        const Logarithm log(*form, ref.section, trivialize_gamma(gamma_of_section(ref.section), c.tol, ref.anchor));
        auto two_term = [&](int cells) {
            return ProductVector(form, {{rand_c(rng, 1.0), random_path(rng, g, cells, c.dim)},
                                        {rand_c(rng, 1.0), random_path(rng, g, cells, c.dim)}});
        };
        double iso = 0.0, mult = 0.0;
        for (int i = 0; i < samples; ++i) {
            const auto u = two_term(s), v = two_term(s), a = two_term(t);
            iso = std::max(iso, iso_isometry_residual(log, u, v));
            std::vector<ExpSpanVector> probes;
            for (int p = 0; p < 3; ++p)
                probes.push_back(ExpSpanVector::exp(random_path(rng, g, s + t, c.dim)));
            mult = std::max(mult, iso_multiplicativity_residual(log, u, a, probes));
        }
        r.expect_le(ref.name + "_isometry", iso, 1e-12);
        r.expect_le(ref.name + "_multiplicativity", mult, 1e-12);
        per[ref.name] = {{"isometry", iso}, {"multiplicativity", mult}};
    }
    r.data = per;
    return r;
}

DecompSection random_de_section(Rng& rng, const TimeGrid& g, int n, int dim, const DecompSection& e) {
    return de_normalize(DecompSection(random_path(rng, g, n, dim)), e);
}

Report run_ineq(const Config& c) {
    const TimeGrid g = make_grid(c, 1.0 / 32, 32);
    const int n = g.n_max();
    Rng rng(c.seed);
    const DecompSection e = DecompSection::reference(random_path(rng, g, n, c.dim, 0.25));
    const int samples = c.samples.value_or(100);
    std::uniform_int_distribution<int> pick(1, n);
    double monotone = 0.0, slack76 = std::numeric_limits<double>::infinity();
    double slack_first = slack76, slack_second = slack76;
    for (int i = 0; i < samples; ++i) {
        const DecompSection x = random_de_section(rng, g, n, c.dim, e);
        const DecompSection y = random_de_section(rng, g, n, c.dim, e);
        monotone = std::max(monotone, norm_monotone_check(x, e, 1e-9).max_decrease);
        int a = pick(rng), b = pick(rng);
        while (a == b)
            b = pick(rng);
        if (a > b)
            std::swap(a, b);
        std::uniform_int_distribution<int> big(b, n);
        slack76 = std::min(slack76, ineq_76_check(x, y, a, b, big(rng)));
        const auto p = continuity_slack(x, y, e, a, b);
        slack_first = std::min(slack_first, p.first);
        slack_second = std::min(slack_second, p.second);
    }
    Report r;
    r.expect_le("norm_monotone_violation", monotone, 1e-12);
    r.expect_ge("ineq76_min_slack", slack76, -1e-12);
    r.expect_ge("continuity_first_min_slack", slack_first, -1e-12);
    r.expect_ge("continuity_second_min_slack", slack_second, -1e-12);
    r.data = {{"samples", samples}};
    return r;
}

Report run_modulus(const Config& c) {
    const TimeGrid g = make_grid(c, 1.0 / 16, 16);
    const int n = g.n_max();
    Rng rng(c.seed);
    StepPath fx = random_path(rng, g, n, c.dim, 1.0), fy = random_path(rng, g, n, c.dim, 1.0);
    Report r;
    json levels = json::array();
    double prev_gap = std::numeric_limits<double>::infinity();
    ModulusCurve first{};
    for (int lv = 0; lv < 3; ++lv) {
        const ModulusCurve m = modulus_curve(unit_normalize(DecompSection(fx)), unit_normalize(DecompSection(fy)));
        if (lv == 0)
            first = m;
        r.expect_le("monotone_violation_level" + std::to_string(lv), m.max_increase, 1e-12);
        r.expect_ge("min_value_level" + std::to_string(lv), m.values.back(), 0.0);
        if (lv > 0)
            r.expect_le("first_gap_shrinks_level" + std::to_string(lv), m.first_gap, prev_gap);
        prev_gap = m.first_gap;
        levels.push_back({{"step", fx.grid().step()}, {"first_gap", m.first_gap}, {"max_increase", m.max_increase}});
        fx = fx.refined();
        fy = fy.refined();
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t k = 0; k < first.values.size(); ++k)
        rows.push_back({io::format_double(g.time(static_cast<int>(k) + 1)), io::format_double(first.values[k])});
    r.csv = io::csv_table({"t", "modulus"}, rows);
    r.data = {{"levels", levels}, {"curve", first.values}};
    return r;
}

SampledPath sample_planar(double h, double len, const std::function<std::array<double, 2>(double)>& fn) {
    const int n = static_cast<int>(std::lround(len / h));
    std::vector<double> v;
    for (int k = 0; k <= n; ++k) {
        const auto p = fn(k * h);
        v.push_back(p[0]);
        v.push_back(p[1]);
    }
    return SampledPath(h, 2, std::move(v));
}

Report run_demo_obstacle(const Config& c) {
    const double h0 = c.grid_step.value_or(1.0 / 64);
    if (!(h0 > 0))
        throw InputError("demo-obstacle: --grid-step must be positive");
    const double s = c.t.value_or(1.0);
    const Potential v{Disk{{3.0, 0.0}, 1.0}, 1.0};
    auto f = [](double l) { return std::array<double, 2>{l, 0.5 * std::sin(l)}; };
    auto gfn = [](double l) { return std::array<double, 2>{0.5 * l, -l * l}; };
    std::vector<SampledPath> runs;
    double prefix = 0.0;
    for (int lv = 0; lv < 3; ++lv) {
        const double h = h0 / (1 << lv);
        const SampledPath fp = sample_planar(h, s, f), gp = sample_planar(h, s, gfn);
        SampledPath res = concat_potential(fp, gp, v);
        for (int k = 0; k <= fp.intervals(); ++k)
            prefix = std::max(prefix, std::hypot(res.point(k)[0] - fp.point(k)[0], res.point(k)[1] - fp.point(k)[1]));
        runs.push_back(std::move(res));
    }
    auto diff = [&](const SampledPath& a, const SampledPath& b) {
        double m = 0.0;
        for (int k = 0; k <= a.intervals(); ++k) {
            const double* p = a.point(k);
            const double* q = b.point(2 * k);
            m = std::max(m, std::hypot(p[0] - q[0], p[1] - q[1]));
        }
        return m;
    };
    const double d1 = diff(runs[0], runs[1]), d2 = diff(runs[1], runs[2]);
    double clearance = std::numeric_limits<double>::infinity();
    for (int k = 0; k <= runs[2].intervals(); ++k)
        clearance = std::min(clearance, v.obstacle->distance(runs[2].point(k)));
    Report r;
    r.expect_le("prefix_deviation", prefix, 1e-9);
    r.expect_le("step_halving_ratio", d2 / d1, 0.75);
    r.expect_ge("obstacle_clearance", clearance, 0.0);
    json end = {runs[2].point(runs[2].intervals())[0], runs[2].point(runs[2].intervals())[1]};
    r.data = {{"halving_differences", {d1, d2}}, {"endpoint", end}};
    return r;
}

// ---------------------------------------------------------------- plumbing

std::string render(const Config& c, const Report& r, const std::string& error) {
    double worst = 0.0;
    for (const auto& ch : r.checks)
        if (ch.upper)
            worst = std::max(worst, ch.value);
    if (c.format == "csv") {
        if (!r.csv.empty() && error.empty())
            return r.csv;
        std::vector<std::vector<std::string>> rows;
        for (const auto& ch : r.checks)
            rows.push_back({ch.name, io::format_double(ch.value), io::format_double(ch.threshold),
                            ch.upper ? "le" : "ge", ch.pass() ? "pass" : "fail"});
        if (!error.empty())
            rows.push_back({"error", error, "", "", "fail"});
        return io::csv_table({"check", "value", "threshold", "relation", "status"}, rows);
    }
    json checks = json::array();
    for (const auto& ch : r.checks)
        checks.push_back({{"name", ch.name}, {"value", ch.value}, {"threshold", ch.threshold},
                          {"relation", ch.upper ? "le" : "ge"}, {"pass", ch.pass()}});
    json j = {{"command", c.command},
              {"seed", c.seed},
              {"tolerance", c.tol},
              {"worst_residual", worst},
              {"passed", error.empty() && r.passed()},
              {"checks", checks},
              {"data", r.data},
              {"timestamp", static_cast<long long>(std::time(nullptr))}};
    if (!error.empty())
        j["error"] = error;
    return j.dump(2) + "\n";
}

void apply_config_file(const std::string& path, Config& c, const CLI::App& sub) {
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot read config file '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
    auto given = [&](const char* flag) { return sub.count(flag) > 0; };
    try {
        if (j.contains("grid_step") && !given("--grid-step"))
            c.grid_step = j["grid_step"].get<double>();
        if (j.contains("grid_max") && !given("--grid-max"))
            c.grid_max = j["grid_max"].get<int>();
        if (j.contains("t") && !given("--t"))
            c.t = j["t"].get<double>();
        if (j.contains("dim") && !given("--dim"))
            c.dim = j["dim"].get<int>();
        if (j.contains("seed") && !given("--seed"))
            c.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("tol") && !given("--tol"))
            c.tol = j["tol"].get<double>();
        if (j.contains("format") && !given("--format"))
            c.format = j["format"].get<std::string>();
        if (j.contains("out") && !given("--out"))
            c.out = j["out"].get<std::string>();
        if (j.contains("levels") && !given("--levels"))
            c.levels = j["levels"].get<int>();
        if (j.contains("samples") && !given("--samples"))
            c.samples = j["samples"].get<int>();
    } catch (const json::exception& e) {
        throw InputError(std::string("config: ") + e.what());
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Path-space numerical experiments"};
    app.require_subcommand(1);
    Config c;
    std::string config_file;

    const std::vector<std::pair<std::string, std::string>> commands{
        {"converge-log", "partition sums B_n converging to the e-logarithm"},
        {"cocycle", "Gamma trivialization demo and cocycle recovery"},
        {"gamma", "2-cocycle Gamma of a random coherent section"},
        {"multiplier", "multiplier trivialization"},
        {"cpd", "conditional positive definiteness of Gaussian and Poisson forms"},
        {"pd-root", "positive definiteness of exp(g / n)"},
        {"span", "strong-spanning witness"},
        {"iso", "standard isomorphism onto the exponential model"},
        {"ineq", "norm monotonicity and continuity inequalities"},
        {"modulus", "modulus curves of unit sections"},
        {"demo-obstacle", "planar concatenation around a repulsive obstacle"},
    };
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, desc] : commands) {
        CLI::App* s = app.add_subcommand(name, desc);
        s->add_option("--grid-step", c.grid_step, "grid step h");
        s->add_option("--grid-max", c.grid_max, "number of grid cells");
        s->add_option("--t", c.t, "time horizon (on-grid)");
        s->add_option("--dim", c.dim, "one-particle dimension")->check(CLI::Range(1, 8));
        s->add_option("--seed", c.seed, "random seed");
        s->add_option("--tol", c.tol, "residual tolerance")->check(CLI::PositiveNumber);
        s->add_option("--format", c.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
        s->add_option("--out", c.out, "report path (stdout when omitted)");
        s->add_option("--levels", c.levels, "dyadic levels");
        s->add_option("--samples", c.samples, "sample count");
        s->add_option("--config", config_file, "JSON config file; flags take precedence");
        if (name == "cocycle")
            s->add_option("--demo", c.demo, "ramp or random");
        if (name == "span")
            s->add_flag("--counterexample", c.counterexample, "diagonal sample set counterexample");
        if (name == "converge-log")
            s->add_flag("--random", c.random, "random sections and reference instead of f = h = 1");
        subs[name] = s;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    Report report;
    std::string error;
    int rc = 0;
    try {
        for (const auto& [name, s] : subs)
            if (s->parsed())
                c.command = name;
        if (!config_file.empty())
            apply_config_file(config_file, c, *subs[c.command]);
        if (c.samples && *c.samples < 2)
            throw InputError("--samples must be at least 2");
        if (c.format != "json" && c.format != "csv")
            throw InputError("--format must be json or csv");

        static const std::map<std::string, Report (*)(const Config&)> runners{
            {"converge-log", run_converge_log}, {"cocycle", run_cocycle}, {"gamma", run_gamma},
            {"multiplier", run_multiplier},     {"cpd", run_cpd},         {"pd-root", run_pd_root},
            {"span", run_span},                 {"iso", run_iso},         {"ineq", run_ineq},
            {"modulus", run_modulus},           {"demo-obstacle", run_demo_obstacle},
        };
        report = runners.at(c.command)(c);
        rc = report.passed() ? 0 : 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        error = e.what();
        rc = 1;
    }

    const std::string text = render(c, report, error);
    if (c.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(c.out, std::ios::binary);
        if (!out) {
            std::cerr << "error: cannot write '" << c.out << "'\n";
            return 2;
        }
        out << text;
    }
    if (!error.empty())
        std::cerr << "invariant violation: " << error << "\n";
    for (const auto& ch : report.checks)
        if (!ch.pass())
            std::cerr << "failed: " << ch.name << " = " << ch.value << "\n";
    return rc;
}
