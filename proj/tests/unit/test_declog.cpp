#include <cmath>
#include <numbers>
#include <random>

#include "catch_amalgamated.hpp"
#include "helpers.hpp"
#include "pathspace/declog.hpp"
#include "pathspace/linalg.hpp"

using namespace pathspace;
using Catch::Approx;

namespace {

constexpr double kE = std::numbers::e;

// Random section normalized against e: lambda_t = 1 / <x_t, e_t>.
DecompSection random_de(std::mt19937_64& rng, const DecompSection& e, int cells, double half = 0.5) {
    return de_normalize(DecompSection(testutil::random_path(rng, e.grid(), cells, e.dim(), half)), e);
}

// Oracle: int <f - eps, h - eps> as a cell sum.
cplx centered_l2(const StepPath& f, const StepPath& h, const StepPath& eps) {
    cplx s = 0.0;
    const double step = f.grid().step();
    for (int k = 0; k < f.cells(); ++k)
        for (int i = 0; i < f.dim(); ++i)
            s += step * (f.at(k, i) - eps.at(k, i)) * std::conj(h.at(k, i) - eps.at(k, i));
    return s;
}

// Reference whose epsilon jumps halfway through the horizon.
DecompSection step_reference(const TimeGrid& g, int cells) {
    std::vector<cplx> v(static_cast<std::size_t>(cells));
    for (int k = 0; k < cells; ++k)
        v[static_cast<std::size_t>(k)] = k < cells / 2 ? cplx(0.4, 0.1) : cplx(-0.3, 0.2);
    return DecompSection::reference(StepPath(g, 1, v));
}

}  // namespace

TEST_CASE("decomposable vectors", "[declog]") {
    TimeGrid g(0.25, 32);
    const auto one = StepPath::constant(g, 4, cplx(1.0));
    const DecompVector u(1.0, one);
    CHECK(dv_inner(u, u).real() == Approx(kE));
    const DecompVector w(cplx(0.3, 2.0), one);
    CHECK(std::abs(dv_inner(w, DecompSection::vacuum(g, 8, 1).at(4)) - cplx(0.3, 2.0)) < 1e-15);
    CHECK(dv_norm_sq(w) == Approx(std::norm(w.lambda) * kE));
    CHECK_THROWS_AS(DecompVector(0.0, one), Error);

    std::mt19937_64 rng(1);
    for (int i = 0; i < 20; ++i) {
        const DecompVector a(testutil::rand_c(rng, 3.0) + 0.01, testutil::random_path(rng, g, 4, 2, 3.0));
        const DecompVector b(testutil::rand_c(rng, 3.0) + 0.01, testutil::random_path(rng, g, 4, 2, 3.0));
        CHECK(std::abs(dv_inner(a, b)) > 0.0);
    }
}

TEST_CASE("left division", "[declog]") {
    std::mt19937_64 rng(2);
    TimeGrid g(0.25, 32);
    for (int trial = 0; trial < 10; ++trial) {
        const auto f = testutil::random_path(rng, g, 10, 2);
        const int split = 1 + trial % 9;
        const DecompVector x(cplx(1.5, -0.5), f);
        const DecompVector b(cplx(0.0, 2.0), propagator_cells(f, split, 10));
        const auto a = left_divide(x, b);
        CHECK(a.f == propagator_cells(f, 0, split));
        const auto ab = dv_multiply(a, b);
        CHECK(ab.f == x.f);
        CHECK(std::abs(ab.lambda - x.lambda) < 1e-15);
    }
    const auto f = testutil::random_path(rng, g, 6, 1);
    CHECK_THROWS_AS(left_divide(DecompVector(1.0, f), DecompVector(1.0, testutil::random_path(rng, g, 2, 1))), Error);
}

TEST_CASE("sections", "[declog]") {
    std::mt19937_64 rng(3);
    TimeGrid g(0.125, 64);
    const cplx eps[] = {cplx(0.5, -0.2), cplx(0.1, 0.3)};
    const auto e = DecompSection::reference(g, 24, eps);
    for (int k = 1; k <= 24; ++k)
        CHECK(dv_norm_sq(e.at(k)) == Approx(1.0).epsilon(1e-14));

    const auto x = random_de(rng, e, 24);
    for (int r = 1; r < 24; ++r)
        for (int s = r + 1; s <= 24; ++s) {
            const auto xs = dv_multiply(x.at(r), x.between(r, s));
            REQUIRE(xs.f == x.at(s).f);
            REQUIRE(std::abs(xs.lambda - x.at(s).lambda) <= 1e-14 * std::abs(x.at(s).lambda));
        }

    SECTION("de_normalize") {
        for (int k = 1; k <= 24; ++k)
            CHECK(std::abs(dv_inner(x.at(k), e.at(k)) - 1.0) <= 1e-13);
        const auto vac = DecompSection::vacuum(g, 24, 2);
        const auto y = de_normalize(DecompSection(testutil::random_path(rng, g, 24, 2), std::vector<cplx>(24, 3.0)), vac);
        for (cplx l : y.lambdas())
            CHECK(std::abs(l - 1.0) < 1e-15);
        const auto ee = de_normalize(e, e);
        for (int k = 0; k < 24; ++k)
            CHECK(std::abs(ee.lambdas()[k] - e.lambdas()[k]) <= 1e-14);
    }
    SECTION("modulus curve") {
        const auto one = DecompSection(StepPath::constant(g, 24, cplx(1.0)));
        const auto xu = unit_normalize(one);
        const auto vac = DecompSection::vacuum(g, 24, 1);
        const auto m = modulus_curve(xu, vac);
        for (int k = 1; k <= 24; ++k)
            CHECK(m.values[k - 1] == Approx(std::exp(-0.5 * g.time(k))).epsilon(1e-14));
        const auto same = modulus_curve(xu, xu);
        for (double v : same.values)
            CHECK(v == Approx(1.0));
        for (int i = 0; i < 10; ++i) {
            const auto a = unit_normalize(DecompSection(testutil::random_path(rng, g, 24, 2)));
            const auto b = unit_normalize(DecompSection(testutil::random_path(rng, g, 24, 2)));
            CHECK(modulus_curve(a, b).max_increase <= 1e-12);
        }
        CHECK_THROWS_AS(modulus_curve(one, vac), Error);
    }
    SECTION("norm monotonicity") {
        const auto vac = DecompSection::vacuum(g, 24, 1);
        const auto f = testutil::random_path(rng, g, 24, 1);
        const DecompSection xs(f);
        const auto r = norm_monotone_check(xs, vac);
        CHECK(r.max_decrease <= 0.0);
        CHECK(dv_norm_sq(xs.at(10)) == Approx(std::exp(l2_norm_sq(propagator_cells(f, 0, 10)))));
        const auto rr = norm_monotone_check(DecompSection(f.refined()), DecompSection::vacuum(g.refined(), 48, 1));
        CHECK(rr.first_gap < r.first_gap);
        CHECK(std::abs(norm_monotone_check(e, e).first_gap) <= 1e-14);
        CHECK(norm_monotone_check(e, e).max_decrease <= 1e-14);
        for (int i = 0; i < 100; ++i)
            CHECK(norm_monotone_check(random_de(rng, e, 24), e).max_decrease <= 1e-12);
        CHECK_THROWS_AS(norm_monotone_check(DecompSection(f), e), Error);
    }
    SECTION("continuity inequality") {
        for (int i = 0; i < 100; ++i) {
            const auto a = random_de(rng, e, 24), b = random_de(rng, e, 24);
            const int s = 1 + i % 10, t = s + 1 + i % 7, T = t + i % 5;
            CHECK(ineq_76_check(a, b, s, t, T) >= -1e-12);
            CHECK(ineq_76_check(a, a, s, t, T) >= -1e-12);
            CHECK(ineq_76_check(a, e, s, t, T) >= -1e-12);
        }
    }
}

TEST_CASE("partition sums", "[declog]") {
    TimeGrid g(1.0 / 64, 256);
    const auto vac = DecompSection::vacuum(g, 64, 1);
    const DecompVector x(1.0, StepPath::constant(g, 64, cplx(1.0)));
    for (int n : {1, 2, 4, 8, 16}) {
        const cplx b = B_partition(x, x, vac, Partition::uniform(g, 64, n));
        CHECK(b.real() == Approx(n * std::expm1(1.0 / n)).epsilon(1e-13));
        CHECK(std::abs(b.imag()) < 1e-14);
    }
    CHECK(B_partition(x, x, vac, Partition::uniform(g, 64, 2)).real() == Approx(1.297442541400256));

    std::mt19937_64 rng(4);
    const cplx eps[] = {cplx(0.3, -0.1)};
    const auto e = DecompSection::reference(g, 64, eps);
    const auto y = random_de(rng, e, 64).at(64);
    CHECK(std::abs(B_partition(e.at(64), y, e, Partition::dyadic(g, 64, 3))) <= 1e-13);
    CHECK(std::abs(B_partition(y, e.at(64), e, Partition::dyadic(g, 64, 3))) <= 1e-13);

    std::vector<DecompVector> xs;
    for (int i = 0; i < 6; ++i)
        xs.push_back(random_de(rng, e, 64).at(64));
    const auto coarse = Partition::dyadic(g, 64, 1);
    const Partition irregular(g, {0, 5, 32, 40, 64});
    CHECK(B_refinement_check(xs, e, coarse, coarse.dyadic_refine()) >= -1e-10);
    CHECK(B_refinement_check(xs, e, coarse, coarse.common_refinement(irregular)) >= -1e-10);
    CHECK_THROWS_AS(B_refinement_check(xs, e, coarse.dyadic_refine(), coarse), Error);
    const auto G = B_gram(xs, e, coarse);
    CHECK(hermitian_defect(G) <= 1e-12);
}

TEST_CASE("partition limit", "[declog]") {
    SECTION("constant paths") {
        TimeGrid g(1.0 / 64, 64);
        const auto vac = DecompSection::vacuum(g, 64, 1);
        const DecompVector x(1.0, StepPath::constant(g, 64, cplx(1.0)));
        const auto r = B_limit(x, x, vac, 6);
        REQUIRE(r.table.size() == 7);
        for (const auto& row : r.table) {
            const double n = row.pieces;
            CHECK(row.value.real() == Approx(n * std::expm1(1.0 / n)).epsilon(1e-13));
            if (n >= 4)
                CHECK(std::abs(row.value.real() - 1.0 - 0.5 / n) <= 1.0 / (n * n));
        }
        for (std::size_t i = 1; i < r.table.size(); ++i)
            CHECK(r.table[i].value.real() < r.table[i - 1].value.real());
        CHECK_THROWS_AS(B_limit(x, x, vac, 7), Error);
    }
    SECTION("nonzero reference") {
        TimeGrid g(1.0 / 1024, 1024);
        std::mt19937_64 rng(5);
        const cplx eps[] = {cplx(0.2, 0.1)};
        const auto e = DecompSection::reference(g, 1024, eps);
        std::vector<double> fv(1024), hv(1024);
        for (int k = 0; k < 1024; ++k) {
            const double t = (k + 0.5) / 1024;
            fv[k] = std::sin(3 * t);
            hv[k] = 1.0 - t * t;
        }
        const auto x = de_normalize(DecompSection(StepPath::real(g, fv)), e).at(1024);
        const auto y = de_normalize(DecompSection(StepPath::real(g, hv)), e).at(1024);
        const auto r = B_limit(x, y, e, 10);
        const cplx oracle = centered_l2(x.f, y.f, e.path());
        CHECK(std::abs(r.oracle - oracle) <= 1e-13);
        CHECK(std::abs(r.estimate - oracle) <= 1e-3);
        const auto ee = B_limit(e.at(1024), e.at(1024), e, 4);
        for (const auto& row : ee.table)
            CHECK(std::abs(row.value) <= 1e-13);
    }
}

TEST_CASE("branch-tracked logarithm", "[declog]") {
    std::mt19937_64 rng(6);
    TimeGrid g(0.125, 64);
    const cplx eps[] = {cplx(0.3, 0.2), cplx(-0.1, 0.4)};
    const auto e = DecompSection::reference(g, 16, eps);

    for (int i = 0; i < 20; ++i) {
        const auto x = random_de(rng, e, 16).at(16), y = random_de(rng, e, 16).at(16);
        const cplx L = le_branch(x, y, e);
        CHECK(std::abs(L - centered_l2(x.f, y.f, e.path())) <= 1e-10);
        CHECK(std::abs(L - std::conj(le_branch(y, x, e))) <= 1e-12);
        CHECK(std::abs(std::exp(L) - normalized_ratio(x, y, e.at(16))) <= 1e-12 * std::abs(std::exp(L)));
    }
    CHECK(std::abs(le_branch(e.at(16), e.at(16), e)) <= 1e-14);

    SECTION("winding past the branch cut") {
        TimeGrid w(0.125, 16);
        const auto vac = DecompSection::vacuum(w, 16, 1);
        const DecompVector x(1.0, StepPath::constant(w, 16, cplx(1.0)));
        const DecompVector y(1.0, StepPath::constant(w, 16, cplx(0.0, -2.0)));
        const cplx L = le_branch(x, y, vac);
        CHECK(std::abs(L - cplx(0.0, 4.0)) <= 1e-10);
        CHECK(std::abs(std::exp(L) - normalized_ratio(x, y, vac.at(16))) <= 1e-12);
        CHECK(std::abs(std::log(normalized_ratio(x, y, vac.at(16))).imag()) < std::numbers::pi);
    }
    SECTION("coarse grids are refined") {
        TimeGrid w(1.0, 4);
        const auto vac = DecompSection::vacuum(w, 4, 1);
        const DecompVector x(1.0, StepPath::constant(w, 4, cplx(1.0)));
        const DecompVector y(1.0, StepPath::constant(w, 4, cplx(0.0, -2.0)));
        CHECK(std::abs(le_branch(x, y, vac) - cplx(0.0, 8.0)) <= 1e-10);
        CHECK_THROWS_AS(le_branch(x, y, vac, 0), Error);
    }
}

TEST_CASE("logarithm Gram", "[declog]") {
    std::mt19937_64 rng(7);
    TimeGrid g(0.125, 64);
    const cplx eps[] = {cplx(0.3, 0.2)};
    const auto e = DecompSection::reference(g, 16, eps);
    std::vector<DecompVector> xs;
    for (int i = 0; i < 20; ++i)
        xs.push_back(random_de(rng, e, 16).at(16));
    const auto r = le_pd_gram(xs, e);
    CHECK(r.min_eig >= -1e-8);
    CHECK(r.max_diff <= 1e-10);
    CHECK(std::abs(r.min_eig - r.l2_min_eig) <= 1e-9);

    std::vector<DecompVector> es(5, e.at(16));
    const auto z = le_pd_gram(es, e);
    CHECK(max_abs(z.le) <= 1e-14);
    CHECK(std::abs(z.min_eig) <= 1e-14);
}

TEST_CASE("change of reference", "[declog]") {
    std::mt19937_64 rng(8);
    TimeGrid g(0.125, 64);
    const cplx eps1[] = {cplx(0.3, 0.2)}, eps2[] = {cplx(-0.2, 0.1)};
    const auto e1 = DecompSection::reference(g, 16, eps1), e2 = DecompSection::reference(g, 16, eps2);
    std::vector<DecompVector> xs;
    for (int i = 0; i < 6; ++i)
        xs.push_back(DecompVector(testutil::rand_c(rng) + 1.0, testutil::random_path(rng, g, 16, 1)));
    CHECK(rebase_check(e1, e1, xs) == 0.0);
    CHECK(rebase_check(e1, e2, xs) <= 1e-12);

    // L^{e2} - L^{e1} = phi(x) + conj phi(y), phi(x) = <f, eps1 - eps2> + (|eps2|^2 - |eps1|^2) t / 2.
    const double t = g.time(16);
    auto phi = [&](const DecompVector& x) {
        return l2_inner(x.f, StepPath::constant(g, 16, eps1[0] - eps2[0])) +
               0.5 * (std::norm(eps2[0]) - std::norm(eps1[0])) * t;
    };
    for (const auto& a : xs)
        for (const auto& b : xs) {
            const cplx d = le_branch(a, b, e2) - le_branch(a, b, e1);
            REQUIRE(std::abs(d - phi(a) - std::conj(phi(b))) <= 1e-10);
        }

    const auto e3 = step_reference(g, 16);
    CHECK(rebase_check(e1, e3, xs) <= 1e-10);
}

TEST_CASE("additivity defect of the logarithm", "[declog]") {
    std::mt19937_64 rng(9);
    TimeGrid g(0.125, 64);
    const int s = 6, t = 8;

    SECTION("vacuum reference has no defect") {
        const auto vac = DecompSection::vacuum(g, 24, 1);
        const DecompVector y(1.0, testutil::random_path(rng, g, t, 1));
        CHECK(std::abs(psi_s(vac, s, y)) <= 1e-14);
        std::vector<PsiPair> pairs;
        for (int i = 0; i < 5; ++i)
            pairs.push_back({DecompVector(1.0, testutil::random_path(rng, g, s, 1)),
                             DecompVector(1.0, testutil::random_path(rng, g, s, 1)),
                             DecompVector(1.0, testutil::random_path(rng, g, t, 1)),
                             DecompVector(1.0, testutil::random_path(rng, g, t, 1))});
        CHECK(psi_s_check(vac, pairs) <= 1e-12);
    }
    SECTION("jumping reference") {
        const auto e = step_reference(g, 24);
        std::vector<PsiPair> pairs;
        for (int i = 0; i < 5; ++i)
            pairs.push_back({DecompVector(1.0, testutil::random_path(rng, g, s, 1)),
                             DecompVector(1.0, testutil::random_path(rng, g, s, 1)),
                             DecompVector(1.0, testutil::random_path(rng, g, t, 1)),
                             DecompVector(1.0, testutil::random_path(rng, g, t, 1))});
        CHECK(psi_s_check(e, pairs) <= 1e-10);

        // y = e(s, s + t): psi is log |<e', e_t>| for the unit vectors, which
        // in the model is -|eps(s + .) - eps|^2 / 2 integrated over (0, t].
        const auto tail = e.between(s, s + t);
        const auto shifted = propagator_cells(e.path(), s, s + t), head = propagator_cells(e.path(), 0, t);
        const cplx psi = psi_s(e, s, tail);
        CHECK(std::abs(psi - (-0.5 * l2_norm_sq(axpy(shifted, -1.0, head)))) <= 1e-12);
        CHECK(std::abs(psi.real()) > 1e-3);
    }
    SECTION("horizon") {
        const auto e = step_reference(g, 12);
        CHECK_THROWS_AS(psi_s(e, s, DecompVector(1.0, testutil::random_path(rng, g, t, 1))), Error);
    }
}

TEST_CASE("continuity estimates", "[declog]") {
    std::mt19937_64 rng(10);
    TimeGrid g(0.125, 64);
    const cplx eps[] = {cplx(0.3, 0.2), cplx(0.0, -0.2)};
    const auto e = DecompSection::reference(g, 20, eps);
    for (int i = 0; i < 30; ++i) {
        const auto u = random_de(rng, e, 20), v = random_de(rng, e, 20);
        const int s = 1 + i % 12, t = s + 1 + i % 7;
        const auto slack = continuity_slack(u, v, e, s, t);
        CHECK(slack.first >= -1e-12);
        CHECK(slack.second >= -1e-12);
    }
}

TEST_CASE("products along a net", "[declog]") {
    std::vector<std::vector<cplx>> net;
    for (int n : {10, 100, 1000})
        net.emplace_back(static_cast<std::size_t>(n), cplx(1.0 / n));
    const auto r = lemma911(net, 1.0);
    REQUIRE(r.rows.size() == 3);
    CHECK(r.within_bound);
    CHECK(r.rows[1].product.real() == Approx(std::pow(1.01, 100)).epsilon(1e-13));
    CHECK(r.rows[1].product.real() == Approx(2.704814).epsilon(1e-6));
    CHECK(r.rows[1].gap == Approx(0.01347).epsilon(1e-3));
    CHECK(r.rows[2].gap < r.rows[1].gap / 9.0);
    CHECK(r.rows[1].gap < r.rows[0].gap / 9.0);

    std::vector<std::vector<cplx>> zero{std::vector<cplx>(5, 0.0)};
    const auto z = lemma911(zero, 0.0);
    CHECK(z.rows[0].product == cplx(1.0));
    CHECK(z.rows[0].gap == 0.0);

    std::mt19937_64 rng(11);
    for (int i = 0; i < 20; ++i) {
        std::vector<cplx> seq(30);
        cplx zeta = 0.0;
        double l2 = 0.0;
        for (auto& c : seq) {
            c = testutil::rand_c(rng, 0.05);
            zeta += c;
            l2 += std::norm(c);
        }
        std::vector<std::vector<cplx>> one{seq};
        const auto rr = lemma911(one, zeta);
        CHECK(rr.within_bound);
        CHECK(rr.rows[0].gap <= 2.0 * std::exp(std::abs(zeta)) * std::expm1(l2));
    }
    std::vector<std::vector<cplx>> big{{cplx(0.9)}};
    CHECK_THROWS_AS(lemma911(big, 0.0), Error);
}
