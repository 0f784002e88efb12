#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "vp/interp.hpp"

using namespace vp;
constexpr double pi = std::numbers::pi;

namespace {

std::vector<double> sample1d(const Axis& ax, double (*fn)(double)) {
    std::vector<double> v(ax.N);
    for (int i = 0; i < ax.N; ++i) v[i] = fn(ax.x0 + i * ax.h);
    return v;
}

double max_midpoint_err(const Interpolant1D& itp, double (*fn)(double)) {
    const Axis& ax = itp.axis();
    double m = 0;
    for (int i = 0; i < ax.N; ++i) {
        const double x = ax.x0 + (i + 0.5) * ax.h;
        m = std::max(m, std::abs(itp.eval(x) - fn(x)));
    }
    return m;
}

} // namespace

TEST_CASE("1d constant data") {
    Axis ax(2 * pi, 32);
    std::vector<double> v(32, 3.25);
    for (auto sch : {Scheme::linear, Scheme::lagrange, Scheme::cubic_spline}) {
        auto itp = Interpolant1D::build(v, ax, sch, 3);
        for (double x : {0.0, 0.123, 5.0, -3.0, 100.0})
            CHECK(itp.eval(x) == doctest::Approx(3.25).epsilon(1e-14));
    }
}

TEST_CASE("1d midpoint accuracy on cosine") {
    Axis ax(2 * pi, 64);
    auto fn = +[](double x) { return std::cos(x); };
    auto data = sample1d(ax, fn);
    CHECK(max_midpoint_err(Interpolant1D::build(data, ax, Scheme::lagrange, 3), fn) <= 1e-5);
    CHECK(max_midpoint_err(Interpolant1D::build(data, ax, Scheme::cubic_spline, 3), fn) <=
          2e-6);
}

TEST_CASE("1d nodal exactness and periodicity") {
    Axis ax(3.7, 48);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(-2, 2);
    std::vector<double> data(48);
    for (auto& a : data) a = u(rng);
    for (auto sch : {Scheme::linear, Scheme::lagrange, Scheme::cubic_spline}) {
        auto itp = Interpolant1D::build(data, ax, sch, 3);
        for (int i = 0; i < ax.N; ++i)
            CHECK(itp.eval(i * ax.h) == doctest::Approx(data[i]).epsilon(1e-12));
        for (int q = 0; q < 1000; ++q) {
            const double x = u(rng) * 1.7;
            CHECK(itp.eval(x + ax.L) == doctest::Approx(itp.eval(x)).epsilon(1e-12));
        }
    }
}

TEST_CASE("cubic lagrange reproduces a cubic on its stencil") {
    // Nodes of one interior stencil lie on p; queries inside that cell are
    // reproduced exactly (local degree-3 reproduction).
    Axis ax(10.0, 40);
    const double h = ax.h;
    auto p = [&](double x) { return x * (x - h) * (x - 2 * h); };
    std::vector<double> data(ax.N);
    for (int i = 0; i < ax.N; ++i) data[i] = p(i * h);
    auto itp = Interpolant1D::build(data, ax, Scheme::lagrange, 3);
    for (int q = 1; q < 10; ++q) {
        const double x = 5 * h + q * h / 10.0; // interior cell, far from the seam
        CHECK(itp.eval(x) == doctest::Approx(p(x)).epsilon(1e-12));
    }
}

TEST_CASE("1d convergence order at least 3.5 for cubic schemes") {
    auto fn = +[](double x) { return std::sin(x) + 0.5 * std::cos(2 * x); };
    for (auto sch : {Scheme::lagrange, Scheme::cubic_spline}) {
        std::vector<double> errs;
        for (int N : {32, 64, 128, 256}) {
            Axis ax(2 * pi, N);
            errs.push_back(max_midpoint_err(Interpolant1D::build(sample1d(ax, fn), ax, sch, 3), fn));
        }
        double num = 0, den = 0;
        for (std::size_t i = 1; i < errs.size(); ++i) {
            num += std::log2(errs[i - 1] / errs[i]);
            den += 1;
        }
        CHECK(num / den >= 3.5);
    }
}

TEST_CASE("1d linearity in the data") {
    Axis ax(1.0, 24);
    std::mt19937 rng(9);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> a(24), b(24), c(24);
    for (int i = 0; i < 24; ++i) {
        a[i] = u(rng);
        b[i] = u(rng);
        c[i] = 1.5 * a[i] - 0.25 * b[i];
    }
    for (auto sch : {Scheme::linear, Scheme::lagrange, Scheme::cubic_spline}) {
        auto ia = Interpolant1D::build(a, ax, sch, 3);
        auto ib = Interpolant1D::build(b, ax, sch, 3);
        auto ic = Interpolant1D::build(c, ax, sch, 3);
        for (int q = 0; q < 200; ++q) {
            const double x = u(rng);
            CHECK(ic.eval(x) ==
                  doctest::Approx(1.5 * ia.eval(x) - 0.25 * ib.eval(x)).epsilon(1e-11));
        }
    }
}

TEST_CASE("general lagrange degrees") {
    auto fn = +[](double x) { return std::sin(x); };
    Axis ax(2 * pi, 64);
    auto data = sample1d(ax, fn);
    const double e2 = max_midpoint_err(Interpolant1D::build(data, ax, Scheme::lagrange, 2), fn);
    const double e3 = max_midpoint_err(Interpolant1D::build(data, ax, Scheme::lagrange, 3), fn);
    const double e5 = max_midpoint_err(Interpolant1D::build(data, ax, Scheme::lagrange, 5), fn);
    CHECK(e2 < 1e-3);
    CHECK(e3 < e2);
    CHECK(e5 < e3);
}

TEST_CASE("build rejections") {
    Axis ax(1.0, 4);
    std::vector<double> four(4, 1.0), three(3, 1.0);
    CHECK_THROWS(Interpolant1D::build(three, Axis(1.0, 3), Scheme::lagrange, 3));
    CHECK_THROWS(Interpolant1D::build(four, ax, Scheme::lagrange, 5)); // N < m+1
    std::vector<double> bad(4, 1.0);
    bad[2] = std::nan("");
    CHECK_THROWS(Interpolant1D::build(bad, ax, Scheme::lagrange, 3));
    CHECK_NOTHROW(Interpolant1D::build(four, ax, Scheme::cubic_spline, 3));
}

TEST_CASE("2d nodal exactness and separability") {
    Axis ax(2 * pi, 24), av(4.0, 16, -2.0);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<double> gx(ax.N), hv(av.N), vals(std::size_t(ax.N) * av.N);
    for (auto& a : gx) a = u(rng);
    for (auto& a : hv) a = u(rng);
    for (int i = 0; i < ax.N; ++i)
        for (int j = 0; j < av.N; ++j) vals[std::size_t(i) * av.N + j] = gx[i] * hv[j];
    for (auto sch : {Scheme::linear, Scheme::lagrange, Scheme::cubic_spline}) {
        auto itp = Interpolant2D::build(vals, 1, ax, av, sch, 3);
        auto ix = Interpolant1D::build(gx, ax, sch, 3);
        auto iv = Interpolant1D::build(hv, av, sch, 3);
        for (int i = 0; i < ax.N; ++i)
            for (int j = 0; j < av.N; ++j)
                CHECK(itp.eval1(i * ax.h, av.x0 + j * av.h) ==
                      doctest::Approx(vals[std::size_t(i) * av.N + j]).epsilon(1e-12));
        for (int q = 0; q < 300; ++q) {
            const double x = u(rng) * 8, v = u(rng) * 5;
            CHECK(itp.eval1(x, v) == doctest::Approx(ix.eval(x) * iv.eval(v)).epsilon(1e-11));
        }
    }
}

TEST_CASE("2d accuracy on sin(x)cos(v)") {
    Axis ax(2 * pi, 64), av(2 * pi, 64);
    std::vector<double> vals(64 * 64);
    for (int i = 0; i < 64; ++i)
        for (int j = 0; j < 64; ++j) vals[i * 64 + j] = std::sin(i * ax.h) * std::cos(j * av.h);
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> u(0, 2 * pi);
    for (auto sch : {Scheme::lagrange, Scheme::cubic_spline}) {
        auto itp = Interpolant2D::build(vals, 1, ax, av, sch, 3);
        double m = 0;
        for (int q = 0; q < 500; ++q) {
            const double x = u(rng), v = u(rng);
            m = std::max(m, std::abs(itp.eval1(x, v) - std::sin(x) * std::cos(v)));
        }
        CHECK(m <= 1e-4);
    }
}

TEST_CASE("displacement batch evaluation") {
    Axis ax(2 * pi, 32), av(2.0, 32, -1.0);
    SUBCASE("zero displacement gives zeros") {
        std::vector<double> zeros(2 * 32 * 32, 0.0);
        auto itp = Interpolant2D::build(zeros, 2, ax, av, Scheme::lagrange, 3);
        std::vector<double> xs = {0.1, 3.0, -2.0}, vs = {0.0, 0.7, -0.9};
        std::vector<double> o0(3), o1(3);
        double* outs[] = {o0.data(), o1.data()};
        itp.eval_batch(xs, vs, outs);
        for (int q = 0; q < 3; ++q) {
            CHECK(o0[q] == 0.0);
            CHECK(o1[q] == 0.0);
        }
    }
    SUBCASE("sinusoidal displacement matches analytic within O(h^4)") {
        std::vector<double> vals(2 * 32 * 32, 0.0);
        for (int i = 0; i < 32; ++i)
            for (int j = 0; j < 32; ++j) vals[i * 32 + j] = std::sin(pi * (av.x0 + j * av.h));
        auto itp = Interpolant2D::build(vals, 2, ax, av, Scheme::lagrange, 3);
        std::mt19937 rng(23);
        std::uniform_real_distribution<double> ux(0, 2 * pi), uv(-1, 1);
        double m = 0;
        for (int q = 0; q < 400; ++q) {
            double o[2];
            const double v = uv(rng);
            itp.eval(ux(rng), v, o);
            m = std::max(m, std::abs(o[0] - std::sin(pi * v)));
        }
        CHECK(m <= 5e-4); // ~ (pi*h)^4
    }
    SUBCASE("query permutation permutes output") {
        std::vector<double> vals(32 * 32);
        std::mt19937 rng(29);
        std::uniform_real_distribution<double> u(-1, 1);
        for (auto& a : vals) a = u(rng);
        auto itp = Interpolant2D::build(vals, 1, ax, av, Scheme::cubic_spline, 3);
        std::vector<double> xs(50), vs(50), out(50), rout(50);
        for (int q = 0; q < 50; ++q) {
            xs[q] = u(rng) * 4;
            vs[q] = u(rng);
        }
        double* o1[] = {out.data()};
        itp.eval_batch(xs, vs, o1);
        std::vector<double> rx(xs.rbegin(), xs.rend()), rv(vs.rbegin(), vs.rend());
        double* o2[] = {rout.data()};
        itp.eval_batch(rx, rv, o2);
        for (int q = 0; q < 50; ++q) CHECK(out[q] == rout[49 - q]);
    }
}

TEST_CASE("axis origin offsets the node positions") {
    Axis av(12.0, 48, -6.0);
    std::vector<double> data(48);
    for (int j = 0; j < 48; ++j) data[j] = std::exp(-0.5 * std::pow(av.x0 + j * av.h, 2));
    auto itp = Interpolant1D::build(data, av, Scheme::cubic_spline, 3);
    for (int j = 0; j < 48; ++j)
        CHECK(itp.eval(av.x0 + j * av.h) == doctest::Approx(data[j]).epsilon(1e-12));
    CHECK(itp.eval(0.0) == doctest::Approx(1.0).epsilon(1e-6));
}
