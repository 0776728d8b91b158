#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <crc/mirror.hpp>

using namespace crc;

namespace
{

const LambdaPair lam{Complex(0.6), Complex(-1.1)};

// n=2 flat coordinate by solving the GKZ recurrence term by term:
// (T0 T2) f = y T1 (T1 - 1) f with y = x^{-2} gives
// c_{m+2} (m+2)^2 / 4 ... rearranged: c_{m+2} = m^2 c_m / (4 (m+1)(m+2)), c_1 = 1.
std::vector<Real> n2_flat_oracle(int D)
{
    std::vector<Real> c(static_cast<std::size_t>(D + 1), 0);
    c[1] = 1;
    for (int m = 1; m + 2 <= D; m += 2) {
        c[static_cast<std::size_t>(m + 2)] = Real(m * m) * c[static_cast<std::size_t>(m)] / (4 * Real(m + 1) * Real(m + 2));
    }
    return c;
}

// Sum of the stored Laurent window at a numeric z.
Complex window_value(const IFunctionSeries &I, std::span<const int> mono, int comp, Complex z)
{
    const auto l = I.coefficient(mono, comp);
    Complex s(0);
    for (int p = 1; p >= -I.zorder; --p) {
        s += l.at(p) * std::pow(z, p);
    }
    return s;
}

} // namespace

TEST_CASE("effective classes")
{
    const auto a = enumerate_effective(2, 3);
    REQUIRE(a.size() == 4);
    for (int k = 0; k < 4; ++k) {
        CHECK(a[static_cast<std::size_t>(k)].beta[0] == k);
    }
    const auto b = enumerate_effective(3, 1);
    REQUIRE(b.size() == 3);
    CHECK(b[0].beta == MultiIndex{0, 0});
    CHECK(b[1].beta == MultiIndex{1, 0});
    CHECK(b[2].beta == MultiIndex{0, 1});
    CHECK(enumerate_effective(3, 2).size() == 6);
    for (int n = 2; n <= 6; ++n) {
        for (const auto &c : enumerate_effective(n, 4)) {
            int s = 0;
            for (int k = 1; k < n; ++k) {
                s += k * c.beta[static_cast<std::size_t>(k - 1)];
            }
            CHECK(c.sector() == s % n);
            CHECK(c.beta0() <= 0);
            CHECK(c.betan() <= 0);
        }
    }
}

TEST_CASE("n=2 flat coordinate against the term-by-term GKZ solution")
{
    const int D = 13;
    const auto f = flat_coords_X(2, D);
    const auto c = n2_flat_oracle(D);
    CHECK(std::abs(f[0].coeff(std::vector<int>{3}) - Real(1) / 24) < 1e-12);
    for (int m = 0; m <= D; ++m) {
        CHECK(std::abs(f[0].coeff(std::vector<int>{m}) - c[static_cast<std::size_t>(m)]) < 1e-13);
    }
    CHECK(std::abs(f[0].coeff(std::vector<int>{5}) - Real(3) / 640) < 1e-14);
    const auto g = gkz_term_by_term_n2(D);
    for (int m = 0; m <= D; ++m) {
        CHECK(std::abs(g.coeff(std::vector<int>{m}) - c[static_cast<std::size_t>(m)]) < 1e-15);
    }
}

TEST_CASE("flat coordinates start with x_k")
{
    for (int n = 2; n <= 6; ++n) {
        const auto f = flat_coords_X(n, 3);
        for (int k = 1; k < n; ++k) {
            for (int j = 1; j < n; ++j) {
                MultiIndex e(static_cast<std::size_t>(n - 1), 0);
                e[static_cast<std::size_t>(j - 1)] = 1;
                const Complex want = j == k ? Complex(1) : Complex(0);
                CHECK(std::abs(f[static_cast<std::size_t>(k - 1)].coeff(e) - want) < 1e-14);
            }
            CHECK(f[static_cast<std::size_t>(k - 1)].constant_term() == Complex(0));
        }
    }
    // n=3, beta = (1,1): 1 + beta(0) = 0, the coefficient is an exact zero.
    const auto f3 = flat_coords_X(3, 2);
    CHECK(f3[0].coeff(std::vector<int>{1, 1}) == Complex(0));
    CHECK(f3[1].coeff(std::vector<int>{1, 1}) == Complex(0));
}

TEST_CASE("I_X terms")
{
    const auto I = i_function_X(2, 0, 2, Complex(0), lam);
    CHECK(I.row(1)[0].constant_term() == Complex(1));
    CHECK(I.row(0)[0].constant_term() == Complex(0));

    const auto J = i_function_X(2, 3, 5, Complex(0.3), lam);
    // beta = 1: x_1 / z on delta_1
    CHECK(J.row(0)[1].coeff(std::vector<int>{1}) == Complex(1));
    CHECK(J.row(-1)[1].coeff(std::vector<int>{1}) == Complex(0));
    // beta = 2: z^{-2}(l1)(l2) x^2 / 2 on delta_0
    CHECK(std::abs(J.row(-1)[0].coeff(std::vector<int>{2}) - lam.l1 * lam.l2 / Real(2)) < 1e-15);

    // Against the closed form evaluated at numeric z, n = 3, beta = (2, 1).
    const auto K = i_function_X(3, 3, 8, Complex(0), lam);
    const Complex z(40, 7);
    // beta(0) = -5/3: r in {-2/3}; beta(n) = -4/3: s in {-1/3}; sector 1.
    const Complex expect = z * (lam.l1 - Real(2) / 3 * z) * (lam.l2 - Real(1) / 3 * z) / (z * z * z) / Real(2);
    const std::vector<int> mono{2, 1};
    CHECK(std::abs(window_value(K, mono, 1, z) - expect) < 1e-14);
}

TEST_CASE("z^0 row of I_X is x0 delta_0 + sum f_k delta_k")
{
    std::mt19937_64 rng(41);
    for (int n = 2; n <= 5; ++n) {
        const LambdaPair l = sample_lambda(rng, n);
        const auto I = i_function_X(n, 6, 8, Complex(0.25), l);
        const auto f = flat_coords_X(n, 6);
        const auto full = I.with_x0();
        CHECK(std::abs(full[1][0].constant_term() - Complex(0.25)) < 1e-15);
        CHECK((full[1][0] - TruncatedSeries::constant(n - 1, 6, Complex(0.25))).max_abs() < 1e-15);
        for (int k = 1; k < n; ++k) {
            CHECK((I.row(0)[static_cast<std::size_t>(k)] - f[static_cast<std::size_t>(k - 1)]).max_abs() < 1e-13);
        }
    }
}

TEST_CASE("I_Y n=2 d=1 term against the rational function")
{
    const auto I = i_function_Y(2, 2, 12, Complex(0), lam, IBasis::FixedPoint);
    const FixedPointData fp(2, lam);
    const Complex z(60, -11);
    for (int i = 0; i < 2; ++i) {
        const Complex w0 = fp.omega_restriction(0, i);
        const Complex w1 = fp.omega_restriction(1, i);
        const Complex w2 = fp.omega_restriction(2, i);
        const Complex expect = z * w1 * (w1 - z) / ((w0 + z) * (w2 + z));
        const std::vector<int> mono{1};
        CHECK(std::abs(window_value(I, mono, i, z) - expect) < 1e-13 * std::abs(expect) + 1e-15);
        const Complex expect2 = z * w1 * (w1 - z) * (w1 - Real(2) * z) * (w1 - Real(3) * z)
                                / ((w0 + z) * (w0 + Real(2) * z) * (w2 + z) * (w2 + Real(2) * z));
        const std::vector<int> mono2{2};
        CHECK(std::abs(window_value(I, mono2, i, z) - expect2) < 1e-12 * std::abs(expect2) + 1e-15);
    }
    const auto G = to_basis(I, IBasis::Gamma);
    CHECK(G.row(1)[0].constant_term() == Complex(1));
    CHECK(std::abs(G.row(1)[1].constant_term()) < 1e-15);
}

TEST_CASE("z^0 row of I_Y is the analytic part of g_k")
{
    std::mt19937_64 rng(43);
    for (int n = 2; n <= 5; ++n) {
        const LambdaPair l = sample_lambda(rng, n);
        const auto I = i_function_Y(n, 5, 7, Complex(0), l);
        const auto m = mirror_map_Y(n, 5);
        CHECK(I.row(0)[0].max_abs() < 1e-12);
        for (int k = 1; k < n; ++k) {
            CHECK((I.row(0)[static_cast<std::size_t>(k)] - m.S[static_cast<std::size_t>(k - 1)]).max_abs() < 1e-11);
        }
    }
    const auto m2 = mirror_map_Y(2, 3);
    CHECK(std::abs(m2.S[0].coeff(std::vector<int>{1}) - Complex(2)) < 1e-15);
    CHECK(std::abs(m2.S[0].coeff(std::vector<int>{2}) - Complex(3)) < 1e-15);
    const auto q = m2.exp_flat();
    CHECK(std::abs(q[0].coeff(std::vector<int>{1}) - Complex(1)) < 1e-15);
    CHECK(std::abs(q[0].coeff(std::vector<int>{2}) - Complex(2)) < 1e-15);
}

TEST_CASE("coordinate change")
{
    const std::vector<Complex> x2{Complex(0.5, 0.1)};
    const auto y2 = x_to_y(x2);
    CHECK(std::abs(y2[0] - Real(1) / (x2[0] * x2[0])) < 1e-14);
    const std::vector<Complex> ones{Complex(1), Complex(1)};
    const auto y3 = x_to_y(ones);
    CHECK(std::abs(y3[0] - Complex(1)) < 1e-15);
    CHECK(std::abs(y3[1] - Complex(1)) < 1e-15);
    CHECK_THROWS_AS(x_to_y(std::vector<Complex>{Complex(0), Complex(1)}), DomainError);

    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-2, 2);
    for (int n = 2; n <= 7; ++n) {
        std::vector<Complex> y(static_cast<std::size_t>(n - 1));
        for (auto &v : y) {
            v = Complex(u(rng), u(rng));
        }
        const auto back = x_to_y(y_to_x(y));
        for (std::size_t k = 0; k < y.size(); ++k) {
            CHECK(std::abs(back[k] - y[k]) < 1e-12 * std::abs(y[k]));
        }
    }
}

TEST_CASE("GKZ operator data")
{
    const auto op = gkz_operator(2, std::vector<int>{1});
    CHECK(op.D == std::vector<int>{1, -2, 1});
    CHECK(op.order() == 2);
    const auto op4 = gkz_operator(4, std::vector<int>{1, 0, 2});
    CHECK(op4.D == std::vector<int>{1, -2, 3, -4, 2});
    // T_j agree between the x and y descriptions on y^a = x^{C a}.
    for (int n = 2; n <= 6; ++n) {
        const auto C = xtoy_exponents(n);
        std::vector<Real> a(static_cast<std::size_t>(n - 1));
        std::vector<Real> b(static_cast<std::size_t>(n - 1), 0);
        for (int k = 0; k < n - 1; ++k) {
            a[static_cast<std::size_t>(k)] = 0.3 * k - 0.7;
        }
        for (int i = 0; i < n - 1; ++i) {
            for (int k = 0; k < n - 1; ++k) {
                b[static_cast<std::size_t>(i)] += C[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] * a[static_cast<std::size_t>(k)];
            }
        }
        for (int j = 0; j <= n; ++j) {
            CHECK(std::abs(GkzOperator::theta_x(n, j, b) - GkzOperator::theta_y(n, j, a)) < 1e-14);
        }
    }
}

TEST_CASE("GKZ annihilates the constant, f_k and g_k")
{
    for (int n = 2; n <= 5; ++n) {
        const int D = 10;
        const auto f = flat_coords_X(n, D);
        const auto m = mirror_map_Y(n, D);
        for (const auto &op : gkz_generators(n)) {
            const LogSeries one{std::vector<Complex>(static_cast<std::size_t>(n - 1), Complex(0)),
                                TruncatedSeries::constant(n - 1, D, Complex(1))};
            CHECK(gkz_residual(one, op).max_abs == 0);
            CHECK(gkz_residual_x(TruncatedSeries::constant(n - 1, D, Complex(1)), op).max_abs == 0);
            for (int k = 1; k < n; ++k) {
                const auto rx = gkz_residual_x(f[static_cast<std::size_t>(k - 1)], op);
                CHECK(rx.max_abs < 1e-9 * rx.input_scale);
                CHECK(rx.terms.size() > 1);
                const auto ry = gkz_residual(m.g(k), op);
                CHECK(ry.max_abs < 1e-9 * ry.input_scale);
            }
        }
    }
}

TEST_CASE("GKZ residual is nonzero for a perturbed series")
{
    const auto f = flat_coords_X(3, 6);
    auto g = f[0];
    g.add_coeff(std::vector<int>{2, 1}, Complex(1e-3));
    bool any = false;
    for (const auto &op : gkz_generators(3)) {
        any = any || gkz_residual_x(g, op).max_abs > 1e-5;
    }
    CHECK(any);
    const auto m = mirror_map_Y(2, 6);
    LogSeries bad = m.g(1);
    bad.analytic.add_coeff(std::vector<int>{3}, Complex(1e-3));
    CHECK(gkz_residual(bad, gkz_generators(2)[0]).max_abs > 1e-5);
}

TEST_CASE("GKZ residual agrees between x and y routes")
{
    for (int n = 2; n <= 4; ++n) {
        const auto f = flat_coords_X(n, 8);
        const auto C = xtoy_exponents(n);
        for (const auto &op : gkz_generators(n)) {
            for (int k = 1; k < n; ++k) {
                // perturb so both residuals are nonzero and must match term by term
                auto g = f[static_cast<std::size_t>(k - 1)];
                g.add_coeff(std::vector<int>(static_cast<std::size_t>(n - 1), 1), Complex(0.01));
                const auto rx = gkz_residual_x(g, op);
                const auto ry = gkz_residual_pulled_to_y(g, op);
                CHECK(rx.terms.size() == ry.terms.size());
                for (const auto &[A, v] : ry.terms) {
                    std::vector<int> b(static_cast<std::size_t>(n - 1), 0);
                    for (int i = 0; i < n - 1; ++i) {
                        int s = 0;
                        for (int j = 0; j < n - 1; ++j) {
                            s += C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * A[static_cast<std::size_t>(j)];
                        }
                        b[static_cast<std::size_t>(i)] = s / n;
                    }
                    const auto it = rx.terms.find(b);
                    REQUIRE(it != rx.terms.end());
                    CHECK(std::abs(it->second - v) < 1e-12);
                }
                CHECK(gkz_residual_pulled_to_y(f[static_cast<std::size_t>(k - 1)], op).max_abs < 1e-12);
            }
        }
    }
}

TEST_CASE("g_k log structure must cancel")
{
    // A log term with coefficient on y_1 for n = 3 under beta_2: the log survives
    // as a constant only after T_j with m = 0; with no m = 0 factor it would not.
    const auto m = mirror_map_Y(3, 4);
    const auto op = gkz_operator(3, std::vector<int>{0, 1});
    CHECK_NOTHROW(gkz_residual(m.g(1), op));
    const auto zero = gkz_operator(3, std::vector<int>{0, 0});
    LogSeries g = m.g(1);
    g.analytic = TruncatedSeries(2, 4);
    // D = 0: the operator is 1 - 1 and the log term survives.
    CHECK_THROWS_AS(gkz_residual(g, zero), DomainError);
}

TEST_CASE("Picard-Fuchs residuals of I_X")
{
    std::mt19937_64 rng(53);
    for (int n = 2; n <= 3; ++n) {
        for (int s = 0; s < 3; ++s) {
            const LambdaPair l = sample_lambda(rng, n);
            const auto I = i_function_X(n, 8, 10, Complex(0.2), l);
            std::vector<OrbifoldClass> classes;
            const auto C = xtoy_exponents(n);
            for (int i = 0; i < n - 1; ++i) {
                MultiIndex b(static_cast<std::size_t>(n - 1));
                for (int k = 0; k < n - 1; ++k) {
                    b[static_cast<std::size_t>(k)] = C[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
                }
                classes.push_back({n, b});
            }
            MultiIndex ne(static_cast<std::size_t>(n - 1), 0);
            ne[0] = n;
            classes.push_back({n, ne});
            for (const auto &b : classes) {
                const auto r = pf_residual_X(I, b);
                CHECK(r.entries > 0);
                CHECK(r.relative() < 1e-9);
            }
            CHECK(pf_residual_b(I).relative() < 1e-14);
        }
    }
}

TEST_CASE("PF_X at lambda = 0 reduces to the GKZ residual")
{
    for (int n = 2; n <= 4; ++n) {
        const int D = 7;
        const auto I = i_function_X(n, D, 8, Complex(0), LambdaPair{Complex(0), Complex(0)});
        // perturb a coefficient of the z^0 row so residuals are nonzero
        auto Ip = I;
        const std::vector<int> mono(static_cast<std::size_t>(n - 1), 1);
        Ip.rows[1][1].add_coeff(mono, Complex(0.05));
        auto f = flat_coords_X(n, D);
        f[0].add_coeff(mono, Complex(0.05));
        for (const auto &op : gkz_generators(n)) {
            const std::vector<int> Dx(op.D.begin() + 1, op.D.end() - 1);
            const auto pf = pf_residual_X(Ip, OrbifoldClass{n, Dx});
            const auto gk = gkz_residual_x(f[0], op);
            const int deg = op.order();
            const std::size_t row = static_cast<std::size_t>(pf.checked_top - deg);
            std::size_t compared = 0;
            for (const auto &[b, v] : gk.terms) {
                const auto it = pf.terms.find(b);
                REQUIRE(it != pf.terms.end());
                CHECK(std::abs(it->second[1][row] - v) < 1e-13);
                ++compared;
            }
            CHECK(compared > 0);
        }
    }
}

TEST_CASE("Picard-Fuchs residuals of I_Y")
{
    std::mt19937_64 rng(59);
    for (int n = 2; n <= 3; ++n) {
        for (int s = 0; s < 3; ++s) {
            const LambdaPair l = sample_lambda(rng, n);
            const auto I = i_function_Y(n, 6, 9, Complex(-0.4), l);
            for (const auto &op : gkz_generators(n)) {
                const auto r = pf_residual_Y(I, op.d);
                CHECK(r.entries > 0);
                CHECK(r.relative() < 1e-9);
            }
            CHECK(pf_residual_Y(I, std::vector<int>(static_cast<std::size_t>(n - 1), 1)).relative() < 1e-9);
            CHECK(pf_residual_b(I).relative() < 1e-14);
        }
    }
}

TEST_CASE("window errors")
{
    const auto I = i_function_X(3, 4, 1, Complex(0), lam);
    CHECK_THROWS_AS(pf_residual_X(I, OrbifoldClass{3, {3, 0}}), WindowError);
    CHECK_THROWS_AS(pf_residual_X(I, OrbifoldClass{3, {1, 0}}), DomainError);
    CHECK_THROWS_AS(i_function_X(3, 4, -1, Complex(0), lam), WindowError);
    const auto J = i_function_Y(2, 4, 1, Complex(0), lam);
    CHECK_THROWS_AS(pf_residual_Y(J, std::vector<int>{1}), WindowError);
}

TEST_CASE("json output")
{
    const auto I = i_function_X(2, 0, 2, Complex(0), lam);
    const auto j = to_json(I);
    CHECK(j["rows"].size() == 4);
    CHECK(j["rows"][0]["power"] == 1);
    const auto m = to_json(mirror_map_Y(3, 2));
    CHECK(m["g"].size() == 2);
}
