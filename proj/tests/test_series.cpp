#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include <crc/series.hpp>
#include <crc/special.hpp>

using namespace crc;

namespace
{

TruncatedSeries random_series(std::mt19937_64 &rng, int nvars, int cap, bool unit_linear = false, int var = 0)
{
    std::uniform_real_distribution<double> u(-1, 1);
    TruncatedSeries s(nvars, cap);
    for (std::size_t i = 0; i < s.size(); ++i) {
        s[i] = Complex(u(rng), u(rng));
    }
    if (unit_linear) {
        const auto &l = s.layout();
        for (std::size_t i = 0; i < s.size(); ++i) {
            if (l.total(i) == 0) {
                s[i] = 0;
            } else if (l.total(i) == 1) {
                // unit upper-triangular linear part
                int k = 0;
                while (l.exponents(i)[static_cast<std::size_t>(k)] == 0) {
                    ++k;
                }
                if (k == var) {
                    s[i] = 1;
                } else if (k < var) {
                    s[i] = 0;
                }
            }
        }
    }
    return s;
}

Real max_diff(const TruncatedSeries &a, const TruncatedSeries &b)
{
    return (a - b).max_abs();
}

} // namespace

// Lagrange reversion of u = x + x^2: x = sum (-1)^{k-1} C_{k-1} u^k with Catalan C.
TEST_CASE("reverse matches Lagrange inversion of x + x^2")
{
    const int cap = 9;
    auto x = TruncatedSeries::variable(1, cap, 0);
    std::vector<TruncatedSeries> f{x + x * x};
    const auto inv = reverse(f);
    const long catalan[] = {1, 1, 2, 5, 14, 42, 132, 429, 1430};
    for (int k = 1; k <= cap; ++k) {
        const Real expect = ((k - 1) % 2 == 0 ? 1 : -1) * Real(catalan[k - 1]);
        CHECK(std::abs(inv[0].coeff(std::vector<int>{k}) - expect) < 1e-12);
    }
}

TEST_CASE("n=2 mirror map reversion gives u - u^3/24")
{
    const int cap = 7;
    auto x = TruncatedSeries::variable(1, cap, 0);
    std::vector<TruncatedSeries> f{x + x * x * x * Complex(1.0 / 24)};
    const auto inv = reverse(f);
    CHECK(std::abs(inv[0].coeff(std::vector<int>{1}) - Real(1)) < 1e-15);
    CHECK(std::abs(inv[0].coeff(std::vector<int>{3}) + Real(1) / 24) < 1e-15);
    // next term solved by hand: 3 (1/24)^2 u^5
    CHECK(std::abs(inv[0].coeff(std::vector<int>{5}) - Real(3) / 576) < 1e-15);
    CHECK(max_diff(compose(f[0], inv), x) < 1e-14);
}

TEST_CASE("reciprocal gamma values")
{
    CHECK(reciprocal_gamma(1) == doctest::Approx(1).epsilon(1e-15));
    CHECK(reciprocal_gamma(0) == 0);
    CHECK(reciprocal_gamma(-3) == 0);
    CHECK(reciprocal_gamma(0.5) == doctest::Approx(0.5641895835477563).epsilon(1e-14));
    CHECK(reciprocal_gamma(5) == doctest::Approx(1.0 / 24).epsilon(1e-14));
    CHECK(reciprocal_gamma(-0.5) == doctest::Approx(-0.5 / std::sqrt(pi)).epsilon(1e-14));
}

TEST_CASE("reciprocal gamma recurrence")
{
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-12, 12);
    for (int t = 0; t < 200; ++t) {
        const Real s = u(rng);
        const Real lhs = reciprocal_gamma(s + 1);
        const Real rhs = reciprocal_gamma(s) / s;
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(std::abs(lhs), Real(1e-300)));
    }
}

TEST_CASE("ring operations and truncation")
{
    auto x = TruncatedSeries::variable(2, 3, 0);
    auto one = TruncatedSeries::constant(2, 3, 1);
    const auto p = (one + x) * (one - x);
    CHECK(p.coeff(std::vector<int>{0, 0}) == Complex(1));
    CHECK(p.coeff(std::vector<int>{2, 0}) == Complex(-1));
    CHECK(p.coeff(std::vector<int>{1, 0}) == Complex(0));

    auto x1 = TruncatedSeries::variable(1, 1, 0);
    auto one1 = TruncatedSeries::constant(1, 1, 1);
    const auto q = (one1 + x1) * (one1 - x1);
    CHECK(q.coeff(std::vector<int>{0}) == Complex(1));
    CHECK(q.max_abs() == doctest::Approx(1));

    CHECK_THROWS_AS(x + x1, ShapeError);
}

TEST_CASE("ring axioms on random series")
{
    std::mt19937_64 rng(3);
    for (int t = 0; t < 5; ++t) {
        const auto a = random_series(rng, 3, 6);
        const auto b = random_series(rng, 3, 6);
        const auto c = random_series(rng, 3, 6);
        const auto lhs = (a * b) * c;
        const auto rhs = a * (b * c);
        CHECK(max_diff(lhs, rhs) < 1e-13 * std::max(Real(1), lhs.max_abs()));
        const auto d1 = a * (b + c);
        const auto d2 = a * b + a * c;
        CHECK(max_diff(d1, d2) < 1e-13 * std::max(Real(1), d1.max_abs()));
    }
}

TEST_CASE("compose examples")
{
    auto x1 = TruncatedSeries::variable(2, 4, 0);
    auto x2 = TruncatedSeries::variable(2, 4, 1);
    auto outer = TruncatedSeries::variable(1, 4, 0);
    outer = outer * outer;
    std::vector<TruncatedSeries> inner{x1 + x2};
    const auto r = compose(outer, inner);
    CHECK(max_diff(r, x1 * x1 + x2 * x2 + x1 * x2 * Complex(2)) < 1e-15);

    std::vector<TruncatedSeries> bad{x1 + TruncatedSeries::constant(2, 4, 1)};
    CHECK_THROWS_AS(compose(outer, bad), DomainError);
}

TEST_CASE("reverse round trip on random unit-triangular maps")
{
    std::mt19937_64 rng(5);
    for (int nv : {1, 2, 3, 5}) {
        const int cap = nv >= 5 ? 6 : 10;
        std::vector<TruncatedSeries> f;
        for (int k = 0; k < nv; ++k) {
            auto s = random_series(rng, nv, cap, true, k);
            f.push_back(s * Complex(0.5) + TruncatedSeries::variable(nv, cap, k) * Complex(0.5));
        }
        const auto inv = reverse(f);
        for (int k = 0; k < nv; ++k) {
            const auto id = compose(f[static_cast<std::size_t>(k)], inv);
            CHECK(max_diff(id, TruncatedSeries::variable(nv, cap, k)) < 1e-10);
        }
    }
    auto x = TruncatedSeries::variable(1, 4, 0);
    std::vector<TruncatedSeries> bad{x * Complex(2)};
    CHECK_THROWS_AS(reverse(bad), DomainError);
}

TEST_CASE("exp and json round trip")
{
    auto x = TruncatedSeries::variable(1, 6, 0);
    const auto e = exp(x);
    Real fact = 1;
    for (int k = 0; k <= 6; ++k) {
        if (k > 0) {
            fact *= k;
        }
        CHECK(std::abs(e.coeff(std::vector<int>{k}) - 1 / fact) < 1e-15);
    }
    const auto j = to_json(e);
    CHECK(j["nvars"] == 1);
    CHECK(j["degree_cap"] == 6);
    // JSON numbers are binary64
    CHECK(max_diff(series_from_json(j), e) <= (sizeof(Real) == sizeof(double) ? 0 : 1e-16));
}

TEST_CASE("layout order is graded lex")
{
    const auto l = MonomialLayout::get(2, 2);
    std::vector<std::vector<int>> got;
    for (std::size_t i = 0; i < l->size(); ++i) {
        got.emplace_back(l->exponents(i).begin(), l->exponents(i).end());
    }
    const std::vector<std::vector<int>> want{{0, 0}, {1, 0}, {0, 1}, {2, 0}, {1, 1}, {0, 2}};
    CHECK(got == want);
}
