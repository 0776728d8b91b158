// One PASS/FAIL line per acceptance criterion. Tolerances are pinned below.
//
//   acceptance                 exit 0 iff every criterion passes
//   acceptance --expect-red A  exit 0 iff exactly the listed criteria fail
//                              (comma separated), so a known red criterion is
//                              still printed but does not hide new ones

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <crc/continuation.hpp>
#include <crc/mirror.hpp>
#include <crc/quantum.hpp>

#include "runner.hpp"

using namespace crc;

namespace
{

constexpr Real ac1_tol = 1e-12;
constexpr double ac1_seconds = 1;
constexpr Real ac2_tol = 1e-9;
constexpr double ac2_seconds = 30;
constexpr Real ac3_tol = 1e-9;
constexpr Real ac4_x_tol = 1e-12;
constexpr Real ac4_y_tol = 1e-2;
constexpr Real ac5_tol_small = 1e-6;  // n = 2, 3
constexpr Real ac5_tol = 1e-5;
constexpr double ac5_seconds = 300;
constexpr Real ac6_tol = 1e-10;
constexpr Real ac7_drift = 1e-9;
constexpr Real ac7_tol = 1e-8;
constexpr Real ac8_tol = 1e-6;
constexpr Real ac9_tol = 1e-10;

const LambdaPair ac8_lambda{Complex(0.7), Complex(-1.3)};
constexpr int ac8_degree = 8;

struct Verdict {
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char *f, double a)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, a);
    return buf;
}

const Check &find(const Report &r, const std::string &name)
{
    for (const auto &c : r.checks) {
        if (c.name == name) {
            return c;
        }
    }
    throw Error("missing check " + name);
}

Verdict ac1()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto f = flat_coords_X(2, 10);
    const auto g = gkz_term_by_term_n2(10);
    const std::vector<int> three{3};
    const Real a = std::abs(f[0].coeff(three) - Real(1) / 24);
    const Real b = std::abs(g.coeff(three) - Real(1) / 24);
    const double t = seconds_since(t0);
    std::ostringstream s;
    s << "gamma-ratio " << fmt("%.2e", a) << ", term-by-term " << fmt("%.2e", b) << ", " << fmt("%.3f", t) << " s";
    return {a < ac1_tol && b < ac1_tol && t < ac1_seconds, s.str()};
}

Verdict ac2()
{
    const auto t0 = std::chrono::steady_clock::now();
    Real worst = 0;
    for (int n = 2; n <= 5; ++n) {
        RunConfig c;
        c.n = n;
        c.degree = 10;
        const Report r = run("gkz-check", c);
        worst = std::max({worst, find(r, "gkz_f").value, find(r, "gkz_g").value});
    }
    const double t = seconds_since(t0);
    return {worst < ac2_tol && t < ac2_seconds, "max relative " + fmt("%.2e", worst) + " over n = 2..5, " + fmt("%.2f", t) + " s"};
}

Verdict ac3()
{
    Real worst = 0;
    for (int n = 2; n <= 3; ++n) {
        RunConfig c;
        c.n = n;
        c.seed = 53;
        c.lambda_samples = 3;
        const Report r = run("pf-check", c);
        worst = std::max({worst, find(r, "pf_X").value, find(r, "pf_Y").value});
    }
    return {worst < ac3_tol, "max relative " + fmt("%.2e", worst) + " over n = 2, 3 at 3 lambda each"};
}

Verdict ac4()
{
    Real lx = 0;
    Real ly = 0;
    for (int n = 2; n <= 8; ++n) {
        const auto k = label_roots_X(std::vector<Complex>(static_cast<std::size_t>(n - 1), Complex(0)));
        for (int i = 0; i < n; ++i) {
            lx = std::max(lx, static_cast<Real>(std::abs(k[static_cast<std::size_t>(i)] - std::pow(zeta(n), 2 * i + 1))));
        }
        const Real t = 1e-3;
        const auto mu = label_roots_Y(std::vector<Complex>(static_cast<std::size_t>(n - 1), Complex(t)));
        ly = std::max(ly, static_cast<Real>(std::abs(mu[0] + Real(1))));
        for (int i = 1; i < n; ++i) {
            ly = std::max(ly, static_cast<Real>(std::abs(mu[static_cast<std::size_t>(i)] / Complex(-std::pow(t, i)) - Real(1))));
        }
    }
    return {lx < ac4_x_tol && ly < ac4_y_tol,
            "W_X at 0 " + fmt("%.2e", lx) + ", W_Y at |y| = 1e-3 " + fmt("%.2e", ly) + " relative, n <= 8"};
}

Verdict ac5()
{
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::ostringstream s;
    for (int n = 2; n <= 6; ++n) {
        const auto r = verify_prop_ac(n, 12, 2000);
        const Real tol = n <= 3 ? ac5_tol_small : ac5_tol;
        const bool id = r.run.identity();
        const bool pass = id && r.max_error < tol;
        ok = ok && pass;
        s << "\n    n=" << n << (id ? " sigma=id" : " sigma!=id") << " max_error " << fmt("%.2e", r.max_error)
          << " (tol " << fmt("%.0e", tol) << ") budget: y tail " << fmt("%.1e", r.y_series_tail) << ", x tail "
          << fmt("%.1e", r.x_series_tail) << ", tracking " << fmt("%.1e", r.tracking) << (pass ? "" : "  <- red");
        if (!pass) {
            for (std::size_t i = 0; i < r.errors.size(); ++i) {
                if (r.errors[i] >= tol) {
                    s << "\n      g_" << i + 1 << " off by " << fmt("%.12f", r.errors[i]) << " (2 pi = "
                      << fmt("%.12f", 2 * pi) << ")";
                }
            }
        }
    }
    const double t = seconds_since(t0);
    ok = ok && t < ac5_seconds;
    return {ok, "D = 12, 2000 steps per leg, " + fmt("%.1f", t) + " s" + s.str()};
}

Verdict ac6()
{
    Real worst = 0;
    for (int n = 2; n <= 8; ++n) {
        RunConfig c;
        c.n = n;
        c.seed = 31;
        c.lambda_samples = 5;
        c.pairs = 100;
        const Report r = run("pairing", c);
        for (const char *k : {"cartan_pattern", "unit_pairing", "pairing_preservation"}) {
            worst = std::max(worst, find(r, k).value);
        }
    }
    return {worst < ac6_tol, "max relative " + fmt("%.2e", worst) + ", n = 2..8, 5 lambda, 100 pairs each"};
}

Verdict ac7()
{
    Real drift = 0;
    Real resid = 0;
    Real comm = 0;
    for (int n = 2; n <= 3; ++n) {
        RunConfig c;
        c.n = n;
        c.degree = 6;  // X side valid through u-degree 4
        const Report r = run("products", c);
        for (const char *s : {"X.", "Y."}) {
            const std::string p = s;
            drift = std::max(drift, find(r, p + "stability").value);
            comm = std::max({comm, find(r, p + "commutativity").value, find(r, p + "unit").value});
            resid = std::max({resid, find(r, p + "associativity").value, find(r, p + "frobenius_symmetry").value});
        }
    }
    return {drift < ac7_drift && comm == 0 && resid < ac7_tol,
            "drift " + fmt("%.2e", drift) + ", commutativity " + fmt("%.0e", comm) + ", assoc/symmetry " + fmt("%.2e", resid) +
                ", n = 2, 3"};
}

Verdict ac8()
{
    const auto r2 = corollary_check(2, ac8_lambda, ac8_degree, ac8_tol);
    const auto r3 = corollary_check(3, ac8_lambda, ac8_degree, ac8_tol);
    std::ostringstream s;
    s << "n=2 " << to_string(r2.status) << " " << fmt("%.2e", r2.max_relative_error) << " (held out "
      << r2.worst_held_out << "); stretch n=3 " << to_string(r3.status) << " " << fmt("%.2e", r3.max_relative_error);
    if (r2.status == CheckStatus::Inconclusive) {
        return {false, "INCONCLUSIVE: " + r2.note};
    }
    return {r2.status == CheckStatus::Pass && r2.max_relative_error < ac8_tol, s.str()};
}

Verdict ac9()
{
    std::mt19937_64 rng(61);
    std::uniform_real_distribution<double> rad(0.4, 2.0);
    std::uniform_real_distribution<double> ang(-pi, pi);
    Real worst = 0;
    for (int n = 2; n <= 6; ++n) {
        for (int s = 0; s < 50; ++s) {
            std::vector<Complex> x(static_cast<std::size_t>(n - 1));
            for (auto &v : x) {
                v = std::polar(Real(rad(rng)), Real(ang(rng)));
            }
            worst = std::max(worst, root_correspondence_residual(x));
        }
    }
    return {worst < ac9_tol, "max relative " + fmt("%.2e", worst) + ", 50 torus points each for n = 2..6"};
}

} // namespace

int main(int argc, char **argv)
{
    std::set<std::string> expected_red;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--expect-red") {
            std::stringstream ss(argv[i + 1]);
            std::string item;
            while (std::getline(ss, item, ',')) {
                expected_red.insert(item);
            }
        }
    }
    const std::vector<std::pair<std::string, std::function<Verdict()>>> criteria{
        {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4}, {"AC5", ac5},
        {"AC6", ac6}, {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9},
    };
    std::set<std::string> red;
    for (const auto &[name, f] : criteria) {
        Verdict v;
        try {
            v = f();
        } catch (const std::exception &e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        if (!v.pass) {
            red.insert(name);
        }
        std::printf("%s %s  %s\n", name.c_str(), v.pass ? "PASS" : "FAIL", v.detail.c_str());
        std::fflush(stdout);
    }
    if (!expected_red.empty()) {
        std::printf("expected red: %zu, observed red: %zu\n", expected_red.size(), red.size());
        return red == expected_red ? 0 : 1;
    }
    return red.empty() ? 0 : 1;
}
