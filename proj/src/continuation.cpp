#include <crc/continuation.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <Eigen/Eigenvalues>

#include <crc/json_util.hpp>
#include <crc/mirror.hpp>

namespace crc
{

namespace
{

constexpr int max_refinement_depth = 20;

Real max_abs(std::span<const Complex> v)
{
    Real m = 0;
    for (Complex c : v) {
        m = std::max(m, static_cast<Real>(std::abs(c)));
    }
    return m;
}

// Smallest |r_i - r_j| / max(|r_i|, |r_j|).
Real min_relative_pairwise(std::span<const Complex> r)
{
    Real m = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) {
            const Real s = std::max(std::abs(r[i]), std::abs(r[j]));
            if (s > 0) {
                m = std::min(m, static_cast<Real>(std::abs(r[i] - r[j]) / s));
            }
        }
    }
    return m;
}

Real min_pairwise(std::span<const Complex> r)
{
    Real m = std::numeric_limits<Real>::infinity();
    for (std::size_t i = 0; i < r.size(); ++i) {
        for (std::size_t j = i + 1; j < r.size(); ++j) {
            m = std::min(m, static_cast<Real>(std::abs(r[i] - r[j])));
        }
    }
    return m;
}

// Nearest-neighbour assignment from `from` to `to`. Returns an empty vector if
// two sources pick the same target or a source is not clearly closer to its
// target than to any other (distance below half the runner-up).
std::vector<int> match_nearest(std::span<const Complex> from, std::span<const Complex> to)
{
    std::vector<int> pick(from.size(), -1);
    std::vector<char> used(to.size(), 0);
    for (std::size_t i = 0; i < from.size(); ++i) {
        Real best = std::numeric_limits<Real>::infinity();
        Real second = best;
        int arg = -1;
        for (std::size_t j = 0; j < to.size(); ++j) {
            const Real d = std::abs(from[i] - to[j]);
            if (d < best) {
                second = best;
                best = d;
                arg = static_cast<int>(j);
            } else if (d < second) {
                second = d;
            }
        }
        if (arg < 0 || used[static_cast<std::size_t>(arg)] || (to.size() > 1 && best > Real(0.5) * second)) {
            return {};
        }
        used[static_cast<std::size_t>(arg)] = 1;
        pick[i] = arg;
    }
    return pick;
}

Real root_residual(const PolyW &p, Complex r)
{
    Real s = 0;
    Real pw = 1;
    for (Complex a : p.coeffs) {
        s += std::abs(a) * pw;
        pw *= std::abs(r);
    }
    return std::abs(p.evaluate(r)) / s;
}

struct Tracker {
    Space side;
    const CoefficientPath &path;
    RootTrack &out;

    // Advance roots/logs from t0 to t1, subdividing on ambiguity.
    void advance(std::vector<Complex> &roots_now, std::vector<Complex> &logs, Real t0, Real t1, int depth)
    {
        const PolyW p{side, path(t1)};
        const RootResult rr = crc::roots(p);
        const Real rel_sep = min_relative_pairwise(rr.roots);
        if (rel_sep < Real(1e-6)) {
            throw PathError("roots nearly collide (relative separation " + std::to_string(static_cast<double>(rel_sep))
                            + "); the path passes too close to the discriminant");
        }
        const auto pick = match_nearest(roots_now, rr.roots);
        bool ok = !pick.empty();
        Real jump = 0;
        if (ok) {
            for (std::size_t i = 0; i < roots_now.size() && ok; ++i) {
                const Complex next = rr.roots[static_cast<std::size_t>(pick[i])];
                jump = std::max(jump, static_cast<Real>(std::abs(std::arg(next / roots_now[i]))));
            }
            ok = jump < pi / 2;
        }
        if (!ok) {
            if (depth >= max_refinement_depth) {
                throw StepRefinementError("root matching failed after 2^20 subdivisions near t = "
                                          + std::to_string(static_cast<double>(t0)));
            }
            const Real mid = (t0 + t1) / 2;
            advance(roots_now, logs, t0, mid, depth + 1);
            advance(roots_now, logs, mid, t1, depth + 1);
            return;
        }
        for (std::size_t i = 0; i < roots_now.size(); ++i) {
            const Complex next = rr.roots[static_cast<std::size_t>(pick[i])];
            logs[i] += std::log(next / roots_now[i]);
            roots_now[i] = next;
        }
        out.max_residual = std::max(out.max_residual, rr.max_residual);
        out.min_separation = std::min(out.min_separation, rr.min_separation);
        out.max_log_jump = std::max(out.max_log_jump, jump);
        ++out.substeps;
    }
};

std::vector<Complex> principal_logs(std::span<const Complex> v)
{
    std::vector<Complex> l(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        l[i] = std::log(v[i]);
    }
    return l;
}

void require_n(int n)
{
    if (n < 2) {
        throw DomainError("n must be at least 2");
    }
}

} // namespace

Complex PolyW::evaluate(Complex t) const
{
    Complex s(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        s = s * t + *it;
    }
    return s;
}

Complex PolyW::derivative(Complex t) const
{
    Complex s(0);
    for (std::size_t k = coeffs.size() - 1; k >= 1; --k) {
        s = s * t + Real(k) * coeffs[k];
    }
    return s;
}

Real PolyW::scale() const
{
    return max_abs(coeffs);
}

PolyW poly_X(std::span<const Complex> x)
{
    const int n = static_cast<int>(x.size()) + 1;
    PolyW p{Space::X, std::vector<Complex>(static_cast<std::size_t>(n + 1), Complex(0))};
    p.coeffs[0] = Complex(1);
    for (int k = 1; k < n; ++k) {
        p.coeffs[static_cast<std::size_t>(k)] = x[static_cast<std::size_t>(k - 1)];
    }
    p.coeffs[static_cast<std::size_t>(n)] = Complex(1);
    return p;
}

PolyW poly_Y(std::span<const Complex> y)
{
    const int n = static_cast<int>(y.size()) + 1;
    PolyW p{Space::Y, std::vector<Complex>(static_cast<std::size_t>(n + 1), Complex(0))};
    p.coeffs[static_cast<std::size_t>(n)] = Complex(1);
    // c_k = prod_{i<=k} y_i^{k+1-i} multiplies m^{n-1-k}; c_k = c_{k-1} * (y_1 ... y_k).
    Complex c(1);
    Complex partial(1);
    p.coeffs[static_cast<std::size_t>(n - 1)] = c;
    for (int k = 1; k < n; ++k) {
        partial *= y[static_cast<std::size_t>(k - 1)];
        c *= partial;
        p.coeffs[static_cast<std::size_t>(n - 1 - k)] = c;
    }
    return p;
}

std::vector<Complex> coefficients_from_roots(std::span<const Complex> r)
{
    std::vector<Complex> c{Complex(1)};
    for (Complex root : r) {
        std::vector<Complex> next(c.size() + 1, Complex(0));
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= root * c[k];
        }
        c.swap(next);
    }
    return c;
}

std::vector<Complex> x_from_poly(const PolyW &w)
{
    const int n = w.degree();
    return std::vector<Complex>(w.coeffs.begin() + 1, w.coeffs.begin() + n);
}

std::vector<Complex> y_from_poly(const PolyW &w)
{
    const int n = w.degree();
    auto c = [&w, n](int k) { return k == 0 ? Complex(1) : w.coeffs[static_cast<std::size_t>(n - 1 - k)]; };
    std::vector<Complex> y(static_cast<std::size_t>(n - 1));
    for (int k = 1; k < n; ++k) {
        y[static_cast<std::size_t>(k - 1)] = k == 1 ? c(1) : c(k) * c(k - 2) / (c(k - 1) * c(k - 1));
    }
    return y;
}

RootResult roots(const PolyW &p, Real separation_tolerance)
{
    const int n = p.degree();
    if (n < 1 || p.coeffs.back() != Complex(1)) {
        throw DomainError("roots() needs a monic polynomial of positive degree");
    }
    CMatrix comp = CMatrix::Zero(n, n);
    for (int i = 1; i < n; ++i) {
        comp(i, i - 1) = Complex(1);
    }
    for (int i = 0; i < n; ++i) {
        comp(i, n - 1) = -p.coeffs[static_cast<std::size_t>(i)];
    }
    // Parlett-Reinsch balancing; W_Y has strongly graded coefficients.
    for (bool done = false; !done;) {
        done = true;
        for (int i = 0; i < n; ++i) {
            Real c = 0;
            Real r = 0;
            for (int j = 0; j < n; ++j) {
                if (j != i) {
                    c += std::abs(comp(j, i));
                    r += std::abs(comp(i, j));
                }
            }
            if (c == 0 || r == 0) {
                continue;
            }
            Real f = 1;
            const Real s = c + r;
            while (c < r / 2) {
                c *= 2;
                r /= 2;
                f *= 2;
            }
            while (c >= r * 2) {
                c /= 2;
                r *= 2;
                f /= 2;
            }
            if ((c + r) < Real(0.95) * s) {
                done = false;
                comp.row(i) /= f;
                comp.col(i) *= f;
            }
        }
    }
    Eigen::ComplexEigenSolver<CMatrix> es(comp, false);
    if (es.info() != Eigen::Success) {
        throw DomainError("companion eigenvalue solve failed");
    }
    RootResult r;
    r.roots.assign(es.eigenvalues().data(), es.eigenvalues().data() + n);
    // Aberth-Ehrlich polish; a step is kept only if it lowers the residual.
    std::vector<Real> res(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        res[static_cast<std::size_t>(i)] = root_residual(p, r.roots[static_cast<std::size_t>(i)]);
    }
    for (int it = 0; it < 30; ++it) {
        bool moved = false;
        for (int i = 0; i < n; ++i) {
            const auto ui = static_cast<std::size_t>(i);
            const Complex zi = r.roots[ui];
            const Complex d = p.derivative(zi);
            if (d == Complex(0)) {
                continue;
            }
            const Complex w = p.evaluate(zi) / d;
            Complex s(0);
            for (int j = 0; j < n; ++j) {
                if (j != i) {
                    s += Real(1) / (zi - r.roots[static_cast<std::size_t>(j)]);
                }
            }
            const Complex cand = zi - w / (Real(1) - w * s);
            const Real cres = root_residual(p, cand);
            if (cres < res[ui]) {
                moved = moved || cand != zi;
                r.roots[ui] = cand;
                res[ui] = cres;
            }
        }
        if (!moved) {
            break;
        }
    }
    for (Real v : res) {
        r.max_residual = std::max(r.max_residual, v);
    }
    r.min_separation = n > 1 ? min_pairwise(r.roots) : std::numeric_limits<Real>::infinity();
    r.near_multiple = r.min_separation < separation_tolerance * std::max(Real(1), max_abs(r.roots));
    return r;
}

std::vector<Complex> label_roots_X(std::span<const Complex> x, Real basin)
{
    const int n = static_cast<int>(x.size()) + 1;
    if (max_abs(x) > basin) {
        throw DomainError("x is outside the labelling basin");
    }
    const auto rr = roots(poly_X(x));
    std::vector<Complex> targets(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        targets[static_cast<std::size_t>(i)] = std::pow(zeta(n), 2 * i + 1);
    }
    const auto pick = match_nearest(targets, rr.roots);
    if (pick.empty()) {
        throw LabelingError("two roots of W_X are nearest the same limit");
    }
    std::vector<Complex> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        out[static_cast<std::size_t>(i)] = rr.roots[static_cast<std::size_t>(pick[static_cast<std::size_t>(i)])];
    }
    return out;
}

std::vector<Complex> label_roots_Y(std::span<const Complex> y, Real basin)
{
    const int n = static_cast<int>(y.size()) + 1;
    if (max_abs(y) > basin) {
        throw DomainError("y is outside the labelling basin");
    }
    if (max_abs(y) == 0) {
        std::vector<Complex> out(static_cast<std::size_t>(n), Complex(0));
        out[0] = Complex(-1);
        return out;
    }
    auto r = roots(poly_Y(y)).roots;
    std::stable_sort(r.begin(), r.end(), [](Complex a, Complex b) { return std::abs(a) > std::abs(b); });
    Complex target(-1);
    Complex partial(1);
    for (int k = 0; k < n; ++k) {
        if (k > 0) {
            partial *= y[static_cast<std::size_t>(k - 1)];
            target = -partial;
        }
        if (std::abs(r[static_cast<std::size_t>(k)] - target) > Real(0.5) * std::abs(target)) {
            throw LabelingError("root of W_Y does not follow the expected asymptotics at label "
                                + std::to_string(k));
        }
    }
    return r;
}

RootTrack track_roots(Space side, const CoefficientPath &path, Real t0, Real t1, int steps,
                      std::vector<Complex> start_roots, std::vector<Complex> start_logs)
{
    if (steps < 1) {
        throw DomainError("need at least one step");
    }
    RootTrack tr;
    tr.side = side;
    tr.min_separation = std::numeric_limits<Real>::infinity();
    tr.steps.push_back({t0, start_roots, start_logs});
    Tracker tk{side, path, tr};
    std::vector<Complex> r = std::move(start_roots);
    std::vector<Complex> l = std::move(start_logs);
    for (int s = 1; s <= steps; ++s) {
        const Real a = t0 + (t1 - t0) * Real(s - 1) / Real(steps);
        const Real b = s == steps ? t1 : t0 + (t1 - t0) * Real(s) / Real(steps);
        tk.advance(r, l, a, b, 0);
        tr.steps.push_back({b, r, l});
    }
    return tr;
}

std::vector<Complex> leg1_roots(int n, Real eps, Real bend)
{
    require_n(n);
    const Complex p = rho(n);
    const Complex e = std::polar(eps, bend * std::sin(pi * eps));
    std::vector<Complex> r(static_cast<std::size_t>(n));
    Complex mu0(-1);
    for (int k = 1; k < n; ++k) {
        const Complex v = std::pow(e, k) * std::pow(p, k + 1);
        r[static_cast<std::size_t>(k)] = v;
        mu0 -= v;
    }
    r[0] = mu0;
    return r;
}

std::vector<Complex> leg2_roots(int n, Real eps, Real bend)
{
    require_n(n);
    std::vector<Complex> r(static_cast<std::size_t>(n));
    const Real s = bend * std::sin(pi * eps);
    for (int k = 0; k < n; ++k) {
        const Real a = Real(2 * k + 1) / Real(n) * eps + Real(2 * (n - k)) / Real(n + 1) * (1 - eps);
        const Real radius = std::exp(s * (Real(k) - Real(n - 1) / 2));
        r[static_cast<std::size_t>(k)] = std::polar(radius, pi * a);
    }
    return r;
}

std::vector<Complex> leg1_y(int n, Real eps, Real bend)
{
    const auto r = leg1_roots(n, eps, bend);
    return y_from_poly(PolyW{Space::Y, coefficients_from_roots(r)});
}

std::vector<Complex> leg2_x(int n, Real eps, Real bend)
{
    const auto r = leg2_roots(n, eps, bend);
    return x_from_poly(PolyW{Space::X, coefficients_from_roots(r)});
}

bool PathRun::identity() const
{
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        if (sigma[i] != static_cast<int>(i)) {
            return false;
        }
    }
    return !sigma.empty();
}

PathRun track_path(const PathSpec &spec)
{
    const int n = spec.n;
    require_n(n);
    if (spec.steps < 2) {
        throw DomainError("path needs at least two steps per leg");
    }
    PathRun run;
    run.spec = spec;
    // Y endpoint: the last grid point (moving towards the junction) still inside |y| <= y_endpoint.
    int j0 = 0;
    for (int j = 1; j <= spec.steps; ++j) {
        const Real e = Real(j) / Real(spec.steps);
        if (max_abs(leg1_y(n, e, spec.leg1_bend)) <= spec.y_endpoint) {
            j0 = j;
        } else {
            break;
        }
    }
    if (j0 == 0) {
        throw PathError("no leg-1 grid point inside the Y-side series basin; increase the step count");
    }
    int j1 = -1;
    for (int j = 0; j <= spec.steps; ++j) {
        const Real e = Real(j) / Real(spec.steps);
        if (max_abs(leg2_x(n, e, spec.bend)) <= spec.x_endpoint) {
            j1 = j;
            break;
        }
    }
    if (j1 <= 0) {
        throw PathError("no leg-2 grid point inside the X-side series basin");
    }
    run.eps_start = Real(j0) / Real(spec.steps);
    run.eps_end = Real(j1) / Real(spec.steps);
    run.y_start = leg1_y(n, run.eps_start, spec.leg1_bend);
    run.x_end = leg2_x(n, run.eps_end, spec.bend);

    const auto mu_start = label_roots_Y(run.y_start);
    const Real bend1 = spec.leg1_bend;
    const CoefficientPath p1 = [n, bend1](Real e) { return poly_Y(leg1_y(n, e, bend1)).coeffs; };
    run.leg1 = track_roots(Space::Y, p1, run.eps_start, 1, spec.steps - j0, mu_start, principal_logs(mu_start));

    // Junction: mu = 1 / (x_1 kappa) at x = leg2_x(0).
    const auto xj = leg2_x(n, 0, spec.bend);
    const auto kappa_j = roots(poly_X(xj)).roots;
    const auto &mu_end = run.leg1.steps.back().roots;
    std::vector<Complex> image(kappa_j.size());
    for (std::size_t k = 0; k < kappa_j.size(); ++k) {
        image[k] = Real(1) / (xj[0] * kappa_j[k]);
    }
    const auto hand = match_nearest(mu_end, image);
    if (hand.empty()) {
        throw PathError("junction hand-off between mu and 1/(x_1 kappa) is ambiguous");
    }
    std::vector<Complex> kappa_start(static_cast<std::size_t>(n));
    std::vector<Complex> kappa_logs(static_cast<std::size_t>(n));
    const Complex log_x1 = std::log(xj[0]);
    for (int i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(hand[static_cast<std::size_t>(i)]);
        run.junction_mismatch = std::max(run.junction_mismatch, static_cast<Real>(std::abs(mu_end[static_cast<std::size_t>(i)] - image[k])));
        // trajectory i of leg 2 starts at the kappa that mu_i hands off to
        kappa_start[static_cast<std::size_t>(i)] = kappa_j[k];
        kappa_logs[static_cast<std::size_t>(i)] = -log_x1 - run.leg1.steps.back().logs[static_cast<std::size_t>(i)];
    }
    const Real bend = spec.bend;
    const CoefficientPath p2 = [n, bend](Real e) { return poly_X(leg2_x(n, e, bend)).coeffs; };
    run.leg2 = track_roots(Space::X, p2, 0, run.eps_end, j1, kappa_start, kappa_logs);

    const auto labelled = label_roots_X(run.x_end);
    const auto fin = match_nearest(run.leg2.steps.back().roots, labelled);
    if (fin.empty()) {
        throw PathError("final labelling of the tracked kappa roots is ambiguous");
    }
    run.sigma = fin;
    run.leg2.perm = fin;

    for (const auto &st : run.leg1.steps) {
        const auto cf = leg1_roots(n, st.t, spec.leg1_bend);
        for (std::size_t i = 0; i < cf.size(); ++i) {
            run.closed_form_deviation = std::max(run.closed_form_deviation, static_cast<Real>(std::abs(st.roots[i] - cf[i])));
        }
    }
    for (const auto &st : run.leg2.steps) {
        const auto cf = leg2_roots(n, st.t, spec.bend);
        for (Complex r : st.roots) {
            Real best = std::numeric_limits<Real>::infinity();
            for (Complex c : cf) {
                best = std::min(best, static_cast<Real>(std::abs(r - c)));
            }
            run.closed_form_deviation = std::max(run.closed_form_deviation, best);
        }
    }
    run.min_separation = std::min(run.leg1.min_separation, run.leg2.min_separation);
    return run;
}

Real junction_consistency(int n)
{
    const auto mu = leg1_roots(n, 1);
    const auto kappa = leg2_roots(n, 0);
    const auto x = leg2_x(n, 0);
    const auto y1 = leg1_y(n, 1);
    const auto y2 = x_to_y(x);
    Real worst = 0;
    for (std::size_t i = 0; i < y1.size(); ++i) {
        worst = std::max(worst, static_cast<Real>(std::abs(y1[i] - y2[i])));
    }
    std::vector<Complex> image(kappa.size());
    for (std::size_t k = 0; k < kappa.size(); ++k) {
        image[k] = Real(1) / (x[0] * kappa[k]);
    }
    for (Complex m : mu) {
        Real best = std::numeric_limits<Real>::infinity();
        for (Complex v : image) {
            best = std::min(best, static_cast<Real>(std::abs(m - v)));
        }
        worst = std::max(worst, best);
    }
    return worst;
}

RoottofReport verify_roottof(int n, std::span<const Complex> x, int D)
{
    require_n(n);
    if (static_cast<int>(x.size()) != n - 1) {
        throw ShapeError("x must have n-1 entries");
    }
    const auto kappa = label_roots_X(x);
    const auto f = flat_coords_X(n, D);
    std::vector<Complex> fx;
    for (const auto &s : f) {
        fx.push_back(s.evaluate(x));
    }
    RoottofReport r;
    const Complex z = zeta(n);
    Complex sum(0);
    for (int i = 0; i < n; ++i) {
        const Complex base = Real(2 * i + 1) * pi * I / Real(n);
        const Complex lhs = base + std::log(kappa[static_cast<std::size_t>(i)] / std::pow(z, 2 * i + 1));
        Complex rhs = base;
        for (int k = 1; k < n; ++k) {
            rhs += std::pow(z, (2 * i + 1) * k) * fx[static_cast<std::size_t>(k - 1)] / Real(n);
        }
        r.residuals.push_back(std::abs(lhs - rhs));
        r.max_residual = std::max(r.max_residual, r.residuals.back());
        sum += lhs;
    }
    // prod kappa_i = (-1)^n, so sum log kappa_i = n pi i mod 2 pi i.
    const Real turns = (sum.imag() - Real(n) * pi) / (2 * pi);
    r.log_sum_residual = std::abs(sum.real()) + 2 * pi * std::abs(turns - std::round(turns));
    return r;
}

PropAcReport verify_prop_ac(int n, int D, int steps)
{
    PathSpec spec;
    spec.n = n;
    spec.steps = steps;
    return verify_prop_ac(spec, D);
}

PropAcReport verify_prop_ac(const PathSpec &spec, int D)
{
    const int n = spec.n;
    PropAcReport rep;
    rep.n = n;
    rep.degree = D;
    rep.run = track_path(spec);
    if (!rep.run.identity()) {
        throw PathError("continuation permutation is not the identity");
    }
    const auto &run = rep.run;
    const MirrorMapY mm = mirror_map_Y(n, D);
    const auto &y = run.y_start;
    const auto &mu_logs = run.leg1.steps.front().logs;
    for (int i = 1; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i - 1);
        const Complex g = std::log(y[idx]) + mm.S[idx].evaluate(y);
        const Complex delta = mu_logs[static_cast<std::size_t>(i)] - mu_logs[static_cast<std::size_t>(i - 1)];
        const Real turns = (g - delta).imag() / (2 * pi);
        const int m = static_cast<int>(std::lround(turns));
        rep.branch_shift.push_back(m);
        rep.y_series_tail = std::max(rep.y_series_tail, static_cast<Real>(std::abs(g - delta - Real(2 * m) * pi * I)));
    }
    const auto f = flat_coords_X(n, D);
    std::vector<Complex> fx;
    for (const auto &s : f) {
        fx.push_back(s.evaluate(run.x_end));
    }
    const CMatrix L = l_matrix(n);
    const auto &kappa_logs = run.leg2.steps.back().logs;
    for (int i = 1; i < n; ++i) {
        // trajectory i of leg 2 carries log kappa_{sigma(i)} = log kappa_i
        const Complex cont = kappa_logs[static_cast<std::size_t>(i - 1)] - kappa_logs[static_cast<std::size_t>(i)]
                             + Real(2 * rep.branch_shift[static_cast<std::size_t>(i - 1)]) * pi * I;
        Complex pred = -Real(2) * pi * I / Real(n);
        for (int k = 1; k < n; ++k) {
            pred += L(i, k) * fx[static_cast<std::size_t>(k - 1)];
        }
        rep.continued.push_back(cont);
        rep.predicted.push_back(pred);
        rep.errors.push_back(std::abs(cont - pred));
        rep.max_error = std::max(rep.max_error, rep.errors.back());
    }
    rep.x_series_tail = verify_roottof(n, run.x_end, D).max_residual;
    rep.tracking = run.closed_form_deviation + run.junction_mismatch;
    return rep;
}

Real root_correspondence_residual(std::span<const Complex> x)
{
    const auto y = x_to_y(x);
    const auto kappa = roots(poly_X(x)).roots;
    auto mu = roots(poly_Y(y)).roots;
    Real worst = 0;
    for (Complex k : kappa) {
        const Complex v = Real(1) / (x[0] * k);
        auto it = std::min_element(mu.begin(), mu.end(), [v](Complex a, Complex b) { return std::abs(a - v) < std::abs(b - v); });
        worst = std::max(worst, static_cast<Real>(std::abs(*it - v) / std::abs(v)));
        mu.erase(it);
    }
    return worst;
}

std::vector<int> monodromy_X(int n, const std::function<std::vector<Complex>(Real)> &x_of_t, int steps)
{
    const auto start = label_roots_X(x_of_t(0));
    if (static_cast<int>(start.size()) != n) {
        throw ShapeError("path dimension does not match n");
    }
    const CoefficientPath p = [&x_of_t](Real t) { return poly_X(x_of_t(t)).coeffs; };
    const auto tr = track_roots(Space::X, p, 0, 1, steps, start, principal_logs(start));
    const auto fin = label_roots_X(x_of_t(1));
    const auto perm = match_nearest(tr.steps.back().roots, fin);
    if (perm.empty()) {
        throw PathError("final labelling is ambiguous");
    }
    return perm;
}

nlohmann::json to_json(const RootTrack &t, std::size_t stride)
{
    nlohmann::json steps = nlohmann::json::array();
    stride = std::max<std::size_t>(stride, 1);
    for (std::size_t s = 0; s < t.steps.size(); ++s) {
        if (s % stride != 0 && s + 1 != t.steps.size()) {
            continue;
        }
        const auto &st = t.steps[s];
        steps.push_back({{"t", static_cast<double>(st.t)}, {"roots", cvec(st.roots)}, {"logs", cvec(st.logs)}});
    }
    return {{"side", t.side == Space::X ? "X" : "Y"},
            {"max_residual", static_cast<double>(t.max_residual)},
            {"min_separation", static_cast<double>(t.min_separation)},
            {"max_log_jump", static_cast<double>(t.max_log_jump)},
            {"substeps", t.substeps},
            {"steps", steps}};
}

nlohmann::json to_json(const PropAcReport &r)
{
    nlohmann::json errs = nlohmann::json::array();
    for (std::size_t i = 0; i < r.errors.size(); ++i) {
        errs.push_back({{"i", i + 1},
                        {"continued", cjson(r.continued[i])},
                        {"predicted", cjson(r.predicted[i])},
                        {"error", static_cast<double>(r.errors[i])},
                        {"branch_shift", r.branch_shift[i]}});
    }
    return {{"n", r.n},
            {"degree", r.degree},
            {"steps", r.run.spec.steps},
            {"sigma", r.run.sigma},
            {"eps_start", static_cast<double>(r.run.eps_start)},
            {"eps_end", static_cast<double>(r.run.eps_end)},
            {"y_start", cvec(r.run.y_start)},
            {"x_end", cvec(r.run.x_end)},
            {"junction_mismatch", static_cast<double>(r.run.junction_mismatch)},
            {"min_separation", static_cast<double>(r.run.min_separation)},
            {"max_error", static_cast<double>(r.max_error)},
            {"error_budget",
             {{"y_series_tail", static_cast<double>(r.y_series_tail)},
              {"x_series_tail", static_cast<double>(r.x_series_tail)},
              {"tracking", static_cast<double>(r.tracking)}}},
            {"per_index", errs}};
}

} // namespace crc
