#include "runner.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <random>

#include <crc/json_util.hpp>
#include <crc/mirror.hpp>
#include <crc/quantum.hpp>

#ifndef CRC_VERSION
#define CRC_VERSION "unknown"
#endif

namespace crc
{

namespace
{

using nlohmann::json;

const std::map<std::string, Real> &default_tolerances()
{
    static const std::map<std::string, Real> t{
        {"pf_b", 1e-12},
        {"flat_linear_part", 1e-14},
        {"x3_gamma_ratio", 1e-12},
        {"x3_term_by_term", 1e-12},
        {"gamma_ratio_vs_term_by_term", 1e-12},
        {"gkz_f", 1e-9},
        {"gkz_g", 1e-9},
        {"pf_X", 1e-9},
        {"pf_Y", 1e-9},
        {"sigma_identity", 0},
        {"junction_mismatch", 1e-10},
        {"root_residual", 1e-10},
        {"labels_X", 1e-12},
        {"labels_Y", 1e-2},
        {"root_correspondence", 1e-10},
        {"prop_ac_max_error", 1e-5},
        {"cartan_pattern", 1e-10},
        {"unit_pairing", 1e-10},
        {"pairing_preservation", 1e-10},
        {"stability", 1e-9},
        {"commutativity", 0},
        {"unit", 0},
        {"frobenius_symmetry", 1e-8},
        {"associativity", 1e-8},
        {"lambda_homogeneity", 1e-8},
        {"lambda_forbidden", 1e-8},
        {"corollary_status", 0},
        {"corollary_relative_error", 1e-6},
        {"corollary_pairing", 1e-10},
    };
    return t;
}

Space parse_side(const std::string &s)
{
    if (s == "X" || s == "x") {
        return Space::X;
    }
    if (s == "Y" || s == "y") {
        return Space::Y;
    }
    throw ConfigError("side must be X or Y");
}

const char *side_name(Space s)
{
    return s == Space::X ? "X" : "Y";
}

Complex parse_complex(const json &j)
{
    if (j.is_number()) {
        return Complex(j.get<double>());
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return Complex(j[0].get<double>(), j[1].get<double>());
    }
    throw ConfigError("complex values are numbers or [re, im]");
}

std::vector<LambdaPair> lambdas_for(const RunConfig &c)
{
    if (!c.lambdas.empty()) {
        return c.lambdas;
    }
    std::mt19937_64 rng(c.seed);
    std::vector<LambdaPair> out;
    for (int s = 0; s < c.lambda_samples; ++s) {
        out.push_back(sample_lambda(rng, c.n));
    }
    return out;
}

int degree_or(const RunConfig &c, int d)
{
    return c.degree.value_or(d);
}

int zorder_for(const RunConfig &c, int D)
{
    return c.zorder.value_or(D + 2);
}

struct Builder {
    const RunConfig &cfg;
    Report &rep;

    void add(const std::string &name, Real value, const std::string &tol_name = "")
    {
        const Real tol = tolerance(cfg, tol_name.empty() ? name : tol_name);
        rep.checks.push_back({name, value, tol, value <= tol});
    }
};

Report run_iseries(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    const int D = degree_or(c, 4);
    const int Z = zorder_for(c, D);
    const LambdaPair l = lambdas_for(c).front();
    const Space side = c.side.value_or(Space::X);
    const IFunctionSeries I = side == Space::X ? i_function_X(c.n, D, Z, c.x0, l) : i_function_Y(c.n, D, Z, c.x0, l);
    b.add("pf_b", pf_residual_b(I).relative());
    r.data = {{"side", side_name(side)}, {"lambda", lambda_json(l)}, {"i_function", to_json(I)}};
    return r;
}

Report run_mirror_map(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    const int D = degree_or(c, 10);
    const auto f = flat_coords_X(c.n, D);
    Real lin = 0;
    for (int k = 0; k < c.n - 1; ++k) {
        const auto &fk = f[static_cast<std::size_t>(k)];
        std::vector<int> e(static_cast<std::size_t>(c.n - 1), 0);
        lin = std::max(lin, static_cast<Real>(std::abs(fk.coeff(e))));
        for (int i = 0; i < c.n - 1; ++i) {
            e.assign(e.size(), 0);
            e[static_cast<std::size_t>(i)] = 1;
            lin = std::max(lin, static_cast<Real>(std::abs(fk.coeff(e) - Complex(i == k ? 1 : 0))));
        }
    }
    b.add("flat_linear_part", lin);
    json fj = json::array();
    for (const auto &fk : f) {
        fj.push_back(to_json(fk));
    }
    r.data = {{"f", fj}, {"mirror_map_Y", to_json(mirror_map_Y(c.n, D))}};
    if (c.n == 2 && D >= 3) {
        const auto g = gkz_term_by_term_n2(D);
        const std::vector<int> three{3};
        b.add("x3_gamma_ratio", std::abs(f[0].coeff(three) - Real(1) / 24));
        b.add("x3_term_by_term", std::abs(g.coeff(three) - Real(1) / 24));
        Real diff = 0;
        for (int m = 0; m <= D; ++m) {
            const std::vector<int> e{m};
            diff = std::max(diff, static_cast<Real>(std::abs(f[0].coeff(e) - g.coeff(e))));
        }
        b.add("gamma_ratio_vs_term_by_term", diff);
        r.data["term_by_term"] = to_json(g);
    }
    return r;
}

Report run_gkz(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    const int D = degree_or(c, 10);
    const auto f = flat_coords_X(c.n, D);
    const auto m = mirror_map_Y(c.n, D);
    Real fx = 0;
    Real gy = 0;
    json per = json::array();
    for (const auto &op : gkz_generators(c.n)) {
        for (int k = 1; k < c.n; ++k) {
            const Real a = gkz_residual_x(f[static_cast<std::size_t>(k - 1)], op).relative();
            const Real g = gkz_residual(m.g(k), op).relative();
            fx = std::max(fx, a);
            gy = std::max(gy, g);
            per.push_back({{"operator", op.d}, {"k", k}, {"f", static_cast<double>(a)}, {"g", static_cast<double>(g)}});
        }
    }
    b.add("gkz_f", fx);
    b.add("gkz_g", gy);
    r.data = {{"degree", D}, {"residuals", per}};
    return r;
}

Report run_pf(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    const int D = degree_or(c, 8);
    const int Z = zorder_for(c, D);
    Real px = 0;
    Real py = 0;
    Real pb = 0;
    json samples = json::array();
    for (const auto &l : lambdas_for(c)) {
        const auto IX = i_function_X(c.n, D, Z, Complex(0.2), l);
        const auto C = xtoy_exponents(c.n);
        std::vector<OrbifoldClass> classes;
        for (int i = 0; i < c.n - 1; ++i) {
            MultiIndex beta(static_cast<std::size_t>(c.n - 1));
            for (int k = 0; k < c.n - 1; ++k) {
                beta[static_cast<std::size_t>(k)] = C[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)];
            }
            classes.push_back({c.n, beta});
        }
        MultiIndex ne(static_cast<std::size_t>(c.n - 1), 0);
        ne[0] = c.n;
        classes.push_back({c.n, ne});
        Real sx = 0;
        for (const auto &beta : classes) {
            sx = std::max(sx, pf_residual_X(IX, beta).relative());
        }
        const auto IY = i_function_Y(c.n, D, Z, Complex(-0.4), l);
        Real sy = 0;
        for (const auto &op : gkz_generators(c.n)) {
            sy = std::max(sy, pf_residual_Y(IY, op.d).relative());
        }
        const Real sb = std::max(pf_residual_b(IX).relative(), pf_residual_b(IY).relative());
        px = std::max(px, sx);
        py = std::max(py, sy);
        pb = std::max(pb, sb);
        samples.push_back({{"lambda", lambda_json(l)},
                           {"pf_X", static_cast<double>(sx)},
                           {"pf_Y", static_cast<double>(sy)},
                           {"pf_b", static_cast<double>(sb)}});
    }
    b.add("pf_X", px);
    b.add("pf_Y", py);
    b.add("pf_b", pb);
    r.data = {{"degree", D}, {"zorder", Z}, {"samples", samples}};
    return r;
}

int moved_points(const std::vector<int> &sigma)
{
    int m = 0;
    for (std::size_t i = 0; i < sigma.size(); ++i) {
        m += sigma[i] != static_cast<int>(i);
    }
    return m;
}

PathSpec path_spec(const RunConfig &c)
{
    PathSpec s;
    s.n = c.n;
    s.steps = c.steps;
    s.bend = c.leg2_bend;
    s.leg1_bend = c.leg1_bend;
    return s;
}

Report run_continue_roots(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    const int n = c.n;
    Real lx = 0;
    const std::vector<Complex> zero(static_cast<std::size_t>(n - 1), Complex(0));
    const auto k0 = label_roots_X(zero);
    for (int i = 0; i < n; ++i) {
        lx = std::max(lx, static_cast<Real>(std::abs(k0[static_cast<std::size_t>(i)] - std::pow(zeta(n), 2 * i + 1))));
    }
    b.add("labels_X", lx);
    const Real t = 1e-3;
    const auto mu = label_roots_Y(std::vector<Complex>(static_cast<std::size_t>(n - 1), Complex(t)));
    Real ly = std::abs(mu[0] + Real(1));
    for (int k = 1; k < n; ++k) {
        ly = std::max(ly, static_cast<Real>(std::abs(mu[static_cast<std::size_t>(k)] / Complex(-std::pow(t, k)) - Real(1))));
    }
    b.add("labels_Y", ly);
    std::mt19937_64 rng(c.seed);
    std::uniform_real_distribution<double> rad(0.4, 2.0);
    std::uniform_real_distribution<double> ang(-pi, pi);
    Real corr = 0;
    for (int s = 0; s < 50; ++s) {
        std::vector<Complex> x(static_cast<std::size_t>(n - 1));
        for (auto &v : x) {
            v = std::polar(Real(rad(rng)), Real(ang(rng)));
        }
        corr = std::max(corr, root_correspondence_residual(x));
    }
    b.add("root_correspondence", corr);
    const PathRun run = track_path(path_spec(c));
    b.add("sigma_identity", moved_points(run.sigma));
    b.add("junction_mismatch", run.junction_mismatch);
    b.add("root_residual", std::max(run.leg1.max_residual, run.leg2.max_residual));
    const std::size_t stride = static_cast<std::size_t>(std::max(1, c.steps / 20));
    r.data = {{"sigma", run.sigma},
              {"min_separation", static_cast<double>(run.min_separation)},
              {"closed_form_deviation", static_cast<double>(run.closed_form_deviation)},
              {"substeps", run.leg1.substeps + run.leg2.substeps},
              {"leg1", to_json(run.leg1, stride)},
              {"leg2", to_json(run.leg2, stride)}};
    return r;
}

Report run_verify_crc(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    const int D = degree_or(c, 12);
    const auto rep = verify_prop_ac(path_spec(c), D);
    b.add("sigma_identity", moved_points(rep.run.sigma));
    // tighter for n <= 3 unless overridden
    const Real tol = c.tolerances.count("prop_ac_max_error") ? tolerance(c, "prop_ac_max_error")
                                                             : (c.n <= 3 ? Real(1e-6) : Real(1e-5));
    r.checks.push_back({"prop_ac_max_error", rep.max_error, tol, rep.max_error <= tol});
    r.error_budget = {{"y_series_tail", static_cast<double>(rep.y_series_tail)},
                      {"x_series_tail", static_cast<double>(rep.x_series_tail)},
                      {"tracking", static_cast<double>(rep.tracking)}};
    r.data = to_json(rep);
    r.data.erase("error_budget");
    return r;
}

CohomologyClass random_class(std::mt19937_64 &rng, int n, LambdaPair l)
{
    std::uniform_real_distribution<double> u(-1, 1);
    CohomologyClass cls{Space::Y, std::vector<Complex>(static_cast<std::size_t>(n)), l};
    for (auto &v : cls.coeffs) {
        v = Complex(u(rng), u(rng));
    }
    return cls;
}

Report run_pairing(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    Real pat = 0;
    Real unit = 0;
    json first;
    const auto ls = lambdas_for(c);
    for (const auto &l : ls) {
        const auto cr = cartan_check(c.n, l);
        pat = std::max(pat, cr.max_residual);
        unit = std::max(unit, cr.unit_residual);
        if (first.is_null()) {
            first = to_json(cr);
        }
    }
    b.add("cartan_pattern", pat);
    b.add("unit_pairing", unit);
    std::mt19937_64 rng(c.seed + 1);
    Real pres = 0;
    for (int p = 0; p < c.pairs; ++p) {
        const LambdaPair &l = ls[static_cast<std::size_t>(p) % ls.size()];
        const FixedPointData fp(c.n, l);
        const auto a = random_class(rng, c.n, l);
        const auto bb = random_class(rng, c.n, l);
        const Complex lhs = pair_X(L_adjoint(fp, a), L_adjoint(fp, bb));
        const Complex rhs = pair_Y(fp, a, bb);
        pres = std::max(pres, static_cast<Real>(std::abs(lhs - rhs) / std::max(std::abs(rhs), Real(1e-300))));
    }
    b.add("pairing_preservation", pres);
    r.data = first;
    r.data["samples"] = ls.size();
    return r;
}

Report run_products(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    const int D = degree_or(c, 6);
    const int Z = zorder_for(c, D);
    const LambdaPair l = lambdas_for(c).front();
    std::vector<Space> sides;
    if (c.side) {
        sides.push_back(*c.side);
    } else {
        sides = {Space::X, Space::Y};
    }
    r.data = json::object();
    for (Space s : sides) {
        const std::string p = std::string(side_name(s)) + ".";
        const auto sc = extract_structure_constants(s, c.n, D, Z, l);
        const std::vector<Complex> pt(static_cast<std::size_t>(c.n - 1), Complex(0.05, 0.02));
        const auto fr = frobenius_check(sc, pt);
        const auto st = extraction_stability(s, c.n, D, Z, l);
        std::mt19937_64 rng(c.seed);
        const auto lf = lambda_homogeneity(s, c.n, D, Z, rng, c.workers);
        b.add(p + "stability", st.max_drift, "stability");
        b.add(p + "commutativity", fr.commutativity, "commutativity");
        b.add(p + "unit", fr.unit, "unit");
        b.add(p + "frobenius_symmetry", fr.symmetry, "frobenius_symmetry");
        b.add(p + "associativity", fr.associativity, "associativity");
        b.add(p + "lambda_homogeneity", lf.max_validation_error, "lambda_homogeneity");
        b.add(p + "lambda_forbidden", lf.max_forbidden, "lambda_forbidden");
        r.data[side_name(s)] = {{"constants", to_json(sc)},
                                {"frobenius", to_json(fr)},
                                {"stability", to_json(st)},
                                {"lambda_fit", to_json(lf)}};
    }
    return r;
}

Report run_corollary(const RunConfig &c)
{
    Report r;
    Builder b{c, r};
    const int D = degree_or(c, 8);
    const auto rep = corollary_check(c.n, lambdas_for(c).front(), D);
    b.add("corollary_status", rep.status == CheckStatus::Pass ? 0 : 1);
    if (rep.status != CheckStatus::Inconclusive) {
        b.add("corollary_relative_error", rep.max_relative_error);
        b.add("corollary_pairing", rep.pairing_error);
    }
    r.data = to_json(rep);
    return r;
}

using Runner = Report (*)(const RunConfig &);

const std::vector<std::pair<std::string, Runner>> &runners()
{
    static const std::vector<std::pair<std::string, Runner>> r{
        {"iseries", run_iseries},
        {"mirror-map", run_mirror_map},
        {"gkz-check", run_gkz},
        {"pf-check", run_pf},
        {"continue-roots", run_continue_roots},
        {"verify-crc", run_verify_crc},
        {"pairing", run_pairing},
        {"products", run_products},
        {"corollary-check", run_corollary},
    };
    return r;
}

Report run_all(const RunConfig &c)
{
    Report r;
    const auto &rs = runners();
    std::vector<Report> parts(rs.size());
    const std::size_t workers = static_cast<std::size_t>(std::max(1, c.workers));
    // bounded pool: batches of `workers` sub-jobs, merged in command order
    for (std::size_t start = 0; start < rs.size(); start += workers) {
        std::vector<std::future<Report>> jobs;
        const std::size_t end = std::min(rs.size(), start + workers);
        for (std::size_t i = start; i < end; ++i) {
            jobs.push_back(std::async(workers > 1 ? std::launch::async : std::launch::deferred, [&c, &rs, i] {
                return run(rs[i].first, c);
            }));
        }
        for (std::size_t i = start; i < end; ++i) {
            parts[i] = jobs[i - start].get();
        }
    }
    r.data = json::object();
    for (std::size_t i = 0; i < rs.size(); ++i) {
        for (auto ch : parts[i].checks) {
            ch.name = rs[i].first + "/" + ch.name;
            r.checks.push_back(ch);
        }
        if (!parts[i].error_budget.empty()) {
            r.error_budget[rs[i].first] = parts[i].error_budget;
        }
        r.data[rs[i].first] = {{"pass", parts[i].pass()}};
    }
    return r;
}

} // namespace

const std::vector<std::string> &command_names()
{
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto &p : runners()) {
            v.push_back(p.first);
        }
        v.push_back("all");
        return v;
    }();
    return names;
}

Real tolerance(const RunConfig &c, const std::string &name)
{
    if (auto it = c.tolerances.find(name); it != c.tolerances.end()) {
        return it->second;
    }
    const auto &d = default_tolerances();
    if (auto it = d.find(name); it != d.end()) {
        return it->second;
    }
    throw ConfigError("no tolerance for check " + name);
}

void validate(const RunConfig &c)
{
    if (c.n < 2) {
        throw ConfigError("n must be at least 2");
    }
    if (c.degree && *c.degree < 0) {
        throw ConfigError("degree must be nonnegative");
    }
    if (c.zorder && *c.zorder < 0) {
        throw ConfigError("zorder must be nonnegative");
    }
    if (c.steps < 100) {
        throw ConfigError("steps must be at least 100");
    }
    if (c.lambdas.empty() && c.lambda_samples < 1) {
        throw ConfigError("lambda_samples must be at least 1");
    }
    if (c.pairs < 1) {
        throw ConfigError("pairs must be at least 1");
    }
    if (c.workers < 1) {
        throw ConfigError("workers must be at least 1");
    }
    for (const auto &[k, v] : c.tolerances) {
        if (!default_tolerances().count(k)) {
            throw ConfigError("unknown tolerance " + k);
        }
        if (!(v >= 0)) {
            throw ConfigError("tolerance " + k + " must be nonnegative");
        }
    }
}

RunConfig config_from_json(const json &j)
{
    if (!j.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::vector<std::string> keys{"n", "degree", "zorder", "steps", "seed", "lambda_samples",
                                               "lambdas", "side", "x0", "pairs", "leg1_bend", "leg2_bend",
                                               "tolerances", "out_dir", "workers", "timing", "precision"};
    RunConfig c;
    try {
        for (const auto &[k, v] : j.items()) {
            if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
                throw ConfigError("unknown config key " + k);
            }
        }
        auto integer = [&](const char *k) {
            if (!j.at(k).is_number_integer()) {
                throw ConfigError(std::string(k) + " must be an integer");
            }
            return j.at(k).get<long long>();
        };
        if (j.contains("n")) {
            c.n = static_cast<int>(integer("n"));
        }
        if (j.contains("degree")) {
            c.degree = static_cast<int>(integer("degree"));
        }
        if (j.contains("zorder")) {
            c.zorder = static_cast<int>(integer("zorder"));
        }
        if (j.contains("steps")) {
            c.steps = static_cast<int>(integer("steps"));
        }
        if (j.contains("seed")) {
            c.seed = static_cast<std::uint64_t>(integer("seed"));
        }
        if (j.contains("lambda_samples")) {
            c.lambda_samples = static_cast<int>(integer("lambda_samples"));
        }
        if (j.contains("pairs")) {
            c.pairs = static_cast<int>(integer("pairs"));
        }
        if (j.contains("workers")) {
            c.workers = static_cast<int>(integer("workers"));
        }
        if (j.contains("lambdas")) {
            for (const auto &p : j.at("lambdas")) {
                if (!p.is_array() || p.size() != 2) {
                    throw ConfigError("each lambda is [l1, l2]");
                }
                c.lambdas.push_back({parse_complex(p[0]), parse_complex(p[1])});
            }
        }
        if (j.contains("side")) {
            c.side = parse_side(j.at("side").get<std::string>());
        }
        if (j.contains("x0")) {
            c.x0 = parse_complex(j.at("x0"));
        }
        if (j.contains("leg1_bend")) {
            c.leg1_bend = j.at("leg1_bend").get<double>();
        }
        if (j.contains("leg2_bend")) {
            c.leg2_bend = j.at("leg2_bend").get<double>();
        }
        if (j.contains("tolerances")) {
            for (const auto &[k, v] : j.at("tolerances").items()) {
                c.tolerances[k] = v.get<double>();
            }
        }
        if (j.contains("out_dir")) {
            c.out_dir = j.at("out_dir").get<std::string>();
        }
        if (j.contains("timing")) {
            c.timing = j.at("timing").get<bool>();
        }
        if (j.contains("precision")) {
            const std::string want = j.at("precision").get<std::string>();
            const std::string have = sizeof(Real) == sizeof(double) ? "binary64" : "extended";
            if (want != have) {
                throw ConfigError("this build uses " + have + " precision");
            }
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate(c);
    return c;
}

json to_json(const RunConfig &c)
{
    json l = json::array();
    for (const auto &p : c.lambdas) {
        l.push_back(lambda_json(p));
    }
    json j{{"n", c.n},
           {"steps", c.steps},
           {"seed", c.seed},
           {"lambda_samples", c.lambda_samples},
           {"lambdas", l},
           {"x0", cjson(c.x0)},
           {"pairs", c.pairs},
           {"leg1_bend", static_cast<double>(c.leg1_bend)},
           {"leg2_bend", static_cast<double>(c.leg2_bend)},
           {"tolerances", c.tolerances},
           {"workers", c.workers},
           {"precision", sizeof(Real) == sizeof(double) ? "binary64" : "extended"}};
    j["degree"] = c.degree ? json(*c.degree) : json(nullptr);
    j["zorder"] = c.zorder ? json(*c.zorder) : json(nullptr);
    j["side"] = c.side ? json(side_name(*c.side)) : json(nullptr);
    return j;
}

bool Report::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check &c) { return c.pass; });
}

json to_json(const Report &r, bool timing)
{
    json checks = json::array();
    for (const auto &c : r.checks) {
        checks.push_back({{"name", c.name},
                          {"value", static_cast<double>(c.value)},
                          {"tolerance", static_cast<double>(c.tolerance)},
                          {"pass", c.pass}});
    }
    json j{{"command", r.command},
           {"config", r.config},
           {"version", artifact_version()},
           {"checks", checks},
           {"error_budget", r.error_budget},
           {"pass", r.pass()},
           {"data", r.data}};
    if (timing) {
        j["wall_time_s"] = r.wall_time;
    }
    return j;
}

Report run(const std::string &command, const RunConfig &config)
{
    validate(config);
    const auto t0 = std::chrono::steady_clock::now();
    if (command != "iseries" && config.degree && *config.degree < 1) {
        throw ConfigError("degree must be at least 1 for " + command);
    }
    Report r;
    if (command == "all") {
        r = run_all(config);
    } else {
        const auto &rs = runners();
        const auto it = std::find_if(rs.begin(), rs.end(), [&](const auto &p) { return p.first == command; });
        if (it == rs.end()) {
            throw ConfigError("unknown command " + command);
        }
        r = it->second(config);
    }
    r.command = command;
    r.config = to_json(config);
    r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::string artifact_version()
{
    return CRC_VERSION;
}

} // namespace crc
