#include <crc/quantum.hpp>

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>

#include <Eigen/SVD>

#include <crc/json_util.hpp>

namespace crc
{

namespace
{

using Rows = std::vector<std::vector<TruncatedSeries>>;

TruncatedSeries zero_like(int nvars, int cap)
{
    return TruncatedSeries(nvars, cap);
}

// K = e^{-sum S_i gamma_i / z} I_red on fixed-point components, still in y.
IFunctionSeries K_in_y(const IFunctionSeries &I, const MirrorMapY &mm)
{
    const int n = I.n;
    const IFunctionSeries Ifp = I.basis == IBasis::FixedPoint ? I : to_basis(I, IBasis::FixedPoint);
    const FixedPointData fp(n, I.lambda);
    const CMatrix &R = fp.restriction_matrix();
    IFunctionSeries out = Ifp;
    for (int c = 0; c < n; ++c) {
        TruncatedSeries sigma(n - 1, I.degree);
        for (int i = 1; i < n; ++i) {
            sigma += mm.S[static_cast<std::size_t>(i - 1)] * R(c, i);
        }
        std::vector<TruncatedSeries> pw{TruncatedSeries::constant(n - 1, I.degree, Complex(1))};
        for (std::size_t m = 1; m < Ifp.rows.size(); ++m) {
            pw.push_back(pw.back() * (-sigma) * Complex(Real(1) / Real(m)));
        }
        for (std::size_t r = 0; r < Ifp.rows.size(); ++r) {
            TruncatedSeries acc(n - 1, I.degree);
            for (std::size_t m = 0; m <= r; ++m) {
                acc += pw[m] * Ifp.rows[r - m][static_cast<std::size_t>(c)];
            }
            out.rows[r][static_cast<std::size_t>(c)] = std::move(acc);
        }
    }
    out.basis = IBasis::FixedPoint;
    return out;
}

// M with q_k d/dq_k = sum_l M_lk y_l d/dy_l, the inverse of A_kl = delta_kl + y_l d/dy_l S_k.
std::vector<std::vector<TruncatedSeries>> log_jacobian_inverse(const MirrorMapY &mm)
{
    const int m = mm.n - 1;
    const int cap = mm.degree;
    std::vector<std::vector<TruncatedSeries>> N(static_cast<std::size_t>(m), std::vector<TruncatedSeries>(static_cast<std::size_t>(m)));
    for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) {
            N[static_cast<std::size_t>(k)][static_cast<std::size_t>(l)] = -mm.S[static_cast<std::size_t>(k)].euler(l);
        }
    }
    // sum_{j <= cap} (-N)^j; N has no constant term
    auto M = N;
    auto term = N;
    for (int k = 0; k < m; ++k) {
        M[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] += TruncatedSeries::constant(m, cap, Complex(1));
    }
    for (int j = 2; j <= cap; ++j) {
        auto next = term;
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                TruncatedSeries acc(m, cap);
                for (int c = 0; c < m; ++c) {
                    acc += term[static_cast<std::size_t>(a)][static_cast<std::size_t>(c)] * N[static_cast<std::size_t>(c)][static_cast<std::size_t>(b)];
                }
                next[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = std::move(acc);
            }
        }
        term = std::move(next);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) {
                M[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] += term[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
            }
        }
    }
    return M;
}

// V_k[p] and W_ij[p] for one side, each an n-vector of series at cap Dc.
struct QdeData {
    int n = 0;
    int cap = 0;
    int rows = 0;
    std::vector<Rows> V;                      // V[k][p][comp]
    std::vector<std::vector<Rows>> W;         // W[i][j][p][comp], 1 <= i <= j
};

Rows recap(const Rows &r, int cap, int count)
{
    Rows out(static_cast<std::size_t>(count));
    for (int p = 0; p < count; ++p) {
        for (const auto &s : r[static_cast<std::size_t>(p)]) {
            out[static_cast<std::size_t>(p)].push_back(s.with_cap(cap));
        }
    }
    return out;
}

QdeData qde_data_X(const IFunctionSeries &F)
{
    const int n = F.n;
    const int rows = F.zorder;  // p = 0..Z-1 needs F rows up to Z+1
    QdeData d;
    d.n = n;
    d.cap = F.degree - 2;
    d.rows = rows;
    d.V.resize(static_cast<std::size_t>(n));
    d.V[0] = recap(F.rows, d.cap, rows);
    std::vector<Rows> dF(static_cast<std::size_t>(n));  // first derivatives of all rows
    for (int k = 1; k < n; ++k) {
        Rows r(F.rows.size());
        for (std::size_t p = 0; p < F.rows.size(); ++p) {
            for (const auto &s : F.rows[p]) {
                r[p].push_back(s.derivative(k - 1));
            }
        }
        dF[static_cast<std::size_t>(k)] = std::move(r);
        Rows v(static_cast<std::size_t>(rows));
        for (int p = 0; p < rows; ++p) {
            for (const auto &s : dF[static_cast<std::size_t>(k)][static_cast<std::size_t>(p + 1)]) {
                v[static_cast<std::size_t>(p)].push_back(s.with_cap(d.cap));
            }
        }
        d.V[static_cast<std::size_t>(k)] = std::move(v);
    }
    d.W.assign(static_cast<std::size_t>(n), std::vector<Rows>(static_cast<std::size_t>(n)));
    for (int i = 1; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            Rows w(static_cast<std::size_t>(rows));
            for (int p = 0; p < rows; ++p) {
                for (const auto &s : dF[static_cast<std::size_t>(j)][static_cast<std::size_t>(p + 2)]) {
                    w[static_cast<std::size_t>(p)].push_back(s.derivative(i - 1).with_cap(d.cap));
                }
            }
            d.W[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(w);
        }
    }
    return d;
}

// D_k G = gamma_k G + z q_k d/dq_k G on fixed-point components, with the
// q-derivative written in y through M.
Rows apply_D(const Rows &G, const CMatrix &R, const std::vector<std::vector<TruncatedSeries>> &M, int k, int count)
{
    Rows out(static_cast<std::size_t>(count));
    for (int p = 0; p < count; ++p) {
        for (std::size_t c = 0; c < G[static_cast<std::size_t>(p)].size(); ++c) {
            TruncatedSeries s = G[static_cast<std::size_t>(p)][c] * R(static_cast<Eigen::Index>(c), k);
            const auto &next = G[static_cast<std::size_t>(p + 1)][c];
            for (std::size_t l = 0; l < M.size(); ++l) {
                s += M[l][static_cast<std::size_t>(k - 1)] * next.euler(static_cast<int>(l));
            }
            out[static_cast<std::size_t>(p)].push_back(std::move(s));
        }
    }
    return out;
}

QdeData qde_data_Y(const IFunctionSeries &K, const std::vector<std::vector<TruncatedSeries>> &M)
{
    const int n = K.n;
    const int rows = K.zorder;
    const FixedPointData fp(n, K.lambda);
    const CMatrix &R = fp.restriction_matrix();
    QdeData d;
    d.n = n;
    d.cap = K.degree;
    d.rows = rows;
    d.V.resize(static_cast<std::size_t>(n));
    d.V[0] = recap(K.rows, d.cap, rows);
    std::vector<Rows> Vlong(static_cast<std::size_t>(n));
    for (int k = 1; k < n; ++k) {
        Vlong[static_cast<std::size_t>(k)] = apply_D(K.rows, R, M, k, rows + 1);
        d.V[static_cast<std::size_t>(k)] = recap(Vlong[static_cast<std::size_t>(k)], d.cap, rows);
    }
    d.W.assign(static_cast<std::size_t>(n), std::vector<Rows>(static_cast<std::size_t>(n)));
    for (int i = 1; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            d.W[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                apply_D(Vlong[static_cast<std::size_t>(j)], R, M, i, rows);
        }
    }
    return d;
}

Real rows_max_abs(const Rows &r)
{
    Real m = 0;
    for (const auto &row : r) {
        for (const auto &s : row) {
            m = std::max(m, s.max_abs());
        }
    }
    return m;
}

// Solves W = sum_k c^k V_k degree by degree; returns the relative residual.
Real solve_pair(const QdeData &d, const Rows &W, std::vector<TruncatedSeries> &c)
{
    const int n = d.n;
    const int nv = n - 1;
    const auto layout = MonomialLayout::get(nv, d.cap);
    c.assign(static_cast<std::size_t>(n), zero_like(nv, d.cap));
    const Eigen::Index m = static_cast<Eigen::Index>(d.rows) * n;
    CMatrix A(m, n);
    for (int p = 0; p < d.rows; ++p) {
        for (int comp = 0; comp < n; ++comp) {
            for (int k = 0; k < n; ++k) {
                A(p * n + comp, k) = d.V[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)]
                                        [static_cast<std::size_t>(comp)]
                                            .constant_term();
            }
        }
    }
    const Eigen::ColPivHouseholderQR<CMatrix> qr(A);
    if (qr.rank() < n) {
        throw ResampleError("QDE basis {z d_k I} is degenerate at this lambda; resample lambda");
    }
    for (int deg = 0; deg <= d.cap; ++deg) {
        const std::size_t lo = deg == 0 ? 0 : layout->count_upto(deg - 1);
        const std::size_t hi = layout->count_upto(deg);
        CMatrix B(m, static_cast<Eigen::Index>(hi - lo));
        for (int p = 0; p < d.rows; ++p) {
            for (int comp = 0; comp < n; ++comp) {
                TruncatedSeries acc = W[static_cast<std::size_t>(p)][static_cast<std::size_t>(comp)];
                if (deg > 0) {
                    for (int k = 0; k < n; ++k) {
                        acc -= multiply(c[static_cast<std::size_t>(k)],
                                        d.V[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)]
                                           [static_cast<std::size_t>(comp)],
                                        deg);
                    }
                }
                for (std::size_t idx = lo; idx < hi; ++idx) {
                    B(p * n + comp, static_cast<Eigen::Index>(idx - lo)) = acc[idx];
                }
            }
        }
        const CMatrix X = qr.solve(B);
        for (int k = 0; k < n; ++k) {
            for (std::size_t idx = lo; idx < hi; ++idx) {
                c[static_cast<std::size_t>(k)][idx] = X(k, static_cast<Eigen::Index>(idx - lo));
            }
        }
    }
    Real worst = 0;
    for (int p = 0; p < d.rows; ++p) {
        for (int comp = 0; comp < n; ++comp) {
            TruncatedSeries r = W[static_cast<std::size_t>(p)][static_cast<std::size_t>(comp)];
            for (int k = 0; k < n; ++k) {
                r -= multiply(c[static_cast<std::size_t>(k)],
                              d.V[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)][static_cast<std::size_t>(comp)],
                              d.cap);
            }
            worst = std::max(worst, r.max_abs());
        }
    }
    const Real scale = std::max(rows_max_abs(W), std::numeric_limits<Real>::min());
    return worst / scale;
}

CMatrix gram_for(Space side, int n, LambdaPair l)
{
    if (side == Space::X) {
        return gram_X(n, l);
    }
    return gram_Y(FixedPointData(n, l));
}

Real coeff_drift(const StructureConstants &a, const StructureConstants &b)
{
    Real m = 0;
    for (int i = 0; i < a.n; ++i) {
        for (int j = 0; j < a.n; ++j) {
            for (int k = 0; k < a.n; ++k) {
                m = std::max(m, (a.at(i, j, k) - b.at(i, j, k)).max_abs());
            }
        }
    }
    return m;
}

Real constants_scale(const StructureConstants &s)
{
    Real m = 0;
    for (const auto &a : s.c) {
        for (const auto &b : a) {
            for (const auto &x : b) {
                m = std::max(m, x.max_abs());
            }
        }
    }
    return m;
}

} // namespace

CMatrix StructureConstants::at_origin(int i) const
{
    CMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            m(j, k) = at(i, j, k).constant_term();
        }
    }
    return m;
}

CMatrix StructureConstants::at_point(int i, std::span<const Complex> point) const
{
    CMatrix m(n, n);
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            m(j, k) = at(i, j, k).evaluate(point);
        }
    }
    return m;
}

IFunctionSeries to_flat_coordinates(const IFunctionSeries &I)
{
    const int n = I.n;
    IFunctionSeries out = I;
    if (I.side == Space::X) {
        const auto f = flat_coords_X(n, I.degree);
        const auto xu = reverse(f);
        for (auto &row : out.rows) {
            for (auto &s : row) {
                s = compose(s, xu);
            }
        }
        return out;
    }
    const MirrorMapY mm = mirror_map_Y(n, I.degree);
    const auto yq = reverse(mm.exp_flat());
    out = K_in_y(I, mm);
    for (auto &row : out.rows) {
        for (auto &c : row) {
            c = compose(c, yq);
        }
    }
    return out;
}

StructureConstants extract_structure_constants(Space side, int n, int D, int Z, LambdaPair lambda)
{
    if (Z < 2) {
        throw WindowError("structure constants need a z-window of at least 3 orders below the leading one");
    }
    if (side == Space::X && D < 2) {
        throw DomainError("X-side extraction needs degree >= 2");
    }
    const IFunctionSeries I = side == Space::X ? i_function_X(n, D, Z, Complex(0), lambda)
                                               : i_function_Y(n, D, Z, Complex(0), lambda, IBasis::FixedPoint);
    // The Y side is solved in y and only the constants are moved to q: composing
    // the whole I-function with y(q) loses far more digits to cancellation.
    std::vector<TruncatedSeries> yq;
    QdeData d;
    if (side == Space::X) {
        d = qde_data_X(to_flat_coordinates(I));
    } else {
        const MirrorMapY mm = mirror_map_Y(n, D);
        yq = reverse(mm.exp_flat());
        d = qde_data_Y(K_in_y(I, mm), log_jacobian_inverse(mm));
    }

    StructureConstants s;
    s.side = side;
    s.n = n;
    s.degree = d.cap;
    s.zorder = Z;
    s.lambda = lambda;
    const int nv = n - 1;
    s.c.assign(static_cast<std::size_t>(n),
               std::vector<std::vector<TruncatedSeries>>(static_cast<std::size_t>(n),
                                                         std::vector<TruncatedSeries>(static_cast<std::size_t>(n))));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            const Complex v = j == k ? Complex(1) : Complex(0);
            s.c[0][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = TruncatedSeries::constant(nv, d.cap, v);
            s.c[static_cast<std::size_t>(j)][0][static_cast<std::size_t>(k)] = TruncatedSeries::constant(nv, d.cap, v);
        }
    }
    for (int i = 1; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            std::vector<TruncatedSeries> c;
            const Real r = solve_pair(d, d.W[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], c);
            s.qde_residual = std::max(s.qde_residual, r);
            for (int k = 0; k < n; ++k) {
                if (side == Space::Y) {
                    c[static_cast<std::size_t>(k)] = compose(c[static_cast<std::size_t>(k)], yq);
                }
                s.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    c[static_cast<std::size_t>(k)];
                s.c[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                    c[static_cast<std::size_t>(k)];
            }
        }
    }
    return s;
}

StabilityReport extraction_stability(Space side, int n, int D, int Z, LambdaPair lambda)
{
    StabilityReport rep;
    const auto base = extract_structure_constants(side, n, D, Z, lambda);
    rep.windows.push_back(Z);
    rep.scale = constants_scale(base);
    for (int extra : {1, 2}) {
        const auto other = extract_structure_constants(side, n, D, Z + extra, lambda);
        rep.windows.push_back(Z + extra);
        rep.max_drift = std::max(rep.max_drift, coeff_drift(base, other));
    }
    return rep;
}

FrobeniusReport frobenius_check(const StructureConstants &s, std::span<const Complex> point)
{
    const int n = s.n;
    const CMatrix G = gram_for(s.side, n, s.lambda);
    FrobeniusReport rep;
    rep.through_degree = s.degree;
    rep.scale = std::max(constants_scale(s), std::numeric_limits<Real>::min());

    // c_ijk = sum_l c_ij^l (e_l, e_k)
    std::vector<std::vector<std::vector<TruncatedSeries>>> low = s.c;
    Real low_scale = std::numeric_limits<Real>::min();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                TruncatedSeries acc(n - 1, s.degree);
                for (int l = 0; l < n; ++l) {
                    acc += s.at(i, j, l) * G(l, k);
                }
                low_scale = std::max(low_scale, acc.max_abs());
                low[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] = std::move(acc);
            }
        }
    }
    auto L = [&low](int i, int j, int k) -> const TruncatedSeries & {
        return low[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    };
    Real sym = 0;
    Real comm = 0;
    Real unit = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                sym = std::max(sym, (L(i, j, k) - L(j, i, k)).max_abs());
                sym = std::max(sym, (L(i, j, k) - L(i, k, j)).max_abs());
                comm = std::max(comm, (s.at(i, j, k) - s.at(j, i, k)).max_abs());
                const auto unit_entry = s.at(0, j, k) - TruncatedSeries::constant(n - 1, s.degree, j == k ? 1 : 0);
                unit = std::max(unit, unit_entry.max_abs());
            }
        }
    }
    rep.symmetry = sym / low_scale;
    rep.commutativity = comm / rep.scale;
    rep.unit = unit;

    Real assoc = 0;
    std::vector<CMatrix> M;
    for (int i = 0; i < n; ++i) {
        M.push_back(s.at_point(i, point));
    }
    Real assoc_pt = 0;
    Real pt_scale = std::numeric_limits<Real>::min();
    for (const auto &m : M) {
        pt_scale = std::max(pt_scale, static_cast<Real>(m.cwiseAbs().maxCoeff()));
    }
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            for (int k = 1; k < n; ++k) {
                for (int m = 0; m < n; ++m) {
                    TruncatedSeries a(n - 1, s.degree);
                    Complex ap(0);
                    for (int l = 0; l < n; ++l) {
                        a += multiply(s.at(i, j, l), s.at(l, k, m), s.degree);
                        a -= multiply(s.at(j, k, l), s.at(i, l, m), s.degree);
                        ap += M[static_cast<std::size_t>(i)](j, l) * M[static_cast<std::size_t>(l)](k, m)
                              - M[static_cast<std::size_t>(j)](k, l) * M[static_cast<std::size_t>(i)](l, m);
                    }
                    assoc = std::max(assoc, a.max_abs());
                    assoc_pt = std::max(assoc_pt, static_cast<Real>(std::abs(ap)));
                }
            }
        }
    }
    rep.associativity = assoc / (rep.scale * rep.scale);
    rep.associativity_at_point = assoc_pt / (pt_scale * pt_scale);
    return rep;
}

int lambda_degree(int i, int j, int k)
{
    auto deg = [](int a) { return a == 0 ? 0 : 1; };
    return deg(i) + deg(j) - deg(k);
}

LambdaFitReport lambda_homogeneity(Space side, int n, int D, int Z, std::mt19937_64 &rng, int workers, Real tolerance)
{
    LambdaFitReport rep;
    for (int s = 0; s < 4; ++s) {
        rep.samples.push_back(sample_lambda(rng, n));
    }
    std::vector<StructureConstants> sc(4);
    if (workers > 1) {
        std::vector<std::future<StructureConstants>> jobs;
        for (const auto &l : rep.samples) {
            jobs.push_back(std::async(std::launch::async,
                                      [side, n, D, Z, l] { return extract_structure_constants(side, n, D, Z, l); }));
        }
        for (std::size_t s = 0; s < jobs.size(); ++s) {
            sc[s] = jobs[s].get();
        }
    } else {
        for (std::size_t s = 0; s < 4; ++s) {
            sc[s] = extract_structure_constants(side, n, D, Z, rep.samples[s]);
        }
    }
    Real global = std::numeric_limits<Real>::min();
    for (const auto &s : sc) {
        global = std::max(global, constants_scale(s));
    }
    for (int i = 1; i < n; ++i) {
        for (int j = 1; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const int deg = lambda_degree(i, j, k);
                const std::size_t count = sc[0].at(i, j, k).size();
                for (std::size_t idx = 0; idx < count; ++idx) {
                    ++rep.entries;
                    Real mag = 0;
                    for (const auto &s : sc) {
                        mag = std::max(mag, static_cast<Real>(std::abs(s.at(i, j, k)[idx])));
                    }
                    if (deg < 0) {
                        rep.max_forbidden = std::max(rep.max_forbidden, mag / global);
                        continue;
                    }
                    CMatrix A(3, deg + 1);
                    CVector b(3);
                    for (int s = 0; s < 3; ++s) {
                        const auto &l = rep.samples[static_cast<std::size_t>(s)];
                        for (int a = 0; a <= deg; ++a) {
                            A(s, a) = std::pow(l.l1, a) * std::pow(l.l2, deg - a);
                        }
                        b(s) = sc[static_cast<std::size_t>(s)].at(i, j, k)[idx];
                    }
                    const CVector alpha = A.colPivHouseholderQr().solve(b);
                    const auto &l4 = rep.samples[3];
                    Complex pred(0);
                    for (int a = 0; a <= deg; ++a) {
                        pred += alpha(a) * std::pow(l4.l1, a) * std::pow(l4.l2, deg - a);
                    }
                    // The fit must also reproduce the fit samples (overdetermined for deg < 2).
                    Real err = std::abs(pred - sc[3].at(i, j, k)[idx]);
                    err = std::max(err, static_cast<Real>((A * alpha - b).cwiseAbs().maxCoeff()));
                    rep.max_validation_error = std::max(rep.max_validation_error, err / global);
                }
            }
        }
    }
    rep.pass = rep.max_validation_error < tolerance && rep.max_forbidden < tolerance;
    return rep;
}

Complex RationalFit::evaluate(Complex s) const
{
    Complex a(0);
    for (auto it = num.rbegin(); it != num.rend(); ++it) {
        a = a * s + *it;
    }
    Complex b(0);
    for (auto it = den.rbegin(); it != den.rend(); ++it) {
        b = b * s + *it;
    }
    return a / b;
}

RationalFit rational_reconstruct(std::span<const Complex> a, int min_held_out, Real tolerance)
{
    const int N = static_cast<int>(a.size());
    Real scale = 0;
    for (Complex v : a) {
        scale = std::max(scale, static_cast<Real>(std::abs(v)));
    }
    RationalFit best;
    if (scale == 0) {
        if (N >= min_held_out + 1) {
            best.valid = true;
            best.num = {Complex(0)};
            best.den = {Complex(1)};
            best.held_out = N - 1;
        }
        return best;
    }
    auto coef = [&a](int k) { return k < 0 ? Complex(0) : a[static_cast<std::size_t>(k)]; };
    for (int t = 0; t + 1 + min_held_out <= N; ++t) {
        for (int q = 0; q <= t; ++q) {
            const int p = t - q;
            std::vector<Complex> den(static_cast<std::size_t>(q + 1), Complex(0));
            den[0] = Complex(1);
            if (q > 0) {
                CMatrix T(q, q + 1);
                for (int r = 0; r < q; ++r) {
                    for (int j = 0; j <= q; ++j) {
                        T(r, j) = coef(p + 1 + r - j);
                    }
                }
                const Eigen::JacobiSVD<CMatrix> svd(T, Eigen::ComputeFullV);
                const CVector v = svd.matrixV().col(q);
                if (std::abs(v(0)) < Real(1e-12) * v.cwiseAbs().maxCoeff()) {
                    continue;
                }
                for (int j = 0; j <= q; ++j) {
                    den[static_cast<std::size_t>(j)] = v(j) / v(0);
                }
            }
            std::vector<Complex> num(static_cast<std::size_t>(p + 1), Complex(0));
            for (int k = 0; k <= p; ++k) {
                for (int j = 0; j <= std::min(k, q); ++j) {
                    num[static_cast<std::size_t>(k)] += den[static_cast<std::size_t>(j)] * coef(k - j);
                }
            }
            // Expand num / den and compare with every coefficient.
            std::vector<Complex> s(static_cast<std::size_t>(N), Complex(0));
            Real err = 0;
            Real fit_err = 0;
            for (int k = 0; k < N; ++k) {
                Complex v = k <= p ? num[static_cast<std::size_t>(k)] : Complex(0);
                for (int j = 1; j <= std::min(k, q); ++j) {
                    v -= den[static_cast<std::size_t>(j)] * s[static_cast<std::size_t>(k - j)];
                }
                s[static_cast<std::size_t>(k)] = v;
                const Real e = std::abs(v - a[static_cast<std::size_t>(k)]) / scale;
                if (k > p + q) {
                    err = std::max(err, e);
                } else {
                    fit_err = std::max(fit_err, e);
                }
            }
            if (err < tolerance && fit_err < tolerance) {
                best.valid = true;
                best.p = p;
                best.q = q;
                best.num = std::move(num);
                best.den = std::move(den);
                best.held_out = N - (p + q + 1);
                best.validation_error = err;
                return best;
            }
        }
    }
    return best;
}

std::string to_string(CheckStatus s)
{
    switch (s) {
    case CheckStatus::Pass:
        return "PASS";
    case CheckStatus::Fail:
        return "FAIL";
    case CheckStatus::Inconclusive:
        return "INCONCLUSIVE";
    }
    return "?";
}

CorollaryReport corollary_check(int n, LambdaPair lambda, int degree, Real tolerance)
{
    CorollaryReport rep;
    rep.n = n;
    rep.lambda = lambda;
    rep.degree = degree;
    const auto sx = extract_structure_constants(Space::X, n, 4, 6, lambda);
    const auto sy = extract_structure_constants(Space::Y, n, degree, degree + 2, lambda);
    const Complex s0 = std::polar(Real(1), -2 * pi / Real(n));

    std::vector<CMatrix> cy(static_cast<std::size_t>(n), CMatrix(n, n));
    rep.worst_held_out = std::numeric_limits<int>::max();
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const auto diag = sy.at(i, j, k).restrict_diagonal();
                const RationalFit fit = rational_reconstruct(diag, 2, 1e-8);
                if (!fit.valid) {
                    rep.status = CheckStatus::Inconclusive;
                    rep.note = "rational reconstruction of c^Y_{" + std::to_string(i) + std::to_string(j)
                               + "}^" + std::to_string(k) + " failed held-out validation";
                    return rep;
                }
                rep.worst_held_out = std::min(rep.worst_held_out, fit.held_out);
                rep.max_fit_degree = std::max(rep.max_fit_degree, std::max(fit.p, fit.q));
                cy[static_cast<std::size_t>(i)](j, k) = fit.evaluate(s0);
            }
        }
    }
    const CMatrix L = l_matrix(n);
    const CMatrix Linv = L.inverse();
    Real scale = std::numeric_limits<Real>::min();
    for (int a = 0; a < n; ++a) {
        rep.x_side.push_back(sx.at_origin(a));
        scale = std::max(scale, static_cast<Real>(rep.x_side.back().cwiseAbs().maxCoeff()));
    }
    for (int a = 0; a < n; ++a) {
        CMatrix m = CMatrix::Zero(n, n);
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                Complex v(0);
                for (int i = 0; i < n; ++i) {
                    for (int j = 0; j < n; ++j) {
                        for (int k = 0; k < n; ++k) {
                            v += L(i, a) * L(j, b) * cy[static_cast<std::size_t>(i)](j, k) * Linv(c, k);
                        }
                    }
                }
                m(b, c) = v;
            }
        }
        rep.y_conjugated.push_back(m);
        rep.max_relative_error = std::max(
            rep.max_relative_error,
            static_cast<Real>((m - rep.x_side[static_cast<std::size_t>(a)]).cwiseAbs().maxCoeff()) / scale);
    }
    rep.unit_error = static_cast<Real>((rep.y_conjugated[0] - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff());
    const CMatrix GX = gram_X(n, lambda);
    const CMatrix GY = gram_Y(FixedPointData(n, lambda));
    const CMatrix pulled = L.transpose() * GY * L;
    rep.pairing_error = static_cast<Real>((pulled - GX).cwiseAbs().maxCoeff() / GX.cwiseAbs().maxCoeff());
    rep.status = rep.max_relative_error < tolerance ? CheckStatus::Pass : CheckStatus::Fail;
    return rep;
}

nlohmann::json to_json(const StructureConstants &s)
{
    nlohmann::json c = nlohmann::json::array();
    for (int i = 0; i < s.n; ++i) {
        for (int j = 0; j < s.n; ++j) {
            for (int k = 0; k < s.n; ++k) {
                c.push_back({{"i", i}, {"j", j}, {"k", k}, {"series", to_json(s.at(i, j, k))}});
            }
        }
    }
    return {{"side", s.side == Space::X ? "X" : "Y"},
            {"variables", s.side == Space::X ? "u_1..u_{n-1}" : "q_1..q_{n-1}"},
            {"n", s.n},
            {"degree", s.degree},
            {"zorder", s.zorder},
            {"lambda", lambda_json(s.lambda)},
            {"qde_residual", static_cast<double>(s.qde_residual)},
            {"constants", c}};
}

nlohmann::json to_json(const FrobeniusReport &r)
{
    return {{"symmetry", static_cast<double>(r.symmetry)},
            {"associativity", static_cast<double>(r.associativity)},
            {"associativity_at_point", static_cast<double>(r.associativity_at_point)},
            {"commutativity", static_cast<double>(r.commutativity)},
            {"unit", static_cast<double>(r.unit)},
            {"scale", static_cast<double>(r.scale)},
            {"through_degree", r.through_degree}};
}

nlohmann::json to_json(const StabilityReport &r)
{
    return {{"windows", r.windows}, {"max_drift", static_cast<double>(r.max_drift)}, {"scale", static_cast<double>(r.scale)}};
}

nlohmann::json to_json(const LambdaFitReport &r)
{
    nlohmann::json s = nlohmann::json::array();
    for (const auto &l : r.samples) {
        s.push_back(lambda_json(l));
    }
    return {{"samples", s},
            {"entries", r.entries},
            {"max_validation_error", static_cast<double>(r.max_validation_error)},
            {"max_forbidden", static_cast<double>(r.max_forbidden)},
            {"pass", r.pass}};
}

nlohmann::json to_json(const RationalFit &r)
{
    return {{"valid", r.valid},
            {"p", r.p},
            {"q", r.q},
            {"numerator", cvec(r.num)},
            {"denominator", cvec(r.den)},
            {"held_out", r.held_out},
            {"validation_error", static_cast<double>(r.validation_error)}};
}

nlohmann::json to_json(const CorollaryReport &r)
{
    nlohmann::json x = nlohmann::json::array();
    nlohmann::json y = nlohmann::json::array();
    for (const auto &m : r.x_side) {
        x.push_back(cmatrix(m));
    }
    for (const auto &m : r.y_conjugated) {
        y.push_back(cmatrix(m));
    }
    return {{"n", r.n},
            {"lambda", lambda_json(r.lambda)},
            {"degree", r.degree},
            {"status", to_string(r.status)},
            {"max_relative_error", static_cast<double>(r.max_relative_error)},
            {"pairing_error", static_cast<double>(r.pairing_error)},
            {"unit_error", static_cast<double>(r.unit_error)},
            {"worst_held_out", r.worst_held_out},
            {"max_fit_degree", r.max_fit_degree},
            {"x_products_at_u0", x},
            {"y_products_conjugated", y},
            {"note", r.note}};
}

} // namespace crc
