#include "pbqc/analysis.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

namespace pbqc {

namespace {

constexpr double kPi = 3.14159265358979323846;

Geometry default_line_geometry() { return Geometry::collinear(1.0, 0.1, 1.0); }

BlochAngles sample_sphere(Rng& rng) {
    const double ct = 2.0 * rng.uniform() - 1.0;
    double phi = 2.0 * kPi * rng.uniform();
    if (phi >= 2.0 * kPi) phi = 0.0;
    return {std::acos(ct), phi};
}

// ---------------- deterministic compass search ----------------

struct PatternResult {
    double best;
    std::vector<double> x;
};

template <typename F>
PatternResult pattern_maximize(const F& f, std::vector<double> x, double step0, double step_floor,
                               int max_iter) {
    double best = f(x);
    double step = step0;
    for (int it = 0; it < max_iter && step > step_floor; ++it) {
        double probe_best = best;
        std::size_t probe_dim = 0;
        double probe_val = 0.0;
        bool improved = false;
        for (std::size_t d = 0; d < x.size(); ++d) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                std::vector<double> y = x;
                y[d] += sgn * step;
                const double v = f(y);
                if (v > probe_best + 1e-15) {
                    probe_best = v;
                    probe_dim = d;
                    probe_val = y[d];
                    improved = true;
                }
            }
        }
        if (improved) {
            x[probe_dim] = probe_val;
            best = probe_best;
        } else {
            step *= 0.5;
        }
    }
    return {best, std::move(x)};
}

} // namespace

RateReport rate_monte_carlo(ModifiedStrategy strategy, long samples, std::uint64_t seed) {
    if (samples < 1000) throw std::invalid_argument("rate_monte_carlo: samples >= 1000");
    const Geometry geom = default_line_geometry();
    const Rng base(seed);
    long hits = 0;
    for (long i = 0; i < samples; ++i) {
        Rng rng = base.derive(static_cast<std::uint64_t>(i));
        const BlochAngles enc = sample_sphere(rng);
        const int u = rng.uniform_int(2);
        const auto inst = ModifiedInstance::from_angles(u, enc);
        if (attack_modified(inst, strategy, geom, rng).success) ++hits;
    }
    RateReport rep;
    rep.strategy = strategy_name(strategy);
    rep.samples = samples;
    rep.rate = static_cast<double>(hits) / static_cast<double>(samples);
    rep.std_error = std::sqrt(rep.rate * (1.0 - rep.rate) / static_cast<double>(samples));
    if (strategy == ModifiedStrategy::TeleportOptimal) rep.quadrature = rate_quadrature_teleport();
    return rep;
}

namespace {

double teleport_rate_on_grid(int theta_cells) {
    const int phi_cells = 2 * theta_cells;
    double acc = 0.0;
    for (int i = 0; i < theta_cells; ++i) {
        const double x = -1.0 + (i + 0.5) * 2.0 / theta_cells; // cos(theta) midpoint
        const double theta = std::acos(x);
        for (int j = 0; j < phi_cells; ++j) {
            const double phi = (j + 0.5) * 2.0 * kPi / phi_cells;
            acc += modified_teleport_success_prob({theta, phi});
        }
    }
    return acc / (static_cast<double>(theta_cells) * phi_cells);
}

} // namespace

double rate_quadrature_teleport(double tol) {
    int cells = 32;
    double prev = teleport_rate_on_grid(cells);
    for (int round = 0; round < 6; ++round) {
        cells *= 2;
        const double cur = teleport_rate_on_grid(cells);
        if (std::abs(cur - prev) < tol) return cur;
        prev = cur;
    }
    return prev;
}

double measure_hold_success_prob(double theta) { return 0.5 * (1.0 + std::abs(std::cos(theta))); }

double measure_hold_rate_quadrature(int grid) {
    double acc = 0.0;
    for (int i = 0; i < grid; ++i) {
        const double x = -1.0 + (i + 0.5) * 2.0 / grid;
        acc += 0.5 * (1.0 + std::abs(x));
    }
    return acc / grid;
}

namespace {

Mat2 rotation_from_params(const std::array<double, 3>& v) {
    const double len = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    if (len < 1e-15) return mat2_identity();
    const double c = std::cos(len / 2), s = std::sin(len / 2);
    const double nx = v[0] / len, ny = v[1] / len, nz = v[2] / len;
    // cos(t/2) I - i sin(t/2) (n . sigma)
    return {cplx(c, -s * nz), cplx(-s * ny, -s * nx), cplx(s * ny, -s * nx), cplx(c, s * nz)};
}

} // namespace

double rate_for_b2_rotation(const std::array<double, 3>& params, int theta_cells) {
    const Mat2 r = rotation_from_params(params);
    const Mat2 byproducts[4] = {mat2_identity(), gate_matrix_x(), gate_matrix_z(),
                                mat2_mul(gate_matrix_x(), gate_matrix_z())};
    const int phi_cells = 2 * theta_cells;
    double acc = 0.0;
    for (int i = 0; i < theta_cells; ++i) {
        const double x = -1.0 + (i + 0.5) * 2.0 / theta_cells;
        const double theta = std::acos(x);
        for (int j = 0; j < phi_cells; ++j) {
            const double phi = (j + 0.5) * 2.0 * kPi / phi_cells;
            const Vec2 chi0 = {std::cos(theta / 2), std::polar(std::sin(theta / 2), phi)};
            const Vec2 chi1 = {std::sin(theta / 2), -std::polar(std::cos(theta / 2), phi)};
            const Vec2 m0 = mat2_apply(r, chi0), m1 = mat2_apply(r, chi1);
            auto ip = [](const Vec2& a, const Vec2& b) {
                return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1];
            };
            double point = 0.0;
            for (const auto& d : byproducts) {
                const Vec2 d0 = mat2_apply(d, chi0), d1 = mat2_apply(d, chi1);
                for (const Vec2* mk : {&m0, &m1})
                    point += std::max(std::norm(ip(*mk, d0)), std::norm(ip(*mk, d1)));
            }
            acc += point / 8.0; // 4 branches x (1/2 per measurement outcome MAP)
        }
    }
    return acc / (static_cast<double>(theta_cells) * phi_cells);
}

BasisSearchResult optimal_b2_basis_search(int restarts, std::uint64_t seed) {
    if (restarts < 8) throw std::invalid_argument("optimal_b2_basis_search: restarts >= 8");
    const Rng base(seed);
    BasisSearchResult res;
    res.restarts = restarts;
    res.identity_rate = rate_for_b2_rotation({0, 0, 0});
    res.best_rate = res.identity_rate;
    res.params = {0, 0, 0};
    auto objective = [](const std::vector<double>& x) {
        return rate_for_b2_rotation({x[0], x[1], x[2]}, 24);
    };
    for (int r = 0; r < restarts; ++r) {
        Rng rng = base.derive(static_cast<std::uint64_t>(r));
        std::vector<double> x0 = {0, 0, 0};
        if (r > 0)
            for (auto& v : x0) v = (rng.uniform() * 2 - 1) * kPi;
        const auto got = pattern_maximize(objective, x0, 0.5, 1e-5, 200);
        // score candidates on the fine grid
        const double fine = rate_for_b2_rotation({got.x[0], got.x[1], got.x[2]});
        if (fine > res.best_rate) {
            res.best_rate = fine;
            res.params = {got.x[0], got.x[1], got.x[2]};
        }
    }
    return res;
}

// ---------------- resource searches ----------------

EncodingGrid EncodingGrid::from_thetas(const std::vector<double>& thetas) {
    EncodingGrid g;
    for (double t : thetas) {
        if (t < 1e-9 || t > kPi - 1e-9) g.points.push_back({t < 1e-9 ? 0.0 : kPi, 0.0});
        else g.append_ring(t);
    }
    if (g.points.empty()) throw std::invalid_argument("empty encoding grid");
    return g;
}

void EncodingGrid::append_ring(double theta) {
    for (int k = 0; k < 4; ++k) points.push_back({theta, k * kPi / 2});
}

EncodingGrid EncodingGrid::fibonacci(int n) {
    if (n < 1) throw std::invalid_argument("fibonacci grid needs n >= 1");
    EncodingGrid g;
    const double golden = kPi * (3.0 - std::sqrt(5.0));
    for (int k = 0; k < n; ++k) {
        const double z = 1.0 - (2.0 * k + 1.0) / n;
        g.points.push_back({std::acos(z), std::fmod(k * golden, 2 * kPi)});
    }
    return g;
}

EncodingGrid EncodingGrid::pauli_eigenstates() { return from_thetas({0.0, kPi / 2, kPi}); }

std::vector<double> EncodingGrid::theta_values() const {
    std::vector<double> ts;
    for (const auto& p : points) {
        bool seen = false;
        for (double t : ts)
            if (std::abs(t - p.theta) < 1e-12) { seen = true; break; }
        if (!seen) ts.push_back(p.theta);
    }
    return ts;
}

namespace {

struct ChiPair {
    Vec2 chi[2];
};

ChiPair chi_pair(const BlochAngles& a) {
    ChiPair c;
    c.chi[0] = {std::cos(a.theta / 2), std::polar(std::sin(a.theta / 2), a.phi)};
    c.chi[1] = {std::sin(a.theta / 2), -std::polar(std::cos(a.theta / 2), a.phi)};
    return c;
}

// --- two-qubit model: steered orthonormal pair, selection-form M ---

// kets of the four outcomes, basis order (b, j) -> b*2 + j
std::array<std::array<cplx, 4>, 4> m_kets_2q(const std::vector<double>& x) {
    const cplx al = std::cos(x[0]), be = std::polar(std::sin(x[0]), x[1]);
    const cplx ga = std::cos(x[2]), de = std::polar(std::sin(x[2]), x[3]);
    std::array<std::array<cplx, 4>, 4> m{};
    m[0][0] = al; m[0][3] = be;
    m[1][0] = std::conj(be); m[1][3] = -std::conj(al);
    m[2][1] = ga; m[2][2] = de;
    m[3][1] = std::conj(de); m[3][2] = -std::conj(ga);
    return m;
}

double point_success_2q(const std::array<std::array<cplx, 4>, 4>& m, const ChiPair& cp) {
    // V[i][u][j] = sum_b conj(m[i][b*2+j]) chi[u][b]
    cplx V[4][2][2];
    for (int i = 0; i < 4; ++i)
        for (int u = 0; u < 2; ++u)
            for (int j = 0; j < 2; ++j)
                V[i][u][j] = std::conj(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) * cp.chi[u][0] +
                             std::conj(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(2 + j)]) * cp.chi[u][1];
    // quadratic forms in the steered direction w: up uses w, down uses J conj(w)
    // Bup[k][l] = conj(Vk) Vl ; Bdn[j][k] = (VJ)_j conj((VJ)_k), VJ = (-V1, V0)
    cplx Bup[4][2][2][2], Bdn[4][2][2][2];
    for (int i = 0; i < 4; ++i)
        for (int u = 0; u < 2; ++u) {
            const cplx v0 = V[i][u][0], v1 = V[i][u][1];
            Bup[i][u][0][0] = std::conj(v0) * v0;
            Bup[i][u][0][1] = std::conj(v0) * v1;
            Bup[i][u][1][0] = std::conj(v1) * v0;
            Bup[i][u][1][1] = std::conj(v1) * v1;
            const cplx w0 = -v1, w1 = v0;
            Bdn[i][u][0][0] = w0 * std::conj(w0);
            Bdn[i][u][0][1] = w0 * std::conj(w1);
            Bdn[i][u][1][0] = w1 * std::conj(w0);
            Bdn[i][u][1][1] = w1 * std::conj(w1);
        }
    // partial sums over the 16 assignments of each branch
    cplx Su[16][2][2], Sd[16][2][2];
    for (int s = 0; s < 16; ++s) {
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) {
                cplx up = 0.0, dn = 0.0;
                for (int i = 0; i < 4; ++i) {
                    const int pick = (s >> i) & 1;
                    up += Bup[i][pick][a][b];
                    dn += Bdn[i][pick][a][b];
                }
                Su[s][a][b] = up;
                Sd[s][a][b] = dn;
            }
    }
    double best = 0.0;
    for (int su = 0; su < 16; ++su)
        for (int sd = 0; sd < 16; ++sd) {
            const double a00 = (Su[su][0][0] + Sd[sd][0][0]).real();
            const double a11 = (Su[su][1][1] + Sd[sd][1][1]).real();
            const cplx a01 = Su[su][0][1] + Sd[sd][0][1];
            best = std::max(best, max_eig_herm2(a00, a01, a11));
        }
    return best / 4.0;
}

// residuals of the selection structure for a set of outcome kets on (2 x n)
void selection_residuals(const std::vector<std::vector<cplx>>& kets, int n,
                         std::vector<double>& even, std::vector<double>& cross) {
    even.clear();
    cross.clear();
    for (const auto& ket : kets) {
        double mass_sel = 0.0, mass_bad = 0.0;
        for (int j = 0; j < n; ++j) {
            const double m0 = std::norm(ket[static_cast<std::size_t>(j)]);
            const double m1 = std::norm(ket[static_cast<std::size_t>(n + j)]);
            if (m0 >= m1) {
                mass_sel += m0;
                mass_bad += m1;
            } else {
                mass_bad += m0;
            }
        }
        even.push_back(std::abs(mass_sel - 0.5));
        cross.push_back(mass_bad);
    }
}

// --- qutrit model: deterministic steering vector, free 6-outcome M ---

CMat hermitian_from_params(const std::vector<double>& x, int n) {
    CMat h(n, n);
    std::size_t k = 0;
    for (int i = 0; i < n; ++i) h.at(i, i) = x[k++];
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            h.at(i, j) = cplx(x[k], x[k + 1]);
            h.at(j, i) = cplx(x[k], -x[k + 1]);
            k += 2;
        }
    return h;
}

// columns of the returned matrix are the outcome kets
CMat m_basis_3l(const std::vector<double>& x, const CMat& base) {
    return exp_i_hermitian(hermitian_from_params(x, 6)).mul(base);
}

CMat embedded_bell_basis() {
    // qubit Bell solution inside span{|0t>,|1t>}, |2t> sector split off
    CMat w(6, 6);
    const double s = 1.0 / std::sqrt(2.0);
    // basis order (b, j) -> b*3 + j
    w.at(0, 0) = s; w.at(4, 0) = s;
    w.at(0, 1) = s; w.at(4, 1) = -s;
    w.at(1, 2) = s; w.at(3, 2) = s;
    w.at(1, 3) = s; w.at(3, 3) = -s;
    w.at(2, 4) = 1.0;
    w.at(5, 5) = 1.0;
    return w;
}

double point_success_3l(const CMat& w, const ChiPair& cp) {
    // V[i][u][j] = sum_b conj(w[(b*3+j), i]) chi[u][b]
    cplx V[6][2][3];
    for (int i = 0; i < 6; ++i)
        for (int u = 0; u < 2; ++u)
            for (int j = 0; j < 3; ++j)
                V[i][u][j] = std::conj(w.at(j, i)) * cp.chi[u][0] +
                             std::conj(w.at(3 + j, i)) * cp.chi[u][1];
    // B[i][u] = conj(V) V^T as a 3x3 Hermitian form in the steering vector
    cplx B[6][2][9];
    for (int i = 0; i < 6; ++i)
        for (int u = 0; u < 2; ++u)
            for (int a = 0; a < 3; ++a)
                for (int b = 0; b < 3; ++b)
                    B[i][u][a * 3 + b] = std::conj(V[i][u][a]) * V[i][u][b];
    double best = 0.0;
    std::array<cplx, 9> q;
    for (int s = 0; s < 64; ++s) {
        q.fill(0.0);
        for (int i = 0; i < 6; ++i) {
            const int pick = (s >> i) & 1;
            for (int k = 0; k < 9; ++k) q[static_cast<std::size_t>(k)] += B[i][pick][k];
        }
        best = std::max(best, max_eig_herm3(q));
    }
    return best / 2.0;
}

} // namespace

ResourceSearchResult two_qubit_cheat_search(const std::vector<double>& thetas, int restarts,
                                            std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("two_qubit_cheat_search: restarts >= 1");
    const EncodingGrid grid = EncodingGrid::from_thetas(thetas);
    std::vector<ChiPair> chis;
    for (const auto& p : grid.points) chis.push_back(chi_pair(p));

    auto objective = [&](const std::vector<double>& x) {
        const auto m = m_kets_2q(x);
        double worst = 1.0;
        for (const auto& c : chis) worst = std::min(worst, point_success_2q(m, c));
        return worst;
    };

    const Rng base(seed);
    PatternResult best{-1.0, {}};
    for (int r = 0; r < restarts; ++r) {
        Rng rng = base.derive(static_cast<std::uint64_t>(r));
        std::vector<double> x0(4);
        if (r == 0) x0 = {kPi / 4, 0.0, kPi / 4, 0.0}; // Bell measurement
        else {
            x0[0] = rng.uniform() * kPi;
            x0[1] = rng.uniform() * 2 * kPi;
            x0[2] = rng.uniform() * kPi;
            x0[3] = rng.uniform() * 2 * kPi;
        }
        const auto got = pattern_maximize(objective, x0, 0.4, 1e-7, 400);
        if (got.best > best.best) best = got;
    }

    ResourceSearchResult res;
    res.resource_dim = 2;
    res.thetas = thetas;
    res.best_success = best.best;
    res.best_params = best.x;
    res.restarts = restarts;
    const auto m = m_kets_2q(best.x);
    std::vector<std::vector<cplx>> kets;
    for (const auto& row : m) kets.push_back({row[0], row[1], row[2], row[3]});
    selection_residuals(kets, 2, res.residual_even, res.residual_cross);
    return res;
}

ResourceSearchResult qutrit_cheat_search(const EncodingGrid& grid, int restarts, std::uint64_t seed) {
    if (restarts < 1) throw std::invalid_argument("qutrit_cheat_search: restarts >= 1");
    if (grid.points.empty()) throw std::invalid_argument("empty encoding grid");
    std::vector<ChiPair> chis;
    for (const auto& p : grid.points) chis.push_back(chi_pair(p));

    const CMat embed = embedded_bell_basis();
    const CMat ident = CMat::identity(6);

    auto run_restart = [&](int r) {
        const CMat& start = (r == 0) ? embed : ident;
        Rng rng = Rng(seed).derive(static_cast<std::uint64_t>(r));
        std::vector<double> x0(36, 0.0);
        if (r != 0)
            for (auto& v : x0) v = (rng.uniform() * 2 - 1) * 1.5;
        auto objective = [&](const std::vector<double>& x) {
            const CMat w = m_basis_3l(x, start);
            double worst = 1.0;
            for (const auto& c : chis) worst = std::min(worst, point_success_3l(w, c));
            return worst;
        };
        auto got = pattern_maximize(objective, x0, 0.3, 1e-5, 220);
        got.x.insert(got.x.begin(), r == 0 ? 0.0 : 1.0); // tag the start basis
        return got;
    };

    // restarts are independent; keep the reduction order fixed
    std::vector<std::future<PatternResult>> futs;
    const int workers = 2;
    std::vector<PatternResult> results(static_cast<std::size_t>(restarts));
    for (int g0 = 0; g0 < restarts; g0 += workers) {
        futs.clear();
        for (int r = g0; r < std::min(restarts, g0 + workers); ++r)
            futs.push_back(std::async(std::launch::async, run_restart, r));
        for (int r = g0; r < std::min(restarts, g0 + workers); ++r)
            results[static_cast<std::size_t>(r)] = futs[static_cast<std::size_t>(r - g0)].get();
    }
    PatternResult best{-1.0, {}};
    for (const auto& got : results)
        if (got.best > best.best) best = got;

    ResourceSearchResult res;
    res.resource_dim = 3;
    res.thetas = grid.theta_values();
    res.best_success = best.best;
    res.best_params = best.x;
    res.restarts = restarts;

    const CMat w = m_basis_3l(std::vector<double>(best.x.begin() + 1, best.x.end()),
                              best.x[0] == 0.0 ? embed : ident);
    CodeSpace basis;
    for (int i = 0; i < 6; ++i) {
        std::vector<cplx> amps(6);
        for (int k = 0; k < 6; ++k) amps[static_cast<std::size_t>(k)] = w.at(k, i);
        basis.states.push_back(PureState::from_amplitudes({2, 3}, std::move(amps)));
    }
    const auto qr = qutrit_constraint_check(basis, qutrit_default_partition(basis));
    res.residual_even = qr.even;
    res.residual_cross = qr.cross;
    return res;
}

std::vector<std::array<int, 3>> qutrit_default_partition(const CodeSpace& m_basis) {
    std::vector<std::array<int, 3>> part;
    for (const auto& s : m_basis.states) {
        std::array<int, 3> row{};
        for (int j = 0; j < 3; ++j)
            row[static_cast<std::size_t>(j)] =
                std::norm(s.amp(static_cast<std::size_t>(j))) >= std::norm(s.amp(static_cast<std::size_t>(3 + j))) ? 1 : 0;
        part.push_back(row);
    }
    return part;
}

QutritResiduals qutrit_constraint_check(const CodeSpace& m_basis,
                                        const std::vector<std::array<int, 3>>& partition) {
    m_basis.validate();
    if (m_basis.states.size() != 6 || m_basis.states[0].dims() != std::vector<int>{2, 3})
        throw std::invalid_argument("qutrit_constraint_check: need 6 orthonormal states on a 2x3 register");
    if (partition.size() != 6) throw std::invalid_argument("qutrit_constraint_check: 6 partition rows");
    QutritResiduals out;
    for (std::size_t i = 0; i < 6; ++i) {
        double sel0 = 0.0, bad = 0.0;
        for (int j = 0; j < 3; ++j) {
            const double m0 = std::norm(m_basis.states[i].amp(static_cast<std::size_t>(j)));
            const double m1 = std::norm(m_basis.states[i].amp(static_cast<std::size_t>(3 + j)));
            const int sel = partition[i][static_cast<std::size_t>(j)];
            if (sel != 0 && sel != 1) throw std::invalid_argument("partition entries must be bits");
            if (sel == 1) {
                sel0 += m0;
                bad += m1; // mass on |1> where |0> was selected
            } else {
                bad += m0;
            }
        }
        out.even.push_back(std::abs(sel0 - 0.5));
        out.cross.push_back(bad);
    }
    return out;
}

} // namespace pbqc
