#include "pbqc/spacetime.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pbqc {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTimeTol = 1e-12;

Position sub(const Position& a, const Position& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
Position add(const Position& a, const Position& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
Position scale(const Position& a, double s) { return {a.x * s, a.y * s, a.z * s}; }
double dot(const Position& a, const Position& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
Position cross(const Position& a, const Position& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
double norm(const Position& a) { return std::sqrt(dot(a, a)); }

} // namespace

double distance(const Position& a, const Position& b) { return norm(sub(a, b)); }

void Geometry::validate() const {
    if (verifiers.size() < 2) throw std::invalid_argument("geometry: at least two verifiers required");
    if (!(l > 0.0)) throw std::invalid_argument("geometry: l must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("geometry: c must be positive");
    if (processing_latency < 0.0) throw std::invalid_argument("geometry: negative latency");
    auto finite = [](const Position& p) {
        return std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z);
    };
    if (!finite(receiver)) throw std::invalid_argument("geometry: non-finite receiver");
    for (const auto& v : verifiers)
        if (!finite(v)) throw std::invalid_argument("geometry: non-finite verifier");
    for (const auto& b : cheaters) {
        if (!finite(b)) throw std::invalid_argument("geometry: non-finite cheater");
        if (distance(b, receiver) < l - 1e-12)
            throw std::invalid_argument("geometry: cheater inside the restricted area");
    }
}

Geometry Geometry::collinear(double d, double l, double c) {
    Geometry g;
    g.verifiers = {{-d, 0, 0}, {d, 0, 0}};
    g.receiver = {0, 0, 0};
    g.l = l;
    g.c = c;
    g.validate();
    return g;
}

Geometry Geometry::equilateral(double d, double l, double c) { return regular(3, d, l, c); }

Geometry Geometry::regular(int n, double d, double l, double c) {
    if (n < 2) throw std::invalid_argument("regular: n >= 2");
    if (n == 2) return collinear(d, l, c);
    Geometry g;
    if (n == 3) {
        for (int k = 0; k < 3; ++k) {
            const double ang = kPi / 2 + 2 * kPi * k / 3;
            g.verifiers.push_back({d * std::cos(ang), d * std::sin(ang), 0});
        }
    } else if (n == 4) {
        const double s = d / std::sqrt(3.0);
        g.verifiers = {{s, s, s}, {s, -s, -s}, {-s, s, -s}, {-s, -s, s}};
    } else {
        // ring plus out-of-plane stations, all at distance d from the origin
        const int ring = n - 2;
        for (int k = 0; k < ring; ++k) {
            const double ang = 2 * kPi * k / ring;
            g.verifiers.push_back({d * std::cos(ang), d * std::sin(ang), 0});
        }
        g.verifiers.push_back({0, 0, d});
        g.verifiers.push_back({0, 0, -d});
    }
    g.receiver = {0, 0, 0};
    g.l = l;
    g.c = c;
    g.validate();
    return g;
}

Geometry Geometry::with_default_cheaters() const {
    Geometry g = *this;
    g.cheaters.clear();
    for (const auto& v : verifiers) {
        const Position dir = sub(v, receiver);
        const double len = norm(dir);
        if (len < l) throw std::invalid_argument("verifier inside the restricted area");
        g.cheaters.push_back(add(receiver, scale(dir, l / len)));
    }
    g.validate();
    return g;
}

ScheduleReport honest_completion(const Geometry& g) {
    g.validate();
    double t_in = 0.0;
    for (const auto& v : g.verifiers) t_in = std::max(t_in, distance(v, g.receiver) / g.c);
    t_in += g.processing_latency;
    ScheduleReport r;
    for (const auto& v : g.verifiers) r.arrivals.push_back(t_in + distance(g.receiver, v) / g.c);
    r.completion = *std::max_element(r.arrivals.begin(), r.arrivals.end());
    r.deadline = r.completion;
    r.meets_deadline = true;
    return r;
}

ScheduleReport cheat_completion(const Geometry& g, const ExchangePlan& plan) {
    g.validate();
    if (!plan.all_to_all) throw std::invalid_argument("only the all-to-all exchange pattern is modeled");
    const Geometry gc = g.cheaters.empty() ? g.with_default_cheaters() : g;
    if (gc.cheaters.size() != gc.verifiers.size())
        throw std::invalid_argument("cheat schedule needs one cheater per verifier");
    const std::size_t n = gc.verifiers.size();
    std::vector<double> intercept(n);
    for (std::size_t i = 0; i < n; ++i)
        intercept[i] = distance(gc.verifiers[i], gc.cheaters[i]) / gc.c + gc.processing_latency;
    // a cheater is ready when the last piece of the exchange lands on him
    std::vector<double> ready(n);
    for (std::size_t j = 0; j < n; ++j) {
        double t = intercept[j];
        for (std::size_t i = 0; i < n; ++i)
            t = std::max(t, intercept[i] + distance(gc.cheaters[i], gc.cheaters[j]) / gc.c);
        ready[j] = t;
    }
    ScheduleReport r;
    r.deadline = honest_completion(g).completion;
    for (std::size_t j = 0; j < n; ++j)
        r.arrivals.push_back(ready[j] + distance(gc.cheaters[j], gc.verifiers[j]) / gc.c);
    r.completion = *std::max_element(r.arrivals.begin(), r.arrivals.end());
    r.meets_deadline = r.completion <= r.deadline + kTimeTol;
    return r;
}

namespace {

// strict-interior test for the convex hull of the verifier set, built once
class HullTester {
public:
    explicit HullTester(const std::vector<Position>& verts) : verts_(verts) {
        origin_ = verts[0];
        for (const auto& p : verts) scale_ = std::max(scale_, distance(p, origin_));
        if (scale_ <= 0) scale_ = 1.0;
        tol_ = 1e-9 * scale_;
        for (const auto& p : verts) {
            Position v = sub(p, origin_);
            for (const auto& ax : axes_) v = sub(v, scale(ax, dot(v, ax)));
            if (norm(v) > tol_) axes_.push_back(scale(v, 1.0 / norm(v)));
        }
        dim_ = static_cast<int>(axes_.size());
        if (dim_ == 1) {
            lo_ = hi_ = dot(sub(verts[0], origin_), axes_[0]);
            for (const auto& v : verts) {
                const double t = dot(sub(v, origin_), axes_[0]);
                lo_ = std::min(lo_, t);
                hi_ = std::max(hi_, t);
            }
        } else if (dim_ == 2) {
            build_edges();
        } else if (dim_ == 3) {
            build_facets();
        }
    }

    int dim() const { return dim_; }

    bool strictly_inside(const Position& p) const {
        Position v = sub(p, origin_);
        std::vector<double> c;
        for (const auto& ax : axes_) {
            c.push_back(dot(v, ax));
            v = sub(v, scale(ax, dot(v, ax)));
        }
        if (norm(v) > tol_) return false; // off the affine span
        if (dim_ == 1) return c[0] > lo_ + tol_ && c[0] < hi_ - tol_;
        if (dim_ == 2) {
            if (edges_.empty()) return false;
            for (const auto& e : edges_) {
                const double s = e.nx * (c[0] - e.px) + e.ny * (c[1] - e.py);
                if (s < tol_) return false;
            }
            return true;
        }
        if (facets_.empty()) return false;
        for (const auto& f : facets_)
            if (dot(sub(p, f.point), f.normal) < tol_) return false;
        return true;
    }

private:
    struct Edge {
        double px, py; // a vertex on the edge (2-D coords)
        double nx, ny; // inward unit normal
    };
    struct Facet {
        Position point;
        Position normal; // inward unit normal
    };

    std::vector<double> coords2(const Position& p) const {
        const Position v = sub(p, origin_);
        return {dot(v, axes_[0]), dot(v, axes_[1])};
    }

    void build_edges() {
        const std::size_t n = verts_.size();
        std::vector<std::array<double, 2>> vc(n);
        for (std::size_t i = 0; i < n; ++i) {
            const auto c = coords2(verts_[i]);
            vc[i] = {c[0], c[1]};
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                const double ex = vc[j][0] - vc[i][0], ey = vc[j][1] - vc[i][1];
                const double elen = std::hypot(ex, ey);
                if (elen < tol_) continue;
                bool edge = true;
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == i || k == j) continue;
                    const double s = (ex * (vc[k][1] - vc[i][1]) - ey * (vc[k][0] - vc[i][0])) / elen;
                    if (s < -tol_) { edge = false; break; }
                }
                if (edge) edges_.push_back({vc[i][0], vc[i][1], -ey / elen, ex / elen});
            }
    }

    void build_facets() {
        const std::size_t n = verts_.size();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                for (std::size_t k = j + 1; k < n; ++k) {
                    Position nrm = cross(sub(verts_[j], verts_[i]), sub(verts_[k], verts_[i]));
                    const double len = norm(nrm);
                    if (len < tol_ * scale_) continue;
                    nrm = scale(nrm, 1.0 / len);
                    double lo = 0.0, hi = 0.0;
                    for (const auto& v : verts_) {
                        const double s = dot(sub(v, verts_[i]), nrm);
                        lo = std::min(lo, s);
                        hi = std::max(hi, s);
                    }
                    if (lo > -tol_) facets_.push_back({verts_[i], nrm});
                    else if (hi < tol_) facets_.push_back({verts_[i], scale(nrm, -1.0)});
                }
    }

    std::vector<Position> verts_;
    Position origin_{};
    std::vector<Position> axes_;
    double scale_ = 0.0;
    double tol_ = 1e-9;
    int dim_ = 0;
    double lo_ = 0.0, hi_ = 0.0;
    std::vector<Edge> edges_;
    std::vector<Facet> facets_;
};

} // namespace

FeasibilityResult feasibility_check(const Geometry& g) {
    g.validate();
    const auto& verts = g.verifiers;
    double spread = 0.0;
    for (const auto& v : verts) spread = std::max(spread, distance(v, verts[0]));
    if (spread < 1e-12) throw std::invalid_argument("degenerate verifier hull");

    const HullTester hull(verts);
    FeasibilityResult res;
    res.feasible = hull.strictly_inside(g.receiver);
    if (res.feasible) return res;

    // grid search for an interior point at least as close to every verifier;
    // that dominates every V_i -> point -> V_j response chain of P
    std::vector<double> p_dist;
    for (const auto& v : verts) p_dist.push_back(distance(v, g.receiver));
    auto slack = [&](const Position& w) {
        double s = 1e300;
        for (std::size_t i = 0; i < verts.size(); ++i)
            s = std::min(s, p_dist[i] - distance(verts[i], w));
        return s;
    };

    Position lo = verts[0], hi = verts[0];
    for (const auto& v : verts) {
        lo = {std::min(lo.x, v.x), std::min(lo.y, v.y), std::min(lo.z, v.z)};
        hi = {std::max(hi.x, v.x), std::max(hi.y, v.y), std::max(hi.z, v.z)};
    }
    const int steps = 201;
    auto axis_count = [&](double a, double b) { return (b - a) < 1e-12 ? 1 : steps; };

    Position best{};
    double best_slack = -1e300;
    auto scan = [&](Position alo, Position ahi) {
        const int nx = axis_count(alo.x, ahi.x), ny = axis_count(alo.y, ahi.y),
                  nz = axis_count(alo.z, ahi.z);
        for (int ix = 0; ix < nx; ++ix)
            for (int iy = 0; iy < ny; ++iy)
                for (int iz = 0; iz < nz; ++iz) {
                    const Position w{nx == 1 ? alo.x : alo.x + (ahi.x - alo.x) * ix / (nx - 1),
                                     ny == 1 ? alo.y : alo.y + (ahi.y - alo.y) * iy / (ny - 1),
                                     nz == 1 ? alo.z : alo.z + (ahi.z - alo.z) * iz / (nz - 1)};
                    if (!hull.strictly_inside(w)) continue;
                    const double s = slack(w);
                    if (s > best_slack) {
                        best_slack = s;
                        best = w;
                    }
                }
    };
    scan(lo, hi);
    if (best_slack > -1e300) {
        const double hx = (hi.x - lo.x) / steps, hy = (hi.y - lo.y) / steps,
                     hz = (hi.z - lo.z) / steps;
        scan({best.x - hx, best.y - hy, best.z - hz}, {best.x + hx, best.y + hy, best.z + hz});
    }
    const double scale_len = std::max(1.0, distance(lo, hi));
    if (best_slack >= -1e-12 * scale_len && distance(best, g.receiver) > 1e-9 * scale_len)
        res.witness = best;
    return res;
}

} // namespace pbqc
