#include "elliptica/covering.hpp"

#include "elliptica/error.hpp"
#include "elliptica/hesse.hpp"
#include "elliptica/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace elliptica {

namespace {

Vec3 random_vec(Rng &rng)
{
    Vec3 v{rng.normal_complex(), rng.normal_complex(), rng.normal_complex()};
    const double n = norm(v);
    for (auto &c : v) {
        c /= n;
    }
    return v;
}

Vec3 affine_point(const Vec3 &q0, const Vec3 &r, complex s)
{
    return {q0[0] + s * r[0], q0[1] + s * r[1], q0[2] + s * r[2]};
}

double segment_distance(complex p, complex a, complex b)
{
    const complex d = b - a;
    const double len2 = std::norm(d);
    double s = len2 > 0.0 ? ((p - a) * std::conj(d)).real() / len2 : 0.0;
    s = std::clamp(s, 0.0, 1.0);
    return std::abs(p - (a + s * d));
}

// Line through three collinear points of C (tangent when they coincide).
ProjLine line_through_three(const Cubic &C, const std::array<ProjPoint, 3> &p)
{
    double best = -1.0;
    std::size_t bi = 0, bj = 1;
    for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = i + 1; j < 3; ++j) {
            const double d = projective_distance(p[i], p[j]);
            if (d > best) {
                best = d;
                bi = i;
                bj = j;
            }
        }
    }
    if (best < 1e-7) {
        return tangent_line(C, p[0]);
    }
    return line_through(p[bi], p[bj]);
}

struct StepFailure {
    bool collision = false;
};

class Tracker {
public:
    Tracker(const Cubic &C, const ContinuationOptions &opts) : m_C(C), m_opts(opts) {}

    // Advances all points from base qa + s dq to qa + sn dq; false on failure.
    bool step(std::vector<Vec3> &pts, const Vec3 &qa, const Vec3 &dq, double s, double sn, StepFailure &why) const
    {
        const Vec3 qs = affine_point(qa, dq, s);
        const Vec3 qn = affine_point(qa, dq, sn);
        std::vector<Vec3> next(pts.size());
        std::vector<double> correction(pts.size());
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Vec3 p = ProjPoint(pts[i]).coords();
            const std::size_t k = chart(p);
            // Tangent predictor.
            complex j00, j01, j10, j11;
            jacobian(p, qs, k, j00, j01, j10, j11);
            const complex det = j00 * j11 - j01 * j10;
            if (std::abs(det) == 0.0) {
                return false;
            }
            const complex r1 = dot(dq, m_C.gradient(p)) * (sn - s);
            const std::size_t i0 = (k + 1) % 3, i1 = (k + 2) % 3;
            p[i0] -= (-j01 * r1) / det;
            p[i1] -= (j00 * r1) / det;
            const Vec3 predicted = p;
            if (!correct(p, qn, k)) {
                return false;
            }
            next[i] = p;
            correction[i] = projective_distance(p, predicted);
        }
        for (std::size_t i = 0; i < pts.size(); ++i) {
            double nearest_old = std::numeric_limits<double>::infinity();
            double nearest_new = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < pts.size(); ++j) {
                if (j != i) {
                    nearest_old = std::min(nearest_old, projective_distance(pts[i], pts[j]));
                    nearest_new = std::min(nearest_new, projective_distance(next[i], next[j]));
                }
            }
            if (nearest_new < m_opts.collision_threshold) {
                why.collision = true;
                return false;
            }
            if (correction[i] > 0.25 * nearest_old) {
                return false;
            }
        }
        pts = std::move(next);
        return true;
    }

private:
    static std::size_t chart(const Vec3 &p)
    {
        std::size_t k = 0;
        for (std::size_t i = 1; i < 3; ++i) {
            if (std::abs(p[i]) > std::abs(p[k])) {
                k = i;
            }
        }
        return k;
    }

    void jacobian(const Vec3 &p, const Vec3 &q, std::size_t k, complex &j00, complex &j01, complex &j10,
                  complex &j11) const
    {
        const std::size_t i0 = (k + 1) % 3, i1 = (k + 2) % 3;
        const Vec3 g = m_C.gradient(p);
        const auto H = m_C.hessian(p);
        j00 = g[i0];
        j01 = g[i1];
        j10 = dot(H[i0], q);
        j11 = dot(H[i1], q);
    }

    bool correct(Vec3 &p, const Vec3 &q, std::size_t k) const
    {
        const std::size_t i0 = (k + 1) % 3, i1 = (k + 2) % 3;
        for (int it = 0; it < 12; ++it) {
            const complex f = m_C.value(p);
            const complex g = dot(q, m_C.gradient(p));
            complex j00, j01, j10, j11;
            jacobian(p, q, k, j00, j01, j10, j11);
            const complex det = j00 * j11 - j01 * j10;
            if (std::abs(det) == 0.0) {
                return false;
            }
            const complex d0 = (j11 * f - j01 * g) / det;
            const complex d1 = (-j10 * f + j00 * g) / det;
            p[i0] -= d0;
            p[i1] -= d1;
            const double size = std::abs(d0) + std::abs(d1);
            if (!std::isfinite(size) || size > 1.0) {
                return false;
            }
            if (size < 1e-14) {
                return true;
            }
        }
        return false;
    }

    const Cubic &m_C;
    const ContinuationOptions &m_opts;
};

} // namespace

TernaryForm polar_conic(const Cubic &C, const ProjPoint &q)
{
    if (C.contains(q, 1e-10)) {
        throw Error(ErrorKind::point_on_curve, "polar_conic", "base point lies on the cubic");
    }
    const auto grad = C.form().gradient();
    return grad[0] * q[0] + grad[1] * q[1] + grad[2] * q[2];
}

int Fiber::total() const noexcept
{
    int t = 0;
    for (const auto &e : entries) {
        t += e.multiplicity;
    }
    return t;
}

std::vector<ProjPoint> Fiber::points() const
{
    std::vector<ProjPoint> out;
    for (const auto &e : entries) {
        out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.point);
    }
    return out;
}

Fiber lambda_fiber(const Cubic &C, const ProjPoint &q, std::uint64_t seed)
{
    if (C.contains(q, 1e-10)) {
        throw Error(ErrorKind::point_on_curve, "lambda_fiber", "base point lies on the cubic");
    }
    const auto pts = intersect_curves(C.form(), polar_conic(C, q), seed);
    Fiber f{q, {}};
    for (const auto &p : pts) {
        f.entries.push_back({p.point, p.multiplicity});
    }
    if (f.total() != 6) {
        throw Error(ErrorKind::numerical_failure, "lambda_fiber", "conic-cubic intersection does not total 6");
    }
    return f;
}

std::vector<ProjLine> inflectional_tangents(const Cubic &C, std::uint64_t seed)
{
    std::vector<ProjLine> out;
    if (C.family() == CubicFamily::hesse) {
        for (const auto &d : hesse_data(C.t()).tangent_duals) {
            out.emplace_back(d);
        }
        return out;
    }
    for (const auto &p : inflection_points(C, seed)) {
        out.push_back(tangent_line(C, p));
    }
    return out;
}

CriticalCheck critical_locus_check(const Cubic &C, const std::vector<ProjLine> &tangents, const ProjPoint &q, double tol)
{
    if (C.contains(q, 1e-10)) {
        throw Error(ErrorKind::point_on_curve, "critical_locus_check", "base point lies on the cubic");
    }
    CriticalCheck out;
    for (std::size_t i = 0; i < tangents.size(); ++i) {
        if (tangents[i].incidence(q) <= tol) {
            out.tangents.push_back(static_cast<int>(i));
        }
    }
    out.on_critical = !out.tangents.empty();
    return out;
}

CriticalCheck critical_locus_check(const Cubic &C, const ProjPoint &q, double tol)
{
    return critical_locus_check(C, inflectional_tangents(C), q, tol);
}

std::vector<ProjPoint> concurrent_tangent_points(const Cubic &C, double tol)
{
    const auto tangents = inflectional_tangents(C);
    std::vector<ProjPoint> out;
    for (std::size_t i = 0; i < tangents.size(); ++i) {
        for (std::size_t j = i + 1; j < tangents.size(); ++j) {
            if (projective_distance(tangents[i].dual(), tangents[j].dual()) < 1e-12) {
                continue;
            }
            const ProjPoint q = intersection(tangents[i], tangents[j]);
            if (C.contains(q, 1e-10)) {
                continue;
            }
            if (critical_locus_check(C, tangents, q, tol).tangents.size() < 3) {
                continue;
            }
            const bool seen = std::any_of(out.begin(), out.end(), [&](const ProjPoint &p) { return projectively_equal(p, q, 1e-9); });
            if (!seen) {
                out.push_back(q);
            }
        }
    }
    std::sort(out.begin(), out.end(), lexicographic_less);
    return out;
}

std::vector<Divisor> branch_divisors_via_tangents(const EllipticFunction &f, std::uint64_t seed)
{
    if (f.degree() != 3) {
        throw Error(ErrorKind::not_degree_3, "branch_divisors_via_tangents", "function must have degree 3");
    }
    const Lattice &L = f.lattice();
    const Weierstrass W(L);
    const Cubic C = weierstrass_cubic(L);

    const complex beta = jacobi_sum(f.zeros(), L).rep;
    complex t = 0.0;
    std::array<double, 2> best{2.0, 2.0};
    for (const auto &s : torsion_points(L, 3)) {
        const complex cand = reduce_mod_lattice(beta / 3.0 + s.rep, L).rep;
        const auto key = L.coordinates(cand);
        if (key < best) {
            best = key;
            t = cand;
        }
    }

    // h = f o tau_t has zero and pole sums in the lattice, so both triples are collinear.
    auto embedded = [&](const Divisor &D) {
        const auto pts = D.translated(-t, L).expanded();
        return std::array<ProjPoint, 3>{embed_point(pts[0], W), embed_point(pts[1], W), embed_point(pts[2], W)};
    };
    const ProjLine zero_line = line_through_three(C, embedded(f.zeros()));
    const ProjLine pole_line = line_through_three(C, embedded(f.poles()));
    const ProjPoint q = intersection(zero_line, pole_line);

    std::vector<Divisor> out;
    for (const auto &e : lambda_fiber(C, q, seed).entries) {
        const complex u = unembed(e.point, C, W).rep;
        Divisor D;
        if (e.multiplicity == 1) {
            D.add(u + t, 2, L);
            D.add(-2.0 * u + t, 1, L, 1e-9);
        }
        else {
            D.add(u + t, 3, L);
        }
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Divisor &x) { return same_divisor(x, D, L, 1e-6); });
        if (!dup) {
            out.push_back(D.sorted(L));
        }
    }
    return out;
}

std::vector<Divisor> branch_divisors_direct(const EllipticFunction &f, const LocateOptions &opts)
{
    static constexpr const char *op = "branch_divisors_direct";
    if (f.degree() < 2) {
        throw Error(ErrorKind::invalid_argument, op, "function must have degree at least 2");
    }
    const Lattice &L = f.lattice();
    const Divisor crit = critical_points(f, opts);
    std::vector<Divisor> out;
    for (const auto &e : crit.entries()) {
        const complex zc = e.point.rep;
        const SphereValue c = f(zc);
        Divisor fiber;
        if (c.is_infinite()) {
            fiber = f.poles();
        }
        else {
            const complex cv = c.value();
            const TorusFunction base = f.as_torus_function();
            TorusFunction g;
            g.value = [base, cv](complex z) { return base.value(z) - cv; };
            g.log_derivative = [base, cv](complex z) {
                const complex v = base.value(z);
                return v * base.log_derivative(z) / (v - cv);
            };
            Divisor raw;
            try {
                raw = locate_zeros(g, L, opts);
            }
            catch (const Error &err) {
                throw Error(ErrorKind::derivative_location_failure, op, err.what());
            }
            // The multiple point of the fiber is the critical point itself, which is known more precisely.
            for (const auto &x : raw.entries()) {
                const bool at_critical = x.multiplicity > 1 && torus_distance(x.point.rep, zc, L) < 1e-4;
                fiber.add(at_critical ? zc : x.point.rep, x.multiplicity, L, 1e-9);
            }
        }
        fiber = fiber.sorted(L);
        const bool dup = std::any_of(out.begin(), out.end(), [&](const Divisor &x) { return same_divisor(x, fiber, L, 1e-6); });
        if (!dup) {
            out.push_back(fiber);
        }
    }
    return out;
}

int branching_order(const std::vector<Divisor> &divisors)
{
    int b = 0;
    for (const auto &d : divisors) {
        for (const auto &e : d.entries()) {
            b += e.multiplicity - 1;
        }
    }
    return b;
}

bool same_divisor_list(const std::vector<Divisor> &a, const std::vector<Divisor> &b, const Lattice &L, double tol)
{
    if (a.size() != b.size()) {
        return false;
    }
    std::vector<bool> used(b.size(), false);
    for (const auto &x : a) {
        bool found = false;
        for (std::size_t j = 0; j < b.size() && !found; ++j) {
            if (!used[j] && same_divisor(x, b[j], L, tol)) {
                used[j] = true;
                found = true;
            }
        }
        if (!found) {
            return false;
        }
    }
    return true;
}

Permutation::Permutation(std::vector<int> images) : m_images(std::move(images))
{
    std::vector<bool> seen(m_images.size(), false);
    for (const int i : m_images) {
        if (i < 0 || i >= static_cast<int>(m_images.size()) || seen[static_cast<std::size_t>(i)]) {
            throw Error(ErrorKind::invalid_argument, "permutation", "images do not form a bijection");
        }
        seen[static_cast<std::size_t>(i)] = true;
    }
}

Permutation Permutation::identity(int n)
{
    std::vector<int> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        v[static_cast<std::size_t>(i)] = i;
    }
    return Permutation(std::move(v));
}

Permutation Permutation::compose(const Permutation &other) const
{
    if (other.size() != size()) {
        throw Error(ErrorKind::invalid_argument, "permutation", "sizes differ");
    }
    std::vector<int> v(m_images.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[i] = m_images[static_cast<std::size_t>(other.m_images[i])];
    }
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const
{
    std::vector<int> v(m_images.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        v[static_cast<std::size_t>(m_images[i])] = static_cast<int>(i);
    }
    return Permutation(std::move(v));
}

bool Permutation::is_identity() const noexcept
{
    for (std::size_t i = 0; i < m_images.size(); ++i) {
        if (m_images[i] != static_cast<int>(i)) {
            return false;
        }
    }
    return true;
}

std::vector<int> Permutation::cycle_type() const
{
    std::vector<bool> seen(m_images.size(), false);
    std::vector<int> out;
    for (std::size_t i = 0; i < m_images.size(); ++i) {
        if (seen[i]) {
            continue;
        }
        int len = 0;
        for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(m_images[j])) {
            seen[j] = true;
            ++len;
        }
        out.push_back(len);
    }
    std::sort(out.rbegin(), out.rend());
    return out;
}

bool Permutation::is_transposition() const noexcept
{
    int moved = 0;
    for (std::size_t i = 0; i < m_images.size(); ++i) {
        if (m_images[i] != static_cast<int>(i)) {
            ++moved;
            if (m_images[static_cast<std::size_t>(m_images[i])] != static_cast<int>(i)) {
                return false;
            }
        }
    }
    return moved == 2;
}

Fiber continue_fiber(const Cubic &C, const LoopPath &path, const Fiber &start, const ContinuationOptions &opts)
{
    static constexpr const char *op = "continue_fiber";
    for (const auto &e : start.entries) {
        if (e.multiplicity != 1) {
            throw Error(ErrorKind::invalid_argument, op, "start fiber must consist of simple points");
        }
    }
    if (path.samples.empty()) {
        throw Error(ErrorKind::invalid_argument, op, "path has no samples");
    }
    std::vector<Vec3> pts;
    for (const auto &e : start.entries) {
        pts.push_back(e.point.coords());
    }
    const Tracker tracker(C, opts);
    const double min_step = std::ldexp(1.0, -opts.halving_limit);
    for (std::size_t i = 0; i + 1 < path.samples.size(); ++i) {
        const Vec3 &qa = path.samples[i].coords();
        Vec3 qb = path.samples[i + 1].coords();
        // Scale qb so the segment does not pass near the zero vector.
        const complex overlap = qb[0] * std::conj(qa[0]) + qb[1] * std::conj(qa[1]) + qb[2] * std::conj(qa[2]);
        if (std::abs(overlap) > 0.0) {
            const complex phase = std::conj(overlap) / std::abs(overlap);
            for (auto &c : qb) {
                c *= phase;
            }
        }
        const Vec3 dq{qb[0] - qa[0], qb[1] - qa[1], qb[2] - qa[2]};
        double s = 0.0, h = 1.0;
        while (s < 1.0) {
            const double sn = std::min(1.0, s + h);
            StepFailure why;
            if (tracker.step(pts, qa, dq, s, sn, why)) {
                s = sn;
                h = std::min(1.0, 2.0 * h);
                continue;
            }
            h *= 0.5;
            if (h < min_step) {
                if (why.collision) {
                    throw Error(ErrorKind::collision_unresolved, op, "tracked tangency points collided");
                }
                throw Error(ErrorKind::halving_limit, op, "step halving limit reached");
            }
        }
    }
    Fiber out{path.samples.back(), {}};
    for (const auto &p : pts) {
        out.entries.push_back({ProjPoint(p), 1});
    }
    return out;
}

Permutation loop_permutation(const Cubic &C, const LoopPath &loop, const Fiber &start, const ContinuationOptions &opts)
{
    const Fiber end = continue_fiber(C, loop, start, opts);
    const std::size_t n = start.entries.size();
    std::vector<int> images(n);
    for (std::size_t i = 0; i < n; ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < n; ++j) {
            const double d = projective_distance(end.entries[i].point, start.entries[j].point);
            if (d < best) {
                best = d;
                images[i] = static_cast<int>(j);
            }
        }
        if (best > 1e-6) {
            throw Error(ErrorKind::numerical_failure, "loop_permutation", "continued point does not return to the fiber");
        }
    }
    return Permutation(std::move(images));
}

LoopFamily default_loops(const Cubic &C, std::uint64_t seed, int density)
{
    static constexpr const char *op = "default_loops";
    const auto tangents = inflectional_tangents(C, seed);
    Rng rng(seed ^ 0x5bd1e995ULL);
    for (int attempt = 0; attempt < 500; ++attempt) {
        const Vec3 q0 = random_vec(rng);
        const Vec3 r = random_vec(rng);
        const ProjPoint base(q0);
        if (C.residual(base) < 1e-2) {
            continue;
        }
        std::vector<complex> special;
        bool ok = true;
        for (const auto &T : tangents) {
            const complex den = dot(T.dual().coords(), r);
            if (std::abs(den) < 1e-3) {
                ok = false;
                break;
            }
            special.push_back(-dot(T.dual().coords(), q0) / den);
        }
        if (!ok) {
            continue;
        }
        const Vec3 g0 = C.gradient(q0), gr = C.gradient(r);
        const std::array<complex, 4> cubic{C.value(q0), dot(g0, r), dot(gr, q0), C.value(r)};
        const auto roots = polynomial_roots(cubic);
        special.insert(special.end(), roots.begin(), roots.end());

        // Clearance of each special parameter from the others and from the base point.
        std::vector<double> clearance(special.size());
        for (std::size_t i = 0; i < special.size(); ++i) {
            double m = std::abs(special[i]);
            for (std::size_t j = 0; j < special.size(); ++j) {
                if (j != i) {
                    m = std::min(m, std::abs(special[i] - special[j]));
                }
            }
            clearance[i] = m;
        }
        if (*std::min_element(clearance.begin(), clearance.end()) < 1e-3) {
            continue;
        }
        std::vector<complex> ends(tangents.size());
        for (std::size_t k = 0; k < tangents.size() && ok; ++k) {
            const complex sk = special[k];
            const double rho = 0.3 * clearance[k];
            ends[k] = sk - rho * sk / std::abs(sk);
            for (std::size_t j = 0; j < special.size() && ok; ++j) {
                if (j != k && segment_distance(special[j], 0.0, ends[k]) < 0.4 * clearance[j]) {
                    ok = false;
                }
            }
        }
        if (!ok) {
            continue;
        }

        LoopFamily fam{base, {}, {}};
        for (std::size_t k = 0; k < tangents.size(); ++k) {
            const complex sk = special[k];
            const double rho = 0.3 * clearance[k];
            const complex e = ends[k];
            const int n_line = density * std::max(8, static_cast<int>(std::ceil(std::abs(e) / (0.25 * rho))));
            const int n_circle = density * 48;
            std::vector<complex> params;
            for (int i = 0; i <= n_line; ++i) {
                params.push_back(e * (static_cast<double>(i) / n_line));
            }
            const double a0 = std::arg(e - sk);
            for (int i = 1; i <= n_circle; ++i) {
                params.push_back(sk + std::polar(rho, a0 + 2.0 * pi * i / n_circle));
            }
            for (int i = n_line - 1; i >= 0; --i) {
                params.push_back(e * (static_cast<double>(i) / n_line));
            }
            LoopPath path;
            for (const complex s : params) {
                path.samples.emplace_back(affine_point(q0, r, s));
            }
            path.samples.back() = path.samples.front();
            fam.loops.push_back(std::move(path));
            fam.crossings.push_back(sk);
        }
        return fam;
    }
    throw Error(ErrorKind::numerical_failure, op, "could not place a clear affine line");
}

MonodromyReport monodromy_group(const Cubic &C, const ProjPoint &basepoint, const std::vector<LoopPath> &loops,
                                const ContinuationOptions &opts, std::uint64_t seed)
{
    const Fiber start = lambda_fiber(C, basepoint, seed);
    if (start.entries.size() != 6) {
        throw Error(ErrorKind::invalid_argument, "monodromy_group", "basepoint lies on the critical locus");
    }
    MonodromyReport rep{basepoint, {}, false, 0, false};
    for (const auto &loop : loops) {
        rep.generators.push_back(loop_permutation(C, loop, start, opts));
    }

    constexpr std::size_t cap = 720;
    std::set<Permutation> group{Permutation::identity(6)};
    std::vector<Permutation> frontier{Permutation::identity(6)};
    while (!frontier.empty() && group.size() <= cap) {
        std::vector<Permutation> next;
        for (const auto &g : frontier) {
            for (const auto &s : rep.generators) {
                const Permutation h = s.compose(g);
                if (group.insert(h).second) {
                    next.push_back(h);
                }
            }
        }
        frontier = std::move(next);
    }
    rep.order_capped = group.size() > cap;
    rep.group_order = static_cast<int>(std::min(group.size(), cap));

    std::vector<bool> reached(6, false);
    reached[0] = true;
    for (bool grew = true; grew;) {
        grew = false;
        for (const auto &s : rep.generators) {
            for (int i = 0; i < 6; ++i) {
                if (reached[static_cast<std::size_t>(i)] && !reached[static_cast<std::size_t>(s(i))]) {
                    reached[static_cast<std::size_t>(s(i))] = true;
                    grew = true;
                }
            }
        }
    }
    rep.transitive = std::all_of(reached.begin(), reached.end(), [](bool b) { return b; });
    return rep;
}

} // namespace elliptica
