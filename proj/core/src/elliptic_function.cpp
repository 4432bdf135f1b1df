#include "elliptica/elliptic_function.hpp"

#include "elliptica/error.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace elliptica {

namespace {

double pole_radius(const Lattice &L)
{
    return default_pole_threshold * std::abs(L.omega1());
}

// The points +-y with wp(y) = w, merged into a double point at a half-period.
void add_wp_fiber(Divisor &d, const Weierstrass &W, const SphereValue &w, complex t)
{
    const Lattice &L = W.lattice();
    complex y = W.inverse(w);
    for (const auto &h : torsion_points(L, 2)) {
        if (torus_distance(y, h.rep, L) < 1e-6 * std::abs(L.omega1())) {
            d.add(t + h.rep, 2, L);
            return;
        }
    }
    d.add(t + y, 1, L);
    d.add(t - y, 1, L);
}

EllipticFunction rescale_to(const EllipticFunction &f, const std::function<SphereValue(complex)> &target)
{
    const Lattice &L = f.lattice();
    for (const auto &[a, b] : {std::pair{0.31, 0.17}, std::pair{0.58, 0.43}, std::pair{0.12, 0.77}}) {
        const complex z0 = L.point(a, b);
        const SphereValue want = target(z0);
        const SphereValue have = f(z0);
        if (want.is_finite() && have.is_finite() && std::abs(have.value()) > 1e-200 && std::abs(want.value()) > 1e-200) {
            return f.with_scale(want.value() / have.value());
        }
    }
    throw Error(ErrorKind::numerical_failure, "build_from_divisors", "could not fix the scale constant");
}

} // namespace

EllipticFunction::EllipticFunction(Lattice L, Divisor zeros, Divisor poles, int trunc)
    : m_lattice(std::move(L)), m_zeros(std::move(zeros)), m_poles(std::move(poles)),
      m_theta(std::make_shared<const ThetaSeries>(m_lattice.tau(), trunc))
{
    m_zero_lifts = m_zeros.expanded();
    m_pole_lifts = m_poles.expanded();
    complex s = 0.0;
    for (const complex x : m_zero_lifts) {
        s += x;
    }
    for (const complex y : m_pole_lifts) {
        s -= y;
    }
    // Makes the lift sum vanish, which is what makes the quotient periodic.
    m_zero_lifts.front() -= s;
}

EllipticFunction EllipticFunction::with_scale(complex scale) const
{
    if (scale == 0.0 || !std::isfinite(scale.real()) || !std::isfinite(scale.imag())) {
        throw Error(ErrorKind::invalid_argument, "build_from_divisors", "scale must be a finite nonzero number");
    }
    EllipticFunction f = *this;
    f.m_scale = scale;
    return f;
}

complex EllipticFunction::shifted_arg(complex z, complex lift) const
{
    return (z - lift) / m_lattice.omega1() - 0.5 * (1.0 + m_lattice.tau());
}

complex EllipticFunction::quotient(complex z) const
{
    complex log_sum = 0.0;
    complex prod = 1.0;
    for (const complex x : m_zero_lifts) {
        const auto jet = m_theta->jet(shifted_arg(z, x), 0);
        log_sum += jet.log_scale;
        prod *= jet.d[0];
    }
    for (const complex y : m_pole_lifts) {
        const auto jet = m_theta->jet(shifted_arg(z, y), 0);
        log_sum -= jet.log_scale;
        prod /= jet.d[0];
    }
    return m_scale * std::exp(log_sum) * prod;
}

SphereValue EllipticFunction::operator()(complex z) const
{
    const complex r = reduce_mod_lattice(z, m_lattice).rep;
    const double eps = pole_radius(m_lattice);
    bool near_zero = false, near_pole = false;
    for (const auto &e : m_zeros.entries()) {
        near_zero = near_zero || torus_distance(r, e.point.rep, m_lattice) <= eps;
    }
    for (const auto &e : m_poles.entries()) {
        near_pole = near_pole || torus_distance(r, e.point.rep, m_lattice) <= eps;
    }
    if (near_zero && near_pole) {
        throw Error(ErrorKind::indeterminate_point, "eval_elliptic", "point is within threshold of both a zero and a pole");
    }
    if (near_pole) {
        return SphereValue::infinity();
    }
    if (near_zero) {
        return complex(0.0);
    }
    const complex v = quotient(r);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
        return SphereValue::infinity();
    }
    return v;
}

complex EllipticFunction::log_derivative(complex z) const
{
    complex s = 0.0;
    for (const complex x : m_zero_lifts) {
        s += m_theta->jet(shifted_arg(z, x), 1).log_d1();
    }
    for (const complex y : m_pole_lifts) {
        s -= m_theta->jet(shifted_arg(z, y), 1).log_d1();
    }
    return s / m_lattice.omega1();
}

std::array<complex, 2> EllipticFunction::log_derivative_jet(complex z) const
{
    complex s1 = 0.0, s2 = 0.0;
    for (const complex x : m_zero_lifts) {
        const auto jet = m_theta->jet(shifted_arg(z, x), 2);
        s1 += jet.log_d1();
        s2 += jet.log_d2();
    }
    for (const complex y : m_pole_lifts) {
        const auto jet = m_theta->jet(shifted_arg(z, y), 2);
        s1 -= jet.log_d1();
        s2 -= jet.log_d2();
    }
    const complex w = m_lattice.omega1();
    return {s1 / w, s2 / (w * w)};
}

TorusFunction EllipticFunction::as_torus_function() const
{
    TorusFunction t;
    const EllipticFunction self = *this;
    t.value = [self](complex z) { return self.quotient(reduce_mod_lattice(z, self.m_lattice).rep); };
    t.log_derivative = [self](complex z) { return self.log_derivative(z); };
    return t;
}

TorusFunction EllipticFunction::derivative_function() const
{
    TorusFunction t;
    const EllipticFunction self = *this;
    t.value = [self](complex z) {
        return self.quotient(reduce_mod_lattice(z, self.m_lattice).rep) * self.log_derivative(z);
    };
    t.log_derivative = [self](complex z) {
        const auto j = self.log_derivative_jet(z);
        return j[0] + j[1] / j[0];
    };
    return t;
}

EllipticFunction build_from_divisors(const Divisor &zeros, const Divisor &poles, const Lattice &L, int trunc,
                                     double abel_tol)
{
    static constexpr const char *op = "build_from_divisors";
    if (zeros.degree() != poles.degree()) {
        throw Error(ErrorKind::degree_mismatch, op, "zero and pole divisors have different degrees");
    }
    if (zeros.degree() < 1) {
        throw Error(ErrorKind::empty_divisor, op, "divisors must have degree at least 1");
    }
    for (const auto &x : zeros.entries()) {
        for (const auto &y : poles.entries()) {
            if (torus_distance(x.point.rep, y.point.rep, L) <= pole_radius(L)) {
                throw Error(ErrorKind::overlapping_divisors, op, "zero and pole divisors share a point");
            }
        }
    }
    const double defect = abel_defect(zeros, poles, L);
    if (defect > abel_tol * std::max(1.0, std::abs(L.omega1()))) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "sum of zeros minus poles is not a lattice point (defect " << defect << ")";
        throw Error(ErrorKind::abel_violation, op, msg.str());
    }
    return EllipticFunction(L, zeros, poles, trunc);
}

SphereValue eval_elliptic(const EllipticFunction &f, complex z)
{
    return f(z);
}

Divisor critical_points(const EllipticFunction &f, const LocateOptions &opts)
{
    Divisor crit;
    try {
        crit = locate_zeros(f.derivative_function(), f.lattice(), opts);
    }
    catch (const Error &e) {
        throw Error(ErrorKind::derivative_location_failure, "critical_points", e.what());
    }
    for (const auto &e : f.poles().entries()) {
        if (e.multiplicity > 1) {
            crit.add(e.point.rep, e.multiplicity - 1, f.lattice());
        }
    }
    return crit.sorted(f.lattice());
}

double decomposition_error(const EllipticFunction &f, const MobiusTransform &g, complex t, int n)
{
    const Lattice &L = f.lattice();
    const Weierstrass W(L);
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const complex z = L.point((i + 0.37) / n, (j + 0.61) / n);
            const SphereValue lhs = f(z);
            const SphereValue rhs = g(W(z - t).p);
            worst = std::max(worst, chordal_distance(lhs, rhs));
        }
    }
    return worst;
}

std::vector<Degree2Decomposition> decompose_degree2_all(const EllipticFunction &f, const LocateOptions &opts, double tol)
{
    static constexpr const char *op = "decompose_degree2";
    if (f.degree() != 2) {
        throw Error(ErrorKind::not_degree_2, op, "function must have degree 2");
    }
    const Lattice &L = f.lattice();
    const Weierstrass W(L);
    const complex b1 = 0.5 * L.omega1();
    const complex b2 = 0.5 * L.omega2();
    const std::array<SphereValue, 3> source{SphereValue::infinity(), W(b1).p, W(b2).p};

    std::vector<Degree2Decomposition> out;
    const Divisor crit = critical_points(f, opts);
    for (const auto &e : crit.entries()) {
        const complex t = e.point.rep;
        const std::array<SphereValue, 3> target{f(t), f(t + b1), f(t + b2)};
        try {
            const MobiusTransform g = MobiusTransform::from_three_points(source, target);
            const double err = decomposition_error(f, g, t);
            if (err <= tol) {
                out.push_back({g.normalized(), e.point, err});
            }
        }
        catch (const Error &) {
            // Coincident target values: this critical point cannot serve as t.
        }
    }
    std::stable_sort(out.begin(), out.end(), [&](const auto &a, const auto &b) {
        return L.distance_to_lattice(a.t.rep) < L.distance_to_lattice(b.t.rep);
    });
    return out;
}

Degree2Decomposition decompose_degree2(const EllipticFunction &f, const LocateOptions &opts, double tol)
{
    auto all = decompose_degree2_all(f, opts, tol);
    if (all.empty()) {
        throw Error(ErrorKind::reconstruction_failure, "decompose_degree2", "no critical point gives a decomposition within tolerance");
    }
    return all.front();
}

std::vector<StabilizerElement> wp_stabilizer(const Lattice &L)
{
    const Weierstrass W(L);
    const complex b1 = 0.5 * L.omega1();
    const complex b2 = 0.5 * L.omega2();
    const std::array<SphereValue, 3> source{SphereValue::infinity(), W(b1).p, W(b2).p};
    std::vector<StabilizerElement> out;
    for (const complex t : {complex(0.0), b1, b2, b1 + b2}) {
        const std::array<SphereValue, 3> target{W(t).p, W(t + b1).p, W(t + b2).p};
        out.push_back({MobiusTransform::from_three_points(source, target).normalized(), reduce_mod_lattice(t, L)});
    }
    return out;
}

EllipticFunction wp_as_elliptic(const Lattice &L)
{
    const Weierstrass W(L);
    Divisor zeros, poles;
    add_wp_fiber(zeros, W, complex(0.0), 0.0);
    poles.add(0.0, 2, L);
    const auto f = build_from_divisors(zeros, poles, L);
    return rescale_to(f, [&](complex z) { return W(z).p; });
}

EllipticFunction synthesize_degree2(const Lattice &L, const MobiusTransform &g, complex t)
{
    const Weierstrass W(L);
    const MobiusTransform ginv = g.inverse();
    Divisor zeros, poles;
    add_wp_fiber(zeros, W, ginv(complex(0.0)), t);
    add_wp_fiber(poles, W, ginv(SphereValue::infinity()), t);
    const auto f = build_from_divisors(zeros, poles, L);
    return rescale_to(f, [&](complex z) { return g(W(z - t).p); });
}

} // namespace elliptica
