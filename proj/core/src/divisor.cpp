#include "elliptica/divisor.hpp"

#include "elliptica/error.hpp"
#include "elliptica/polynomial.hpp"
#include "elliptica/random.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace elliptica {

namespace {

using MatrixXc = Eigen::MatrixXcd;
using VectorXc = Eigen::VectorXcd;

constexpr int hankel_size = 6;
constexpr int moment_count = 2 * hankel_size;
constexpr int gauss_order = 16;
constexpr int max_refine_depth = 4;

struct GaussRule {
    std::array<double, gauss_order> nodes;   // on [0, 1]
    std::array<double, gauss_order> weights;
};

const GaussRule &gauss_rule()
{
    static const GaussRule rule = [] {
        GaussRule r{};
        const int n = gauss_order;
        for (int i = 0; i < n; ++i) {
            double x = std::cos(pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) {
                    break;
                }
            }
            r.nodes[static_cast<std::size_t>(i)] = 0.5 * (1.0 - x);
            r.weights[static_cast<std::size_t>(i)] = 1.0 / ((1.0 - x * x) * dp * dp);
        }
        return r;
    }();
    return rule;
}

struct Cell {
    double a0, b0, da, db;
};

struct Node {
    complex z;
    int weight;
};

class CellSolver {
public:
    CellSolver(const TorusFunction &f, const Lattice &L, const LocateOptions &opts) : m_f(f), m_L(L), m_opts(opts) {}

    // Appends the signed node list of the cell; false when the boundary
    // quadrature or the moment analysis is unreliable.
    bool solve(const Cell &cell, int depth, std::vector<Node> &out) const
    {
        const complex center = m_L.point(cell.a0 + 0.5 * cell.da, cell.b0 + 0.5 * cell.db);
        double h = 0.0;
        for (const auto &v : vertices(cell)) {
            h = std::max(h, std::abs(v - center));
        }

        std::vector<complex> coarse, fine;
        moments(cell, center, h, m_opts.panels, coarse);
        moments(cell, center, h, 2 * m_opts.panels, fine);
        if (!agree(coarse, fine)) {
            std::vector<complex> finer;
            moments(cell, center, h, 4 * m_opts.panels, finer);
            if (!agree(fine, finer)) {
                return false;
            }
            fine = std::move(finer);
        }

        const int k = hankel_rank(fine);
        if (k == 0) {
            return true;
        }
        if (k >= hankel_size - 2 || std::abs(std::round(fine[0].real())) > 3.0) {
            return depth < max_refine_depth && refine(cell, depth, out);
        }

        std::vector<Node> local;
        if (!prony(fine, k, local)) {
            return depth < max_refine_depth && refine(cell, depth, out);
        }
        const bool pure = std::all_of(local.begin(), local.end(), [](const Node &n) { return n.weight > 0; });
        if (pure) {
            local = newton_nodes(fine, h);
        }
        for (auto &n : local) {
            const complex z = polish(center + h * n.z, n.weight, h);
            const auto [a, b] = m_L.coordinates(z);
            const double slack = 1e-6;
            if (a < cell.a0 - slack * cell.da || a > cell.a0 + (1 + slack) * cell.da || b < cell.b0 - slack * cell.db ||
                b > cell.b0 + (1 + slack) * cell.db) {
                // A node outside the cell means the local analysis is wrong.
                return depth < max_refine_depth && refine(cell, depth, out);
            }
            out.push_back({z, n.weight});
        }
        return true;
    }

private:
    std::array<complex, 4> vertices(const Cell &c) const
    {
        return {m_L.point(c.a0, c.b0), m_L.point(c.a0 + c.da, c.b0), m_L.point(c.a0 + c.da, c.b0 + c.db),
                m_L.point(c.a0, c.b0 + c.db)};
    }

    bool refine(const Cell &c, int depth, std::vector<Node> &out) const
    {
        const double ha = 0.5 * c.da, hb = 0.5 * c.db;
        std::vector<Node> acc;
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                if (!solve({c.a0 + i * ha, c.b0 + j * hb, ha, hb}, depth + 1, acc)) {
                    return false;
                }
            }
        }
        out.insert(out.end(), acc.begin(), acc.end());
        return true;
    }

    complex log_derivative(complex z, double h) const { return m_f.log_derivative_at(z, 1e-6 * h); }

    void moments(const Cell &cell, complex center, double h, int panels, std::vector<complex> &m) const
    {
        const auto &rule = gauss_rule();
        const auto v = vertices(cell);
        m.assign(moment_count, 0.0);
        for (int e = 0; e < 4; ++e) {
            const complex p0 = v[static_cast<std::size_t>(e)];
            const complex edge = v[static_cast<std::size_t>((e + 1) % 4)] - p0;
            for (int panel = 0; panel < panels; ++panel) {
                for (int q = 0; q < gauss_order; ++q) {
                    const double s = (panel + rule.nodes[static_cast<std::size_t>(q)]) / panels;
                    const complex z = p0 + s * edge;
                    const complex w = (z - center) / h;
                    complex term = log_derivative(z, h) * edge * (rule.weights[static_cast<std::size_t>(q)] / panels);
                    for (auto &mp : m) {
                        mp += term;
                        term *= w;
                    }
                }
            }
        }
        for (auto &mp : m) {
            mp /= complex(0.0, 2.0 * pi);
        }
    }

    static bool agree(const std::vector<complex> &a, const std::vector<complex> &b)
    {
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (std::abs(a[i] - b[i]) > 1e-9 * (1.0 + std::abs(b[i]))) {
                return false;
            }
        }
        return std::abs(b[0] - std::round(b[0].real())) < 1e-6;
    }

    static int hankel_rank(const std::vector<complex> &m)
    {
        MatrixXc H(hankel_size, hankel_size);
        for (int i = 0; i < hankel_size; ++i) {
            for (int j = 0; j < hankel_size; ++j) {
                H(i, j) = m[static_cast<std::size_t>(i + j)];
            }
        }
        const Eigen::JacobiSVD<MatrixXc> svd(H);
        const auto &sv = svd.singularValues();
        int r = 0;
        for (int i = 0; i < sv.size(); ++i) {
            if (sv(i) > 1e-8) {
                ++r;
            }
        }
        return r;
    }

    // Nodes and integer weights of the signed measure with the given moments.
    static bool prony(const std::vector<complex> &m, int k, std::vector<Node> &out)
    {
        MatrixXc H0(k, k), H1(k, k);
        for (int i = 0; i < k; ++i) {
            for (int j = 0; j < k; ++j) {
                H0(i, j) = m[static_cast<std::size_t>(i + j)];
                H1(i, j) = m[static_cast<std::size_t>(i + j + 1)];
            }
        }
        const MatrixXc pencil = H0.fullPivLu().solve(H1);
        const Eigen::ComplexEigenSolver<MatrixXc> eig(pencil);
        if (eig.info() != Eigen::Success) {
            return false;
        }
        const VectorXc x = eig.eigenvalues();
        MatrixXc V(moment_count, k);
        VectorXc rhs(moment_count);
        for (int p = 0; p < moment_count; ++p) {
            rhs(p) = m[static_cast<std::size_t>(p)];
            for (int j = 0; j < k; ++j) {
                V(p, j) = std::pow(x(j), p);
            }
        }
        const VectorXc w = V.colPivHouseholderQr().solve(rhs);
        for (int j = 0; j < k; ++j) {
            const double rw = std::round(w(j).real());
            if (rw == 0.0 || std::abs(w(j) - rw) > 0.1 || std::abs(x(j)) > 1.5) {
                return false;
            }
            out.push_back({x(j), static_cast<int>(rw)});
        }
        return true;
    }

    // Pure-zero cell: Newton's identities, polynomial roots, clustering.
    std::vector<Node> newton_nodes(const std::vector<complex> &m, double h) const
    {
        const int count = static_cast<int>(std::round(m[0].real()));
        const auto s = newton_elementary(std::span<const complex>(m.data() + 1, static_cast<std::size_t>(count)), count);
        const auto poly = polynomial_from_elementary(s);
        const auto roots = polynomial_roots(poly);
        const auto clusters = cluster_values(roots, m_opts.tol / h);
        std::vector<Node> out;
        for (const auto &c : clusters) {
            out.push_back({c.value, c.multiplicity});
        }
        return out;
    }

    complex polish(complex z, int weight, double h) const
    {
        const complex start = z;
        const double scale = std::abs(m_L.omega1());
        for (int it = 0; it < 30; ++it) {
            const complex lz = log_derivative(z, h);
            if (!std::isfinite(lz.real()) || !std::isfinite(lz.imag()) || lz == 0.0) {
                break;
            }
            const complex step = -static_cast<double>(weight) / lz;
            if (std::abs(z + step - start) > 1e-3 * h) {
                return start;
            }
            z += step;
            if (std::abs(step) < 1e-15 * scale) {
                break;
            }
        }
        return z;
    }

    const TorusFunction &m_f;
    const Lattice &m_L;
    const LocateOptions &m_opts;
};

// Signed node list of an elliptic function over one fundamental domain.
std::vector<Node> signed_nodes(const TorusFunction &f, const Lattice &L, const LocateOptions &opts,
                               const char *operation)
{
    if (opts.grid < 1) {
        throw Error(ErrorKind::invalid_argument, operation, "grid must be positive");
    }
    Rng rng(opts.seed);
    const CellSolver solver(f, L, opts);
    const double step = 1.0 / opts.grid;
    for (int attempt = 0; attempt <= opts.max_shifts; ++attempt) {
        const double oa = rng.uniform() * step;
        const double ob = rng.uniform() * step;
        std::vector<Node> nodes;
        bool ok = true;
        for (int i = 0; i < opts.grid && ok; ++i) {
            for (int j = 0; j < opts.grid && ok; ++j) {
                ok = solver.solve({oa + i * step, ob + j * step, step, step}, 0, nodes);
            }
        }
        if (!ok) {
            continue;
        }
        int total = 0;
        for (const auto &n : nodes) {
            total += n.weight;
        }
        if (total != 0 || nodes.empty()) {
            // Zeros and poles of an elliptic function balance; anything else is numerical.
            continue;
        }
        return nodes;
    }
    throw Error(ErrorKind::subdivision_failure, operation, "no reliable cell subdivision after the maximum number of grid shifts");
}

} // namespace

Divisor Divisor::from_points(std::span<const complex> points, const Lattice &L, double merge_tol)
{
    Divisor d;
    for (const complex z : points) {
        d.add(z, 1, L, merge_tol);
    }
    return d;
}

void Divisor::add(complex z, int multiplicity, const Lattice &L, double merge_tol)
{
    if (multiplicity < 1) {
        throw Error(ErrorKind::invalid_argument, "divisor", "multiplicities must be positive");
    }
    const TorusPoint p = reduce_mod_lattice(z, L);
    for (auto &e : m_entries) {
        if (torus_distance(e.point.rep, p.rep, L) <= merge_tol) {
            e.multiplicity += multiplicity;
            return;
        }
    }
    m_entries.push_back({p, multiplicity});
}

int Divisor::degree() const noexcept
{
    int d = 0;
    for (const auto &e : m_entries) {
        d += e.multiplicity;
    }
    return d;
}

std::vector<complex> Divisor::expanded() const
{
    std::vector<complex> out;
    for (const auto &e : m_entries) {
        out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.point.rep);
    }
    return out;
}

Divisor Divisor::translated(complex t, const Lattice &L) const
{
    Divisor d;
    for (const auto &e : m_entries) {
        d.add(e.point.rep + t, e.multiplicity, L);
    }
    return d;
}

Divisor Divisor::sorted(const Lattice &L) const
{
    Divisor d = *this;
    std::sort(d.m_entries.begin(), d.m_entries.end(), [&](const DivisorEntry &x, const DivisorEntry &y) {
        return L.coordinates(x.point.rep) < L.coordinates(y.point.rep);
    });
    return d;
}

double divisor_distance(const Divisor &a, const Divisor &b, const Lattice &L)
{
    const auto pa = a.expanded();
    const auto pb = b.expanded();
    if (pa.size() != pb.size()) {
        return std::numeric_limits<double>::infinity();
    }
    const std::size_t n = pa.size();
    if (n == 0) {
        return 0.0;
    }
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    if (n > 8) {
        // Greedy matching for large degrees.
        std::vector<bool> used(n, false);
        double worst = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double best = std::numeric_limits<double>::infinity();
            std::size_t arg = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (!used[j]) {
                    const double d = torus_distance(pa[i], pb[j], L);
                    if (d < best) {
                        best = d;
                        arg = j;
                    }
                }
            }
            used[arg] = true;
            worst = std::max(worst, best);
        }
        return worst;
    }
    std::vector<std::vector<double>> dist(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            dist[i][j] = torus_distance(pa[i], pb[j], L);
        }
    }
    double best = std::numeric_limits<double>::infinity();
    do {
        double worst = 0.0;
        for (std::size_t i = 0; i < n && worst < best; ++i) {
            worst = std::max(worst, dist[i][perm[i]]);
        }
        best = std::min(best, worst);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

bool same_divisor(const Divisor &a, const Divisor &b, const Lattice &L, double tol)
{
    if (a.degree() != b.degree()) {
        return false;
    }
    std::vector<int> ma, mb;
    for (const auto &e : a.entries()) {
        ma.push_back(e.multiplicity);
    }
    for (const auto &e : b.entries()) {
        mb.push_back(e.multiplicity);
    }
    std::sort(ma.begin(), ma.end());
    std::sort(mb.begin(), mb.end());
    return ma == mb && divisor_distance(a, b, L) <= tol;
}

TorusPoint jacobi_sum(const Divisor &D, const Lattice &L)
{
    if (D.empty()) {
        throw Error(ErrorKind::empty_divisor, "jacobi_sum", "divisor has degree 0");
    }
    complex s = 0.0;
    for (const auto &e : D.entries()) {
        s += static_cast<double>(e.multiplicity) * e.point.rep;
    }
    return reduce_mod_lattice(s, L);
}

double abel_defect(const Divisor &zeros, const Divisor &poles, const Lattice &L)
{
    if (zeros.degree() != poles.degree()) {
        throw Error(ErrorKind::degree_mismatch, "abel_defect", "zero and pole divisors have different degrees");
    }
    complex s = 0.0;
    for (const auto &e : zeros.entries()) {
        s += static_cast<double>(e.multiplicity) * e.point.rep;
    }
    for (const auto &e : poles.entries()) {
        s -= static_cast<double>(e.multiplicity) * e.point.rep;
    }
    return L.distance_to_lattice(s);
}

complex TorusFunction::log_derivative_at(complex z, double step) const
{
    if (log_derivative) {
        return log_derivative(z);
    }
    const complex up = value(z + step);
    const complex down = value(z - step);
    return (up - down) / (2.0 * step * value(z));
}

TorusFunction TorusFunction::reciprocal() const
{
    TorusFunction r;
    auto v = value;
    r.value = [v](complex z) { return 1.0 / v(z); };
    if (log_derivative) {
        auto ld = log_derivative;
        r.log_derivative = [ld](complex z) { return -ld(z); };
    }
    return r;
}

PowerSums contour_power_sums(const TorusFunction &f, complex center, double radius, int kmax, const Lattice &L)
{
    static constexpr const char *op = "contour_power_sums";
    if (kmax < 0 || !(radius > 0.0)) {
        throw Error(ErrorKind::invalid_argument, op, "kmax must be nonnegative and radius positive");
    }
    const double step = 1e-6 * radius;
    auto evaluate = [&](int n, PowerSums &out) {
        std::vector<double> moduli(static_cast<std::size_t>(n));
        out.values.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
        for (int j = 0; j < n; ++j) {
            const complex w = std::polar(radius, 2.0 * pi * j / n);
            const complex z = center + w;
            moduli[static_cast<std::size_t>(j)] = std::abs(f.value(z));
            complex term = f.log_derivative_at(z, step) * w / static_cast<double>(n);
            for (auto &v : out.values) {
                v += term;
                term *= w;
            }
        }
        std::vector<double> sorted = moduli;
        std::nth_element(sorted.begin(), sorted.begin() + n / 2, sorted.end());
        const double median = sorted[static_cast<std::size_t>(n / 2)];
        const auto [lo, hi] = std::minmax_element(moduli.begin(), moduli.end());
        if (!(*lo > 1e-8 * median) || !(*hi < 1e8 * median)) {
            throw Error(ErrorKind::contour_too_close, op, "a zero or pole lies on or too near the contour");
        }
        out.nodes = n;
        const double c = out.values[0].real();
        if (std::abs(out.values[0] - std::round(c)) > 0.1) {
            return false;
        }
        out.count = static_cast<int>(std::round(c));
        return true;
    };
    (void)L;

    PowerSums prev;
    bool prev_ok = evaluate(256, prev);
    for (int n = 512; n <= 16384; n *= 2) {
        PowerSums cur;
        const bool ok = evaluate(n, cur);
        if (ok && prev_ok && cur.count == prev.count) {
            return cur;
        }
        prev = std::move(cur);
        prev_ok = ok;
    }
    throw Error(ErrorKind::non_integer_count, op, "enclosed count is not an integer within 0.1");
}

std::vector<complex> newton_elementary(std::span<const complex> p, int k)
{
    if (k < 0 || p.size() < static_cast<std::size_t>(k)) {
        throw Error(ErrorKind::insufficient_sums, "newton_elementary", "need power sums p_1..p_k");
    }
    std::vector<complex> s(static_cast<std::size_t>(k) + 1, 0.0);
    s[0] = 1.0;
    for (int r = 1; r <= k; ++r) {
        complex acc = 0.0;
        double sign = 1.0;
        for (int j = 1; j <= r; ++j) {
            acc += sign * s[static_cast<std::size_t>(r - j)] * p[static_cast<std::size_t>(j - 1)];
            sign = -sign;
        }
        s[static_cast<std::size_t>(r)] = acc / static_cast<double>(r);
    }
    s.erase(s.begin());
    return s;
}

std::vector<complex> newton_elementary(const PowerSums &sums)
{
    const int k = sums.count;
    if (sums.values.size() < static_cast<std::size_t>(k) + 1) {
        throw Error(ErrorKind::insufficient_sums, "newton_elementary", "need power sums p_1..p_k");
    }
    return newton_elementary(std::span<const complex>(sums.values.data() + 1, static_cast<std::size_t>(k)), k);
}

std::vector<complex> polynomial_from_elementary(std::span<const complex> s)
{
    const std::size_t k = s.size();
    std::vector<complex> c(k + 1);
    c[k] = 1.0;
    double sign = -1.0;
    for (std::size_t j = 1; j <= k; ++j) {
        c[k - j] = sign * s[j - 1];
        sign = -sign;
    }
    return c;
}

Divisor locate_zeros(const TorusFunction &f, const Lattice &L, const LocateOptions &opts)
{
    const auto nodes = signed_nodes(f, L, opts, "locate_zeros");
    Divisor d;
    for (const auto &n : nodes) {
        if (n.weight > 0) {
            d.add(n.z, n.weight, L, opts.tol);
        }
    }
    return d.sorted(L);
}

DivisorPair locate_divisors(const TorusFunction &f, const Lattice &L, const LocateOptions &opts)
{
    return {locate_zeros(f, L, opts), locate_zeros(f.reciprocal(), L, opts)};
}

} // namespace elliptica
