#include "elliptica/polynomial.hpp"

#include "elliptica/error.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace elliptica {

complex polynomial_eval(std::span<const complex> coeffs, complex z) noexcept
{
    complex acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

namespace {

complex polynomial_derivative_eval(std::span<const complex> coeffs, complex z) noexcept
{
    complex acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 1;) {
        acc = acc * z + static_cast<double>(k) * coeffs[k];
    }
    return acc;
}

} // namespace

std::vector<complex> polynomial_roots(std::span<const complex> coeffs)
{
    double scale = 0.0;
    for (const auto &c : coeffs) {
        scale = std::max(scale, std::abs(c));
    }
    if (scale == 0.0) {
        throw Error(ErrorKind::invalid_argument, "polynomial_roots", "zero polynomial");
    }
    std::size_t n = coeffs.size();
    while (n > 1 && std::abs(coeffs[n - 1]) <= 1e-14 * scale) {
        --n;
    }
    const std::size_t deg = n - 1;
    if (deg == 0) {
        return {};
    }
    const std::span<const complex> trimmed = coeffs.first(n);
    std::vector<complex> roots;
    if (deg == 1) {
        roots.push_back(-trimmed[0] / trimmed[1]);
        return roots;
    }
    Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(deg), static_cast<Eigen::Index>(deg));
    const complex lead = trimmed[deg];
    for (std::size_t i = 0; i < deg; ++i) {
        companion(0, static_cast<Eigen::Index>(i)) = -trimmed[deg - 1 - i] / lead;
    }
    for (std::size_t i = 1; i < deg; ++i) {
        companion(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i - 1)) = 1.0;
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorKind::numerical_failure, "polynomial_roots", "companion eigenvalue iteration failed");
    }
    roots.reserve(deg);
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        complex r = solver.eigenvalues()(i);
        double res = std::abs(polynomial_eval(trimmed, r));
        for (int it = 0; it < 4; ++it) {
            const complex d = polynomial_derivative_eval(trimmed, r);
            if (d == 0.0) {
                break;
            }
            const complex cand = r - polynomial_eval(trimmed, r) / d;
            const double cres = std::abs(polynomial_eval(trimmed, cand));
            if (!(cres < res)) {
                break;
            }
            r = cand;
            res = cres;
        }
        roots.push_back(r);
    }
    return roots;
}

std::vector<complex> poly_from_roots(std::span<const complex> roots)
{
    std::vector<complex> c{1.0};
    for (const auto &r : roots) {
        std::vector<complex> next(c.size() + 1, 0.0);
        for (std::size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= r * c[i];
        }
        c = std::move(next);
    }
    return c;
}

std::vector<ValueCluster> cluster_values(std::span<const complex> values, double radius)
{
    const std::size_t n = values.size();
    std::vector<int> label(n, -1);
    int next = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (label[i] >= 0) {
            continue;
        }
        label[i] = next;
        // Breadth-first single linkage.
        std::vector<std::size_t> frontier{i};
        while (!frontier.empty()) {
            const std::size_t cur = frontier.back();
            frontier.pop_back();
            for (std::size_t j = 0; j < n; ++j) {
                if (label[j] < 0 && std::abs(values[j] - values[cur]) < radius) {
                    label[j] = next;
                    frontier.push_back(j);
                }
            }
        }
        ++next;
    }
    std::vector<ValueCluster> out(static_cast<std::size_t>(next), ValueCluster{0.0, 0});
    for (std::size_t i = 0; i < n; ++i) {
        auto &c = out[static_cast<std::size_t>(label[i])];
        c.value += values[i];
        ++c.multiplicity;
    }
    for (auto &c : out) {
        c.value /= static_cast<double>(c.multiplicity);
    }
    return out;
}

TernaryForm::TernaryForm(int degree) : m_degree(degree)
{
    if (degree < 0) {
        throw Error(ErrorKind::invalid_argument, "TernaryForm", "negative degree");
    }
    m_coeffs.assign(static_cast<std::size_t>((degree + 1) * (degree + 2) / 2), 0.0);
}

std::size_t TernaryForm::index(int i, int j) const noexcept
{
    return static_cast<std::size_t>(i * (m_degree + 1) - i * (i - 1) / 2 + j);
}

complex TernaryForm::coefficient(int i, int j, int k) const
{
    if (i < 0 || j < 0 || k < 0 || i + j + k != m_degree) {
        return 0.0;
    }
    return m_coeffs[index(i, j)];
}

void TernaryForm::set_coefficient(int i, int j, int k, complex c)
{
    if (i < 0 || j < 0 || k < 0 || i + j + k != m_degree) {
        throw Error(ErrorKind::invalid_argument, "TernaryForm", "monomial exponent does not match degree");
    }
    m_coeffs[index(i, j)] = c;
}

void TernaryForm::add_coefficient(int i, int j, int k, complex c)
{
    set_coefficient(i, j, k, coefficient(i, j, k) + c);
}

complex TernaryForm::operator()(const std::array<complex, 3> &v) const noexcept
{
    const int d = m_degree;
    std::array<std::array<complex, 16>, 3> pw{};
    for (int var = 0; var < 3; ++var) {
        pw[var][0] = 1.0;
        for (int p = 1; p <= d && p < 16; ++p) {
            pw[var][p] = pw[var][p - 1] * v[var];
        }
    }
    complex acc = 0.0;
    for (int i = 0; i <= d; ++i) {
        for (int j = 0; j <= d - i; ++j) {
            const complex c = m_coeffs[index(i, j)];
            if (c != 0.0) {
                acc += c * pw[0][i] * pw[1][j] * pw[2][d - i - j];
            }
        }
    }
    return acc;
}

TernaryForm TernaryForm::partial(int var) const
{
    if (m_degree == 0) {
        return TernaryForm(0);
    }
    TernaryForm out(m_degree - 1);
    for (int i = 0; i <= m_degree; ++i) {
        for (int j = 0; j <= m_degree - i; ++j) {
            const int k = m_degree - i - j;
            const complex c = m_coeffs[index(i, j)];
            if (c == 0.0) {
                continue;
            }
            std::array<int, 3> e{i, j, k};
            if (e[var] == 0) {
                continue;
            }
            const double f = e[var];
            --e[var];
            out.add_coefficient(e[0], e[1], e[2], f * c);
        }
    }
    return out;
}

std::array<TernaryForm, 3> TernaryForm::gradient() const
{
    return {partial(0), partial(1), partial(2)};
}

TernaryForm TernaryForm::operator+(const TernaryForm &o) const
{
    if (o.m_degree != m_degree) {
        throw Error(ErrorKind::invalid_argument, "TernaryForm", "degree mismatch in sum");
    }
    TernaryForm out = *this;
    for (std::size_t i = 0; i < m_coeffs.size(); ++i) {
        out.m_coeffs[i] += o.m_coeffs[i];
    }
    return out;
}

TernaryForm TernaryForm::operator-(const TernaryForm &o) const
{
    return *this + o * complex(-1.0);
}

TernaryForm TernaryForm::operator*(complex s) const
{
    TernaryForm out = *this;
    for (auto &c : out.m_coeffs) {
        c *= s;
    }
    return out;
}

TernaryForm TernaryForm::operator*(const TernaryForm &o) const
{
    TernaryForm out(m_degree + o.m_degree);
    for (int i = 0; i <= m_degree; ++i) {
        for (int j = 0; j <= m_degree - i; ++j) {
            const complex c = m_coeffs[index(i, j)];
            if (c == 0.0) {
                continue;
            }
            for (int p = 0; p <= o.m_degree; ++p) {
                for (int q = 0; q <= o.m_degree - p; ++q) {
                    const complex e = o.m_coeffs[o.index(p, q)];
                    if (e == 0.0) {
                        continue;
                    }
                    const int k = (m_degree - i - j) + (o.m_degree - p - q);
                    out.add_coefficient(i + p, j + q, k, c * e);
                }
            }
        }
    }
    return out;
}

TernaryForm TernaryForm::linear(complex a, complex b, complex c)
{
    TernaryForm out(1);
    out.set_coefficient(1, 0, 0, a);
    out.set_coefficient(0, 1, 0, b);
    out.set_coefficient(0, 0, 1, c);
    return out;
}

TernaryForm TernaryForm::compose_linear(const std::array<std::array<complex, 3>, 3> &T) const
{
    // Variable v_r becomes the linear form sum_c T[r][c] v_c.
    std::array<TernaryForm, 3> lin{TernaryForm::linear(T[0][0], T[0][1], T[0][2]),
                                   TernaryForm::linear(T[1][0], T[1][1], T[1][2]),
                                   TernaryForm::linear(T[2][0], T[2][1], T[2][2])};
    std::array<std::vector<TernaryForm>, 3> pw;
    for (int var = 0; var < 3; ++var) {
        TernaryForm one(0);
        one.set_coefficient(0, 0, 0, 1.0);
        pw[var].push_back(one);
        for (int p = 1; p <= m_degree; ++p) {
            pw[var].push_back(pw[var].back() * lin[var]);
        }
    }
    TernaryForm out(m_degree);
    for (int i = 0; i <= m_degree; ++i) {
        for (int j = 0; j <= m_degree - i; ++j) {
            const complex c = m_coeffs[index(i, j)];
            if (c == 0.0) {
                continue;
            }
            out = out + (pw[0][i] * pw[1][j] * pw[2][m_degree - i - j]) * c;
        }
    }
    return out;
}

double TernaryForm::coefficient_norm() const noexcept
{
    double m = 0.0;
    for (const auto &c : m_coeffs) {
        m = std::max(m, std::abs(c));
    }
    return m;
}

std::vector<complex> TernaryForm::restrict_in_y(complex x) const
{
    std::vector<complex> out(static_cast<std::size_t>(m_degree + 1), 0.0);
    for (int i = 0; i <= m_degree; ++i) {
        complex xi = std::pow(x, i);
        for (int j = 0; j <= m_degree - i; ++j) {
            out[static_cast<std::size_t>(j)] += m_coeffs[index(i, j)] * xi;
        }
    }
    return out;
}

TernaryForm hessian_determinant(const TernaryForm &F)
{
    const auto g = F.gradient();
    std::array<std::array<TernaryForm, 3>, 3> H{{{g[0].partial(0), g[0].partial(1), g[0].partial(2)},
                                                 {g[1].partial(0), g[1].partial(1), g[1].partial(2)},
                                                 {g[2].partial(0), g[2].partial(1), g[2].partial(2)}}};
    return H[0][0] * (H[1][1] * H[2][2] - H[1][2] * H[2][1]) - H[0][1] * (H[1][0] * H[2][2] - H[1][2] * H[2][0]) +
           H[0][2] * (H[1][0] * H[2][1] - H[1][1] * H[2][0]);
}

} // namespace elliptica
