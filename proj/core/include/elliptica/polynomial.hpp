#pragma once

#include <array>
#include <complex>
#include <span>
#include <vector>

namespace elliptica {

using complex = std::complex<double>;

// Univariate helpers; coefficient vectors are ordered from the constant term up.

complex polynomial_eval(std::span<const complex> coeffs, complex z) noexcept;

// Roots via the eigenvalues of the companion matrix, each polished by a few
// Newton steps (kept only when they reduce the residual). Leading coefficients
// below 1e-14 of the largest are dropped first.
std::vector<complex> polynomial_roots(std::span<const complex> coeffs);

// Expands prod (z - r) into monic coefficients.
std::vector<complex> poly_from_roots(std::span<const complex> roots);

struct ValueCluster {
    complex value; // mean of the members
    int multiplicity;
};

// Single-linkage clustering of values closer than `radius`; output ordered by
// first appearance.
std::vector<ValueCluster> cluster_values(std::span<const complex> values, double radius);

/// Homogeneous polynomial of fixed degree in three variables (x, y, z).
class TernaryForm {
public:
    explicit TernaryForm(int degree = 0);

    int degree() const noexcept { return m_degree; }

    complex coefficient(int i, int j, int k) const;
    void set_coefficient(int i, int j, int k, complex c);
    void add_coefficient(int i, int j, int k, complex c);

    complex operator()(const std::array<complex, 3> &v) const noexcept;

    TernaryForm partial(int var) const;
    std::array<TernaryForm, 3> gradient() const;

    TernaryForm operator+(const TernaryForm &o) const;
    TernaryForm operator-(const TernaryForm &o) const;
    TernaryForm operator*(const TernaryForm &o) const;
    TernaryForm operator*(complex s) const;

    // (F o T)(v) = F(T v) for the 3x3 matrix T (row-major).
    TernaryForm compose_linear(const std::array<std::array<complex, 3>, 3> &T) const;

    // Largest coefficient modulus (used to build scale-free tolerances).
    double coefficient_norm() const noexcept;

    // Coefficients of y^0..y^d of the affine restriction (x fixed, z = 1).
    std::vector<complex> restrict_in_y(complex x) const;

    static TernaryForm linear(complex a, complex b, complex c);

private:
    std::size_t index(int i, int j) const noexcept;

    int m_degree;
    std::vector<complex> m_coeffs;
};

// Determinant of the Hessian matrix of F (a form of degree 3(d - 2)).
TernaryForm hessian_determinant(const TernaryForm &F);

} // namespace elliptica
