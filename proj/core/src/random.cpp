#include "elliptica/random.hpp"

#include <cmath>

namespace elliptica {

std::complex<double> Rng::normal_complex()
{
    // 1 - u keeps the logarithm argument in (0, 1].
    const double u1 = 1.0 - uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * 3.141592653589793 * u2;
    return {r * std::cos(angle), r * std::sin(angle)};
}

std::complex<double> Rng::uniform_disc(double radius)
{
    const double r = radius * std::sqrt(uniform());
    const double angle = 2.0 * 3.141592653589793 * uniform();
    return {r * std::cos(angle), r * std::sin(angle)};
}

} // namespace elliptica
