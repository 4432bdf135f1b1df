#pragma once

#include "elliptica/covering.hpp"
#include "elliptica/elliptic_function.hpp"
#include "elliptica/hesse.hpp"

#include <nlohmann/json.hpp>

namespace elliptica {

using json = nlohmann::json;

json to_json(complex z);
json to_json(const SphereValue &v); // [re, im] or "inf"
json to_json(const ProjPoint &p);   // [[re, im] x 3]
json to_json(const ProjLine &l);
json to_json(const Lattice &L);     // {omega1, omega2}
json to_json(const Divisor &D, const Lattice &L); // [[re, im, mult], ...]
json to_json(const EllipticFunction &f);
json to_json(const MobiusTransform &g);
json to_json(const Fiber &f);
json to_json(const Permutation &p); // 1-based images

// Parsers throw invalid_argument on malformed input.
complex complex_from_json(const json &j);
ProjPoint proj_point_from_json(const json &j);
Lattice lattice_from_json(const json &j);
Divisor divisor_from_json(const json &j, const Lattice &L);
EllipticFunction elliptic_function_from_json(const json &j);

} // namespace elliptica
