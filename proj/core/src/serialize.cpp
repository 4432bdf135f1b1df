#include "elliptica/serialize.hpp"

#include "elliptica/error.hpp"

namespace elliptica {

namespace {

[[noreturn]] void malformed(const std::string &what)
{
    throw Error(ErrorKind::invalid_argument, "parse", what);
}

} // namespace

json to_json(complex z)
{
    return json::array({z.real(), z.imag()});
}

json to_json(const SphereValue &v)
{
    return v.is_infinite() ? json("inf") : to_json(v.value());
}

json to_json(const ProjPoint &p)
{
    return json::array({to_json(p[0]), to_json(p[1]), to_json(p[2])});
}

json to_json(const ProjLine &l)
{
    return to_json(l.dual());
}

json to_json(const Lattice &L)
{
    return {{"omega1", to_json(L.omega1())}, {"omega2", to_json(L.omega2())}};
}

json to_json(const Divisor &D, const Lattice &L)
{
    json out = json::array();
    const Divisor sorted = D.sorted(L);
    for (const auto &e : sorted.entries()) {
        out.push_back(json::array({e.point.rep.real(), e.point.rep.imag(), e.multiplicity}));
    }
    return out;
}

json to_json(const EllipticFunction &f)
{
    return {{"lattice", to_json(f.lattice())},
            {"zeros", to_json(f.zeros(), f.lattice())},
            {"poles", to_json(f.poles(), f.lattice())},
            {"scale", to_json(f.scale())}};
}

json to_json(const MobiusTransform &g)
{
    const auto n = g.normalized();
    return {{"a", to_json(n.a())}, {"b", to_json(n.b())}, {"c", to_json(n.c())}, {"d", to_json(n.d())}};
}

json to_json(const Fiber &f)
{
    json entries = json::array();
    for (const auto &e : f.entries) {
        entries.push_back({{"point", to_json(e.point)}, {"multiplicity", e.multiplicity}});
    }
    return {{"base", to_json(f.base)}, {"entries", entries}, {"total", f.total()}};
}

json to_json(const Permutation &p)
{
    json out = json::array();
    for (const int i : p.images()) {
        out.push_back(i + 1);
    }
    return out;
}

complex complex_from_json(const json &j)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        malformed("complex number must be [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

ProjPoint proj_point_from_json(const json &j)
{
    if (!j.is_array() || j.size() != 3) {
        malformed("projective point must have three coordinates");
    }
    return ProjPoint(complex_from_json(j[0]), complex_from_json(j[1]), complex_from_json(j[2]));
}

Lattice lattice_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("omega1") || !j.contains("omega2")) {
        malformed("lattice must have omega1 and omega2");
    }
    return make_lattice(complex_from_json(j["omega1"]), complex_from_json(j["omega2"]));
}

Divisor divisor_from_json(const json &j, const Lattice &L)
{
    if (!j.is_array()) {
        malformed("divisor must be a list of [re, im, mult]");
    }
    Divisor d;
    for (const auto &e : j) {
        if (!e.is_array() || e.size() != 3 || !e[0].is_number() || !e[1].is_number() || !e[2].is_number_integer()) {
            malformed("divisor entry must be [re, im, mult]");
        }
        d.add({e[0].get<double>(), e[1].get<double>()}, e[2].get<int>(), L);
    }
    return d;
}

EllipticFunction elliptic_function_from_json(const json &j)
{
    if (!j.is_object() || !j.contains("lattice") || !j.contains("zeros") || !j.contains("poles")) {
        malformed("elliptic function must have lattice, zeros and poles");
    }
    const Lattice L = lattice_from_json(j["lattice"]);
    auto f = build_from_divisors(divisor_from_json(j["zeros"], L), divisor_from_json(j["poles"], L), L);
    if (j.contains("scale")) {
        f = f.with_scale(complex_from_json(j["scale"]));
    }
    return f;
}

} // namespace elliptica
