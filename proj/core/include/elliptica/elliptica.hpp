#pragma once

#include "elliptica/covering.hpp"
#include "elliptica/cubic.hpp"
#include "elliptica/divisor.hpp"
#include "elliptica/elliptic_function.hpp"
#include "elliptica/error.hpp"
#include "elliptica/hesse.hpp"
#include "elliptica/lattice.hpp"
#include "elliptica/polynomial.hpp"
#include "elliptica/projective.hpp"
#include "elliptica/random.hpp"
#include "elliptica/serialize.hpp"
#include "elliptica/sphere.hpp"
#include "elliptica/theta.hpp"
#include "elliptica/weierstrass.hpp"
