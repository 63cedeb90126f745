#pragma once

#include "dirconv/algebra.hpp"
#include "dirconv/certificate.hpp"
#include "dirconv/errors.hpp"
#include "dirconv/exact_complex.hpp"
#include "dirconv/norms.hpp"
#include "dirconv/polynomial.hpp"
#include "dirconv/scalar.hpp"
#include "dirconv/semigroup.hpp"
#include "dirconv/series.hpp"
#include "dirconv/solver.hpp"
#include "dirconv/system.hpp"
