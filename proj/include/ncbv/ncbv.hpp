#pragma once

#include "ncbv/scalar.hpp"
#include "ncbv/graded_space.hpp"
#include "ncbv/monomial.hpp"
#include "ncbv/element.hpp"
#include "ncbv/operators.hpp"
#include "ncbv/json_io.hpp"
#include "ncbv/ainfinity.hpp"
#include "ncbv/morita.hpp"
#include "ncbv/frobenius.hpp"
#include "ncbv/multitrace.hpp"
#include "ncbv/nu_polynomial.hpp"
#include "ncbv/random_elements.hpp"
#include "ncbv/gue.hpp"
#include "ncbv/wick.hpp"
#include "ncbv/harer_zagier.hpp"
#include "ncbv/monte_carlo.hpp"
#include "ncbv/verify.hpp"
