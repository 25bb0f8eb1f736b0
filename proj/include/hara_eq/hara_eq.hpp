#pragma once

#include "hara_eq/certifier.hpp"
#include "hara_eq/economy.hpp"
#include "hara_eq/errors.hpp"
#include "hara_eq/exact.hpp"
#include "hara_eq/oracle.hpp"
#include "hara_eq/polynomial.hpp"
#include "hara_eq/quadrinomial.hpp"
#include "hara_eq/rational_approx.hpp"
#include "hara_eq/root_analysis.hpp"
#include "hara_eq/solver.hpp"
