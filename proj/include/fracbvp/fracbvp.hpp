#pragma once

#include "fracbvp/error.hpp"
#include "fracbvp/specialfn.hpp"
#include "fracbvp/plaplacian.hpp"
#include "fracbvp/greens.hpp"
#include "fracbvp/quadrature.hpp"
#include "fracbvp/expr.hpp"
#include "fracbvp/problem.hpp"
#include "fracbvp/solver.hpp"
#include "fracbvp/report.hpp"
#include "fracbvp/theorems.hpp"
#include "fracbvp/verify.hpp"
#include "fracbvp/problem_file.hpp"
#include "fracbvp/fixtures.hpp"
