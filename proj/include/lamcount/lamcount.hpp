#pragma once

// Exact enumeration of De Bruijn lambda terms under parameterized size
// weights, dominant-singularity location, and rigorous asymptotic-constant
// bounds for the m-open term counts.

#include "lamcount/bounds.hpp"
#include "lamcount/enumeration.hpp"
#include "lamcount/polynomial.hpp"
#include "lamcount/real.hpp"
#include "lamcount/report.hpp"
#include "lamcount/series.hpp"
#include "lamcount/singularity.hpp"
#include "lamcount/size_model.hpp"
#include "lamcount/term.hpp"
