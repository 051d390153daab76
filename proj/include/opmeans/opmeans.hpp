#pragma once

#include "opmeans/bounds.hpp"
#include "opmeans/complex_matrix.hpp"
#include "opmeans/eigen_jacobi.hpp"
#include "opmeans/errors.hpp"
#include "opmeans/functional_calculus.hpp"
#include "opmeans/kwong.hpp"
#include "opmeans/means.hpp"
#include "opmeans/norms.hpp"
#include "opmeans/order.hpp"
#include "opmeans/random_matrices.hpp"
#include "opmeans/report_json.hpp"
#include "opmeans/rng.hpp"
#include "opmeans/scalar_function.hpp"
#include "opmeans/tolerance.hpp"
#include "opmeans/verify.hpp"
#include "opmeans/version.hpp"
