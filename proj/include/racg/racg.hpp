#pragma once

// Everything at once.

#include "banach.hpp"
#include "coloring.hpp"
#include "coxeter.hpp"
#include "dense_matrix.hpp"
#include "dual.hpp"
#include "errors.hpp"
#include "gauges.hpp"
#include "gram_rep.hpp"
#include "graph_io.hpp"
#include "hilbert.hpp"
#include "hpq.hpp"
#include "inertia.hpp"
#include "jacobi_eigen.hpp"
#include "normalization.hpp"
#include "parallel.hpp"
#include "polynomial.hpp"
#include "precise.hpp"
#include "qsqrt5.hpp"
#include "rational.hpp"
#include "report.hpp"
#include "verifier.hpp"
#include "vinberg.hpp"
