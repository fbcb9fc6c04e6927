#pragma once

// Everything: fields and polynomials, graphs, metrics, symmetry, claims,
// reports and the result cache (the cache needs OpenSSL::Crypto).

#include "adgraph/field.hpp"
#include "adgraph/poly.hpp"
#include "adgraph/poly_parse.hpp"
#include "adgraph/rng.hpp"
#include "adgraph/parallel.hpp"
#include "adgraph/graph.hpp"
#include "adgraph/graph_spec.hpp"
#include "adgraph/metrics.hpp"
#include "adgraph/symmetry.hpp"
#include "adgraph/aut_oracle.hpp"
#include "adgraph/verify.hpp"
#include "adgraph/report.hpp"
#include "adgraph/cache.hpp"
