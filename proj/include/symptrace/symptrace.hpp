#pragma once

#include "symptrace/fp.hpp"
#include "symptrace/modpoly.hpp"
#include "symptrace/intpoly.hpp"
#include "symptrace/parse.hpp"
#include "symptrace/fpmatrix.hpp"
#include "symptrace/symp_matrix.hpp"
#include "symptrace/group_catalog.hpp"
#include "symptrace/trace_classes.hpp"
#include "symptrace/group_report.hpp"
#include "symptrace/curve.hpp"
#include "symptrace/weil.hpp"
#include "symptrace/sieve.hpp"
#include "symptrace/cache.hpp"
#include "symptrace/tally.hpp"
#include "symptrace/bounds.hpp"
