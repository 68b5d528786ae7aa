#pragma once

#include "qcycle/error.hpp"
#include "qcycle/families.hpp"
#include "qcycle/matrix.hpp"
#include "qcycle/operators.hpp"
#include "qcycle/random.hpp"
#include "qcycle/report.hpp"
#include "qcycle/scalar.hpp"
#include "qcycle/scc.hpp"
#include "qcycle/series.hpp"
#include "qcycle/solution.hpp"
#include "qcycle/tensor.hpp"
