#pragma once

#include "qflow/algorithms.hpp"
#include "qflow/circuit.hpp"
#include "qflow/defects.hpp"
#include "qflow/error.hpp"
#include "qflow/field.hpp"
#include "qflow/independence.hpp"
#include "qflow/inner_product.hpp"
#include "qflow/io.hpp"
#include "qflow/polynomial.hpp"
#include "qflow/render.hpp"
#include "qflow/state.hpp"
