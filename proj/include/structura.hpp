#pragma once

#include "structura/dsl.hpp"
#include "structura/echelon.hpp"
#include "structura/error.hpp"
#include "structura/evaluate.hpp"
#include "structura/extension.hpp"
#include "structura/finite_map.hpp"
#include "structura/formula.hpp"
#include "structura/limits.hpp"
#include "structura/model_search.hpp"
#include "structura/properties.hpp"
#include "structura/sets.hpp"
#include "structura/species.hpp"
#include "structura/transport.hpp"
#include "structura/transportability.hpp"
#include "structura/value.hpp"
