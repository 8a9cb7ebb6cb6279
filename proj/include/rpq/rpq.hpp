#pragma once

#include "rpq/algebra.hpp"
#include "rpq/axioms.hpp"
#include "rpq/corpus.hpp"
#include "rpq/decomposition.hpp"
#include "rpq/equations.hpp"
#include "rpq/error.hpp"
#include "rpq/io.hpp"
#include "rpq/model_search.hpp"
#include "rpq/products.hpp"
#include "rpq/rewriting.hpp"
#include "rpq/term.hpp"
#include "rpq/verify.hpp"
