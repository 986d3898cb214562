#pragma once

#include "pipgns/algebra.hpp"
#include "pipgns/bweight.hpp"
#include "pipgns/corpus.hpp"
#include "pipgns/corpus_expected.hpp"
#include "pipgns/expr_parse.hpp"
#include "pipgns/gns.hpp"
#include "pipgns/model.hpp"
#include "pipgns/model_io.hpp"
#include "pipgns/operators.hpp"
#include "pipgns/pip_space.hpp"
#include "pipgns/products.hpp"
#include "pipgns/query.hpp"
#include "pipgns/verdicts.hpp"
