// SPDX-License-Identifier: MIT
//
// Umbrella header: pulls in the whole library.  Individual translation units
// that only need one layer (say, the OPE kernel) should include that header
// directly; this one is for samples, tools, and quick experiments.

#pragma once

#include "freeva/rational.hpp"
#include "freeva/sha256.hpp"
#include "freeva/linalg.hpp"
#include "freeva/symbol.hpp"
#include "freeva/expr.hpp"
#include "freeva/ope.hpp"
#include "freeva/fock.hpp"
#include "freeva/parse.hpp"
#include "freeva/lie.hpp"
#include "freeva/model.hpp"
#include "freeva/commutant.hpp"
#include "freeva/golden.hpp"
#include "freeva/poly.hpp"
#include "freeva/weyl.hpp"
#include "freeva/zhu.hpp"
#include "freeva/modules.hpp"
