// Copyright 2026 The lptest Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lptest/common.hpp"
#include "lptest/core/combinatorics.hpp"
#include "lptest/core/constraint_set.hpp"
#include "lptest/core/instance.hpp"
#include "lptest/core/oracle.hpp"
#include "lptest/core/phi.hpp"
#include "lptest/generators/discovery.hpp"
#include "lptest/generators/families.hpp"
#include "lptest/geometry/annulus.hpp"
#include "lptest/geometry/intersecting_ball.hpp"
#include "lptest/geometry/meb.hpp"
#include "lptest/lp/feasibility_tester.hpp"
#include "lptest/lp/linear_program.hpp"
#include "lptest/lp/max_feasible_subset.hpp"
#include "lptest/random.hpp"
#include "lptest/rational.hpp"
#include "lptest/separability/feature_map.hpp"
#include "lptest/separability/multilabel.hpp"
#include "lptest/tester/meta_tester.hpp"
#include "lptest/tester/verdict.hpp"
