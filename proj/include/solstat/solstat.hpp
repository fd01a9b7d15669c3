// SPDX-License-Identifier: Apache-2.0
//
// Umbrella header.
#pragma once

#include "solstat/cli.hpp"
#include "solstat/connection.hpp"
#include "solstat/eta.hpp"
#include "solstat/expr.hpp"
#include "solstat/fields.hpp"
#include "solstat/geometry.hpp"
#include "solstat/integrate.hpp"
#include "solstat/jet.hpp"
#include "solstat/manifold.hpp"
#include "solstat/report.hpp"
#include "solstat/soliton.hpp"
#include "solstat/suites.hpp"
#include "solstat/tensor.hpp"
