// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "gencirc/core.hpp"
#include "gencirc/shift_group.hpp"
#include "gencirc/dense.hpp"
#include "gencirc/genperm_matrix.hpp"
#include "gencirc/circulant.hpp"
#include "gencirc/spectral.hpp"
#include "gencirc/verify.hpp"
#include "gencirc/instance_io.hpp"
