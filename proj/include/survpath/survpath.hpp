// Copyright (c) survpath contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "survpath/bench.hpp"
#include "survpath/errors.hpp"
#include "survpath/instances.hpp"
#include "survpath/io.hpp"
#include "survpath/lp.hpp"
#include "survpath/mfsp.hpp"
#include "survpath/msp.hpp"
#include "survpath/network.hpp"
#include "survpath/pathing.hpp"
#include "survpath/random.hpp"
#include "survpath/report.hpp"
#include "survpath/serialize.hpp"
#include "survpath/survival_matrix.hpp"
