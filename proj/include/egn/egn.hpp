// Copyright 2026 the egn-bounds authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "egn/config.hpp"
#include "egn/enip.hpp"
#include "egn/errors.hpp"
#include "egn/geometry.hpp"
#include "egn/jacobi.hpp"
#include "egn/matrix.hpp"
#include "egn/optimize.hpp"
#include "egn/oracles.hpp"
#include "egn/pauli.hpp"
#include "egn/rng.hpp"
#include "egn/separability.hpp"
#include "egn/state.hpp"
#include "egn/state_io.hpp"
