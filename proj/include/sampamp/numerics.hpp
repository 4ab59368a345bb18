// Copyright 2026 The sampamp Authors
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

#ifndef SAMPAMP_NUMERICS_HPP_
#define SAMPAMP_NUMERICS_HPP_

#include "sampamp/linalg.hpp"
#include "sampamp/rng.hpp"
#include "sampamp/samplers.hpp"
#include "sampamp/special_functions.hpp"

#endif  // SAMPAMP_NUMERICS_HPP_
