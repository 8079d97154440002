// Copyright 2026 The affinv Authors
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

#ifndef AFFINV_AFFINV_HPP_
#define AFFINV_AFFINV_HPP_

#include "affinv/cost.hpp"
#include "affinv/errors.hpp"
#include "affinv/group.hpp"
#include "affinv/harness.hpp"
#include "affinv/io.hpp"
#include "affinv/linalg.hpp"
#include "affinv/mcd.hpp"
#include "affinv/random.hpp"
#include "affinv/report.hpp"

#endif  // AFFINV_AFFINV_HPP_
