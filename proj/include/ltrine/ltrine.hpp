// Copyright 2026 The ltrine Authors
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

#include "ltrine/envelope.hpp"
#include "ltrine/errors.hpp"
#include "ltrine/geometry.hpp"
#include "ltrine/info.hpp"
#include "ltrine/oracle.hpp"
#include "ltrine/parallel.hpp"
#include "ltrine/reports.hpp"
#include "ltrine/scalar_search.hpp"
#include "ltrine/vec3.hpp"
