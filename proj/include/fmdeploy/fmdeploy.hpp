// Copyright 2026 The fmdeploy Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FMDEPLOY_FMDEPLOY_HPP
#define FMDEPLOY_FMDEPLOY_HPP

#include "fmdeploy/brute_force.hpp"
#include "fmdeploy/deployment.hpp"
#include "fmdeploy/diagnostics.hpp"
#include "fmdeploy/digest.hpp"
#include "fmdeploy/matcher.hpp"
#include "fmdeploy/model.hpp"
#include "fmdeploy/ontology.hpp"
#include "fmdeploy/parser.hpp"
#include "fmdeploy/semantics.hpp"
#include "fmdeploy/serializer.hpp"
#include "fmdeploy/solver.hpp"
#include "fmdeploy/validate.hpp"

#endif  // FMDEPLOY_FMDEPLOY_HPP
