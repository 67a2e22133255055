// Copyright 2026 The phonapprox Authors
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

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "phonapprox/features.hpp"

namespace phonapprox {

// An allophonic process: the feature changes that license it.
struct Transformation {
  std::string name;
  std::vector<std::pair<std::string, Mark>> deltas;
};

// The ten laryngeal, place and manner processes, in fixed order.
const std::vector<Transformation>& transformation_registry();

const Transformation* find_transformation(std::string_view name);

// Copy of base with each delta's feature set to its target mark. Throws
// ContractError for names outside the registry.
FeatureVector apply_transformation(const FeatureVector& base, const Transformation& t);
FeatureVector apply_transformation(const FeatureVector& base, std::string_view name);

}  // namespace phonapprox
