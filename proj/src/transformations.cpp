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

#include "phonapprox/transformations.hpp"

#include "phonapprox/error.hpp"

namespace phonapprox {

const std::vector<Transformation>& transformation_registry() {
  static const std::vector<Transformation> registry{
      // laryngeal
      {"voicing", {{"voice", Mark::plus}}},
      {"fortition", {{"constricted_glottis", Mark::plus}}},
      {"aspiration", {{"spread_glottis", Mark::plus}}},
      // place
      {"velarization", {{"back", Mark::plus}}},
      {"labialization", {{"labial", Mark::plus}, {"round", Mark::plus}}},
      {"dentalization", {{"distributed", Mark::plus}}},
      {"palatalization", {{"anterior", Mark::minus}, {"distributed", Mark::plus}}},
      // manner
      {"nasalization", {{"nasal", Mark::plus}}},
      {"lateralization", {{"lateral", Mark::plus}}},
      {"spirantization", {{"continuant", Mark::plus}, {"strident", Mark::plus}}},
  };
  return registry;
}

const Transformation* find_transformation(std::string_view name) {
  for (const auto& t : transformation_registry()) {
    if (t.name == name) return &t;
  }
  return nullptr;
}

FeatureVector apply_transformation(const FeatureVector& base, const Transformation& t) {
  FeatureVector out = base;
  for (const auto& [feature, mark] : t.deltas) out.set(feature, mark);
  return out;
}

FeatureVector apply_transformation(const FeatureVector& base, std::string_view name) {
  const auto* t = find_transformation(name);
  if (t == nullptr) throw ContractError("unknown transformation: " + std::string(name));
  return apply_transformation(base, *t);
}

}  // namespace phonapprox
