//
// Copyright 2026 The Bodega Forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include "bodega/attacks.h"
#include "bodega/errors.h"

namespace bodega {

Attacker::Attacker(AttackerKind kind, AttackConfig config,
                   AttackResources resources)
    : kind_(kind), config_(std::move(config)), resources_(resources) {
  config_.Validate();
  switch (kind_) {
    case AttackerKind::kPwws:
      if (!resources_.synonyms) {
        throw ConfigError("pwws requires a synonym lexicon");
      }
      break;
    case AttackerKind::kTextFooler:
    case AttackerKind::kGenetic:
    case AttackerKind::kPso:
      if (!resources_.embeddings) {
        throw ConfigError(std::string(name()) +
                          " requires an embedding table");
      }
      break;
    case AttackerKind::kDeepWordBug:
      break;
  }
}

AttackOutcome Attacker::Attack(QueryCounter& counter, const Instance& instance,
                               uint64_t seed) const {
  const Document document = Document::FromInstance(instance);
  switch (kind_) {
    case AttackerKind::kDeepWordBug:
      return AttackDeepWordBug(counter, document, config_, seed);
    case AttackerKind::kPwws:
      return AttackPwws(counter, document, *resources_.synonyms, config_);
    case AttackerKind::kTextFooler:
      return AttackTextFooler(counter, document, *resources_.embeddings,
                              config_);
    case AttackerKind::kGenetic:
      return AttackGenetic(counter, document, *resources_.embeddings, config_,
                           seed);
    case AttackerKind::kPso:
      return AttackPso(counter, document, *resources_.embeddings, config_,
                       seed);
  }
  throw Error("unknown attacker");
}

}  // namespace bodega
