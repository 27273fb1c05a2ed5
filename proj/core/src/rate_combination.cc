// Copyright 2026 The ratecon Authors
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

#include "ratecon/rate_combination.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "ratecon/errors.hpp"

namespace ratecon {

LinearRateCombination& LinearRateCombination::add(std::string dataset,
                                                  Polarity polarity,
                                                  double coefficient) {
  terms.push_back({std::move(dataset), polarity, coefficient});
  return *this;
}

LinearRateCombination& LinearRateCombination::add_constant(double c) {
  constant += c;
  return *this;
}

LinearRateCombination LinearRateCombination::scaled(double factor) const {
  LinearRateCombination out = *this;
  for (RateTerm& t : out.terms) t.coefficient *= factor;
  out.constant *= factor;
  return out;
}

LinearRateCombination operator+(const LinearRateCombination& a,
                                const LinearRateCombination& b) {
  LinearRateCombination out = a;
  out.terms.insert(out.terms.end(), b.terms.begin(), b.terms.end());
  out.constant += b.constant;
  return out;
}

LinearRateCombination operator-(const LinearRateCombination& a,
                                const LinearRateCombination& b) {
  return a + b.scaled(-1.0);
}

LinearRateCombination canonicalize(const LinearRateCombination& combo) {
  std::map<std::pair<std::string, Polarity>, double> merged;
  double constant = combo.constant;
  for (const RateTerm& t : combo.terms) {
    if (!std::isfinite(t.coefficient)) {
      throw ConfigError("non-finite coefficient on dataset '" + t.dataset +
                        "'");
    }
    merged[{t.dataset, t.polarity}] += t.coefficient;
  }
  std::map<std::pair<std::string, Polarity>, double> positive;
  for (const auto& [key, c] : merged) {
    if (c >= 0.0) {
      positive[key] += c;
    } else {
      positive[{key.first, flip(key.second)}] += -c;
      constant += c;
    }
  }
  LinearRateCombination out;
  out.constant = constant;
  for (const auto& [key, c] : positive) {
    if (c == 0.0) continue;
    out.terms.push_back({key.first, key.second, c});
  }
  return out;
}

LinearRateCombination canonicalize(const LinearRateCombination& combo,
                                   const DatasetCollection& datasets) {
  for (const RateTerm& t : combo.terms) {
    if (!datasets.contains(t.dataset)) {
      throw ConfigError("unknown dataset '" + t.dataset + "'");
    }
  }
  return canonicalize(combo);
}

RateConstraint make_constraint(const LinearRateCombination& lhs, double bound,
                               std::string name) {
  LinearRateCombination canonical = canonicalize(lhs);
  RateConstraint out;
  out.bound = bound - canonical.constant;
  canonical.constant = 0.0;
  out.lhs = std::move(canonical);
  out.name = std::move(name);
  return out;
}

ConstrainedProblem::ConstrainedProblem(DatasetCollection datasets,
                                       LinearRateCombination objective,
                                       std::vector<RateConstraint> constraints,
                                       double lambda, double multiplier_cap)
    : datasets_(std::move(datasets)),
      lambda_(lambda),
      multiplier_cap_(multiplier_cap) {
  if (!(lambda_ > 0.0) || !std::isfinite(lambda_)) {
    throw ConfigError("lambda must be positive");
  }
  if (!(multiplier_cap_ > 0.0) || !std::isfinite(multiplier_cap_)) {
    throw ConfigError("multiplier cap must be positive");
  }
  objective_ = canonicalize(objective, datasets_);
  for (RateConstraint& c : constraints) {
    RateConstraint folded = make_constraint(
        canonicalize(c.lhs, datasets_), c.bound, c.name);
    if (!std::isfinite(folded.bound)) {
      throw ConfigError("non-finite constraint bound");
    }
    constraints_.push_back(std::move(folded));
  }

  const std::size_t m = constraints_.size();
  std::map<std::string, DatasetTerms> by_id;
  auto slot = [&](const std::string& id) -> DatasetTerms& {
    auto it = by_id.find(id);
    if (it == by_id.end()) {
      DatasetTerms t;
      t.dataset = &datasets_.at(id);
      t.constraint_alpha.assign(m, 0.0);
      t.constraint_beta.assign(m, 0.0);
      it = by_id.emplace(id, std::move(t)).first;
    }
    return it->second;
  };
  for (const RateTerm& t : objective_.terms) {
    DatasetTerms& s = slot(t.dataset);
    (t.polarity == Polarity::kPositive ? s.alpha : s.beta) += t.coefficient;
  }
  for (std::size_t j = 0; j < m; ++j) {
    for (const RateTerm& t : constraints_[j].lhs.terms) {
      DatasetTerms& s = slot(t.dataset);
      (t.polarity == Polarity::kPositive ? s.constraint_alpha[j]
                                         : s.constraint_beta[j]) +=
          t.coefficient;
    }
    bounds_.push_back(constraints_[j].bound);
  }
  for (auto& entry : by_id) {
    total_examples_ += entry.second.dataset->size();
    max_norm_ = std::max(max_norm_, entry.second.dataset->max_norm());
    terms_.push_back(std::move(entry.second));
  }
}

}  // namespace ratecon
