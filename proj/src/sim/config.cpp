//------------------------------------------------------------------------------
//
//   Copyright 2018-2020 Fetch.AI Limited
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include "minagree/sim/config.hpp"

#include <cmath>
#include <functional>
#include <limits>

namespace minagree {
namespace sim {
namespace {

using nlohmann::json;

struct Field
{
  std::string                                     name;
  std::function<void(SimConfig &, json const &)>  set;
  std::function<json(SimConfig const &)>          get;
};

uint64_t AsUnsigned(std::string const &key, json const &value)
{
  if (value.is_number_unsigned())
  {
    return value.get<uint64_t>();
  }
  if (value.is_number_integer() && value.get<int64_t>() >= 0)
  {
    return static_cast<uint64_t>(value.get<int64_t>());
  }
  throw ConfigError(key, "expected a non-negative integer, got " + value.dump());
}

double AsNumber(std::string const &key, json const &value)
{
  if (!value.is_number())
  {
    throw ConfigError(key, "expected a number, got " + value.dump());
  }
  auto const out = value.get<double>();
  if (!std::isfinite(out))
  {
    throw ConfigError(key, "expected a finite number");
  }
  return out;
}

std::string AsString(std::string const &key, json const &value)
{
  if (!value.is_string())
  {
    throw ConfigError(key, "expected a string, got " + value.dump());
  }
  return value.get<std::string>();
}

template <typename T>
Field UnsignedField(std::string name, T SimConfig::*member)
{
  return Field{
      name,
      [name, member](SimConfig &c, json const &v) {
        uint64_t const raw = AsUnsigned(name, v);
        if (raw > std::numeric_limits<T>::max())
        {
          throw ConfigError(name, "value out of range");
        }
        c.*member = static_cast<T>(raw);
      },
      [member](SimConfig const &c) { return json(c.*member); }};
}

Field NumberField(std::string name, double SimConfig::*member)
{
  return Field{name, [name, member](SimConfig &c, json const &v) { c.*member = AsNumber(name, v); },
               [member](SimConfig const &c) { return json(c.*member); }};
}

template <typename Enum, typename Parse>
Field EnumField(std::string name, Enum SimConfig::*member, Parse parse, std::string choices)
{
  return Field{name,
               [name, member, parse, choices](SimConfig &c, json const &v) {
                 auto const text   = AsString(name, v);
                 auto const parsed = parse(text);
                 if (!parsed)
                 {
                   throw ConfigError(name, "unknown value '" + text + "', expected one of " +
                                               choices);
                 }
                 c.*member = *parsed;
               },
               [member](SimConfig const &c) { return json(std::string{ToString(c.*member)}); }};
}

std::optional<DelayKind> ParseDelayKind(std::string_view name)
{
  if (name == "none")
  {
    return DelayKind::NONE;
  }
  if (name == "fixed")
  {
    return DelayKind::FIXED;
  }
  if (name == "uniform")
  {
    return DelayKind::UNIFORM;
  }
  return std::nullopt;
}

std::optional<ArrivalMode> ParseArrivalMode(std::string_view name)
{
  if (name == "staggered")
  {
    return ArrivalMode::STAGGERED;
  }
  if (name == "poisson")
  {
    return ArrivalMode::POISSON;
  }
  if (name == "simultaneous")
  {
    return ArrivalMode::SIMULTANEOUS;
  }
  return std::nullopt;
}

std::optional<ProposalTargets> ParseProposalTargets(std::string_view name)
{
  if (name == "uncommitted")
  {
    return ProposalTargets::UNCOMMITTED;
  }
  if (name == "round")
  {
    return ProposalTargets::ROUND;
  }
  return std::nullopt;
}

std::vector<Field> const &Fields()
{
  static std::vector<Field> const fields = [] {
    std::vector<Field> f;
    f.push_back(UnsignedField("seed", &SimConfig::seed));
    f.push_back(UnsignedField("n_stakers", &SimConfig::n_stakers));
    f.push_back(UnsignedField("n_attachers", &SimConfig::n_attachers));
    f.push_back(UnsignedField("committee_size", &SimConfig::committee_size));
    f.push_back(UnsignedField("n_proposers", &SimConfig::n_proposers));
    f.push_back(UnsignedField("n_blocks", &SimConfig::n_blocks));
    f.push_back(Field{"strategy",
                      [](SimConfig &c, json const &v) {
                        auto const text   = AsString("strategy", v);
                        auto const parsed = attachment::ParseStrategyKind(text);
                        if (!parsed)
                        {
                          throw ConfigError("strategy",
                                            "unknown value '" + text +
                                                "', expected one of random, joint_cardinality, "
                                                "metropolis, greedy");
                        }
                        c.strategy.kind = *parsed;
                      },
                      [](SimConfig const &c) {
                        return json(std::string{attachment::ToString(c.strategy.kind)});
                      }});
    f.push_back(Field{"metropolis_threshold",
                      [](SimConfig &c, json const &v) {
                        c.strategy.metropolis_threshold = AsNumber("metropolis_threshold", v);
                      },
                      [](SimConfig const &c) { return json(c.strategy.metropolis_threshold); }});
    f.push_back(Field{"metropolis_max_iters",
                      [](SimConfig &c, json const &v) {
                        auto const raw = AsUnsigned("metropolis_max_iters", v);
                        if (raw > std::numeric_limits<uint32_t>::max())
                        {
                          throw ConfigError("metropolis_max_iters", "value out of range");
                        }
                        c.strategy.metropolis_max_iters = static_cast<uint32_t>(raw);
                      },
                      [](SimConfig const &c) { return json(c.strategy.metropolis_max_iters); }});
    f.push_back(UnsignedField("tip_discard_age", &SimConfig::tip_discard_age));
    f.push_back(UnsignedField("mempool_rate", &SimConfig::mempool_rate));
    f.push_back(NumberField("fee_mean", &SimConfig::fee_mean));
    f.push_back(EnumField("arrival", &SimConfig::arrival, ParseArrivalMode,
                          "staggered, poisson, simultaneous"));
    f.push_back(EnumField("delay_model", &SimConfig::delay_model, ParseDelayKind,
                          "none, fixed, uniform"));
    f.push_back(NumberField("delay_rounds", &SimConfig::delay_rounds));
    f.push_back(NumberField("link_jitter", &SimConfig::link_jitter));
    f.push_back(UnsignedField("n_regions", &SimConfig::n_regions));
    f.push_back(NumberField("region_delay", &SimConfig::region_delay));
    f.push_back(EnumField("notarization", &SimConfig::notarization,
                          consensus::ParseNotarizationMode, "rank, competitive"));
    f.push_back(NumberField("competitive_lambda", &SimConfig::competitive_lambda));
    f.push_back(EnumField("proposal_targets", &SimConfig::proposal_targets,
                          ParseProposalTargets, "uncommitted, round"));
    f.push_back(Field{"max_block_txs",
                      [](SimConfig &c, json const &v) {
                        if (v.is_null())
                        {
                          c.max_block_txs.reset();
                        }
                        else
                        {
                          c.max_block_txs = AsUnsigned("max_block_txs", v);
                        }
                      },
                      [](SimConfig const &c) {
                        return c.max_block_txs ? json(*c.max_block_txs) : json(nullptr);
                      }});
    f.push_back(UnsignedField("carry_retry_limit", &SimConfig::carry_retry_limit));
    f.push_back(UnsignedField("base_block_reward", &SimConfig::base_block_reward));
    f.push_back(NumberField("shared_fraction", &SimConfig::shared_fraction));
    f.push_back(UnsignedField("decouple_window", &SimConfig::decouple_window));
    f.push_back(NumberField("hard_alpha", &SimConfig::hard_alpha));
    f.push_back(NumberField("committee_share", &SimConfig::committee_share));
    return f;
  }();
  return fields;
}

void RequireUnit(std::string const &key, double value)
{
  if (value < 0.0 || value > 1.0)
  {
    throw ConfigError(key, "must lie in [0, 1]");
  }
}

}  // namespace

std::string_view ToString(DelayKind kind)
{
  switch (kind)
  {
  case DelayKind::NONE:
    return "none";
  case DelayKind::FIXED:
    return "fixed";
  case DelayKind::UNIFORM:
    return "uniform";
  }
  return "none";
}

std::string_view ToString(ArrivalMode mode)
{
  switch (mode)
  {
  case ArrivalMode::STAGGERED:
    return "staggered";
  case ArrivalMode::POISSON:
    return "poisson";
  case ArrivalMode::SIMULTANEOUS:
    return "simultaneous";
  }
  return "staggered";
}

std::string_view ToString(ProposalTargets targets)
{
  return targets == ProposalTargets::UNCOMMITTED ? "uncommitted" : "round";
}

SimConfig ApplyJson(SimConfig base, json const &settings)
{
  if (!settings.is_object())
  {
    throw ConfigError("$", "configuration must be a JSON object");
  }
  auto const &fields = Fields();
  for (auto const &item : settings.items())
  {
    std::string const key = item.key();
    auto it = std::find_if(fields.begin(), fields.end(),
                           [&key](Field const &f) { return f.name == key; });
    if (it == fields.end())
    {
      throw ConfigError(key, "unknown configuration key");
    }
    it->set(base, item.value());
  }
  return base;
}

SimConfig ApplyOverride(SimConfig base, std::string_view assignment)
{
  auto const eq = assignment.find('=');
  if (eq == std::string_view::npos || eq == 0)
  {
    throw ConfigError(std::string{assignment}, "override must have the form key=value");
  }
  std::string const key{assignment.substr(0, eq)};
  std::string const text{assignment.substr(eq + 1)};

  json value = json::parse(text, nullptr, false);
  if (value.is_discarded())
  {
    value = text;
  }
  return ApplyJson(std::move(base), json{{key, value}});
}

void Validate(SimConfig const &c)
{
  if (c.n_stakers == 0)
  {
    throw ConfigError("n_stakers", "must be positive");
  }
  if (c.n_attachers == 0 || c.n_attachers > c.n_stakers)
  {
    throw ConfigError("n_attachers", "must lie in [1, n_stakers]");
  }
  if (c.committee_size == 0 || c.committee_size > c.n_stakers)
  {
    throw ConfigError("committee_size", "must lie in [1, n_stakers]");
  }
  if (c.n_proposers == 0 || c.n_proposers > c.n_stakers)
  {
    throw ConfigError("n_proposers", "must lie in [1, n_stakers]");
  }
  if (c.n_blocks == 0)
  {
    throw ConfigError("n_blocks", "must be positive");
  }
  if (c.tip_discard_age == 0)
  {
    throw ConfigError("tip_discard_age", "must be at least 1");
  }
  if (!(c.strategy.metropolis_threshold > 0.0 && c.strategy.metropolis_threshold <= 1.0))
  {
    throw ConfigError("metropolis_threshold", "must lie in (0, 1]");
  }
  if (c.strategy.metropolis_max_iters == 0)
  {
    throw ConfigError("metropolis_max_iters", "must be positive");
  }
  if (c.fee_mean < 1.0)
  {
    throw ConfigError("fee_mean", "must be at least 1");
  }
  if (c.delay_rounds < 0.0)
  {
    throw ConfigError("delay_rounds", "must be non-negative");
  }
  if (c.delay_model == DelayKind::NONE && c.delay_rounds != 0.0)
  {
    throw ConfigError("delay_rounds", "requires delay_model fixed or uniform");
  }
  if (c.link_jitter < 0.0)
  {
    throw ConfigError("link_jitter", "must be non-negative");
  }
  if (c.n_regions == 0)
  {
    throw ConfigError("n_regions", "must be at least 1");
  }
  if (c.region_delay < 0.0)
  {
    throw ConfigError("region_delay", "must be non-negative");
  }
  if (c.competitive_lambda < 0.0)
  {
    throw ConfigError("competitive_lambda", "must be non-negative");
  }
  if (c.max_block_txs && *c.max_block_txs == 0)
  {
    throw ConfigError("max_block_txs", "must be positive or null");
  }
  if (c.decouple_window == 0)
  {
    throw ConfigError("decouple_window", "must be at least 1");
  }
  RequireUnit("shared_fraction", c.shared_fraction);
  RequireUnit("hard_alpha", c.hard_alpha);
  RequireUnit("committee_share", c.committee_share);
}

incentives::RewardPolicy MakeRewardPolicy(SimConfig const &c)
{
  incentives::RewardPolicy policy{};
  policy.base_block_reward = c.base_block_reward;
  policy.shared_fraction   = incentives::UnitFraction(c.shared_fraction);
  policy.decouple_window   = c.decouple_window;
  policy.hard_alpha        = incentives::UnitFraction(c.hard_alpha);
  policy.committee_share   = incentives::UnitFraction(c.committee_share);
  return policy;
}

json ToJson(SimConfig const &config)
{
  json out = json::object();
  for (auto const &field : Fields())
  {
    out[field.name] = field.get(config);
  }
  return out;
}

std::vector<std::string> ConfigKeys()
{
  std::vector<std::string> out;
  for (auto const &field : Fields())
  {
    out.push_back(field.name);
  }
  return out;
}

}  // namespace sim
}  // namespace minagree
