#include "zhdecomp/decomposer.hpp"

#include <algorithm>
#include <mutex>
#include <stdexcept>
#include <unordered_set>

namespace zhdecomp {

void DecompConfig::validate() const {
  for (std::size_t i = 0; i < region_preference.size(); ++i) {
    for (std::size_t j = i + 1; j < region_preference.size(); ++j) {
      if (region_preference[i] == region_preference[j]) {
        throw std::invalid_argument(std::string("duplicate region tag '") +
                                    region_preference[i].code + "' in preference");
      }
    }
  }
}

std::vector<RegionTag> DecompConfig::parse_preference(std::string_view letters) {
  std::vector<RegionTag> out;
  for (char c : letters) {
    if (c == ',' || c == ' ') continue;
    auto tag = RegionTag::from(c);
    if (!tag) throw std::invalid_argument(std::string("bad region tag '") + c + "'");
    out.push_back(*tag);
  }
  return out;
}

const IdsTree& select_variant(const IdsEntry& entry, std::span<const RegionTag> preference) {
  for (RegionTag tag : preference) {
    for (const auto& v : entry.variants) {
      if (v.has_tag(tag)) return v.tree;
    }
  }
  return entry.variants.front().tree;
}

Decomposer::Decomposer(const IdsDictionary& dict) : dict_(dict) {}

Decomposer::ConfigState& Decomposer::state_for(const DecompConfig& cfg) const {
  std::string key;
  for (auto t : cfg.region_preference) key += t.code;
  key += cfg.emit_operators ? "|1" : "|0";
  {
    std::shared_lock lock(mu_);
    if (auto it = states_.find(key); it != states_.end()) return *it->second;
  }
  std::unique_lock lock(mu_);
  auto& slot = states_[key];
  if (!slot) slot = std::make_unique<ConfigState>();
  return *slot;
}

std::optional<PieceSequence> Decomposer::expand_once(char32_t ch, const DecompConfig& cfg) const {
  const IdsEntry* entry = dict_.find(ch);
  if (!entry) return std::nullopt;
  const IdsTree& tree = select_variant(*entry, cfg.region_preference);
  if (tree.is_leaf() && tree.symbol() == ch) return std::nullopt;  // self-atomic
  return cfg.emit_operators ? tree.prefix() : tree.leaves();
}

Decomposer::Reach Decomposer::reach(char32_t ch, const DecompConfig& cfg, ConfigState& st) const {
  {
    std::shared_lock lock(mu_);
    if (auto it = st.reach.find(ch); it != st.reach.end()) return it->second;
  }
  std::unordered_map<char32_t, Reach> local;
  std::unordered_set<char32_t> on_path;

  auto visit = [&](auto&& self, char32_t c) -> Reach {
    if (auto it = local.find(c); it != local.end()) return it->second;
    {
      std::shared_lock lock(mu_);
      if (auto it = st.reach.find(c); it != st.reach.end()) return it->second;
    }
    Reach r;
    if (auto pieces = expand_once(c, cfg)) {
      on_path.insert(c);
      for (char32_t p : *pieces) {
        if (on_path.contains(p)) {
          r.cyclic = true;
          continue;
        }
        const Reach rp = self(self, p);
        r.cyclic = r.cyclic || rp.cyclic;
        r.height = std::max(r.height, rp.height + 1);
      }
      on_path.erase(c);
    }
    local.emplace(c, r);
    return r;
  };
  const Reach result = visit(visit, ch);

  std::unique_lock lock(mu_);
  for (const auto& [c, r] : local) st.reach.emplace(c, r);
  return result;
}

PieceSequence Decomposer::expand(char32_t ch, std::size_t level, const DecompConfig& cfg,
                                 ConfigState& st, std::vector<char32_t>& ancestors) const {
  if (level == 0) return PieceSequence(1, ch);
  if (std::find(ancestors.begin(), ancestors.end(), ch) != ancestors.end()) {
    ++cycle_warnings_;
    return PieceSequence(1, ch);
  }
  const auto pieces = expand_once(ch, cfg);
  if (!pieces) return PieceSequence(1, ch);

  const Reach r = reach(ch, cfg, st);
  if (!r.cyclic) {
    const std::size_t effective = std::min(level, r.height);
    const std::uint64_t key = (static_cast<std::uint64_t>(ch) << 32) | effective;
    {
      std::shared_lock lock(mu_);
      if (auto it = st.memo.find(key); it != st.memo.end()) return it->second;
    }
    PieceSequence out;
    for (char32_t p : *pieces) out += expand(p, effective - 1, cfg, st, ancestors);
    std::unique_lock lock(mu_);
    return st.memo.emplace(key, std::move(out)).first->second;
  }

  ancestors.push_back(ch);
  PieceSequence out;
  for (char32_t p : *pieces) out += expand(p, level - 1, cfg, st, ancestors);
  ancestors.pop_back();
  return out;
}

PieceSequence Decomposer::decompose_char(char32_t ch, const DecompConfig& cfg) const {
  cfg.validate();
  if (cfg.level == 0) return PieceSequence(1, ch);
  std::vector<char32_t> ancestors;
  return expand(ch, cfg.level, cfg, state_for(cfg), ancestors);
}

PieceSequence Decomposer::decompose_sequence(std::u32string_view chars,
                                             const DecompConfig& cfg) const {
  PieceSequence out;
  for (char32_t c : chars) out += decompose_char(c, cfg);
  return out;
}

std::optional<std::size_t> Decomposer::fixed_point_level(char32_t ch,
                                                         const DecompConfig& cfg) const {
  const Reach r = reach(ch, cfg, state_for(cfg));
  if (r.cyclic) return std::nullopt;
  return r.height;
}

PieceSequence decompose_char(const IdsDictionary& dict, char32_t ch, const DecompConfig& cfg) {
  return Decomposer(dict).decompose_char(ch, cfg);
}

PieceSequence decompose_sequence(const IdsDictionary& dict, std::u32string_view chars,
                                 const DecompConfig& cfg) {
  return Decomposer(dict).decompose_sequence(chars, cfg);
}

}  // namespace zhdecomp
