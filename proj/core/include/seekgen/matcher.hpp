#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace seekgen {

/// Alias-aware entity matching on normalized strings.
///
/// Two entity mentions match when their canonical forms are equal, where
/// canonical = alias_table[normalize(s)] if present, else normalize(s).
/// Occurrence in free text is a token-boundary substring test over the
/// canonical form and every surface form that maps to it.
class EntityMatcher {
public:
    EntityMatcher() = default;

    /// Register `surface` as an alias of `canonical` (both raw strings).
    void add_alias(std::string_view surface, std::string_view canonical);

    std::string canonical(std::string_view s) const;

    /// Normalized-equality with alias closure. Reflexive and symmetric.
    bool equivalent(std::string_view a, std::string_view b) const;

    /// True if any surface form of `target` occurs token-bounded in `text`.
    bool occurs_in(std::string_view target, std::string_view text) const;

    /// Same, but `normalized_text` is already normalize()d. Use this when
    /// scanning one observation against many targets.
    bool occurs_in_normalized(std::string_view target, std::string_view normalized_text) const;

    /// All normalized surface forms that count as a mention of `target`.
    std::vector<std::string> surface_forms(std::string_view target) const;

    std::size_t alias_count() const { return alias_.size(); }

private:
    std::map<std::string, std::string> alias_;                       // surface -> canonical
    std::multimap<std::string, std::string> surfaces_by_canonical_;  // canonical -> surfaces
};

}  // namespace seekgen
