#include "seekgen/matcher.hpp"

#include "seekgen/text.hpp"

namespace seekgen {

void EntityMatcher::add_alias(std::string_view surface, std::string_view canonical) {
    std::string s = text::normalize(surface);
    std::string c = text::normalize(canonical);
    if (s.empty() || c.empty() || s == c) return;
    alias_[s] = c;
    surfaces_by_canonical_.emplace(c, s);
}

std::string EntityMatcher::canonical(std::string_view s) const {
    std::string n = text::normalize(s);
    auto it = alias_.find(n);
    return it == alias_.end() ? n : it->second;
}

bool EntityMatcher::equivalent(std::string_view a, std::string_view b) const {
    return canonical(a) == canonical(b);
}

std::vector<std::string> EntityMatcher::surface_forms(std::string_view target) const {
    std::string canon = canonical(target);
    std::vector<std::string> forms;
    forms.push_back(canon);
    std::string n = text::normalize(target);
    if (n != canon) forms.push_back(n);
    auto [lo, hi] = surfaces_by_canonical_.equal_range(canon);
    for (auto it = lo; it != hi; ++it) {
        if (it->second != n) forms.push_back(it->second);
    }
    return forms;
}

bool EntityMatcher::occurs_in(std::string_view target, std::string_view raw_text) const {
    return occurs_in_normalized(target, text::normalize(raw_text));
}

bool EntityMatcher::occurs_in_normalized(std::string_view target,
                                         std::string_view normalized_text) const {
    for (const auto& form : surface_forms(target)) {
        if (text::contains_token_bounded(normalized_text, form)) return true;
    }
    return false;
}

}  // namespace seekgen
