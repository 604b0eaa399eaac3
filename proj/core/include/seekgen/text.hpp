#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace seekgen::text {

/// Canonical string form used everywhere entities are compared:
/// lowercase, diacritics folded to ASCII, punctuation replaced by spaces,
/// whitespace collapsed and trimmed.
std::string normalize(std::string_view s);

/// normalize() with spaces replaced by underscores; used for relation names.
std::string slug(std::string_view s);

/// Fold Latin-1 Supplement / Latin Extended-A letters to their ASCII base
/// (e.g. "Czesław" -> "Czeslaw"). Unknown code points pass through.
std::string fold_diacritics(std::string_view s);

std::string to_lower_ascii(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

/// True if `needle` occurs in `haystack` starting and ending on token
/// boundaries. Both strings must already be normalize()d.
bool contains_token_bounded(std::string_view haystack, std::string_view needle);

/// Levenshtein distance over bytes.
std::size_t edit_distance(std::string_view a, std::string_view b);

/// edit_distance / max(len); 0 for two empty strings.
double normalized_edit_distance(std::string_view a, std::string_view b);

/// True if the whole cell parses as a number ("-3", "1,250", "2.5").
bool looks_numeric(std::string_view s);

/// True if the cell is a 4-digit integer in [1000, 2999].
bool looks_year(std::string_view s);

/// True for a few unambiguous date shapes: 1980-10-09, 9 October 1980,
/// October 9, 1980.
bool looks_date(std::string_view s);

/// Parse a decimal number, ignoring thousand separators. Returns false if
/// the whole string is not a number.
bool parse_number(std::string_view s, double& out);

}  // namespace seekgen::text
