#include "seekgen/text.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstring>

namespace seekgen::text {

namespace {

// Decodes one UTF-8 code point starting at s[i]; advances i past it.
// Malformed bytes are returned as-is (one byte, value < 0x100).
uint32_t decode_utf8(std::string_view s, std::size_t& i) {
    const auto byte = [&](std::size_t k) { return static_cast<unsigned char>(s[k]); };
    unsigned char c = byte(i);
    if (c < 0x80) {
        ++i;
        return c;
    }
    int extra = 0;
    uint32_t cp = 0;
    if ((c & 0xE0) == 0xC0) { extra = 1; cp = c & 0x1F; }
    else if ((c & 0xF0) == 0xE0) { extra = 2; cp = c & 0x0F; }
    else if ((c & 0xF8) == 0xF0) { extra = 3; cp = c & 0x07; }
    else { ++i; return c; }

    if (i + static_cast<std::size_t>(extra) >= s.size()) { ++i; return c; }

    for (int k = 1; k <= extra; ++k) {
        unsigned char cc = byte(i + k);
        if ((cc & 0xC0) != 0x80) { ++i; return c; }
        cp = (cp << 6) | (cc & 0x3F);
    }
    i += 1 + extra;
    return cp;
}

void encode_utf8(uint32_t cp, std::string& out) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

// ASCII replacement for one folded code point, or nullptr to pass through.
const char* fold_cp(uint32_t cp) {
    switch (cp) {
        // Latin-1 Supplement
        case 0xC0: case 0xC1: case 0xC2: case 0xC3: case 0xC4: case 0xC5: return "A";
        case 0xC6: return "AE";
        case 0xC7: return "C";
        case 0xC8: case 0xC9: case 0xCA: case 0xCB: return "E";
        case 0xCC: case 0xCD: case 0xCE: case 0xCF: return "I";
        case 0xD0: return "D";
        case 0xD1: return "N";
        case 0xD2: case 0xD3: case 0xD4: case 0xD5: case 0xD6: case 0xD8: return "O";
        case 0xD9: case 0xDA: case 0xDB: case 0xDC: return "U";
        case 0xDD: return "Y";
        case 0xDE: return "Th";
        case 0xDF: return "ss";
        case 0xE0: case 0xE1: case 0xE2: case 0xE3: case 0xE4: case 0xE5: return "a";
        case 0xE6: return "ae";
        case 0xE7: return "c";
        case 0xE8: case 0xE9: case 0xEA: case 0xEB: return "e";
        case 0xEC: case 0xED: case 0xEE: case 0xEF: return "i";
        case 0xF0: return "d";
        case 0xF1: return "n";
        case 0xF2: case 0xF3: case 0xF4: case 0xF5: case 0xF6: case 0xF8: return "o";
        case 0xF9: case 0xFA: case 0xFB: case 0xFC: return "u";
        case 0xFD: case 0xFF: return "y";
        case 0xFE: return "th";
        default: break;
    }
    // Latin Extended-A: derive the base letter from the code chart layout.
    if (cp >= 0x100 && cp <= 0x17F) {
        static constexpr std::array<const char*, 0x80> kExtA = {
            "A","a","A","a","A","a","C","c","C","c","C","c","C","c","D","d",        // 0x100
            "D","d","E","e","E","e","E","e","E","e","E","e","G","g","G","g",        // 0x110
            "G","g","G","g","H","h","H","h","I","i","I","i","I","i","I","i",        // 0x120
            "I","i","IJ","ij","J","j","K","k","k","L","l","L","l","L","l","L",     // 0x130
            "l","L","l","N","n","N","n","N","n","n","NG","ng","O","o","O","o",     // 0x140
            "O","o","OE","oe","R","r","R","r","R","r","S","s","S","s","S","s",     // 0x150
            "S","s","T","t","T","t","T","t","U","u","U","u","U","u","U","u",       // 0x160
            "U","u","U","u","W","w","Y","y","Y","Z","z","Z","z","Z","z","s",       // 0x170
        };
        return kExtA[cp - 0x100];
    }
    return nullptr;
}

bool is_unicode_punct(uint32_t cp) {
    switch (cp) {
        case 0x2010: case 0x2011: case 0x2012: case 0x2013: case 0x2014: case 0x2015:  // dashes
        case 0x2018: case 0x2019: case 0x201A: case 0x201C: case 0x201D: case 0x201E:  // quotes
        case 0x2026:                                                                    // ellipsis
        case 0x00AB: case 0x00BB:                                                       // guillemets
        case 0x00B7:                                                                    // middle dot
            return true;
        default:
            return false;
    }
}

}  // namespace

std::string fold_diacritics(std::string_view s) {
    std::string out;
    out.reserve(s.size());
    std::size_t i = 0;
    while (i < s.size()) {
        uint32_t cp = decode_utf8(s, i);
        if (const char* rep = fold_cp(cp)) {
            out += rep;
        } else {
            encode_utf8(cp, out);
        }
    }
    return out;
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return out;
}

std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

std::string normalize(std::string_view s) {
    std::string folded = fold_diacritics(s);
    std::string out;
    out.reserve(folded.size());
    bool pending_space = false;
    std::size_t i = 0;
    while (i < folded.size()) {
        uint32_t cp = decode_utf8(folded, i);
        bool space;
        if (cp < 0x80) {
            unsigned char c = static_cast<unsigned char>(cp);
            space = std::isspace(c) || std::ispunct(c);
            if (!space) {
                if (pending_space && !out.empty()) out.push_back(' ');
                pending_space = false;
                out.push_back(static_cast<char>(std::tolower(c)));
                continue;
            }
        } else {
            space = is_unicode_punct(cp);
            if (!space) {
                if (pending_space && !out.empty()) out.push_back(' ');
                pending_space = false;
                encode_utf8(cp, out);
                continue;
            }
        }
        pending_space = true;
    }
    return out;
}

std::string slug(std::string_view s) {
    std::string n = normalize(s);
    std::replace(n.begin(), n.end(), ' ', '_');
    return n;
}

bool contains_token_bounded(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return false;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string_view::npos) {
        const bool left_ok = pos == 0 || haystack[pos - 1] == ' ';
        const std::size_t end = pos + needle.size();
        const bool right_ok = end == haystack.size() || haystack[end] == ' ';
        if (left_ok && right_ok) return true;
        ++pos;
    }
    return false;
}

std::size_t edit_distance(std::string_view a, std::string_view b) {
    if (a.size() > b.size()) std::swap(a, b);
    std::vector<std::size_t> row(a.size() + 1);
    for (std::size_t j = 0; j <= a.size(); ++j) row[j] = j;
    for (std::size_t i = 1; i <= b.size(); ++i) {
        std::size_t prev_diag = row[0];
        row[0] = i;
        for (std::size_t j = 1; j <= a.size(); ++j) {
            std::size_t cur = row[j];
            std::size_t cost = (a[j - 1] == b[i - 1]) ? 0 : 1;
            row[j] = std::min({row[j] + 1, row[j - 1] + 1, prev_diag + cost});
            prev_diag = cur;
        }
    }
    return row[a.size()];
}

double normalized_edit_distance(std::string_view a, std::string_view b) {
    const std::size_t longest = std::max(a.size(), b.size());
    if (longest == 0) return 0.0;
    return static_cast<double>(edit_distance(a, b)) / static_cast<double>(longest);
}

bool parse_number(std::string_view s, double& out) {
    std::string cleaned;
    cleaned.reserve(s.size());
    for (char c : trim(s)) {
        if (c == ',') continue;  // thousand separator
        cleaned.push_back(c);
    }
    if (cleaned.empty()) return false;
    std::size_t i = 0;
    if (cleaned[i] == '+' || cleaned[i] == '-') ++i;
    bool digits = false, dot = false;
    for (; i < cleaned.size(); ++i) {
        if (std::isdigit(static_cast<unsigned char>(cleaned[i]))) {
            digits = true;
        } else if (cleaned[i] == '.' && !dot) {
            dot = true;
        } else {
            return false;
        }
    }
    if (!digits) return false;
    out = std::strtod(cleaned.c_str(), nullptr);
    return true;
}

bool looks_numeric(std::string_view s) {
    double tmp;
    return parse_number(s, tmp);
}

bool looks_year(std::string_view s) {
    std::string t = trim(s);
    if (t.size() != 4) return false;
    for (char c : t) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    int v = std::stoi(t);
    return v >= 1000 && v <= 2999;
}

namespace {

bool month_name(std::string_view tok) {
    static constexpr std::array<std::string_view, 12> kMonths = {
        "january", "february", "march", "april", "may", "june",
        "july", "august", "september", "october", "november", "december"};
    std::string low = to_lower_ascii(tok);
    for (auto m : kMonths) {
        if (low == m || (low.size() == 3 && m.substr(0, 3) == low)) return true;
    }
    return false;
}

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c); });
}

}  // namespace

bool looks_date(std::string_view raw) {
    std::string t = trim(raw);
    // ISO: 1980-10-09
    if (t.size() == 10 && t[4] == '-' && t[7] == '-' && all_digits(t.substr(0, 4)) &&
        all_digits(t.substr(5, 2)) && all_digits(t.substr(8, 2))) {
        return true;
    }
    // "9 October 1980" / "October 9, 1980"
    std::string cleaned;
    for (char c : t) cleaned.push_back(c == ',' ? ' ' : c);
    std::vector<std::string> toks;
    for (auto& p : split(cleaned, ' ')) {
        if (!p.empty()) toks.push_back(p);
    }
    if (toks.size() == 3) {
        if (all_digits(toks[0]) && toks[0].size() <= 2 && month_name(toks[1]) && looks_year(toks[2]))
            return true;
        if (month_name(toks[0]) && all_digits(toks[1]) && toks[1].size() <= 2 && looks_year(toks[2]))
            return true;
    }
    return false;
}

}  // namespace seekgen::text
