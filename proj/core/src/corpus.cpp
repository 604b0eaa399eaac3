#include "seekgen/corpus.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "seekgen/errors.hpp"
#include "seekgen/text.hpp"

namespace seekgen {

using ordered_json = nlohmann::ordered_json;

void CleaningConfig::validate() const {
    if (min_rows >= max_rows) throw ConfigError("cleaning: min_rows must be < max_rows");
    if (min_cols >= max_cols) throw ConfigError("cleaning: min_cols must be < max_cols");
    if (drop_header_patterns.empty()) throw ConfigError("cleaning: drop_header_patterns is empty");
    if (require_isomorphic_group_size < 1)
        throw ConfigError("cleaning: require_isomorphic_group_size must be >= 1");
    if (max_merged_cell_fraction < 0.0 || max_merged_cell_fraction > 1.0)
        throw ConfigError("cleaning: max_merged_cell_fraction must be in [0,1]");
}

std::string to_string(RejectReason r) {
    switch (r) {
        case RejectReason::too_small: return "too_small";
        case RejectReason::too_large: return "too_large";
        case RejectReason::malformed: return "malformed";
        case RejectReason::no_group: return "no_group";
    }
    return "unknown";
}

RejectReason reject_reason_from_string(const std::string& s) {
    if (s == "too_small") return RejectReason::too_small;
    if (s == "too_large") return RejectReason::too_large;
    if (s == "malformed") return RejectReason::malformed;
    if (s == "no_group") return RejectReason::no_group;
    throw ParseError("unknown rejection reason: " + s);
}

std::map<RejectReason, std::size_t> RejectionReport::counts() const {
    std::map<RejectReason, std::size_t> out;
    for (const auto& [id, reason] : rejected) ++out[reason];
    return out;
}

namespace {

std::string cell_to_string(const ordered_json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_float()) {
        std::ostringstream os;
        os << v.get<double>();
        return os.str();
    }
    throw ParseError("cell is not a scalar");
}

RawTable record_to_table(const ordered_json& rec, long index, const ParseOptions& opts) {
    if (!rec.is_object()) throw ParseError("record is not an object", index);
    RawTable t;
    if (rec.contains("id") && rec["id"].is_string()) {
        t.id = rec["id"].get<std::string>();
    } else if (rec.contains("id") && rec["id"].is_number_integer()) {
        t.id = std::to_string(rec["id"].get<long long>());
    } else {
        throw ParseError("record has no usable 'id'", index);
    }
    if (t.id.empty()) throw ParseError("record has empty 'id'", index);
    if (!rec.contains("title") || !rec["title"].is_string())
        throw ParseError("record has no 'title'", index);
    t.title = rec["title"].get<std::string>();

    if (!rec.contains("headers") || !rec["headers"].is_array() || rec["headers"].empty())
        throw ParseError("record has no 'headers'", index);
    for (const auto& h : rec["headers"]) {
        if (!h.is_string()) throw ParseError("header is not a string", index);
        t.headers.push_back(h.get<std::string>());
    }

    if (!rec.contains("rows") || !rec["rows"].is_array())
        throw ParseError("record has no 'rows'", index);
    const std::size_t width = t.headers.size();
    for (const auto& row : rec["rows"]) {
        if (!row.is_array()) throw ParseError("row is not an array", index);
        std::vector<std::string> cells;
        cells.reserve(width);
        for (const auto& c : row) cells.push_back(cell_to_string(c));
        if (cells.size() < width && opts.pad_ragged) cells.resize(width);
        if (cells.size() != width) {
            std::ostringstream os;
            os << "row has " << cells.size() << " cells under " << width << " headers";
            throw ParseError(os.str(), index);
        }
        t.rows.push_back(std::move(cells));
    }

    if (rec.contains("source_url") && rec["source_url"].is_string())
        t.source_url = rec["source_url"].get<std::string>();
    t.domain = "general";
    if (rec.contains("domain") && rec["domain"].is_string() && !rec["domain"].empty())
        t.domain = rec["domain"].get<std::string>();
    return t;
}

ParseResult parse_records(const ordered_json& doc, const ParseOptions& opts) {
    if (!doc.is_array()) throw ParseError("corpus root is not an array");
    ParseResult out;
    std::set<std::string> seen_ids;
    long index = 0;
    for (const auto& rec : doc) {
        try {
            RawTable t = record_to_table(rec, index, opts);
            if (!seen_ids.insert(t.id).second) {
                if (opts.strict) throw ParseError("duplicate table id '" + t.id + "'", index);
                out.skipped.emplace_back(index, "duplicate id '" + t.id + "'");
            } else {
                out.tables.push_back(std::move(t));
            }
        } catch (const ParseError& e) {
            if (opts.strict) throw;
            out.skipped.emplace_back(index, e.what());
        }
        ++index;
    }
    return out;
}

}  // namespace

ParseResult parse_corpus_text(const std::string& json_text, const ParseOptions& opts) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("corpus is not valid JSON: ") + e.what());
    }
    return parse_records(doc, opts);
}

ParseResult parse_corpus(const std::filesystem::path& path, const ParseOptions& opts) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open corpus file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_corpus_text(buf.str(), opts);
}

std::string header_signature(const std::vector<std::string>& headers) {
    std::string sig;
    for (std::size_t i = 0; i < headers.size(); ++i) {
        if (i) sig.push_back('|');
        sig += text::to_lower_ascii(text::trim(headers[i]));
    }
    return sig;
}

namespace {

// Header form used only for drop-pattern matching: lowercase, parenthesized
// suffixes removed, trailing '.'/':' stripped.
std::string header_for_pattern(const std::string& h) {
    std::string s = text::to_lower_ascii(text::trim(h));
    std::string no_paren;
    int depth = 0;
    for (char c : s) {
        if (c == '(') { ++depth; continue; }
        if (c == ')') { if (depth > 0) --depth; continue; }
        if (depth == 0) no_paren.push_back(c);
    }
    s = text::trim(no_paren);
    while (!s.empty() && (s.back() == '.' || s.back() == ':')) s.pop_back();
    return text::trim(s);
}

std::string pattern_key(const std::string& p) {
    std::string s = text::to_lower_ascii(text::trim(p));
    while (!s.empty() && (s.back() == '.' || s.back() == ':')) s.pop_back();
    return s;
}

// Matches on equality or word-prefix ("serial" matches "serial number").
const std::string* match_drop_pattern(const std::string& header,
                                      const std::vector<std::string>& patterns) {
    std::string h = header_for_pattern(header);
    if (h.empty()) return nullptr;
    for (const auto& p : patterns) {
        std::string key = pattern_key(p);
        if (key.empty()) continue;
        if (h == key || h.rfind(key + " ", 0) == 0) return &p;
    }
    return nullptr;
}

}  // namespace

std::pair<std::vector<CleanTable>, RejectionReport> clean_tables(
    const std::vector<RawTable>& tables, const CleaningConfig& cfg) {
    cfg.validate();
    std::vector<CleanTable> kept;
    RejectionReport report;

    for (const auto& raw : tables) {
        // Structural check first: ragged rows or merged-cell markers.
        bool malformed = false;
        std::size_t marker_cells = 0, total_cells = 0;
        for (const auto& row : raw.rows) {
            if (row.size() != raw.headers.size()) {
                malformed = true;
                break;
            }
            for (const auto& cell : row) {
                ++total_cells;
                if (!cfg.merged_cell_marker.empty() && text::trim(cell) == cfg.merged_cell_marker)
                    ++marker_cells;
            }
        }
        if (!malformed && total_cells > 0 && !cfg.merged_cell_marker.empty()) {
            double fraction = static_cast<double>(marker_cells) / static_cast<double>(total_cells);
            if (marker_cells > 0 && fraction > cfg.max_merged_cell_fraction) malformed = true;
        }
        if (malformed) {
            report.add(raw.id, RejectReason::malformed);
            continue;
        }

        // Semantic column drops happen before the size checks, so a table can
        // fall below min_cols once its noise columns are gone.
        CleanTable ct;
        static_cast<RawTable&>(ct) = raw;
        ct.headers.clear();
        std::vector<std::size_t> kept_cols;
        for (std::size_t c = 0; c < raw.headers.size(); ++c) {
            if (const std::string* pat = match_drop_pattern(raw.headers[c], cfg.drop_header_patterns)) {
                ct.dropped_columns.push_back({raw.headers[c], "pattern:" + *pat});
            } else {
                kept_cols.push_back(c);
                ct.headers.push_back(raw.headers[c]);
            }
        }
        if (kept_cols.size() != raw.headers.size()) {
            for (auto& row : ct.rows) {
                std::vector<std::string> slim;
                slim.reserve(kept_cols.size());
                for (std::size_t c : kept_cols) slim.push_back(row[c]);
                row = std::move(slim);
            }
        }

        const long rows = static_cast<long>(ct.rows.size());
        const long cols = static_cast<long>(ct.headers.size());
        if (rows < cfg.min_rows || cols < cfg.min_cols) {
            report.add(raw.id, RejectReason::too_small);
            continue;
        }
        if (rows > cfg.max_rows || cols > cfg.max_cols) {
            report.add(raw.id, RejectReason::too_large);
            continue;
        }

        ct.group_key = header_signature(ct.headers);
        kept.push_back(std::move(ct));
        ++report.kept;
    }
    return {std::move(kept), std::move(report)};
}

GroupingResult group_isomorphic(const std::vector<CleanTable>& tables, const CleaningConfig& cfg) {
    GroupingResult out;
    std::map<std::string, std::size_t> index_by_sig;
    for (const auto& t : tables) {
        auto [it, fresh] = index_by_sig.emplace(t.group_key, out.groups.size());
        if (fresh) out.groups.push_back({t.group_key, {}});
        out.groups[it->second].table_ids.push_back(t.id);
    }
    std::vector<TableGroup> surviving;
    for (auto& g : out.groups) {
        if (static_cast<int>(g.table_ids.size()) >= cfg.require_isomorphic_group_size) {
            surviving.push_back(std::move(g));
        } else {
            for (auto& id : g.table_ids) out.discarded.push_back(id);
        }
    }
    out.groups = std::move(surviving);
    return out;
}

namespace {

ordered_json table_to_json(const CleanTable& t) {
    ordered_json rec;
    rec["id"] = t.id;
    rec["title"] = t.title;
    rec["headers"] = t.headers;
    rec["rows"] = t.rows;
    if (!t.source_url.empty()) rec["source_url"] = t.source_url;
    rec["domain"] = t.domain;
    ordered_json dropped = ordered_json::array();
    for (const auto& d : t.dropped_columns) {
        dropped.push_back({{"header", d.header}, {"reason", d.reason}});
    }
    rec["dropped_columns"] = dropped;
    rec["group_key"] = t.group_key;
    return rec;
}

}  // namespace

void write_clean_corpus(const std::filesystem::path& path, const std::vector<CleanTable>& tables) {
    ordered_json doc = ordered_json::array();
    for (const auto& t : tables) doc.push_back(table_to_json(t));
    std::ofstream out(path);
    if (!out) throw Error("cannot write clean corpus: " + path.string());
    out << doc.dump(2) << '\n';
}

std::vector<CleanTable> read_clean_corpus(const std::filesystem::path& path) {
    ParseResult parsed = parse_corpus(path, ParseOptions{.strict = true});
    std::ifstream in(path);
    std::ostringstream buf;
    buf << in.rdbuf();
    ordered_json doc = ordered_json::parse(buf.str());

    std::vector<CleanTable> tables;
    std::size_t i = 0;
    for (const auto& rec : doc) {
        CleanTable ct;
        static_cast<RawTable&>(ct) = parsed.tables.at(i++);
        if (rec.contains("dropped_columns")) {
            for (const auto& d : rec["dropped_columns"]) {
                ct.dropped_columns.push_back(
                    {d.at("header").get<std::string>(), d.at("reason").get<std::string>()});
            }
        }
        if (rec.contains("group_key") && rec["group_key"].is_string())
            ct.group_key = rec["group_key"].get<std::string>();
        else
            ct.group_key = header_signature(ct.headers);
        tables.push_back(std::move(ct));
    }
    return tables;
}

void write_rejection_report(const std::filesystem::path& path, const RejectionReport& report) {
    ordered_json doc;
    doc["kept"] = report.kept;
    ordered_json counts;
    for (const auto& [reason, n] : report.counts()) counts[to_string(reason)] = n;
    doc["counts"] = counts;
    ordered_json rejected;
    for (const auto& [id, reason] : report.rejected) rejected[id] = to_string(reason);
    doc["rejected"] = rejected;
    std::ofstream out(path);
    if (!out) throw Error("cannot write rejection report: " + path.string());
    out << doc.dump(2) << '\n';
}

}  // namespace seekgen
