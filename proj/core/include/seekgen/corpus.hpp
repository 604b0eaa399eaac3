#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace seekgen {

/// A titled table as parsed from a corpus file. Rows are rectangular:
/// every row has exactly headers.size() cells once parsing succeeds.
struct RawTable {
    std::string id;
    std::string title;
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
    std::string source_url;  // optional
    std::string domain;      // optional corpus-topic label; "general" if absent
};

struct DroppedColumn {
    std::string header;
    std::string reason;  // "pattern:<p>" for semantic drops
};

/// A table that survived cleaning. headers/rows are post-drop.
struct CleanTable : RawTable {
    std::vector<DroppedColumn> dropped_columns;
    std::string group_key;  // canonical header signature
};

struct CleaningConfig {
    int min_rows = 10;
    int max_rows = 200;
    int min_cols = 3;
    int max_cols = 20;
    std::vector<std::string> drop_header_patterns = {"#", "no.", "notes", "ref",
                                                     "references", "serial"};
    int require_isomorphic_group_size = 2;
    std::string merged_cell_marker = "^";
    double max_merged_cell_fraction = 0.0;

    /// Throws ConfigError when bounds are inverted or the pattern list is empty.
    void validate() const;
};

enum class RejectReason { too_small, too_large, malformed, no_group };

std::string to_string(RejectReason r);
RejectReason reject_reason_from_string(const std::string& s);

/// Partition record for one cleaning run: every input table is either kept
/// or rejected with exactly one primary reason.
struct RejectionReport {
    std::vector<std::pair<std::string, RejectReason>> rejected;  // input order
    std::size_t kept = 0;

    void add(std::string id, RejectReason reason) { rejected.emplace_back(std::move(id), reason); }
    std::map<RejectReason, std::size_t> counts() const;
    std::size_t total() const { return kept + rejected.size(); }
};

struct ParseOptions {
    bool strict = false;      // malformed record / duplicate id -> throw
    bool pad_ragged = false;  // pad short rows with empty cells instead of rejecting
};

struct ParseResult {
    std::vector<RawTable> tables;
    std::vector<std::pair<long, std::string>> skipped;  // (record index, reason)
};

/// Reads a corpus file: a JSON array of {id, title, headers, rows,
/// source_url?, domain?} records. Duplicate ids keep the first occurrence.
ParseResult parse_corpus(const std::filesystem::path& path, const ParseOptions& opts = {});

/// Same parser over an in-memory JSON string (used by tests and fixtures).
ParseResult parse_corpus_text(const std::string& json_text, const ParseOptions& opts = {});

/// Multi-stage cleaning: structural (merged/ragged) check, semantic column
/// drops, then size bounds on the post-drop table. Rejections are data.
std::pair<std::vector<CleanTable>, RejectionReport> clean_tables(
    const std::vector<RawTable>& tables, const CleaningConfig& cfg);

struct TableGroup {
    std::string signature;
    std::vector<std::string> table_ids;  // input order
};

struct GroupingResult {
    std::vector<TableGroup> groups;       // signature order of first appearance
    std::vector<std::string> discarded;   // tables in groups below the size floor
};

/// Groups tables by canonical header signature and discards groups smaller
/// than cfg.require_isomorphic_group_size.
GroupingResult group_isomorphic(const std::vector<CleanTable>& tables, const CleaningConfig& cfg);

/// Canonical signature: headers lowercased, trimmed, order-preserving,
/// joined with '|'.
std::string header_signature(const std::vector<std::string>& headers);

// Artifact I/O.
void write_clean_corpus(const std::filesystem::path& path, const std::vector<CleanTable>& tables);
std::vector<CleanTable> read_clean_corpus(const std::filesystem::path& path);
void write_rejection_report(const std::filesystem::path& path, const RejectionReport& report);

}  // namespace seekgen
