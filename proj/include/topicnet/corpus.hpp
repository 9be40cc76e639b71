#pragma once

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "topicnet/mesh_taxonomy.hpp"

namespace topicnet {

/// One publication. `month` is 1-12, or 0 when unknown.
struct ArticleRecord {
    std::string pmid;
    int year = 0;
    int month = 0;
    std::string journal_issn;
    std::string journal_title;
    std::vector<std::string> descriptors;

    friend bool operator==(const ArticleRecord&, const ArticleRecord&) = default;
};

struct ParseReport {
    std::vector<ArticleRecord> records;
    std::size_t skipped = 0;
};

/// Receives `(line number, message)` for every skipped line.
using WarningSink = std::function<void(std::size_t, const std::string&)>;

/// Reads corpus JSONL: one object per line with keys pmid, year, month,
/// journal_issn, journal_title, mesh. Malformed lines (bad JSON, missing pmid,
/// nonpositive year, month outside 0-12, duplicate pmid) are skipped and
/// counted. Blank lines are ignored.
ParseReport parse_records(std::istream& in, const WarningSink& warn = {});
ParseReport parse_records(const std::filesystem::path& path, const WarningSink& warn = {});

/// JSONL line for a record (inverse of the parser; month 0 serializes as null).
std::string to_jsonl(const ArticleRecord& rec);

/// Journals considered impactful in a given year. ISSN keys are normalized to
/// upper case without whitespace; titles are case-folded.
struct JournalList {
    std::set<std::string> issns;
    std::set<std::string> titles;

    bool empty() const noexcept { return issns.empty() && titles.empty(); }
    /// ISSN match first, then case-folded exact title.
    bool contains(const ArticleRecord& rec) const;
};

/// Reads the journal list CSV (`issn,journal_title,year,stratum`), keeping rows
/// for `year` whose stratum is `I`.
JournalList load_journal_list(std::istream& in, int year, const std::string& source_name = "<stream>");
JournalList load_journal_list(const std::filesystem::path& path, int year);

std::string normalize_issn(std::string_view issn);

struct StratumConfig {
    int year = 0;
    JournalList impactful_journals;
    int ni_month = 6;
};

struct Strata {
    std::vector<ArticleRecord> impactful;
    std::vector<ArticleRecord> non_impactful;
    std::vector<ArticleRecord> non_impactful_month;
    std::size_t rejected_wrong_year = 0;
    /// Accepted records whose journal is absent from the list (all of NI).
    std::size_t unlisted_journal = 0;
    /// Accepted records carrying neither ISSN nor title.
    std::size_t no_journal_key = 0;
};

/// Splits records into I / NI / NI-month. Input order is preserved within each
/// stratum; membership does not depend on order. Undated NI records stay in NI
/// but never enter NI-month. Throws std::invalid_argument on an invalid config.
Strata stratify(const std::vector<ArticleRecord>& records, const StratumConfig& cfg);

/// An article reduced to its level-2 C-branch topics.
struct TopicBag {
    std::string pmid;
    std::set<TreeCode> topics;

    friend bool operator==(const TopicBag&, const TopicBag&) = default;
};

struct BagReport {
    std::vector<TopicBag> bags;
    std::size_t dropped_empty = 0;
    std::size_t unknown_descriptors = 0;
};

BagReport to_topic_bags(const std::vector<ArticleRecord>& corpus, const MeshTaxonomy& tax);

/// Topic bag JSONL: `{"pmid": str, "topics": [code, ...]}`.
void write_bags(std::ostream& out, const std::vector<TopicBag>& bags);
std::vector<TopicBag> read_bags(std::istream& in, const std::string& source_name = "<stream>");
std::vector<TopicBag> read_bags(const std::filesystem::path& path);

}  // namespace topicnet
