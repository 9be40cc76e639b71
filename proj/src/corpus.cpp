#include "topicnet/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "topicnet/error.hpp"
#include "topicnet/text.hpp"

namespace topicnet {

using nlohmann::json;

namespace {

std::string optional_string(const json& obj, const char* key) {
    auto it = obj.find(key);
    if (it == obj.end() || it->is_null()) return {};
    if (!it->is_string()) throw std::invalid_argument(std::string(key) + " must be a string or null");
    return it->get<std::string>();
}

ArticleRecord record_from_json(const json& obj) {
    if (!obj.is_object()) throw std::invalid_argument("line is not a JSON object");
    ArticleRecord rec;
    const auto& pmid = obj.at("pmid");
    if (pmid.is_string()) {
        rec.pmid = pmid.get<std::string>();
    } else if (pmid.is_number_integer()) {
        rec.pmid = std::to_string(pmid.get<long long>());
    } else {
        throw std::invalid_argument("pmid must be a string");
    }
    if (rec.pmid.empty()) throw std::invalid_argument("empty pmid");
    rec.year = obj.at("year").get<int>();
    if (rec.year <= 0) throw std::invalid_argument("year must be positive");
    if (auto it = obj.find("month"); it != obj.end() && !it->is_null()) {
        rec.month = it->get<int>();
        if (rec.month < 0 || rec.month > 12) throw std::invalid_argument("month out of range");
    }
    rec.journal_issn = optional_string(obj, "journal_issn");
    rec.journal_title = optional_string(obj, "journal_title");
    if (auto it = obj.find("mesh"); it != obj.end() && !it->is_null()) {
        rec.descriptors = it->get<std::vector<std::string>>();
    }
    return rec;
}

}  // namespace

ParseReport parse_records(std::istream& in, const WarningSink& warn) {
    ParseReport report;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            ArticleRecord rec = record_from_json(json::parse(line));
            if (!seen.insert(rec.pmid).second) throw std::invalid_argument("duplicate pmid " + rec.pmid);
            report.records.push_back(std::move(rec));
        } catch (const std::exception& e) {
            ++report.skipped;
            if (warn) warn(line_no, e.what());
        }
    }
    return report;
}

ParseReport parse_records(const std::filesystem::path& path, const WarningSink& warn) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open record file " + path.string());
    return parse_records(in, warn);
}

std::string to_jsonl(const ArticleRecord& rec) {
    json obj;
    obj["pmid"] = rec.pmid;
    obj["year"] = rec.year;
    obj["month"] = rec.month == 0 ? json(nullptr) : json(rec.month);
    obj["journal_issn"] = rec.journal_issn.empty() ? json(nullptr) : json(rec.journal_issn);
    obj["journal_title"] = rec.journal_title.empty() ? json(nullptr) : json(rec.journal_title);
    obj["mesh"] = rec.descriptors;
    return obj.dump();
}

std::string normalize_issn(std::string_view issn) {
    std::string out;
    for (unsigned char c : issn) {
        if (!std::isspace(c)) out += static_cast<char>(std::toupper(c));
    }
    return out;
}

bool JournalList::contains(const ArticleRecord& rec) const {
    if (!rec.journal_issn.empty() && issns.count(normalize_issn(rec.journal_issn))) return true;
    return !rec.journal_title.empty() && titles.count(fold_case(trim(rec.journal_title)));
}

JournalList load_journal_list(std::istream& in, int year, const std::string& source_name) {
    JournalList list;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        auto cols = split_csv(line);
        if (line_no == 1 && !cols.empty() && trim(cols[0]) == "issn") continue;
        if (cols.size() != 4) {
            throw ParseError(source_name, line_no, "expected 4 columns, got " + std::to_string(cols.size()));
        }
        int row_year = 0;
        try {
            row_year = std::stoi(std::string(trim(cols[2])));
        } catch (const std::exception&) {
            throw ParseError(source_name, line_no, "unparsable year '" + cols[2] + "'");
        }
        std::string stratum(trim(cols[3]));
        if (stratum != "I") throw ParseError(source_name, line_no, "stratum must be I, got '" + stratum + "'");
        if (row_year != year) continue;
        if (auto issn = normalize_issn(cols[0]); !issn.empty()) list.issns.insert(issn);
        if (auto title = fold_case(trim(cols[1])); !title.empty()) list.titles.insert(title);
    }
    return list;
}

JournalList load_journal_list(const std::filesystem::path& path, int year) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open journal list " + path.string());
    return load_journal_list(in, year, path.string());
}

Strata stratify(const std::vector<ArticleRecord>& records, const StratumConfig& cfg) {
    if (cfg.ni_month < 1 || cfg.ni_month > 12) throw std::invalid_argument("ni_month must be in [1, 12]");
    if (cfg.impactful_journals.empty()) throw std::invalid_argument("impactful journal list is empty");
    Strata out;
    for (const ArticleRecord& rec : records) {
        if (rec.year != cfg.year) {
            ++out.rejected_wrong_year;
            continue;
        }
        if (cfg.impactful_journals.contains(rec)) {
            out.impactful.push_back(rec);
            continue;
        }
        ++out.unlisted_journal;
        if (rec.journal_issn.empty() && rec.journal_title.empty()) ++out.no_journal_key;
        out.non_impactful.push_back(rec);
        if (rec.month == cfg.ni_month) out.non_impactful_month.push_back(rec);
    }
    return out;
}

BagReport to_topic_bags(const std::vector<ArticleRecord>& corpus, const MeshTaxonomy& tax) {
    BagReport report;
    for (const ArticleRecord& rec : corpus) {
        TopicBag bag{rec.pmid, {}};
        for (const std::string& desc : rec.descriptors) {
            const auto* d = tax.find(desc);
            if (!d) {
                ++report.unknown_descriptors;
                continue;
            }
            bag.topics.merge(second_level_c_codes(d->codes));
        }
        if (bag.topics.empty()) {
            ++report.dropped_empty;
        } else {
            report.bags.push_back(std::move(bag));
        }
    }
    return report;
}

void write_bags(std::ostream& out, const std::vector<TopicBag>& bags) {
    for (const TopicBag& bag : bags) {
        json topics = json::array();
        for (const TreeCode& c : bag.topics) topics.push_back(c.str());
        out << json{{"pmid", bag.pmid}, {"topics", topics}}.dump() << '\n';
    }
}

std::vector<TopicBag> read_bags(std::istream& in, const std::string& source_name) {
    std::vector<TopicBag> bags;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        try {
            json obj = json::parse(line);
            TopicBag bag;
            bag.pmid = obj.at("pmid").get<std::string>();
            for (const auto& t : obj.at("topics")) {
                TreeCode code = TreeCode::parse(t.get<std::string>());
                if (code.level() != 2 || code.branch() != 'C') {
                    throw std::invalid_argument("topic " + code.str() + " is not a level-2 C code");
                }
                bag.topics.insert(std::move(code));
            }
            bags.push_back(std::move(bag));
        } catch (const std::exception& e) {
            throw ParseError(source_name, line_no, e.what());
        }
    }
    return bags;
}

std::vector<TopicBag> read_bags(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open topic bag file " + path.string());
    return read_bags(in, path.string());
}

}  // namespace topicnet
