#include <doctest.h>

#include <sstream>

#include "topicnet/corpus.hpp"
#include "topicnet/error.hpp"

using namespace topicnet;

namespace {

MeshTaxonomy taxonomy() {
    std::istringstream in(
        "descriptor_ui\tdescriptor_name\ttree_numbers\n"
        "D1\tAlpha\tC01.100.200\n"
        "D2\tBeta\tC04.588;C04.588.180\n"
        "D3\tGamma\tC01.100;C10.228\n"
        "D4\tHumans\tB01.050\n");
    return load_taxonomy(in);
}

ArticleRecord record(std::string pmid, int year, int month, std::string issn, std::string title) {
    return {std::move(pmid), year, month, std::move(issn), std::move(title), {}};
}

}  // namespace

TEST_CASE("records parse and skip bad lines with warnings") {
    std::istringstream in(
        R"({"pmid":"1","year":1999,"month":6,"journal_issn":"0028-4793","journal_title":"N Engl J Med","mesh":["Alpha"]})"
        "\n"
        R"({"pmid":2,"year":1999,"month":null,"journal_issn":null,"journal_title":"X","mesh":[]})"
        "\n"
        "not json\n"
        R"({"pmid":"3","year":1999,"month":13})"
        "\n"
        R"({"pmid":"1","year":1999})"
        "\n\n");
    std::vector<std::size_t> warned;
    const auto report = parse_records(in, [&](std::size_t line, const std::string&) { warned.push_back(line); });
    REQUIRE(report.records.size() == 2);
    CHECK(report.records[0].month == 6);
    CHECK(report.records[1].pmid == "2");
    CHECK(report.records[1].month == 0);
    CHECK(report.skipped == 3);
    CHECK(warned == std::vector<std::size_t>{3, 4, 5});
}

TEST_CASE("record JSONL round-trips") {
    ArticleRecord rec{"42", 2019, 0, "", "Some Journal", {"Alpha", "Beta"}};
    std::istringstream in(to_jsonl(rec) + "\n");
    const auto report = parse_records(in);
    REQUIRE(report.records.size() == 1);
    CHECK(report.records[0] == rec);
}

TEST_CASE("journal list keeps stratum I rows for the year") {
    std::istringstream in(
        "issn,title,year,stratum\n"
        "0028-4793,N Engl J Med,1999,I\n"
        "0140-6736,Lancet,2019,I\n"
        ",\"Journal, With Comma\",1999,I\n");
    const auto list = load_journal_list(in, 1999);
    CHECK(list.issns == std::set<std::string>{"0028-4793"});
    CHECK(list.titles.count("journal, with comma"));
    CHECK(list.contains(record("1", 1999, 1, "0028-4793 ", "")));
    CHECK(list.contains(record("1", 1999, 1, "", "JOURNAL, WITH COMMA")));
    CHECK_FALSE(list.contains(record("1", 1999, 1, "0140-6736", "Lancet")));

    std::istringstream bad("issn,title,year,stratum\n1234-5678,X,1999,NI\n");
    CHECK_THROWS_AS(load_journal_list(bad, 1999), ParseError);
}

TEST_CASE("stratification") {
    JournalList list;
    list.issns.insert("1111-1111");
    const std::vector<ArticleRecord> records{
        record("1", 1999, 6, "1111-1111", ""),  // I
        record("2", 1999, 6, "2222-2222", ""),  // NI, June
        record("3", 1999, 7, "", "Unknown"),    // NI
        record("4", 1999, 0, "", ""),           // NI, no key, unknown month
        record("5", 2000, 6, "1111-1111", ""),  // wrong year
    };
    const Strata s = stratify(records, {1999, list, 6});
    CHECK(s.impactful.size() == 1);
    CHECK(s.non_impactful.size() == 3);
    CHECK(s.non_impactful_month.size() == 1);
    CHECK(s.non_impactful_month[0].pmid == "2");
    CHECK(s.rejected_wrong_year == 1);
    CHECK(s.unlisted_journal == 3);
    CHECK(s.no_journal_key == 1);
    // Strata partition the in-year records.
    CHECK(s.impactful.size() + s.non_impactful.size() + s.rejected_wrong_year == records.size());

    CHECK_THROWS_AS(stratify(records, {1999, list, 13}), std::invalid_argument);
    CHECK_THROWS_AS(stratify(records, {1999, JournalList{}, 6}), std::invalid_argument);
}

TEST_CASE("topic bags collapse descriptors to second-level C codes") {
    const auto tax = taxonomy();
    std::vector<ArticleRecord> corpus{
        {"1", 1999, 6, "", "", {"Alpha", "Gamma", "Unlisted"}},
        {"2", 1999, 6, "", "", {"Humans"}},
        {"3", 1999, 6, "", "", {"Beta"}},
    };
    const BagReport r = to_topic_bags(corpus, tax);
    REQUIRE(r.bags.size() == 2);
    CHECK(r.bags[0].topics == std::set<TreeCode>{TreeCode::parse("C01.100"), TreeCode::parse("C10.228")});
    CHECK(r.bags[1].topics == std::set<TreeCode>{TreeCode::parse("C04.588")});
    CHECK(r.dropped_empty == 1);
    CHECK(r.unknown_descriptors == 1);
}

TEST_CASE("bags round-trip and reject non-level-2 topics") {
    std::vector<TopicBag> bags{{"1", {TreeCode::parse("C01.100"), TreeCode::parse("C04.588")}}, {"2", {}}};
    std::ostringstream out;
    write_bags(out, bags);
    std::istringstream in(out.str());
    CHECK(read_bags(in) == bags);

    std::istringstream bad("{\"pmid\":\"1\",\"topics\":[\"C01\"]}\n");
    CHECK_THROWS_AS(read_bags(bad), ParseError);
}
