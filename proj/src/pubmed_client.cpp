#include "topicnet/pubmed_client.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include <httplib.h>
#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>
#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "topicnet/error.hpp"
#include "topicnet/text.hpp"

namespace topicnet {

void FetchPlan::validate() const {
    if (batch_size < 1 || batch_size > 10000) throw std::invalid_argument("batch_size must be in [1, 10000]");
    if (rate_limit < 0.0 || !std::isfinite(rate_limit)) throw std::invalid_argument("rate_limit must be positive");
    if (year <= 0) throw std::invalid_argument("year must be positive");
    if (month && (*month < 1 || *month > 12)) throw std::invalid_argument("month must be in [1, 12]");
    if (max_attempts < 1) throw std::invalid_argument("max_attempts must be >= 1");
}

double FetchPlan::effective_rate() const {
    if (rate_limit > 0.0) return rate_limit;
    return api_key.empty() ? 3.0 : 10.0;
}

// --- transport ------------------------------------------------------------

struct HttpTransport::Impl {
    std::unique_ptr<httplib::Client> client;
    std::string prefix;
};

HttpTransport::HttpTransport(const std::string& base_url) : impl_(std::make_unique<Impl>()) {
    // Split "scheme://host[:port]/path" into the client origin and a path prefix.
    const auto scheme_end = base_url.find("://");
    const auto path_start = base_url.find('/', scheme_end == std::string::npos ? 0 : scheme_end + 3);
    const std::string origin = path_start == std::string::npos ? base_url : base_url.substr(0, path_start);
    impl_->prefix = path_start == std::string::npos ? "" : base_url.substr(path_start);
    if (!impl_->prefix.empty() && impl_->prefix.back() == '/') impl_->prefix.pop_back();
    impl_->client = std::make_unique<httplib::Client>(origin);
    impl_->client->set_connection_timeout(10);
    impl_->client->set_read_timeout(60);
    impl_->client->set_follow_location(true);
}

HttpTransport::~HttpTransport() = default;

HttpResponse HttpTransport::get(const std::string& target) {
    auto res = impl_->client->Get(impl_->prefix + "/" + target);
    if (!res) return {0, {}};
    return {res->status, res->body};
}

Clock::time_point SteadyClock::now() { return std::chrono::steady_clock::now(); }

void SteadyClock::sleep_until(time_point t) { std::this_thread::sleep_until(t); }

// --- rate limiting ----------------------------------------------------------

RateLimiter::RateLimiter(double rate, Clock& clock) : rate_(rate), clock_(clock) {
    if (!(rate > 0.0)) throw std::invalid_argument("rate limit must be positive");
}

void RateLimiter::acquire() {
    using namespace std::chrono;
    if (rate_ < 1.0) {
        const auto spacing = duration_cast<Clock::time_point::duration>(duration<double>(1.0 / rate_));
        if (!recent_.empty() && clock_.now() < recent_.back() + spacing) clock_.sleep_until(recent_.back() + spacing);
        recent_.assign(1, clock_.now());
        return;
    }
    const auto cap = static_cast<std::size_t>(std::floor(rate_));
    const auto window = duration_cast<Clock::time_point::duration>(seconds(1));
    auto now = clock_.now();
    while (!recent_.empty() && recent_.front() + window <= now) recent_.pop_front();
    if (recent_.size() >= cap) {
        clock_.sleep_until(recent_.front() + window);
        now = clock_.now();
        while (!recent_.empty() && recent_.front() + window <= now) recent_.pop_front();
    }
    recent_.push_back(now);
}

// --- helpers ---------------------------------------------------------------

std::string url_encode(std::string_view s) {
    std::string out;
    for (unsigned char c : s) {
        if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
            out += static_cast<char>(c);
        } else {
            out += fmt::format("%{:02X}", c);
        }
    }
    return out;
}

int parse_month(std::string_view text) {
    text = trim(text);
    if (text.empty()) return 0;
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isdigit(c); })) {
        int m = std::stoi(std::string(text));
        return m >= 1 && m <= 12 ? m : 0;
    }
    static constexpr std::array<std::string_view, 12> names{"jan", "feb", "mar", "apr", "may", "jun",
                                                            "jul", "aug", "sep", "oct", "nov", "dec"};
    const std::string folded = fold_case(text.substr(0, 3));
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (folded == names[i]) return static_cast<int>(i) + 1;
    }
    return 0;
}

namespace {

namespace pt = boost::property_tree;

int days_in_month(int year, int month) {
    static constexpr int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return month == 2 && leap ? 29 : days[month - 1];
}

bool transient(int status) { return status == 0 || status == 429 || status >= 500; }

/// (year, month) from a PubDate/ArticleDate node; MedlineDate strings such as
/// "1999 Jun-Jul" are read from their leading year and month.
std::pair<int, int> read_date(const pt::ptree& date) {
    int year = 0;
    int month = 0;
    if (auto y = date.get_optional<std::string>("Year")) year = std::atoi(y->c_str());
    if (auto m = date.get_optional<std::string>("Month")) month = parse_month(*m);
    if (auto md = date.get_optional<std::string>("MedlineDate"); md && year == 0) {
        std::istringstream in(*md);
        std::string y, m;
        in >> y >> m;
        year = std::atoi(y.c_str());
        month = parse_month(m.substr(0, m.find('-')));
    }
    return {year, month};
}

std::optional<ArticleRecord> read_article(const pt::ptree& article) {
    const auto citation = article.get_child_optional("MedlineCitation");
    if (!citation) return std::nullopt;
    ArticleRecord rec;
    rec.pmid = std::string(trim(citation->get<std::string>("PMID", "")));
    if (rec.pmid.empty()) return std::nullopt;
    const auto art = citation->get_child_optional("Article");
    if (art) {
        rec.journal_issn = std::string(trim(art->get<std::string>("Journal.ISSN", "")));
        rec.journal_title = std::string(trim(art->get<std::string>("Journal.Title", "")));
        if (auto pub = art->get_child_optional("Journal.JournalIssue.PubDate")) {
            std::tie(rec.year, rec.month) = read_date(*pub);
        }
        if (rec.month == 0 || rec.year == 0) {
            for (const auto& [tag, node] : *art) {
                if (tag != "ArticleDate" || node.get<std::string>("<xmlattr>.DateType", "") != "Electronic") continue;
                auto [y, m] = read_date(node);
                if (rec.year == 0) rec.year = y;
                if (rec.month == 0) rec.month = m;
            }
        }
    }
    if (auto headings = citation->get_child_optional("MeshHeadingList")) {
        for (const auto& [tag, heading] : *headings) {
            if (tag != "MeshHeading") continue;
            if (auto name = heading.get_optional<std::string>("DescriptorName")) {
                rec.descriptors.emplace_back(trim(*name));
            }
        }
    }
    if (rec.year <= 0) return std::nullopt;
    return rec;
}

}  // namespace

EfetchParse parse_efetch_xml(const std::string& xml) {
    pt::ptree tree;
    std::istringstream in(xml);
    try {
        pt::read_xml(in, tree, pt::xml_parser::trim_whitespace);
    } catch (const pt::xml_parser_error& e) {
        throw DataError(std::string("malformed efetch XML: ") + e.what());
    }
    EfetchParse out;
    const auto set = tree.get_child_optional("PubmedArticleSet");
    if (!set) return out;
    for (const auto& [tag, article] : *set) {
        if (tag != "PubmedArticle") continue;
        if (auto rec = read_article(article)) {
            out.records.push_back(*std::move(rec));
        } else {
            ++out.unparsable;
        }
    }
    return out;
}

// --- client ------------------------------------------------------------------

PubmedClient::PubmedClient(Transport& transport, FetchPlan plan, Clock& clock)
    : transport_(transport), plan_((plan.validate(), std::move(plan))), clock_(clock),
      limiter_(plan_.effective_rate(), clock) {}

std::string PubmedClient::common_params() const {
    return plan_.api_key.empty() ? std::string() : "&api_key=" + url_encode(plan_.api_key);
}

HttpResponse PubmedClient::request(const std::string& target) {
    auto backoff = plan_.initial_backoff;
    HttpResponse last;
    for (int attempt = 1; attempt <= plan_.max_attempts; ++attempt) {
        limiter_.acquire();
        ++requests_;
        last = transport_.get(target);
        if (last.status == 200) return last;
        if (!transient(last.status)) break;
        if (attempt < plan_.max_attempts) {
            clock_.sleep_for(backoff);
            backoff *= 2;
        }
    }
    throw FetchError("request failed with status " + std::to_string(last.status) + ": " + target, last.status);
}

std::vector<std::string> PubmedClient::search_ids() {
    const int first_month = plan_.month.value_or(1);
    const int last_month = plan_.month.value_or(12);
    const std::string window = fmt::format("&datetype=pdat&mindate={}/{:02}/01&maxdate={}/{:02}/{:02}", plan_.year,
                                           first_month, plan_.year, last_month,
                                           days_in_month(plan_.year, last_month));
    std::vector<std::string> ids;
    std::size_t start = 0;
    while (true) {
        const std::string target = "esearch.fcgi?db=pubmed&retmode=json&term=" + url_encode(plan_.query) + window +
                                   "&retstart=" + std::to_string(start) +
                                   "&retmax=" + std::to_string(plan_.batch_size) + common_params();
        const HttpResponse res = request(target);
        std::size_t total = 0;
        std::vector<std::string> page;
        try {
            const auto doc = nlohmann::json::parse(res.body).at("esearchresult");
            total = std::stoull(doc.at("count").get<std::string>());
            page = doc.at("idlist").get<std::vector<std::string>>();
        } catch (const std::exception& e) {
            throw DataError(std::string("malformed esearch response: ") + e.what());
        }
        ids.insert(ids.end(), page.begin(), page.end());
        start += page.size();
        if (page.empty() || start >= total) break;
    }
    return ids;
}

FetchStats PubmedClient::fetch_records(const std::vector<std::string>& ids, std::ostream& out) {
    FetchStats stats;
    const std::size_t before = requests_;
    std::map<std::string, std::string> lines;
    auto fetch = [&](const std::vector<std::string>& batch) {
        std::string list;
        for (const auto& id : batch) list += (list.empty() ? "" : ",") + id;
        return request("efetch.fcgi?db=pubmed&retmode=xml&id=" + list + common_params());
    };
    auto absorb = [&](const std::string& body) {
        for (const ArticleRecord& rec : parse_efetch_xml(body).records) lines.emplace(rec.pmid, to_jsonl(rec));
    };
    for (std::size_t start = 0; start < ids.size(); start += plan_.batch_size) {
        const std::vector<std::string> batch(ids.begin() + static_cast<std::ptrdiff_t>(start),
                                             ids.begin() + static_cast<std::ptrdiff_t>(
                                                               std::min(ids.size(), start + plan_.batch_size)));
        try {
            absorb(fetch(batch).body);
        } catch (const std::exception&) {
            // Fall through to the per-id pass below.
        }
        for (const auto& id : batch) {
            if (lines.count(id)) continue;
            try {
                absorb(fetch({id}).body);
            } catch (const DataError&) {
                // Unparsable single-article response: counted as skipped.
            }
        }
    }
    for (const auto& id : ids) {
        if (auto it = lines.find(id); it != lines.end()) {
            out << it->second << '\n';
            ++stats.written;
        } else {
            ++stats.skipped;
        }
    }
    stats.requests = requests_ - before;
    return stats;
}

}  // namespace topicnet
