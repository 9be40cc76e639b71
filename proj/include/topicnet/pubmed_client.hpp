#pragma once

#include <chrono>
#include <cstddef>
#include <deque>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "topicnet/corpus.hpp"

namespace topicnet {

inline constexpr const char* kEutilsBaseUrl = "https://eutils.ncbi.nlm.nih.gov/entrez/eutils";

/// Parameters of one E-utilities pull.
struct FetchPlan {
    int year = 0;
    std::optional<int> month;
    std::size_t batch_size = 500;
    /// Requests per second; 0 selects the policy default (3/s, or 10/s with a key).
    double rate_limit = 0.0;
    std::string api_key;
    /// Search term combined with the publication-date window.
    std::string query = "journal article[pt]";
    int max_attempts = 5;
    std::chrono::milliseconds initial_backoff{500};

    /// Throws std::invalid_argument when batch_size or rate_limit is out of range.
    void validate() const;
    double effective_rate() const;
};

struct HttpResponse {
    /// HTTP status, or 0 when the request never completed.
    int status = 0;
    std::string body;
};

class Transport {
public:
    virtual ~Transport() = default;
    /// `target` is a path relative to the service root plus query string,
    /// e.g. `esearch.fcgi?db=pubmed&...`.
    virtual HttpResponse get(const std::string& target) = 0;
};

/// cpp-httplib transport against a base URL such as kEutilsBaseUrl.
class HttpTransport : public Transport {
public:
    explicit HttpTransport(const std::string& base_url);
    ~HttpTransport() override;
    HttpResponse get(const std::string& target) override;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

class Clock {
public:
    using time_point = std::chrono::steady_clock::time_point;
    virtual ~Clock() = default;
    virtual time_point now() = 0;
    virtual void sleep_until(time_point t) = 0;
    void sleep_for(std::chrono::nanoseconds d) { sleep_until(now() + d); }
};

class SteadyClock : public Clock {
public:
    time_point now() override;
    void sleep_until(time_point t) override;
};

/// Sliding-window limiter: at most floor(rate) requests start within any
/// one-second window (one request per 1/rate seconds when rate < 1).
class RateLimiter {
public:
    RateLimiter(double rate, Clock& clock);
    /// Blocks until a request may start and records it.
    void acquire();

private:
    double rate_;
    Clock& clock_;
    std::deque<Clock::time_point> recent_;
};

struct FetchStats {
    std::size_t written = 0;
    std::size_t skipped = 0;
    std::size_t requests = 0;
};

/// Thrown when a request keeps failing after the retry budget.
class FetchError : public std::runtime_error {
public:
    FetchError(const std::string& what, int status) : std::runtime_error(what), status_(status) {}
    int status() const noexcept { return status_; }

private:
    int status_;
};

class PubmedClient {
public:
    PubmedClient(Transport& transport, FetchPlan plan, Clock& clock);

    /// All PMIDs matching the plan's date window, paged by batch_size.
    std::vector<std::string> search_ids();

    /// Writes one corpus JSONL line per fetched article in input id order.
    /// Failed or incomplete batches are retried id by id; articles that still
    /// cannot be read are skipped and counted.
    FetchStats fetch_records(const std::vector<std::string>& ids, std::ostream& out);

    std::size_t requests() const noexcept { return requests_; }

private:
    HttpResponse request(const std::string& target);
    std::string common_params() const;

    Transport& transport_;
    FetchPlan plan_;
    Clock& clock_;
    RateLimiter limiter_;
    std::size_t requests_ = 0;
};

/// Result of parsing one efetch XML document: pmid -> record, in document
/// order. Articles without a PMID are counted in `unparsable`.
struct EfetchParse {
    std::vector<ArticleRecord> records;
    std::size_t unparsable = 0;
};

/// Throws DataError when the document is not well-formed XML.
EfetchParse parse_efetch_xml(const std::string& xml);

/// Month number from "06", "6", "Jun" or "June"; 0 when unrecognized.
int parse_month(std::string_view text);

std::string url_encode(std::string_view s);

}  // namespace topicnet
