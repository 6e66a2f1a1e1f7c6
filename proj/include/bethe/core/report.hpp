#pragma once

#include "bethe/core/nc_expression.hpp"
#include "bethe/core/polynomial.hpp"
#include "bethe/core/qseries.hpp"

#include <json.hpp>

#include <algorithm>
#include <string>
#include <vector>

namespace bethe {

using Json = nlohmann::ordered_json;

enum class Status { Pass, Fail, Inconclusive, Flagged };

inline const char* status_name(Status s) {
    switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Inconclusive: return "inconclusive";
    case Status::Flagged: return "flagged";
    }
    return "?";
}

struct CheckRecord {
    std::string id;       // unique, stable across runs
    std::string claim;    // name of the mathematical claim being checked
    Json inputs = Json::object();
    Status status = Status::Pass;
    Json witness = Json::object();
};

class Report {
public:
    void add(CheckRecord r) { records_.push_back(std::move(r)); }
    void merge(const Report& o) { records_.insert(records_.end(), o.records_.begin(), o.records_.end()); }

    const std::vector<CheckRecord>& records() const { return records_; }
    std::size_t count(Status s) const {
        return std::size_t(std::count_if(records_.begin(), records_.end(),
                                         [s](const CheckRecord& r) { return r.status == s; }));
    }
    bool ok() const { return count(Status::Fail) == 0; }
    bool all_pass() const { return count(Status::Pass) == records_.size(); }

    /// Order-normalized by id.
    void sort_by_id() {
        std::stable_sort(records_.begin(), records_.end(),
                         [](const CheckRecord& a, const CheckRecord& b) { return a.id < b.id; });
    }

private:
    std::vector<CheckRecord> records_;
};

// Canonical JSON: sorted term lists, rationals as decimal strings.

inline Json to_json(const Polynomial& p) {
    Json terms = Json::array();
    for (auto& [m, c] : p.terms()) {
        Json mono = Json::array();
        for (auto& [v, e] : m.factors()) mono.push_back(Json::array({v.name(), e}));
        terms.push_back(Json{{"coef", c.get_str()}, {"monomial", mono}});
    }
    return terms;
}

inline Json to_json(const NCExpression& x, const GeneratorNamer& name) {
    Json terms = Json::array();
    for (auto& [w, c] : x.terms()) {
        Json word = Json::array();
        for (auto g : w) word.push_back(name(g));
        terms.push_back(Json{{"coef", c.get_str()}, {"word", word}});
    }
    return terms;
}

inline Json to_json(const QSeries& q) {
    Json a = Json::array();
    for (auto& c : q.coefficients()) a.push_back(c.get_str());
    return a;
}

inline Json to_json(const CheckRecord& r) {
    return Json{{"id", r.id},
                {"citation", r.claim},
                {"inputs", r.inputs},
                {"status", status_name(r.status)},
                {"witness", r.witness}};
}

} // namespace bethe
