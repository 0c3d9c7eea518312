#include "snsim/feature_space.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>

#include "snsim/errors.hpp"
#include "snsim/util.hpp"

namespace snsim {

namespace {

constexpr double kShareSlack = 1e-9;

std::vector<SnsId> canonical(std::vector<SnsId> ids) {
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    return ids;
}

bool contains(const std::vector<SnsId>& sorted, const SnsId& id) {
    return std::binary_search(sorted.begin(), sorted.end(), id);
}

// non-empty CSV lines with the 1-based row number, header skipped
std::vector<std::pair<std::size_t, std::string>> csv_rows(std::string_view csv,
                                                          const char* expected_header) {
    std::vector<std::pair<std::size_t, std::string>> rows;
    std::size_t row_no = 0;
    for (const std::string& raw : split(csv, '\n')) {
        ++row_no;
        std::string line(trim(raw));
        if (line.empty()) continue;
        if (row_no == 1) {
            if (line != expected_header)
                throw ParseError(1, std::string("expected header '") +
                                        expected_header + "', got '" + line + "'");
            continue;
        }
        rows.emplace_back(row_no, std::move(line));
    }
    if (row_no == 0)
        throw ParseError(1, std::string("empty document, expected header '") +
                                expected_header + "'");
    return rows;
}

double parse_share(const std::string& token, std::size_t row_no) {
    double value = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw ParseError(row_no, "bad share value '" + token + "'");
    return value;
}

} // namespace

FeatureSpace::FeatureSpace(std::vector<SnsId> sns_ids, std::vector<Feature> features)
    : sns_ids_(canonical(std::move(sns_ids))), features_(std::move(features)) {
    std::set<std::string> seen;
    double total = 0.0;
    for (auto& f : features_) {
        if (!seen.insert(f.id).second)
            throw std::invalid_argument("duplicate feature id: " + f.id);
        if (f.share < 0.0)
            throw std::invalid_argument("negative share for feature " + f.id);
        f.availability = canonical(std::move(f.availability));
        if (f.availability.empty())
            throw std::invalid_argument("feature " + f.id + " is offered by no site");
        for (const auto& s : f.availability)
            if (!contains(sns_ids_, s))
                throw std::invalid_argument("feature " + f.id +
                                            " names unknown site " + s);
        total += f.share;
    }
    if (total > 1.0 + kShareSlack)
        throw std::invalid_argument("feature shares sum to " + fmt_double(total) +
                                    ", more than the whole time span");
}

double FeatureSpace::total_share() const {
    double total = 0.0;
    for (const auto& f : features_) total += f.share;
    return total;
}

double FeatureSpace::region_share(const std::vector<SnsId>& region) const {
    std::vector<SnsId> want = canonical(region);
    if (want.empty()) throw std::invalid_argument("region must be non-empty");
    for (const auto& s : want)
        if (!contains(sns_ids_, s))
            throw std::invalid_argument("unknown site in region: " + s);
    double total = 0.0;
    for (const auto& f : features_)
        if (f.availability == want) total += f.share;
    return total;
}

double FeatureSpace::novelty(const SnsId& new_sns, const SnsId& old_sns) const {
    if (new_sns == old_sns)
        throw std::invalid_argument("novelty of a site against itself");
    if (!contains(sns_ids_, new_sns))
        throw std::invalid_argument("unknown site: " + new_sns);
    if (!contains(sns_ids_, old_sns))
        throw std::invalid_argument("unknown site: " + old_sns);
    double total = 0.0;
    for (const auto& f : features_)
        if (contains(f.availability, new_sns) && !contains(f.availability, old_sns))
            total += f.share;
    return total;
}

FeatureSpace ingest_survey_ratings(const SurveyRatings& ratings) {
    struct Acc {
        double sum = 0.0;
        std::size_t count = 0;
    };
    std::map<std::string, Acc> by_feature;
    for (const auto& row : ratings.rows) {
        if (row.rating < 0 || row.rating > 5)
            throw std::invalid_argument("rating out of range 0..5 for feature " +
                                        row.feature);
        if (!ratings.availability.count(row.feature))
            throw std::invalid_argument("rated feature not in availability map: " +
                                        row.feature);
        auto& acc = by_feature[row.feature];
        acc.sum += row.rating;
        acc.count += 1;
    }

    double grand = 0.0;
    std::map<std::string, double> mean;
    for (const auto& [feature, acc] : by_feature) {
        double m = acc.count ? acc.sum / static_cast<double>(acc.count) : 0.0;
        mean[feature] = m;
        grand += m;
    }
    if (grand <= 0.0)
        throw std::invalid_argument("degenerate survey: all ratings are zero");

    std::vector<SnsId> sns_ids;
    std::vector<Feature> features;
    for (const auto& [feature, avail] : ratings.availability) {
        Feature f;
        f.id = feature;
        f.availability = avail;
        auto it = mean.find(feature);
        f.share = (it == mean.end()) ? 0.0 : it->second / grand;
        for (const auto& s : avail) sns_ids.push_back(s);
        features.push_back(std::move(f));
    }
    return FeatureSpace(std::move(sns_ids), std::move(features));
}

SurveyRatings load_survey_csv(std::string_view ratings_csv,
                              std::string_view availability_csv) {
    SurveyRatings out;

    for (const auto& [row_no, line] : csv_rows(availability_csv, "feature,sns_list")) {
        auto cols = split(line, ',');
        if (cols.size() != 2)
            throw ParseError(row_no, "expected 2 columns, got " +
                                         std::to_string(cols.size()));
        std::string feature(trim(cols[0]));
        if (feature.empty()) throw ParseError(row_no, "empty feature id");
        std::vector<SnsId> sites;
        for (const auto& s : split(cols[1], ';')) {
            std::string site(trim(s));
            if (site.empty()) throw ParseError(row_no, "empty site id in sns_list");
            sites.push_back(std::move(site));
        }
        if (!out.availability.emplace(feature, canonical(std::move(sites))).second)
            throw ParseError(row_no, "duplicate feature: " + feature);
    }

    for (const auto& [row_no, line] : csv_rows(ratings_csv, "respondent,feature,rating")) {
        auto cols = split(line, ',');
        if (cols.size() != 3)
            throw ParseError(row_no, "expected 3 columns, got " +
                                         std::to_string(cols.size()));
        SurveyRatings::Row row;
        row.respondent = std::string(trim(cols[0]));
        row.feature = std::string(trim(cols[1]));
        std::string rating(trim(cols[2]));
        int value = 0;
        auto res = std::from_chars(rating.data(), rating.data() + rating.size(), value);
        if (res.ec != std::errc{} || res.ptr != rating.data() + rating.size())
            throw ParseError(row_no, "bad rating '" + rating + "'");
        if (value < 0 || value > 5)
            throw ParseError(row_no, "rating " + rating + " outside 0..5");
        row.rating = value;
        if (!out.availability.count(row.feature))
            throw ParseError(row_no, "feature not in availability map: " + row.feature);
        out.rows.push_back(std::move(row));
    }
    return out;
}

void write_feature_space_csv(const FeatureSpace& fs, std::ostream& out) {
    out << "feature,sns_list,share\n";
    for (const auto& f : fs.features()) {
        out << f.id << ',';
        for (std::size_t i = 0; i < f.availability.size(); ++i) {
            if (i) out << ';';
            out << f.availability[i];
        }
        out << ',' << fmt_double(f.share) << '\n';
    }
}

FeatureSpace load_feature_space_csv(std::string_view csv) {
    std::vector<SnsId> sns_ids;
    std::vector<Feature> features;
    for (const auto& [row_no, line] : csv_rows(csv, "feature,sns_list,share")) {
        auto cols = split(line, ',');
        if (cols.size() != 3)
            throw ParseError(row_no, "expected 3 columns, got " +
                                         std::to_string(cols.size()));
        Feature f;
        f.id = std::string(trim(cols[0]));
        for (const auto& s : split(cols[1], ';')) {
            std::string site(trim(s));
            if (site.empty()) throw ParseError(row_no, "empty site id in sns_list");
            f.availability.push_back(site);
            sns_ids.push_back(std::move(site));
        }
        f.share = parse_share(std::string(trim(cols[2])), row_no);
        features.push_back(std::move(f));
    }
    return FeatureSpace(std::move(sns_ids), std::move(features));
}

} // namespace snsim
