#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace snsim {

using SnsId = std::string;

/// One feature: which sites offer it and the fraction of the daily time
/// span an aggregate user spends on it. availability is sorted and unique.
struct Feature {
    std::string id;
    std::vector<SnsId> availability;
    double share = 0.0;
};

/// Catalog of features with time shares, partitioned over subsets of the
/// competing sites. Immutable after construction.
class FeatureSpace {
public:
    FeatureSpace(std::vector<SnsId> sns_ids, std::vector<Feature> features);

    const std::vector<SnsId>& sns_ids() const { return sns_ids_; }
    const std::vector<Feature>& features() const { return features_; }

    /// Sum of all feature shares (<= 1).
    double total_share() const;

    /// Share of time spent on features offered by exactly this set of sites.
    /// region must be a non-empty subset of sns_ids().
    double region_share(const std::vector<SnsId>& region) const;

    /// Share of time spent on features the new site has and the old one
    /// lacks; the model's novelty parameter.
    double novelty(const SnsId& new_sns, const SnsId& old_sns) const;

private:
    std::vector<SnsId> sns_ids_;
    std::vector<Feature> features_;
};

/// Raw survey output: per-respondent feature ratings (0..5) plus the
/// feature -> sites availability map.
struct SurveyRatings {
    struct Row {
        std::string respondent;
        std::string feature;
        int rating = 0;
    };
    std::vector<Row> rows;
    std::map<std::string, std::vector<SnsId>> availability;
};

/// Convert ratings to time shares: per-feature mean rating normalized by
/// the grand sum, so shares total exactly 1. Features listed in the
/// availability map but never rated get share 0. Throws if every rating
/// is zero or a row names an unknown feature.
FeatureSpace ingest_survey_ratings(const SurveyRatings& ratings);

/// CSV ingestion. Ratings header: respondent,feature,rating.
/// Availability header: feature,sns_list with ';'-separated site ids.
/// Errors carry the offending row number.
SurveyRatings load_survey_csv(std::string_view ratings_csv,
                              std::string_view availability_csv);

/// Export/import, header: feature,sns_list,share. Shares are fractions.
void write_feature_space_csv(const FeatureSpace& fs, std::ostream& out);
FeatureSpace load_feature_space_csv(std::string_view csv);

} // namespace snsim
