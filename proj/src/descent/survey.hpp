#ifndef ESD_DESCENT_SURVEY_HPP
#define ESD_DESCENT_SURVEY_HPP

#include "descent/descent.hpp"

namespace esd {

struct SurveyReport {
    long N = 0;
    long sampled = 0;
    long certified_full = 0;   // certified bound == number of supplied classes
    long certified_partial = 0;
    std::map<std::string, long> rejections;
    std::map<std::string, long> signatures; // "(1,1)" / "(3,0)"
    std::vector<BigInt> exceptional;        // rejected t values
    std::vector<nlohmann::json> certificates;
    double sqrt_fit_c = 0.0;                // #exceptional / sqrt(N)

    nlohmann::json to_json(bool include_certs = false) const;
};

struct SurveyOptions {
    long jobs = 1;
    CertifyOptions certify;
    bool keep_certificates = false;
};

SurveyReport survey(const SurfaceQ& s, const std::vector<PointQt>& pts, long N,
                    const SpecializationPlan& plan, const SurveyOptions& opt = {});

} // namespace esd

#endif
