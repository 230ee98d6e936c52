#include "descent/survey.hpp"

#include <atomic>
#include <cmath>
#include <mutex>
#include <thread>

namespace esd {

nlohmann::json SurveyReport::to_json(bool include_certs) const {
    nlohmann::json j;
    j["N"] = N;
    j["sampled"] = sampled;
    j["certified_full"] = certified_full;
    j["certified_partial"] = certified_partial;
    j["rejections"] = nlohmann::json::object();
    for (auto& [k, v] : rejections) j["rejections"][k] = v;
    j["signatures"] = nlohmann::json::object();
    for (auto& [k, v] : signatures) j["signatures"][k] = v;
    j["exceptional"] = nlohmann::json::array();
    for (auto& t : exceptional) j["exceptional"].push_back(zstr(t));
    j["sqrt_fit_c"] = sqrt_fit_c;
    if (include_certs) {
        j["certificates"] = nlohmann::json::array();
        for (auto& c : certificates) j["certificates"].push_back(c);
    }
    return j;
}

SurveyReport survey(const SurfaceQ& s, const std::vector<PointQt>& pts, long N,
                    const SpecializationPlan& plan, const SurveyOptions& opt) {
    SurveyReport rep;
    rep.N = N;
    // the admissible t values in [-N, N]
    std::vector<BigInt> ts;
    {
        BigInt m = plan.modulus;
        BigInt start = plan.t0;
        // smallest admissible >= -N
        BigInt k = zfdiv(BigInt(-N) - start + m - 1, m);
        for (BigInt t = start + k * m; t <= N; t += m) ts.push_back(t);
    }
    rep.sampled = static_cast<long>(ts.size());

    std::mutex mu;
    std::atomic<size_t> next{0};
    long full_target = 0;
    {
        auto classes = descent_classes(s, pts);
        for (auto& c : classes)
            if (!c.trivial_double) ++full_target;
    }
    auto worker = [&]() {
        for (;;) {
            size_t i = next.fetch_add(1);
            if (i >= ts.size()) return;
            const BigInt& t = ts[i];
            CertifyResult res = certify(s, pts, t, opt.certify);
            std::lock_guard<std::mutex> lk(mu);
            if (std::holds_alternative<Cl2Certificate>(res)) {
                auto& c = std::get<Cl2Certificate>(res);
                if (c.bound >= full_target) ++rep.certified_full;
                else ++rep.certified_partial;
                rep.signatures["(" + std::to_string(c.r1) + "," + std::to_string(c.r2) + ")"] += 1;
                if (opt.keep_certificates) rep.certificates.push_back(c.data);
            } else {
                auto& r = std::get<Rejection>(res);
                rep.rejections[Rejection::name(r.reason)] += 1;
                rep.exceptional.push_back(t);
            }
        }
    };
    long jobs = std::max(1L, opt.jobs);
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        for (long i = 0; i < jobs; ++i) threads.emplace_back(worker);
        for (auto& th : threads) th.join();
    }
    std::sort(rep.exceptional.begin(), rep.exceptional.end());
    rep.sqrt_fit_c = N > 0 ? static_cast<double>(rep.exceptional.size()) / std::sqrt(double(N)) : 0;
    return rep;
}

} // namespace esd
