#include "mqv/methods.hpp"

#include "mqv/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mqv {

std::string_view to_string(Method m) {
    switch (m) {
        case Method::MqvAlg1: return "MQV-Alg1";
        case Method::MqvAlg2: return "MQV-Alg2";
        case Method::IGCI: return "IGCI";
        case Method::Strawman: return "Strawman";
        case Method::RECI: return "RECI";
    }
    return "MQV-Alg1";
}

Method method_from_string(std::string_view name) {
    std::string s(name);
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (s == "mqv-alg1" || s == "mqv1" || s == "mqv_alg1") return Method::MqvAlg1;
    if (s == "mqv-alg2" || s == "mqv2" || s == "mqv_alg2") return Method::MqvAlg2;
    if (s == "igci") return Method::IGCI;
    if (s == "strawman") return Method::Strawman;
    if (s == "reci") return Method::RECI;
    throw std::invalid_argument("unknown method: " + std::string(name));
}

std::vector<Method> parse_methods(std::string_view list) {
    std::vector<Method> out;
    std::size_t start = 0;
    while (start <= list.size()) {
        const auto comma = list.find(',', start);
        const auto tok = list.substr(start, comma == std::string_view::npos ? list.npos
                                                                           : comma - start);
        if (!tok.empty()) {
            const Method m = method_from_string(tok);
            if (std::find(out.begin(), out.end(), m) == out.end()) out.push_back(m);
        }
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("no methods selected");
    return out;
}

MethodDecision run_method(Method method, const SamplePair& pair, const MethodParams& params,
                          std::uint64_t seed) {
    switch (method) {
        case Method::MqvAlg1: {
            const auto r = infer_no_bijections(pair, params.m, seed);
            return {r.record.direction, r.record.confidence};
        }
        case Method::MqvAlg2: {
            InferenceOptions opts;
            opts.m = params.m;
            opts.M = params.M;
            opts.grid_size = params.grid_size;
            opts.keep_samples = false;
            const auto r = infer_with_bijections(pair, opts, seed);
            return {r.record.direction, r.record.confidence};
        }
        case Method::IGCI: {
            const auto d = igci_slope(pair);
            return {d.direction, d.native_confidence};
        }
        case Method::Strawman: {
            Rng rng = Seed(seed).rng();
            const auto d = strawman(pair, rng);
            return {d.direction, d.native_confidence};
        }
        case Method::RECI: {
            const auto d = reci_logistic(pair);
            return {d.direction, d.native_confidence};
        }
    }
    throw std::invalid_argument("unknown method");
}

}  // namespace mqv
