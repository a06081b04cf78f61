#include "nonsmooth/certificate_io.hpp"

#include "nonsmooth/error.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>

#include "json.hpp"

namespace nonsmooth {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

template <typename Json>
Json manifold_json(const ManifoldInvariants& x) {
    Json j;
    j["b2_plus"] = x.b2_plus;
    j["b2_minus"] = x.b2_minus;
    j["spin"] = x.spin;
    return j;
}

// Everything except the digest, in schema order.
template <typename Json>
Json body_json(const Certificate& c) {
    Json j;
    j["p"] = c.config.p.value();
    j["manifold"] = manifold_json<Json>(c.manifold);
    Json cfg;
    cfg["m"] = c.config.m;
    cfg["m_prime"] = c.config.m_prime;
    cfg["r"] = c.config.r;
    cfg["s"] = c.config.s;
    j["config"] = cfg;
    j["cp2_weights"] = Json::array();
    for (const auto& w : c.config.alphas) j["cp2_weights"].push_back(w.a);
    j["cp2bar_weights"] = Json::array();
    for (const auto& w : c.config.alpha_primes) j["cp2bar_weights"].push_back(w.a);
    j["s4_weights"] = Json::array();
    for (const auto& w : c.config.betas) j["s4_weights"].push_back(w.b);
    j["matching"] = Json::array();
    for (const auto& [a, b] : c.matching) j["matching"].push_back({a, b});
    Json index;
    index["dim"] = c.index.dim;
    index["sum_alpha"] = c.index.sum_alpha;
    index["sum_alpha_prime"] = c.index.sum_alpha_prime;
    j["index"] = index;
    j["verdict"] = to_string(c.verdict.kind);
    j["orientation_flipped"] = c.orientation_flipped;
    return j;
}

[[noreturn]] void malformed(const std::string& what) { throw Error(ErrorCode::Malformed, what); }

const json& field(const json& j, const char* key) {
    if (!j.is_object()) malformed(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) malformed(std::string("missing field '") + key + "'");
    return *it;
}

std::int64_t integer(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer()) malformed(std::string("field '") + key + "' must be an integer");
    if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX)) {
        malformed(std::string("field '") + key + "' is out of range");
    }
    return v.get<std::int64_t>();
}

bool boolean(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) malformed(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

template <std::size_t N>
std::vector<std::array<std::int64_t, N>> tuples(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) malformed(std::string("field '") + key + "' must be an array");
    std::vector<std::array<std::int64_t, N>> out;
    for (const auto& row : v) {
        if (!row.is_array() || row.size() != N) {
            malformed(std::string("entries of '") + key + "' must have " + std::to_string(N) +
                      " integers");
        }
        std::array<std::int64_t, N> t{};
        for (std::size_t i = 0; i < N; ++i) {
            if (!row[i].is_number_integer()) {
                malformed(std::string("entries of '") + key + "' must be integers");
            }
            t[i] = row[i].get<std::int64_t>();
        }
        out.push_back(t);
    }
    return out;
}

json parse(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::exception& e) {
        malformed(std::string("invalid JSON: ") + e.what());
    }
}

ManifoldInvariants parse_manifold(const json& j) {
    const json& m = field(j, "manifold");
    return {integer(m, "b2_plus"), integer(m, "b2_minus"), boolean(m, "spin")};
}

ActionConfiguration parse_configuration(const json& j) {
    ActionConfiguration cfg{OddPrime(integer(j, "p"))};
    const json& c = field(j, "config");
    cfg.m = integer(c, "m");
    cfg.m_prime = integer(c, "m_prime");
    cfg.r = integer(c, "r");
    cfg.s = integer(c, "s");
    for (const auto& a : tuples<3>(j, "cp2_weights")) cfg.alphas.push_back(WeightCP2{a});
    for (const auto& a : tuples<3>(j, "cp2bar_weights")) cfg.alpha_primes.push_back(WeightCP2{a});
    for (const auto& b : tuples<2>(j, "s4_weights")) cfg.betas.push_back(WeightS4{b});
    return cfg;
}

std::string sha256_hex(const std::string& data) {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 failed");
    }
    std::string hex;
    hex.reserve(2 * len);
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

}  // namespace

std::string compute_digest(const Certificate& cert) {
    return sha256_hex(body_json<json>(cert).dump());
}

void seal(Certificate& cert) { cert.digest = compute_digest(cert); }

std::string certificate_to_json(const Certificate& cert, int indent) {
    ordered_json j = body_json<ordered_json>(cert);
    j["digest"] = cert.digest;
    return j.dump(indent);
}

Certificate certificate_from_json(std::string_view text) {
    const json j = parse(text);
    try {
        Certificate cert{.manifold = parse_manifold(j),
                         .orientation_flipped = boolean(j, "orientation_flipped"),
                         .config = parse_configuration(j)};
        const json& matching = field(j, "matching");
        if (!matching.is_array()) malformed("field 'matching' must be an array");
        for (const auto& pair : matching) {
            if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_unsigned() ||
                !pair[1].is_number_unsigned()) {
                malformed("matching entries must be pairs of non-negative integers");
            }
            cert.matching.emplace_back(pair[0].get<std::size_t>(), pair[1].get<std::size_t>());
        }
        const json& index = field(j, "index");
        cert.index.dim = integer(index, "dim");
        cert.index.sum_alpha = integer(index, "sum_alpha");
        cert.index.sum_alpha_prime = integer(index, "sum_alpha_prime");
        cert.index.sigma_term = cert.index.sum_alpha - cert.index.sum_alpha_prime - cert.index.dim;

        const json& verdict = field(j, "verdict");
        if (!verdict.is_string()) malformed("field 'verdict' must be a string");
        const auto kind = parse_verdict(verdict.get<std::string>());
        if (!kind) malformed("unknown verdict '" + verdict.get<std::string>() + "'");
        const ManifoldInvariants oriented = cert.oriented_manifold();
        cert.verdict = Verdict{*kind, -oriented.b2_minus, oriented.b2_plus};

        const json& digest = field(j, "digest");
        if (!digest.is_string()) malformed("field 'digest' must be a string");
        cert.digest = digest.get<std::string>();
        return cert;
    } catch (const json::exception& e) {
        malformed(e.what());
    }
}

VerificationResult verify_certificate_json(std::string_view text) {
    try {
        return verify_certificate(certificate_from_json(text));
    } catch (const Error& e) {
        return VerificationResult{false, {{std::string(to_string(e.code())), e.what()}}};
    }
}

ConfigurationFile configuration_from_json(std::string_view text) {
    const json j = parse(text);
    try {
        return {parse_manifold(j), parse_configuration(j)};
    } catch (const json::exception& e) {
        malformed(e.what());
    }
}

std::string configuration_to_json(const ManifoldInvariants& x, const ActionConfiguration& cfg,
                                  int indent) {
    const Certificate shell{.manifold = x, .config = cfg};
    ordered_json full = body_json<ordered_json>(shell);
    ordered_json j;
    for (const char* key :
         {"p", "manifold", "config", "cp2_weights", "cp2bar_weights", "s4_weights"}) {
        j[key] = full[key];
    }
    return j.dump(indent);
}

}  // namespace nonsmooth
