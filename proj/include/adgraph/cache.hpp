#pragma once

// Content-addressed result cache.  The key is the SHA-256 of (graph spec,
// q, operation, code version); each entry is one file
//
//   adg-cache v1 <sha256 of payload>\n<payload>
//
// plus a line in manifest.json.  Entries whose checksum does not match are
// reported on the warning stream and recomputed.  Link with OpenSSL::Crypto.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

namespace adg {

/// Bumped whenever a cached computation changes its output.
inline constexpr std::string_view code_version = "adgraph-1";

inline std::string sha256_hex(std::string_view data) {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("sha256 failed");
    std::ostringstream out;
    for (unsigned i = 0; i < len; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(md[i]);
    return out.str();
}

class ResultCache {
public:
    /// Disabled when dir is empty.
    explicit ResultCache(std::filesystem::path dir, std::ostream* warn = nullptr) : dir_(std::move(dir)), warn_(warn) {}

    bool enabled() const { return !dir_.empty(); }

    static std::string key(std::string_view spec, std::uint64_t q, std::string_view op) {
        std::string text;
        text.append(spec).append("\n").append(std::to_string(q)).append("\n").append(op).append("\n").append(code_version);
        return sha256_hex(text);
    }

    /// Cached payload, or nullopt when absent or corrupt.
    std::optional<std::string> load(const std::string& k) const {
        if (!enabled()) return std::nullopt;
        const auto path = dir_ / (k + ".entry");
        std::ifstream in(path, std::ios::binary);
        if (!in) return std::nullopt;
        std::string header;
        std::getline(in, header);
        std::string body((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        const std::string prefix = "adg-cache v1 ";
        if (header.rfind(prefix, 0) != 0 || header.substr(prefix.size()) != sha256_hex(body)) {
            if (warn_) *warn_ << "warning: corrupt cache entry " << path.string() << ", recomputing\n";
            return std::nullopt;
        }
        return body;
    }

    void store(const std::string& k, const std::string& payload, const nlohmann::json& info) const {
        if (!enabled()) return;
        std::filesystem::create_directories(dir_);
        const auto path = dir_ / (k + ".entry");
        {
            std::ofstream out(path, std::ios::binary | std::ios::trunc);
            out << "adg-cache v1 " << sha256_hex(payload) << '\n' << payload;
        }
        nlohmann::json manifest = nlohmann::json::object();
        const auto mpath = dir_ / "manifest.json";
        if (std::ifstream in(mpath); in) {
            try {
                in >> manifest;
            } catch (const nlohmann::json::exception&) {
                if (warn_) *warn_ << "warning: unreadable cache manifest, rewriting\n";
                manifest = nlohmann::json::object();
            }
        }
        nlohmann::json entry = info;
        entry["file"] = path.filename().string();
        entry["code_version"] = code_version;
        manifest[k] = entry;
        std::ofstream(mpath, std::ios::trunc) << manifest.dump(2) << '\n';
    }

    /// Payload for (spec, q, op), computed by `compute` on a miss.
    std::string get_or_compute(std::string_view spec, std::uint64_t q, std::string_view op,
                               const std::function<std::string()>& compute) const {
        const std::string k = key(spec, q, op);
        if (auto hit = load(k)) return *hit;
        std::string payload = compute();
        store(k, payload, {{"spec", spec}, {"q", q}, {"op", op}});
        return payload;
    }

private:
    std::filesystem::path dir_;
    std::ostream* warn_;
};

}  // namespace adg
