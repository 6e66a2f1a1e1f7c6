#pragma once

#include "bethe/core/nc_expression.hpp"
#include "bethe/core/report.hpp"

#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <unistd.h>

namespace bethe {

/// Commutator tables on disk: one JSON file per (n, N or mu, namespace, version).
inline constexpr int kCacheFormatVersion = 1;
inline constexpr const char* kCacheEnvVar = "BETHE_LAB_CACHE_DIR";

using RelationTable = std::map<std::uint64_t, NCExpression>;

struct CacheKey {
    int n = 0;
    std::string shift; // "N=1" or a mu string
    std::string ns;    // "rtt", "gl2"
    int version = kCacheFormatVersion;
};

enum class CacheStatus { Hit, Missing, Corrupt, VersionMismatch, IoError, Stored };

inline const char* cache_status_name(CacheStatus s) {
    switch (s) {
    case CacheStatus::Hit: return "hit";
    case CacheStatus::Missing: return "missing";
    case CacheStatus::Corrupt: return "corrupt";
    case CacheStatus::VersionMismatch: return "version-mismatch";
    case CacheStatus::IoError: return "io-error";
    case CacheStatus::Stored: return "stored";
    }
    return "?";
}

inline std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

inline std::string hex64(std::uint64_t v) {
    std::ostringstream os;
    os << std::hex;
    os.width(16);
    os.fill('0');
    os << v;
    return os.str();
}

/// Cache directory: explicit flag, then the environment, then empty (disabled).
inline std::filesystem::path resolve_cache_dir(const std::string& flag) {
    if (const char* env = std::getenv(kCacheEnvVar); env && *env) return env;
    return flag;
}

/// File name depends on the content key only, not on the version, so a bump is detected on load.
inline std::filesystem::path cache_path(const std::filesystem::path& dir, const CacheKey& key) {
    std::string id = "n=" + std::to_string(key.n) + ";" + key.shift + ";" + key.ns;
    return dir / (key.ns + "-" + hex64(fnv1a(id)) + ".json");
}

inline Json table_to_json(const RelationTable& t) {
    Json entries = Json::array();
    for (auto& [k, v] : t) {
        Json terms = Json::array();
        for (auto& [w, c] : v.terms()) terms.push_back(Json::array({c.get_str(), w}));
        entries.push_back(Json::array({k, terms}));
    }
    return entries;
}

inline RelationTable table_from_json(const Json& entries) {
    RelationTable t;
    for (auto& e : entries) {
        NCExpression x;
        for (auto& term : e.at(1)) x.add_term(term.at(1).get<Word>(), parse_scalar(term.at(0).get<std::string>()));
        t.emplace(e.at(0).get<std::uint64_t>(), std::move(x));
    }
    return t;
}

struct CacheLoad {
    CacheStatus status = CacheStatus::Missing;
    RelationTable table;
    std::string detail;
};

inline CacheLoad cache_load(const std::filesystem::path& dir, const CacheKey& key) {
    CacheLoad out;
    auto path = cache_path(dir, key);
    std::error_code ec;
    if (!std::filesystem::exists(path, ec)) return out;
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        out.status = CacheStatus::IoError;
        out.detail = "cannot open " + path.string();
        return out;
    }
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        Json doc = Json::parse(buf.str());
        if (doc.at("version").get<int>() != key.version) {
            out.status = CacheStatus::VersionMismatch;
            out.detail = "file version " + std::to_string(doc.at("version").get<int>());
            return out;
        }
        const Json& entries = doc.at("entries");
        if (doc.at("checksum").get<std::string>() != hex64(fnv1a(entries.dump()))) {
            out.status = CacheStatus::Corrupt;
            out.detail = "checksum mismatch";
            return out;
        }
        out.table = table_from_json(entries);
        out.status = CacheStatus::Hit;
    } catch (const std::exception& e) {
        out.status = CacheStatus::Corrupt;
        out.detail = e.what();
    }
    return out;
}

/// Atomic store: write a private temp file, then rename over the target.
inline CacheStatus cache_store(const std::filesystem::path& dir, const CacheKey& key, const RelationTable& table,
                               std::string* detail = nullptr) {
    static std::atomic<unsigned> counter{0};
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    auto path = cache_path(dir, key);
    Json entries = table_to_json(table);
    Json doc{{"format", "bethe-lab-cache"},
             {"version", key.version},
             {"key", Json{{"n", key.n}, {"shift", key.shift}, {"namespace", key.ns}}},
             {"checksum", hex64(fnv1a(entries.dump()))},
             {"entries", entries}};
    auto tmp = path;
    tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            if (detail) *detail = "cannot write " + tmp.string();
            return CacheStatus::IoError;
        }
        out << doc.dump();
        if (!out) {
            if (detail) *detail = "short write to " + tmp.string();
            return CacheStatus::IoError;
        }
    }
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        if (detail) *detail = "rename failed";
        return CacheStatus::IoError;
    }
    return CacheStatus::Stored;
}

} // namespace bethe
