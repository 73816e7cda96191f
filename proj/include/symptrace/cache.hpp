#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "symptrace/fp.hpp"

namespace symptrace {

struct CacheRow {
    std::string curve;
    std::uint64_t p = 0;
    std::uint64_t n1 = 0;
    std::optional<std::uint64_t> n2;
    std::int64_t a1 = 0;
    std::optional<std::int64_t> a2;
    friend bool operator==(const CacheRow&, const CacheRow&) = default;
};

/// Point-count cache. CSV with header `curve,p,n1,n2,a1,a2`; n2 and a2 are empty
/// for genus 1; rows sorted by p, then curve.
class FrobeniusCache {
public:
    static constexpr const char* kHeader = "curve,p,n1,n2,a1,a2";
    static constexpr int kVersion = 1;

    FrobeniusCache() = default;

    static FrobeniusCache load(const std::filesystem::path& path) {
        FrobeniusCache c;
        std::ifstream in(path);
        if (!in) return c;
        std::string line;
        if (!std::getline(in, line)) return c;
        if (line != kHeader) throw Error("cache " + path.string() + ": unexpected header '" + line + "'");
        std::size_t lineno = 1;
        while (std::getline(in, line)) {
            ++lineno;
            if (line.empty()) continue;
            c.insert(parse_row(line, path.string() + ":" + std::to_string(lineno)));
        }
        return c;
    }

    [[nodiscard]] std::optional<CacheRow> lookup(const std::string& curve, std::uint64_t p) const {
        auto it = rows_.find({p, curve});
        if (it == rows_.end()) return std::nullopt;
        return it->second;
    }

    void insert(const CacheRow& row) {
        auto [it, fresh] = rows_.try_emplace({row.p, row.curve}, row);
        if (!fresh && it->second != row)
            throw Error("cache conflict for curve " + row.curve + " at p = " + std::to_string(row.p));
    }

    [[nodiscard]] std::size_t size() const noexcept { return rows_.size(); }

    [[nodiscard]] std::string to_csv() const {
        std::ostringstream os;
        os << kHeader << '\n';
        for (const auto& [key, r] : rows_) {
            os << r.curve << ',' << r.p << ',' << r.n1 << ',';
            if (r.n2) os << *r.n2;
            os << ',' << r.a1 << ',';
            if (r.a2) os << *r.a2;
            os << '\n';
        }
        return os.str();
    }

    /// Written through a temporary file and renamed into place.
    void write(const std::filesystem::path& path) const {
        if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
        auto tmp = path;
        tmp += ".tmp";
        {
            std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
            if (!out) throw Error("cannot write cache " + tmp.string());
            out << to_csv();
        }
        std::filesystem::rename(tmp, path);
    }

private:
    static CacheRow parse_row(const std::string& line, const std::string& where) {
        std::vector<std::string> f;
        std::string cell;
        std::istringstream is(line);
        while (std::getline(is, cell, ',')) f.push_back(cell);
        if (!line.empty() && line.back() == ',') f.emplace_back();
        if (f.size() != 6) throw Error(where + ": expected 6 fields");
        try {
            CacheRow r;
            r.curve = f[0];
            r.p = std::stoull(f[1]);
            r.n1 = std::stoull(f[2]);
            if (!f[3].empty()) r.n2 = std::stoull(f[3]);
            r.a1 = std::stoll(f[4]);
            if (!f[5].empty()) r.a2 = std::stoll(f[5]);
            if (r.a1 != static_cast<std::int64_t>(r.n1) - static_cast<std::int64_t>(r.p) - 1)
                throw Error(where + ": a1 inconsistent with n1");
            if (r.n2.has_value() != r.a2.has_value()) throw Error(where + ": n2 and a2 must be both present or both empty");
            return r;
        } catch (const std::logic_error&) {
            throw Error(where + ": malformed number");
        }
    }

    std::map<std::pair<std::uint64_t, std::string>, CacheRow> rows_;
};

}  // namespace symptrace
