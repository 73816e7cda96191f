#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "symptrace/cache.hpp"
#include "symptrace/parallel.hpp"
#include "symptrace/sieve.hpp"
#include "symptrace/weil.hpp"

namespace symptrace {

struct ScanOptions {
    unsigned workers = 1;
    bool compute_on_miss = true;
    std::optional<std::filesystem::path> cache;
};

struct ScanResult {
    std::vector<FrobeniusRecord> records;  // good primes p <= x, ascending
    std::size_t cache_hits = 0;
    std::size_t computed = 0;
};

inline CacheRow to_cache_row(const FrobeniusRecord& r) {
    CacheRow row{r.curve_id, r.p, r.n1, r.n2, r.weil.a(1), std::nullopt};
    if (r.weil.genus() == 2) row.a2 = r.weil.a(2);
    return row;
}

/// Frobenius records at every good prime p <= x. Cached counts are reused;
/// missing ones are computed (when allowed) across `workers` threads and the
/// cache file is rewritten once after the merge.
inline ScanResult scan_frobenius(const CurveSpec& curve, std::uint64_t x, const ScanOptions& opt = {}) {
    std::vector<std::uint64_t> primes;
    for (auto p : sieve_primes(x))
        if (!curve.is_bad(p)) primes.push_back(p);

    FrobeniusCache cache;
    if (opt.cache) cache = FrobeniusCache::load(*opt.cache);

    std::vector<std::optional<FrobeniusRecord>> slots(primes.size());
    std::vector<std::size_t> missing;
    ScanResult res;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (auto row = cache.lookup(curve.id(), primes[i])) {
            if ((curve.genus() == 2) != row->n2.has_value())
                throw Error("cache row for p = " + std::to_string(primes[i]) + " has the wrong genus");
            slots[i] = make_record(curve, primes[i], row->n1, row->n2);
            ++res.cache_hits;
        } else {
            missing.push_back(i);
        }
    }
    if (!missing.empty() && !opt.compute_on_miss)
        throw Error("cache has no row for p = " + std::to_string(primes[missing.front()]) + " and computation is disabled");

    constexpr std::size_t chunk = 64;
    const std::size_t shards = (missing.size() + chunk - 1) / chunk;
    parallel_shards(shards, opt.workers, [&](std::size_t s) {
        const std::size_t end = std::min(missing.size(), (s + 1) * chunk);
        for (std::size_t k = s * chunk; k < end; ++k) slots[missing[k]] = frobenius_record(curve, primes[missing[k]]);
    });
    res.computed = missing.size();

    res.records.reserve(slots.size());
    for (auto& s : slots) res.records.push_back(std::move(*s));
    if (opt.cache && res.computed > 0) {
        for (const auto& r : res.records) cache.insert(to_cache_row(r));
        cache.write(*opt.cache);
    }
    return res;
}

/// pi_A(x, t) for every t.
struct TraceTally {
    std::string curve_id;
    std::uint64_t x = 0;
    int genus = 1;
    std::map<std::int64_t, std::uint64_t> counts;
    std::uint64_t total_good = 0;
    int cache_version = FrobeniusCache::kVersion;

    [[nodiscard]] std::uint64_t count(std::int64_t t) const {
        auto it = counts.find(t);
        return it == counts.end() ? 0 : it->second;
    }

    /// `t,count`, ascending t.
    [[nodiscard]] std::string csv() const {
        std::ostringstream os;
        os << "t,count\n";
        for (const auto& [t, n] : counts) os << t << ',' << n << '\n';
        return os.str();
    }
};

/// Throws if the partition or support invariant fails.
inline void check_tally(const TraceTally& t) {
    std::uint64_t sum = 0;
    for (const auto& [tr, n] : t.counts) {
        sum += n;
        const BigInt sq = BigInt(tr) * tr;
        if (n > 0 && sq >= BigInt(4) * t.genus * t.genus * t.x)
            throw Error("tally support violated: count at t = " + std::to_string(tr));
    }
    if (sum != t.total_good) throw Error("tally partition violated: " + std::to_string(sum) + " vs " + std::to_string(t.total_good));
}

inline TraceTally tally(const std::string& curve_id, int genus, std::uint64_t x, const std::vector<FrobeniusRecord>& records) {
    TraceTally t{curve_id, x, genus, {}, 0, FrobeniusCache::kVersion};
    for (const auto& r : records) {
        if (r.p > x) continue;
        ++t.counts[r.weil.a(1)];
        ++t.total_good;
    }
    check_tally(t);
    return t;
}

inline TraceTally tally(const CurveSpec& curve, std::uint64_t x, const ScanOptions& opt = {}) {
    return tally(curve.id(), curve.genus(), x, scan_frobenius(curve, x, opt).records);
}

/// pi_A(x, l, t): good p <= x, p != l, a1 = t, and l splits completely.
inline std::uint64_t split_scan(const std::vector<FrobeniusRecord>& records, std::uint64_t x, std::uint32_t l, std::int64_t t) {
    std::uint64_t n = 0;
    for (const auto& r : records)
        if (r.p <= x && r.p != l && r.weil.a(1) == t && split_test(r, l)) ++n;
    return n;
}

enum class DensityMode { T3i, T3ii };

inline double density_threshold(DensityMode mode, int g, double p, double eps) {
    if (mode == DensityMode::T3i) return std::pow(p, 1.0 / (2.0 * g * g + g + 1)) / std::pow(std::log(p), eps);
    return std::pow(p, 1.0 / (g + 2.0) - eps);
}

struct DensityReport {
    DensityMode mode;
    int g;
    std::uint64_t x;
    double eps;
    std::uint64_t total_good = 0;
    std::uint64_t counted = 0;      // |a1| above the threshold
    std::uint64_t exceptional = 0;  // the complement
    [[nodiscard]] double fraction() const { return total_good ? static_cast<double>(counted) / static_cast<double>(total_good) : 0.0; }
};

inline DensityReport density_report(const std::vector<FrobeniusRecord>& records, int g, std::uint64_t x, double eps, DensityMode mode) {
    DensityReport d{mode, g, x, eps};
    for (const auto& r : records) {
        if (r.p > x) continue;
        ++d.total_good;
        const double a = std::abs(static_cast<double>(r.weil.a(1)));
        if (a > density_threshold(mode, g, static_cast<double>(r.p), eps)) ++d.counted;
        else ++d.exceptional;
    }
    return d;
}

}  // namespace symptrace
