#ifndef OPTCURVE_SEARCH_HPP
#define OPTCURVE_SEARCH_HPP

#include <algorithm>
#include <array>
#include <atomic>
#include <cstdint>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "optcurve/disc19.hpp"
#include "optcurve/elliptic.hpp"
#include "optcurve/genus3.hpp"
#include "optcurve/prime_field.hpp"

namespace optcurve {

// Candidate space for genus-3 covers z^2 = u + v y over a fixed E.
//
// z -> lambda z rescales (u, v) by lambda^2, so the leading coefficient of v
// (of u when v = 0) is normalized into {1, n} with n the smallest nonsquare.
// Candidates are ordered lexicographically by (beta1, beta0, alpha3, alpha2,
// alpha1, alpha0), forms ascending. A block fixes everything but alpha0 and
// holds q consecutive candidates.

struct CoverPrefix {
    int form = 0;
    u64 alpha1 = 0;
    u64 alpha2 = 0;
    u64 alpha3 = 0;
    u64 beta0 = 0;
    u64 beta1 = 0;
};

class CandidateSpace {
public:
    CandidateSpace(u64 q, u64 nonsquare, std::vector<int> forms) : q_(q), norm_{1, nonsquare}, forms_(std::move(forms)) {
        std::sort(forms_.begin(), forms_.end());
        forms_.erase(std::unique(forms_.begin(), forms_.end()), forms_.end());
        if (forms_.empty()) throw std::invalid_argument("search: at least one form is required");
        u64 offset = 0;
        for (int f : forms_) {
            if (f < 1 || f > 3) throw std::invalid_argument("search: forms must be 1, 2 or 3");
            offsets_.push_back(offset);
            offset += form_blocks(f);
        }
        total_ = offset;
    }

    u64 q() const { return q_; }
    const std::vector<int>& forms() const { return forms_; }
    u64 blocks() const { return total_; }
    u64 candidates() const { return total_ * q_; }

    u64 form_blocks(int form) const {
        const u64 q2 = q_ * q_;
        switch (form) {
            case 1: return 2 * q2;
            case 2: return 2 * q_ * q2;
            default: return 2 * q2 + 2 * (q_ - 1) * q2 + 2 * q_ * (q_ - 1) * q2;
        }
    }

    CoverPrefix decode(u64 block) const {
        if (block >= total_) throw std::out_of_range("CandidateSpace::decode");
        std::size_t fi = forms_.size() - 1;
        while (offsets_[fi] > block) --fi;
        u64 local = block - offsets_[fi];
        CoverPrefix p;
        p.form = forms_[fi];
        const u64 q2 = q_ * q_;
        auto low_two = [&](u64 idx) {
            p.alpha1 = idx % q_;
            p.alpha2 = idx / q_;
        };
        if (p.form == 1) {
            p.beta0 = norm_[local / q2];
            low_two(local % q2);
        } else if (p.form == 2) {
            p.beta1 = norm_[local / (q_ * q2)];
            local %= q_ * q2;
            p.beta0 = local / q2;
            low_two(local % q2);
        } else {
            // v = 0 with alpha3 normalized; then v = beta0 normalized; then
            // v = beta0 + beta1 x with beta1 normalized.
            if (local < 2 * q2) {
                p.alpha3 = norm_[local / q2];
                low_two(local % q2);
                return p;
            }
            local -= 2 * q2;
            const u64 const_v = 2 * (q_ - 1) * q2;
            if (local < const_v) {
                p.beta0 = norm_[local / ((q_ - 1) * q2)];
                local %= (q_ - 1) * q2;
                p.alpha3 = 1 + local / q2;
                low_two(local % q2);
                return p;
            }
            local -= const_v;
            const u64 per_b1 = q_ * (q_ - 1) * q2;
            p.beta1 = norm_[local / per_b1];
            local %= per_b1;
            p.beta0 = local / ((q_ - 1) * q2);
            local %= (q_ - 1) * q2;
            p.alpha3 = 1 + local / q2;
            low_two(local % q2);
        }
        return p;
    }

private:
    u64 q_;
    std::array<u64, 2> norm_;
    std::vector<int> forms_;
    std::vector<u64> offsets_;
    u64 total_ = 0;
};

inline Genus3Cover make_cover(const EllipticCurve& e, const CoverPrefix& p, u64 alpha0) {
    return {e, Poly{alpha0, p.alpha1, p.alpha2, p.alpha3}, Poly{p.beta0, p.beta1}};
}

struct SearchOptions {
    std::vector<int> forms{1};
    u64 max_hits = 0;     ///< stop at the first chunk where this many hits are reached; 0 = all
    u64 block_limit = 0;  ///< scan at most this many blocks from start_block; 0 = no limit
    u64 start_block = 0;  ///< resume cursor
    unsigned threads = 1;
};

struct SearchHit {
    u64 index = 0;  ///< canonical candidate index (block * q + alpha0)
    Genus3Report report;
};

struct SearchStats {
    u64 candidates = 0;        ///< candidates scanned
    u64 count_matches = 0;     ///< candidates whose point count met the target
    u64 genus_rejected = 0;    ///< matches whose branch number is not 4
    u64 degenerate = 0;        ///< matches with no branch points
    u64 exact_recounts = 0;    ///< candidates needing the full local analysis

    SearchStats& operator+=(const SearchStats& o) {
        candidates += o.candidates;
        count_matches += o.count_matches;
        genus_rejected += o.genus_rejected;
        degenerate += o.degenerate;
        exact_recounts += o.exact_recounts;
        return *this;
    }
};

struct SearchResult {
    Disc19Field field;
    Kind kind = Kind::maximal;
    EllipticCurve e;
    std::vector<int> forms;
    std::vector<SearchHit> hits;
    SearchStats stats;
    u64 blocks_total = 0;
    u64 start_block = 0;
    u64 next_block = 0;              ///< cursor after the scanned range
    bool space_exhausted = false;    ///< every block from start_block on was scanned
    bool budget_exhausted = false;   ///< stopped early by max_hits or block_limit
};

namespace detail {

/// Scans one block: all alpha0 for a fixed prefix. Per point P the partial
/// value r_P = w(P) - alpha0 is precomputed, so each candidate costs one
/// table lookup per point. Contributions are 1 + chi (zeros count 1 but are
/// uncertain by +/-1 until resolved). The scan of a candidate stops once the
/// target is outside [sum - zeros, sum + zeros + 2 * remaining].
class BlockScanner {
public:
    BlockScanner(const PrimeField& F, const Disc19Field& field, const EllipticCurve& e, Kind kind)
        : F_(F), field_(field), e_(e), kind_(kind), target_(serre_bound_count(field, 3, kind)) {
        const u64 q = F.modulus();
        const Poly f = weierstrass_cubic(e);
        for (u64 x = 0; x < q; ++x) {
            const u64 fx = poly_eval(F, f, x);
            if (fx == 0) {
                pts_.push_back({x, 0});
            } else if (F.chi(fx) == 1) {
                const u64 y = *F.sqrt(fx);
                pts_.push_back({x, y});
                pts_.push_back({x, q - y});
            }
        }
        contrib_.resize(2 * q);
        for (u64 i = 0; i < 2 * q; ++i) contrib_[i] = static_cast<std::uint8_t>(1 + F.chi(i % q));
        partial_.resize(pts_.size());
    }

    void scan(u64 block, const CoverPrefix& p, std::vector<SearchHit>& hits, SearchStats& stats) {
        const u64 q = F_.modulus();
        for (std::size_t i = 0; i < pts_.size(); ++i) {
            const u64 x = pts_[i][0];
            const u64 y = pts_[i][1];
            const u64 x2 = x * x % q;
            u64 r = (p.alpha1 * x + p.alpha2 * x2) % q;
            r = (r + p.alpha3 * (x2 * x % q)) % q;
            r = (r + (p.beta0 + p.beta1 * x) % q * y) % q;
            partial_[i] = static_cast<std::uint32_t>(r);
        }
        const i64 npts = static_cast<i64>(pts_.size());
        // Infinity fiber from degrees alone (see infinity_fiber_over); only
        // the constant term of u varies inside a block.
        const int dv = p.beta1 != 0 ? 1 : (p.beta0 != 0 ? 0 : -1);
        int du_x = -1;
        u64 lc_x = 0;
        if (p.alpha3 != 0) {
            du_x = 3;
            lc_x = p.alpha3;
        } else if (p.alpha2 != 0) {
            du_x = 2;
            lc_x = p.alpha2;
        } else if (p.alpha1 != 0) {
            du_x = 1;
            lc_x = p.alpha1;
        }
        for (u64 a0 = 0; a0 < q; ++a0) {
            ++stats.candidates;
            const int du = du_x >= 0 ? du_x : (a0 != 0 ? 0 : -1);
            const u64 lc = du_x >= 0 ? lc_x : a0;
            const int pole = std::max(du >= 0 ? 2 * du : -1, dv >= 0 ? 3 + 2 * dv : -1);
            const i64 inf_pts = pole % 2 == 1 ? 1 : (F_.chi(lc) == 1 ? 2 : 0);
            const i64 want = target_ - inf_pts;
            i64 sum = 0;
            i64 zeros = 0;
            i64 i = 0;
            const std::uint8_t* tab = contrib_.data() + a0;
            for (; i < npts; ++i) {
                const std::uint8_t c = tab[partial_[static_cast<std::size_t>(i)]];
                sum += c;
                zeros += c == 1 ? 1 : 0;
                const i64 rem = npts - i - 1;
                if (want < sum - zeros || want > sum + zeros + 2 * rem) break;
            }
            if (i < npts) continue;
            i64 count = sum + inf_pts;
            const Genus3Cover probe{e_, Poly{a0, p.alpha1, p.alpha2, p.alpha3}, Poly{p.beta0, p.beta1}};
            if (zeros > 0) {
                ++stats.exact_recounts;
                count = count_points_cover(F_, probe);
            }
            if (count != target_) continue;
            ++stats.count_matches;
            try {
                if (branch_count(F_, probe).genus != 3) {
                    ++stats.genus_rejected;
                    continue;
                }
            } catch (const DegenerateCoverError&) {
                ++stats.degenerate;
                continue;
            }
            hits.push_back({block * q + a0, verify_optimal_genus3(F_, field_, probe, kind_)});
        }
    }

private:
    const PrimeField& F_;
    Disc19Field field_;
    EllipticCurve e_;
    Kind kind_;
    i64 target_;
    std::vector<std::array<u64, 2>> pts_;
    std::vector<std::uint8_t> contrib_;
    std::vector<std::uint32_t> partial_;
};

} // namespace detail

/// Searches normalized covers of E for genus-3 curves meeting the bound of
/// the requested kind. E must be optimal of that kind for hits to exist.
///
/// Work is split into chunks of consecutive blocks handed out in increasing
/// order. Output (hits, stats, cursor) covers exactly the chunks up to the
/// first one at which the hit budget is met, so it does not depend on the
/// number of threads.
inline SearchResult find_optimal_genus3(const PrimeField& F, const Disc19Field& field, const EllipticCurve& e,
                                        Kind kind, const SearchOptions& opt) {
    check_field(F, field.q);
    check_field(F, e.q);
    const CandidateSpace space(field.q, F.nonsquare(), opt.forms);
    SearchResult res;
    res.field = field;
    res.kind = kind;
    res.e = e;
    res.forms = space.forms();
    res.blocks_total = space.blocks();
    res.start_block = std::min(opt.start_block, space.blocks());

    u64 end_block = space.blocks();
    if (opt.block_limit != 0 && opt.block_limit < end_block - res.start_block) {
        end_block = res.start_block + opt.block_limit;
    }
    constexpr u64 kChunk = 16;
    const u64 nchunks = (end_block - res.start_block + kChunk - 1) / kChunk;

    struct ChunkOut {
        bool done = false;
        std::vector<SearchHit> hits;
        SearchStats stats;
    };
    std::vector<ChunkOut> chunks(nchunks);
    std::atomic<u64> next{0};
    std::atomic<u64> cutoff{nchunks};  // chunks beyond this are not needed
    std::mutex mu;
    u64 prefix_done = 0;
    u64 prefix_hits = 0;

    auto worker = [&]() {
        detail::BlockScanner scanner(F, field, e, kind);
        for (;;) {
            const u64 c = next.fetch_add(1);
            if (c >= nchunks || c > cutoff.load(std::memory_order_relaxed)) return;
            ChunkOut out;
            const u64 b0 = res.start_block + c * kChunk;
            const u64 b1 = std::min(b0 + kChunk, end_block);
            for (u64 b = b0; b < b1; ++b) scanner.scan(b, space.decode(b), out.hits, out.stats);
            out.done = true;
            std::lock_guard<std::mutex> lock(mu);
            chunks[c] = std::move(out);
            while (cutoff.load(std::memory_order_relaxed) == nchunks && prefix_done < nchunks && chunks[prefix_done].done) {
                prefix_hits += chunks[prefix_done].hits.size();
                if (opt.max_hits != 0 && prefix_hits >= opt.max_hits) {
                    cutoff.store(prefix_done, std::memory_order_relaxed);
                    ++prefix_done;
                    break;
                }
                ++prefix_done;
            }
        }
    };

    const unsigned nthreads = std::max(1U, opt.threads);
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    const u64 last = std::min(cutoff.load(), nchunks == 0 ? 0 : nchunks - 1);
    for (u64 c = 0; c < nchunks && c <= last; ++c) {
        for (auto& h : chunks[c].hits) res.hits.push_back(std::move(h));
        res.stats += chunks[c].stats;
    }
    // Hits are not truncated to max_hits: the cursor moves past whole chunks,
    // so every hit before it is reported and a resumed search loses nothing.
    std::sort(res.hits.begin(), res.hits.end(), [](const auto& a, const auto& b) { return a.index < b.index; });

    const bool cut = cutoff.load() < nchunks;
    res.next_block = nchunks == 0 ? res.start_block : std::min(end_block, res.start_block + (last + 1) * kChunk);
    res.space_exhausted = res.next_block == space.blocks();
    res.budget_exhausted = cut || (!res.space_exhausted);
    return res;
}

/// Maximal and minimal searches over the respective optimal base curves.
struct ExclusionReport {
    SearchResult maximal;
    SearchResult minimal;

    bool exactly_one_nonempty() const { return maximal.hits.empty() != minimal.hits.empty(); }
};

inline ExclusionReport exhaust_genus3(const PrimeField& F, const Disc19Field& field, std::vector<int> forms,
                                      unsigned threads) {
    SearchOptions opt;
    opt.forms = std::move(forms);
    opt.threads = threads;
    ExclusionReport rep;
    for (Kind k : {Kind::maximal, Kind::minimal}) {
        const auto e = find_optimal_elliptic(F, field, k);
        (k == Kind::maximal ? rep.maximal : rep.minimal) = find_optimal_genus3(F, field, e, k, opt);
    }
    return rep;
}

/// Alternates budgeted maximal and minimal searches with doubling block
/// budgets until one side finds a hit; at most one side can succeed.
struct EitherResult {
    SearchResult maximal;
    SearchResult minimal;
    std::optional<Kind> found;
};

inline EitherResult find_optimal_genus3_either(const PrimeField& F, const Disc19Field& field, std::vector<int> forms,
                                               unsigned threads, u64 initial_blocks = 64) {
    EitherResult out;
    const std::array<EllipticCurve, 2> es{find_optimal_elliptic(F, field, Kind::maximal),
                                          find_optimal_elliptic(F, field, Kind::minimal)};
    std::array<SearchResult, 2> acc;
    std::array<u64, 2> cursor{0, 0};
    std::array<bool, 2> finished{false, false};
    for (int side = 0; side < 2; ++side) {
        acc[side].field = field;
        acc[side].kind = side == 0 ? Kind::maximal : Kind::minimal;
        acc[side].e = es[side];
    }
    u64 budget = initial_blocks;
    while (!out.found && !(finished[0] && finished[1])) {
        for (int side = 0; side < 2 && !out.found; ++side) {
            if (finished[side]) continue;
            SearchOptions opt;
            opt.forms = forms;
            opt.threads = threads;
            opt.max_hits = 1;
            opt.start_block = cursor[side];
            opt.block_limit = budget;
            auto part = find_optimal_genus3(F, field, es[side], acc[side].kind, opt);
            auto& a = acc[side];
            a.forms = part.forms;
            a.blocks_total = part.blocks_total;
            a.next_block = part.next_block;
            a.stats += part.stats;
            a.space_exhausted = part.space_exhausted;
            for (auto& h : part.hits) a.hits.push_back(std::move(h));
            cursor[side] = part.next_block;
            finished[side] = part.space_exhausted;
            if (!a.hits.empty()) out.found = a.kind;
        }
        budget *= 2;
    }
    for (auto& a : acc) a.budget_exhausted = !a.space_exhausted;
    out.maximal = std::move(acc[0]);
    out.minimal = std::move(acc[1]);
    return out;
}

} // namespace optcurve

#endif // OPTCURVE_SEARCH_HPP
