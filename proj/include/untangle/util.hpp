#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace untangle {

// ── Error hierarchy ─────────────────────────────────────────────────

/// Base class for all library errors.  `code()` is stable and used by
/// the CLI to map failures to diagnostics.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}
    const std::string& code() const { return code_; }

private:
    std::string code_;
};

#define UNTANGLE_ERROR(NAME)                                       \
    class NAME : public Error {                                    \
    public:                                                        \
        explicit NAME(const std::string& what) : Error(#NAME, what) {} \
    }

UNTANGLE_ERROR(NonInvolutiveTwin);
UNTANGLE_ERROR(DisconnectedMap);
UNTANGLE_ERROR(EulerMismatch);
UNTANGLE_ERROR(NotASpanningForest);
UNTANGLE_ERROR(NotATriangulation);
UNTANGLE_ERROR(DualNotBipartite);
UNTANGLE_ERROR(DegreeBelowEight);
UNTANGLE_ERROR(GenusTooSmall);
UNTANGLE_ERROR(NotIncident);
UNTANGLE_ERROR(EmptyWalk);
UNTANGLE_ERROR(ContractibleInput);
UNTANGLE_ERROR(OverlapViolation);
UNTANGLE_ERROR(ExplorationBudgetExceeded);
UNTANGLE_ERROR(NotIncidentKey);
UNTANGLE_ERROR(ForeignKey);
UNTANGLE_ERROR(HostNotReducing);
UNTANGLE_ERROR(HostNotTorusSchema);
UNTANGLE_ERROR(HostNotLoopSystem);
UNTANGLE_ERROR(MalformedDrawing);
UNTANGLE_ERROR(BudgetExceeded);
UNTANGLE_ERROR(NotSparse);
UNTANGLE_ERROR(WrongGenus);
UNTANGLE_ERROR(HasBoundary);
UNTANGLE_ERROR(NoBoundary);
UNTANGLE_ERROR(ObstacleOnDrawing);
UNTANGLE_ERROR(UnsupportedNoObstacles);
UNTANGLE_ERROR(MalformedPolyline);
UNTANGLE_ERROR(UnsupportedSurface);
UNTANGLE_ERROR(ParseError);
UNTANGLE_ERROR(InternalError);

#undef UNTANGLE_ERROR

inline void require(bool cond, const char* what) {
    if (!cond) throw InternalError(what);
}

// ── Deterministic RNG ───────────────────────────────────────────────
//
// std::uniform_int_distribution is not bit-exact across standard
// libraries, so corpus generation rolls its own rejection sampler on
// top of a fixed-algorithm engine.

class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next() {
        // xorshift* variant; fixed forever for reproducible corpora.
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    /// Uniform in [0, n), n >= 1.
    std::uint64_t below(std::uint64_t n) {
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t x;
        do {
            x = next();
        } while (x >= limit);
        return x % n;
    }

    int below_int(int n) { return static_cast<int>(below(static_cast<std::uint64_t>(n))); }

    bool coin() { return (next() & 1) != 0; }

private:
    std::uint64_t state_;
};

// ── Instrumentation counters ────────────────────────────────────────

struct ReduceStats {
    std::uint64_t spur_moves = 0;
    std::uint64_t spike_moves = 0;
    std::uint64_t bracket_moves = 0;
    std::uint64_t flip_moves = 0;
    std::uint64_t final_moves = 0;  // closed-walk all-3r / all-(-3b) pushes

    std::uint64_t total_moves() const {
        return spur_moves + spike_moves + bracket_moves + flip_moves + final_moves;
    }
};

struct PipelineStats {
    std::uint64_t extend_calls = 0;
    std::uint64_t dict_ops = 0;
    std::uint64_t reduction_moves = 0;
    std::uint64_t weak_embed_branches = 0;
    std::uint64_t weak_embed_checks = 0;

    std::uint64_t total() const {
        return extend_calls + dict_ops + reduction_moves + weak_embed_branches +
               weak_embed_checks;
    }
    void add(const PipelineStats& other) {
        extend_calls += other.extend_calls;
        dict_ops += other.dict_ops;
        reduction_moves += other.reduction_moves;
        weak_embed_branches += other.weak_embed_branches;
        weak_embed_checks += other.weak_embed_checks;
    }
};

}  // namespace untangle
