#pragma once

// Batch sweeps of every verifier over subsets K, test vectors f and a lambda
// grid, and the trial-level suite runner. Output order is always
// (trial, theorem, K-index, f-index, lambda-index), independent of threading.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <map>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "hsframe/frame_gen.hpp"
#include "hsframe/hs_frame.hpp"
#include "hsframe/identity_suite.hpp"
#include "hsframe/random.hpp"

namespace hsframe {

enum class Theorem {
    lemma_pp,
    lemma_pq,
    prop_selfadjoint,
    prop_operator,
    parseval_identity,
    parseval_inequality,
    canonical_dual,
    alternate_dual,
    complex_identity,
    weighted_identity,
};

inline constexpr Theorem kAllTheorems[] = {
    Theorem::lemma_pp,          Theorem::lemma_pq,       Theorem::prop_selfadjoint,
    Theorem::prop_operator,     Theorem::parseval_identity, Theorem::parseval_inequality,
    Theorem::canonical_dual,    Theorem::alternate_dual, Theorem::complex_identity,
    Theorem::weighted_identity,
};

inline const char* to_string(Theorem t) {
    switch (t) {
        case Theorem::lemma_pp: return "lemma_pp";
        case Theorem::lemma_pq: return "lemma_pq";
        case Theorem::prop_selfadjoint: return "prop_selfadjoint";
        case Theorem::prop_operator: return "prop_operator";
        case Theorem::parseval_identity: return "parseval_identity";
        case Theorem::parseval_inequality: return "parseval_inequality";
        case Theorem::canonical_dual: return "canonical_dual";
        case Theorem::alternate_dual: return "alternate_dual";
        case Theorem::complex_identity: return "complex_identity";
        case Theorem::weighted_identity: return "weighted_identity";
    }
    return "?";
}

inline Theorem parse_theorem(const std::string& s) {
    for (Theorem t : kAllTheorems) {
        if (s == to_string(t)) {
            return t;
        }
    }
    throw InvalidParameter("unknown theorem '" + s + "'");
}

inline bool uses_lambda(Theorem t) {
    return t == Theorem::prop_selfadjoint || t == Theorem::prop_operator || t == Theorem::canonical_dual ||
           t == Theorem::alternate_dual;
}

inline bool uses_test_vector(Theorem t) {
    return t != Theorem::lemma_pp && t != Theorem::lemma_pq && t != Theorem::prop_operator;
}

inline bool needs_dual(Theorem t) {
    return t == Theorem::lemma_pp || t == Theorem::lemma_pq || t == Theorem::prop_operator ||
           t == Theorem::alternate_dual || t == Theorem::complex_identity || t == Theorem::weighted_identity;
}

inline bool needs_parseval(Theorem t) {
    return t == Theorem::parseval_identity || t == Theorem::parseval_inequality;
}

/// {0, 0.1, ..., 1.0} with 1/2 present exactly.
inline std::vector<double> default_lambda_grid() {
    std::vector<double> grid;
    for (int i = 0; i <= 10; ++i) {
        grid.push_back(i / 10.0);
    }
    if (std::find(grid.begin(), grid.end(), 0.5) == grid.end()) {
        grid.push_back(0.5);
    }
    return grid;
}

// ---------------------------------------------------------------------------
// Subset policy

struct SubsetMode {
    /// 0 means "all": exhaustive below the limit, sampled above it.
    std::size_t random_count = 0;

    static SubsetMode all() { return {}; }
    static SubsetMode random(std::size_t k) { return {k}; }

    bool exhaustive() const noexcept { return random_count == 0; }

    std::string to_string() const { return exhaustive() ? "all" : "random:" + std::to_string(random_count); }

    static SubsetMode parse(const std::string& s) {
        if (s == "all") {
            return all();
        }
        const std::string prefix = "random:";
        if (s.rfind(prefix, 0) == 0) {
            const std::string tail = s.substr(prefix.size());
            std::size_t pos = 0;
            unsigned long long k = 0;
            try {
                k = std::stoull(tail, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos == tail.size() && pos > 0 && k > 0) {
                return random(static_cast<std::size_t>(k));
            }
        }
        throw InvalidParameter("subset mode must be 'all' or 'random:<k>' with k >= 1 (got '" + s + "')");
    }
};

inline constexpr std::size_t kExhaustiveSubsetLimit = 12;
inline constexpr std::size_t kSampledSubsetCount = 512;

namespace detail {

inline SubsetMask random_subset(std::size_t universe, RandomStream& rng) {
    SubsetMask k(universe);
    for (std::size_t j = 0; j < universe; ++j) {
        k.set(j, (rng.next_u64() >> 63) != 0);
    }
    return k;
}

} // namespace detail

/// The subsets a sweep visits.
///
/// all, N <= 12: every subset in code order. all, N > 12: empty set, J, all
/// singletons and their complements, then random subsets up to 512 total.
/// random:k: empty set, J, {0}, J \ {0}, then k random subsets.
inline std::vector<SubsetMask> sweep_subsets(std::size_t universe, const SubsetMode& mode, std::uint64_t seed) {
    std::vector<SubsetMask> out;
    RandomStream rng(seed, 0x7375627365747300ULL);
    if (mode.exhaustive() && universe <= kExhaustiveSubsetLimit) {
        const std::uint64_t total = std::uint64_t{1} << universe;
        out.reserve(total);
        for (std::uint64_t code = 0; code < total; ++code) {
            out.push_back(SubsetMask::from_code(universe, code));
        }
        return out;
    }
    out.push_back(SubsetMask::empty(universe));
    out.push_back(SubsetMask::full(universe));
    if (mode.exhaustive()) {
        for (std::size_t j = 0; j < universe; ++j) {
            out.push_back(SubsetMask::singleton(universe, j));
            out.push_back(SubsetMask::singleton(universe, j).complement());
        }
        while (out.size() < kSampledSubsetCount) {
            out.push_back(detail::random_subset(universe, rng));
        }
        return out;
    }
    out.push_back(SubsetMask::singleton(universe, 0));
    out.push_back(SubsetMask::singleton(universe, 0).complement());
    for (std::size_t i = 0; i < mode.random_count; ++i) {
        out.push_back(detail::random_subset(universe, rng));
    }
    return out;
}

/// Complex weights with |w_j| <= max_modulus, uniform in radius and angle.
inline std::vector<Complex> random_weights(std::size_t count, double max_modulus, std::uint64_t seed) {
    RandomStream rng(seed, 0x7765696768747300ULL);
    std::vector<Complex> w(count);
    for (auto& x : w) {
        const double r = max_modulus * rng.uniform();
        const double t = 2.0 * std::numbers::pi * rng.uniform();
        x = std::polar(r, t);
    }
    return w;
}

// ---------------------------------------------------------------------------
// Sweeps over one frame

struct SweepOptions {
    std::vector<double> lambda_grid = default_lambda_grid();
    SubsetMode subset_mode;
    ToleranceConfig tolerances;
    std::size_t test_vectors = 8;
    std::uint64_t seed = 0;
    /// Parseval theorems run on parsevalize(frame) instead of requiring a Parseval input.
    bool parsevalize_for_parseval = false;
    /// Modulus bound for weighted-identity weights.
    double weight_modulus = 2.0;
};

struct SweepRecord {
    std::size_t trial = 0;
    std::string subset;
    std::optional<std::size_t> f_index;
    std::optional<double> lambda;
    CheckReport report;
};

/// Frame-level state shared by every theorem swept on one frame.
class FrameSweep {
public:
    FrameSweep(HSFrame frame, std::optional<HSFrame> dual, const SweepOptions& options)
        : frame_(std::move(frame)), dual_(std::move(dual)), options_(options) {
        options_.tolerances.validate();
        for (double l : options_.lambda_grid) {
            detail::require_lambda(l);
        }
        if (options_.lambda_grid.empty()) {
            throw InvalidParameter("lambda grid must not be empty");
        }
        if (dual_) {
            require_valid_dual(frame_, &*dual_);
        }
        subsets_ = sweep_subsets(frame_.size(), options_.subset_mode, derive_seed(options_.seed, 1));
        vectors_ = gen_test_vectors(frame_.dim(), options_.test_vectors, derive_seed(options_.seed, 2));
    }

    const std::vector<SubsetMask>& subsets() const { return subsets_; }
    const std::vector<ComplexVector>& test_vectors() const { return vectors_; }

    std::vector<SweepRecord> run(Theorem theorem, std::size_t trial = 0) const {
        std::vector<SweepRecord> out;
        auto emit = [&](std::size_t ki, std::optional<std::size_t> fi, std::optional<double> lambda,
                        CheckReport report) {
            out.push_back({trial, subsets_[ki].to_string(), fi, lambda, std::move(report)});
        };
        const ToleranceConfig& tol = options_.tolerances;
        const auto& grid = options_.lambda_grid;

        if (needs_dual(theorem) && !dual_) {
            throw InvalidDualError(std::string(to_string(theorem)) + " requires a dual frame");
        }

        switch (theorem) {
            case Theorem::lemma_pp:
            case Theorem::lemma_pq:
            case Theorem::prop_operator: {
                for (std::size_t ki = 0; ki < subsets_.size(); ++ki) {
                    const ComplexMatrix p = mixed_partial_operator(frame_, *dual_, subsets_[ki]);
                    const ComplexMatrix q = mixed_partial_operator(frame_, *dual_, subsets_[ki].complement());
                    if (theorem == Theorem::lemma_pp) {
                        emit(ki, std::nullopt, std::nullopt, lemma_pp(p, q, tol));
                    } else if (theorem == Theorem::lemma_pq) {
                        emit(ki, std::nullopt, std::nullopt, lemma_pq(p, q, tol));
                    } else {
                        for (double l : grid) {
                            emit(ki, std::nullopt, l, prop_operator(p, q, l, tol));
                        }
                    }
                }
                break;
            }
            case Theorem::prop_selfadjoint: {
                // P = S^{-1/2} S_K S^{-1/2}, Q = S^{-1/2} S_{K^c} S^{-1/2}.
                const ComplexMatrix r = hermitian_fn(frame_.frame_operator(), HermitianFunction::inv_sqrt);
                for (std::size_t ki = 0; ki < subsets_.size(); ++ki) {
                    const ComplexMatrix p = r * partial_operator_hs(frame_, subsets_[ki]) * r;
                    const ComplexMatrix q = r * partial_operator_hs(frame_, subsets_[ki].complement()) * r;
                    const ComplexMatrix ph = (p + p.adjoint()) * 0.5;
                    const ComplexMatrix qh = (q + q.adjoint()) * 0.5;
                    for (std::size_t fi = 0; fi < vectors_.size(); ++fi) {
                        for (double l : grid) {
                            emit(ki, fi, l, prop_selfadjoint(ph, qh, l, vectors_[fi], tol));
                        }
                    }
                }
                break;
            }
            case Theorem::parseval_identity:
            case Theorem::parseval_inequality: {
                const HSFrame target = options_.parsevalize_for_parseval ? parsevalize(frame_) : frame_;
                require_parseval(target);
                const auto terms = prepare(target, nullptr);
                for (std::size_t ki = 0; ki < subsets_.size(); ++ki) {
                    for (std::size_t fi = 0; fi < terms.size(); ++fi) {
                        emit(ki, fi, std::nullopt,
                             theorem == Theorem::parseval_identity
                                 ? eval::parseval_identity(terms[fi], subsets_[ki], tol)
                                 : eval::parseval_inequality(terms[fi], subsets_[ki], tol));
                    }
                }
                break;
            }
            case Theorem::canonical_dual: {
                const HSDualPair pair = canonical_dual_hs(frame_);
                const CanonicalContext ctx = make_canonical_context(frame_, pair.dual);
                const auto terms = prepare(frame_, nullptr);
                for (std::size_t ki = 0; ki < subsets_.size(); ++ki) {
                    for (std::size_t fi = 0; fi < terms.size(); ++fi) {
                        auto reports = eval::canonical_dual(terms[fi], ctx, subsets_[ki], grid, tol);
                        for (std::size_t li = 0; li < grid.size(); ++li) {
                            emit(ki, fi, grid[li], std::move(reports[li]));
                        }
                    }
                }
                break;
            }
            case Theorem::alternate_dual:
            case Theorem::complex_identity:
            case Theorem::weighted_identity: {
                const auto terms = prepare(frame_, &*dual_);
                for (std::size_t ki = 0; ki < subsets_.size(); ++ki) {
                    std::vector<Complex> w;
                    if (theorem == Theorem::weighted_identity) {
                        w = random_weights(frame_.size(), options_.weight_modulus, derive_seed(options_.seed, 1000 + ki));
                    }
                    for (std::size_t fi = 0; fi < terms.size(); ++fi) {
                        if (theorem == Theorem::alternate_dual) {
                            auto reports = eval::alternate_dual(terms[fi], subsets_[ki], grid, tol);
                            for (std::size_t li = 0; li < grid.size(); ++li) {
                                emit(ki, fi, grid[li], std::move(reports[li]));
                            }
                        } else if (theorem == Theorem::complex_identity) {
                            emit(ki, fi, std::nullopt, eval::complex_identity(terms[fi], subsets_[ki], tol));
                        } else {
                            emit(ki, fi, std::nullopt, eval::weighted_identity(terms[fi], w, tol));
                        }
                    }
                }
                break;
            }
        }
        return out;
    }

private:
    std::vector<FrameTerms> prepare(const HSFrame& frame, const HSFrame* dual) const {
        std::vector<FrameTerms> terms;
        terms.reserve(vectors_.size());
        for (const auto& f : vectors_) {
            terms.emplace_back(frame, dual, f);
        }
        return terms;
    }

    HSFrame frame_;
    std::optional<HSFrame> dual_;
    SweepOptions options_;
    std::vector<SubsetMask> subsets_;
    std::vector<ComplexVector> vectors_;
};

// ---------------------------------------------------------------------------
// Aggregation

struct TheoremSummary {
    double worst_residual = 0.0;        // max residual / scale
    std::optional<double> worst_margin;  // min margin / scale
    std::size_t checks_run = 0;
    bool pass = true;
    std::size_t failures = 0;
};

inline void accumulate(TheoremSummary& s, const CheckReport& r) {
    s.worst_residual = std::max(s.worst_residual, r.relative_residual());
    if (auto m = r.relative_margin()) {
        s.worst_margin = s.worst_margin ? std::min(*s.worst_margin, *m) : *m;
    }
    ++s.checks_run;
    if (!r.pass) {
        s.pass = false;
        ++s.failures;
    }
}

// ---------------------------------------------------------------------------
// Suite

enum class OutputFormat { json, csv };

struct SuiteConfig {
    GenSpec gen;
    std::size_t trials = 20;
    std::vector<Theorem> theorems{std::begin(kAllTheorems), std::end(kAllTheorems)};
    std::vector<double> lambda_grid = default_lambda_grid();
    SubsetMode subset_mode;
    ToleranceConfig tolerances;
    std::uint64_t seed = 0;
    OutputFormat format = OutputFormat::json;
    std::size_t test_vectors = 8;
    double dual_scale = 1.0;

    SuiteConfig() {
        gen.kind = GenKind::gaussian_hs;
        gen.n = 4;
        gen.m = 2;
        gen.count = 6;
    }

    void validate() const {
        if (trials < 1) {
            throw InvalidParameter("suite: trials must be >= 1");
        }
        if (theorems.empty()) {
            throw InvalidParameter("suite: at least one theorem must be selected");
        }
        if (lambda_grid.empty()) {
            throw InvalidParameter("suite: lambda grid must not be empty");
        }
        for (double l : lambda_grid) {
            detail::require_lambda(l);
        }
        if (!(dual_scale >= 0.0)) {
            throw InvalidParameter("suite: dual_scale must be nonnegative");
        }
        tolerances.validate();
        gen.validate();
    }
};

struct SuiteResult {
    std::vector<SweepRecord> records;                // (trial, theorem, K, f, lambda) order
    std::map<std::string, TheoremSummary> summary;   // keyed by theorem name
    bool pass = true;
};

/// Runs every trial; `threads` workers share trials but results are merged in trial order.
inline SuiteResult run_suite(const SuiteConfig& config, unsigned threads = 1, bool keep_records = true) {
    config.validate();
    const std::size_t trials = config.trials;
    std::vector<std::vector<SweepRecord>> per_trial(trials);
    std::vector<std::exception_ptr> errors(trials);

    auto run_trial = [&](std::size_t t) {
        try {
            const std::uint64_t trial_seed = derive_seed(config.seed, t);
            const HSFrame frame = as_hs_frame(generate(config.gen.with_seed(trial_seed)));
            bool want_dual = false;
            for (Theorem th : config.theorems) {
                want_dual = want_dual || needs_dual(th);
            }
            std::optional<HSFrame> dual;
            if (want_dual) {
                dual = make_alternate_dual(frame, derive_seed(trial_seed, 3), config.dual_scale).dual;
            }
            SweepOptions opts;
            opts.lambda_grid = config.lambda_grid;
            opts.subset_mode = config.subset_mode;
            opts.tolerances = config.tolerances;
            opts.test_vectors = config.test_vectors;
            opts.seed = trial_seed;
            opts.parsevalize_for_parseval = true;
            const FrameSweep sweep(frame, dual, opts);
            for (Theorem th : config.theorems) {
                auto recs = sweep.run(th, t);
                per_trial[t].insert(per_trial[t].end(), std::make_move_iterator(recs.begin()),
                                    std::make_move_iterator(recs.end()));
            }
        } catch (...) {
            errors[t] = std::current_exception();
        }
    };

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
    if (workers == 1) {
        for (std::size_t t = 0; t < trials; ++t) {
            run_trial(t);
        }
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t t = next++; t < trials; t = next++) {
                    run_trial(t);
                }
            });
        }
        for (auto& th : pool) {
            th.join();
        }
    }
    for (const auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }

    SuiteResult result;
    for (Theorem th : config.theorems) {
        result.summary[to_string(th)];
    }
    for (auto& recs : per_trial) {
        for (auto& r : recs) {
            TheoremSummary& s = result.summary[r.report.theorem];
            accumulate(s, r.report);
            result.pass = result.pass && r.report.pass;
            if (keep_records) {
                result.records.push_back(std::move(r));
            }
        }
    }
    return result;
}

} // namespace hsframe
