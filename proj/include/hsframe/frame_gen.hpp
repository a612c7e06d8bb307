#pragma once

// Deterministic frame generators. Every random entry of frame element j is
// drawn from its own counter stream keyed by (seed, attempt, j), so output
// depends only on the arguments.

#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <variant>
#include <vector>

#include "hsframe/hs_frame.hpp"
#include "hsframe/random.hpp"
#include "hsframe/vector_frame.hpp"

namespace hsframe {

/// Generated frames whose lower bound falls below this are redrawn (when a frame is possible at all).
inline constexpr double kMinGeneratedLowerBound = 1e-8;
inline constexpr int kMaxGenerationAttempts = 64;

namespace detail {

inline std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
    return attempt == 0 ? seed : derive_seed(seed, static_cast<std::uint64_t>(attempt));
}

template <class Make, class Accept>
auto regenerate_until(std::uint64_t seed, bool must_be_frame, Make make, Accept accept) {
    for (int attempt = 0; attempt < kMaxGenerationAttempts; ++attempt) {
        auto frame = make(attempt_seed(seed, attempt));
        if (!must_be_frame || accept(frame)) {
            return frame;
        }
    }
    throw DecompositionError("frame generation: no frame with positive lower bound after retries");
}

} // namespace detail

/// i.i.d. standard complex normal entries.
inline VectorFrame gen_gaussian_vector(Eigen::Index n, std::size_t count, std::uint64_t seed) {
    if (n < 1 || count < 1) {
        throw InvalidParameter("gen_gaussian_vector: n and N must be positive");
    }
    auto make = [&](std::uint64_t s) {
        std::vector<ComplexVector> v;
        v.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            RandomStream rng(s, j);
            v.emplace_back(rng.complex_normal_matrix(n, 1));
        }
        return VectorFrame(n, std::move(v));
    };
    return detail::regenerate_until(seed, static_cast<Eigen::Index>(count) >= n, make, [](const VectorFrame& f) {
        return frame_bounds(f).lower > kMinGeneratedLowerBound;
    });
}

/// f_j[k] = exp(2 pi i j k / N) / sqrt(N), k < n: n rows of the unitary N-point DFT, a Parseval frame.
inline VectorFrame gen_harmonic(Eigen::Index n, std::size_t count) {
    if (n < 1 || static_cast<Eigen::Index>(count) < n) {
        throw InvalidParameter("gen_harmonic: requires 1 <= n <= N");
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(count));
    std::vector<ComplexVector> v;
    v.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        ComplexVector f(n);
        for (Eigen::Index k = 0; k < n; ++k) {
            // Reduce j*k mod N first so the angle stays exact in integer arithmetic.
            const auto r = (static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(k)) % count;
            const double t = 2.0 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(count);
            f[k] = Complex(std::cos(t), std::sin(t)) * norm;
        }
        v.push_back(std::move(f));
    }
    return VectorFrame(n, std::move(v));
}

/// N maps with i.i.d. standard complex normal m^2 x n coefficient blocks.
inline HSFrame gen_gaussian_hs(Eigen::Index n, Eigen::Index m, std::size_t count, std::uint64_t seed) {
    if (n < 1 || m < 1 || count < 1) {
        throw InvalidParameter("gen_gaussian_hs: n, m and N must be positive");
    }
    auto make = [&](std::uint64_t s) {
        std::vector<ComplexMatrix> blocks;
        blocks.reserve(count);
        for (std::size_t j = 0; j < count; ++j) {
            RandomStream rng(s, j);
            blocks.emplace_back(rng.complex_normal_matrix(m * m, n));
        }
        return HSFrame::from_coefficients(n, m, blocks);
    };
    const bool possible = static_cast<Eigen::Index>(count) * m * m >= n;
    return detail::regenerate_until(seed, possible, make, [](const HSFrame& f) {
        return hs_frame_bounds(f).lower > kMinGeneratedLowerBound;
    });
}

/// Maps Lambda_j of shape dims[j] x n with i.i.d. standard complex normal entries.
inline GFrame gen_gaussian_g(Eigen::Index n, const std::vector<Eigen::Index>& dims, std::uint64_t seed) {
    if (n < 1 || dims.empty()) {
        throw InvalidParameter("gen_gaussian_g: n must be positive and dims non-empty");
    }
    Eigen::Index total = 0;
    for (auto d : dims) {
        if (d < 1) {
            throw InvalidParameter("gen_gaussian_g: every d_j must be positive");
        }
        total += d;
    }
    auto make = [&](std::uint64_t s) {
        std::vector<ComplexMatrix> maps;
        maps.reserve(dims.size());
        for (std::size_t j = 0; j < dims.size(); ++j) {
            RandomStream rng(s, j);
            maps.emplace_back(rng.complex_normal_matrix(dims[j], n));
        }
        return GFrame(n, std::move(maps));
    };
    return detail::regenerate_until(seed, total >= n, make, [](const GFrame& f) {
        return g_frame_bounds(f).lower > kMinGeneratedLowerBound;
    });
}

/// G_j <- G_j S^{-1/2}; the result has frame operator I.
inline HSFrame parsevalize(const HSFrame& frame) {
    return frame.compose_right(hermitian_fn(frame.frame_operator(), HermitianFunction::inv_sqrt));
}

/// f_j <- S^{-1/2} f_j.
inline VectorFrame parsevalize(const VectorFrame& frame) {
    const ComplexMatrix r = hermitian_fn(frame.frame_operator(), HermitianFunction::inv_sqrt);
    std::vector<ComplexVector> v;
    v.reserve(frame.size());
    for (const auto& f : frame.vectors()) {
        v.emplace_back(r * f);
    }
    return VectorFrame(frame.dim(), std::move(v));
}

/// Lambda_j <- Lambda_j S^{-1/2}.
inline GFrame parsevalize(const GFrame& frame) {
    const ComplexMatrix r = hermitian_fn(frame.frame_operator(), HermitianFunction::inv_sqrt);
    std::vector<ComplexMatrix> maps;
    maps.reserve(frame.size());
    for (const auto& l : frame.maps()) {
        maps.emplace_back(l * r);
    }
    return GFrame(frame.dim(), std::move(maps));
}

/// Unit vectors: the first min(count, n) standard basis vectors, then seeded random directions.
inline std::vector<ComplexVector> gen_test_vectors(Eigen::Index n, std::size_t count, std::uint64_t seed) {
    if (n < 1) {
        throw InvalidParameter("gen_test_vectors: n must be positive");
    }
    std::vector<ComplexVector> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (static_cast<Eigen::Index>(i) < n) {
            out.push_back(ComplexVector::Unit(n, static_cast<Eigen::Index>(i)));
            continue;
        }
        RandomStream rng(seed, 0x7465737400000000ULL + i);
        ComplexVector f = rng.complex_normal_matrix(n, 1);
        while (f.norm() == 0.0) {
            f = rng.complex_normal_matrix(n, 1);
        }
        out.push_back(f / f.norm());
    }
    return out;
}

// ---------------------------------------------------------------------------
// GenSpec

enum class GenKind { gaussian_vector, harmonic, gaussian_hs, gaussian_g, parsevalize };

inline const char* to_string(GenKind k) {
    switch (k) {
        case GenKind::gaussian_vector: return "gaussian_vector";
        case GenKind::harmonic: return "harmonic";
        case GenKind::gaussian_hs: return "gaussian_hs";
        case GenKind::gaussian_g: return "gaussian_g";
        case GenKind::parsevalize: return "parsevalize";
    }
    return "?";
}

struct GenSpec {
    GenKind kind = GenKind::gaussian_hs;
    Eigen::Index n = 1;
    Eigen::Index m = 1;
    std::size_t count = 1;  // N
    std::vector<Eigen::Index> dims;
    std::uint64_t seed = 0;
    std::shared_ptr<const GenSpec> inner;  // for parsevalize

    void validate() const {
        switch (kind) {
            case GenKind::parsevalize:
                if (!inner) {
                    throw InvalidParameter("GenSpec: parsevalize requires an inner spec");
                }
                inner->validate();
                return;
            case GenKind::gaussian_g:
                if (n < 1 || dims.empty()) {
                    throw InvalidParameter("GenSpec: gaussian_g requires n >= 1 and non-empty dims");
                }
                for (auto d : dims) {
                    if (d < 1) {
                        throw InvalidParameter("GenSpec: dims must be positive");
                    }
                }
                return;
            case GenKind::harmonic:
                if (n < 1 || static_cast<Eigen::Index>(count) < n) {
                    throw InvalidParameter("GenSpec: harmonic requires 1 <= n <= N");
                }
                return;
            default:
                if (n < 1 || m < 1 || count < 1) {
                    throw InvalidParameter("GenSpec: n, m and N must be positive");
                }
        }
    }

    /// Same spec with every seed (including nested ones) replaced by `s`.
    GenSpec with_seed(std::uint64_t s) const {
        GenSpec out = *this;
        out.seed = s;
        if (inner) {
            out.inner = std::make_shared<const GenSpec>(inner->with_seed(s));
        }
        return out;
    }
};

using GeneratedFrame = std::variant<VectorFrame, HSFrame, GFrame>;

inline GeneratedFrame generate(const GenSpec& spec) {
    spec.validate();
    switch (spec.kind) {
        case GenKind::gaussian_vector: return gen_gaussian_vector(spec.n, spec.count, spec.seed);
        case GenKind::harmonic: return gen_harmonic(spec.n, spec.count);
        case GenKind::gaussian_hs: return gen_gaussian_hs(spec.n, spec.m, spec.count, spec.seed);
        case GenKind::gaussian_g: return gen_gaussian_g(spec.n, spec.dims, spec.seed);
        case GenKind::parsevalize:
            return std::visit([](const auto& f) -> GeneratedFrame { return parsevalize(f); }, generate(*spec.inner));
    }
    throw InvalidParameter("GenSpec: unknown kind");
}

/// Any generated frame viewed as an HS-frame.
inline HSFrame as_hs_frame(const GeneratedFrame& g) {
    struct Visitor {
        HSFrame operator()(const VectorFrame& f) const { return embed_vector_frame(f); }
        HSFrame operator()(const HSFrame& f) const { return f; }
        HSFrame operator()(const GFrame& f) const { return embed_g_frame(f); }
    };
    return std::visit(Visitor{}, g);
}

inline FrameBounds bounds_of(const GeneratedFrame& g) {
    return std::visit([](const auto& f) { return bounds_of(f.frame_operator()); }, g);
}

} // namespace hsframe
