#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "hsframe/errors.hpp"

namespace hsframe {

/// A subset K of the index set J = {0, ..., N-1}.
class SubsetMask {
public:
    SubsetMask() = default;
    explicit SubsetMask(std::size_t universe) : bits_(universe, 0) {}

    static SubsetMask empty(std::size_t universe) { return SubsetMask(universe); }

    static SubsetMask full(std::size_t universe) {
        SubsetMask k(universe);
        for (auto& b : k.bits_) {
            b = 1;
        }
        return k;
    }

    static SubsetMask singleton(std::size_t universe, std::size_t j) {
        SubsetMask k(universe);
        k.set(j, true);
        return k;
    }

    /// Bit j of `code` selects index j; requires universe <= 64.
    static SubsetMask from_code(std::size_t universe, std::uint64_t code) {
        if (universe > 64) {
            throw InvalidParameter("SubsetMask::from_code: universe exceeds 64");
        }
        SubsetMask k(universe);
        for (std::size_t j = 0; j < universe; ++j) {
            k.bits_[j] = static_cast<unsigned char>((code >> j) & 1u);
        }
        return k;
    }

    /// Parses a string of '0'/'1' characters, index 0 first.
    static SubsetMask from_string(const std::string& s) {
        SubsetMask k(s.size());
        for (std::size_t j = 0; j < s.size(); ++j) {
            if (s[j] != '0' && s[j] != '1') {
                throw InvalidInput("SubsetMask::from_string: expected only '0' and '1'");
            }
            k.bits_[j] = s[j] == '1';
        }
        return k;
    }

    std::size_t universe() const noexcept { return bits_.size(); }

    bool contains(std::size_t j) const { return bits_.at(j) != 0; }

    void set(std::size_t j, bool on) { bits_.at(j) = on ? 1 : 0; }

    std::size_t count() const noexcept {
        std::size_t c = 0;
        for (auto b : bits_) {
            c += b;
        }
        return c;
    }

    SubsetMask complement() const {
        SubsetMask k(*this);
        for (auto& b : k.bits_) {
            b = b ? 0 : 1;
        }
        return k;
    }

    SubsetMask operator|(const SubsetMask& o) const { return combine(o, [](bool a, bool b) { return a || b; }); }
    SubsetMask operator&(const SubsetMask& o) const { return combine(o, [](bool a, bool b) { return a && b; }); }

    bool operator==(const SubsetMask&) const = default;

    std::string to_string() const {
        std::string s(bits_.size(), '0');
        for (std::size_t j = 0; j < bits_.size(); ++j) {
            if (bits_[j]) {
                s[j] = '1';
            }
        }
        return s;
    }

private:
    template <class Op>
    SubsetMask combine(const SubsetMask& o, Op op) const {
        if (o.universe() != universe()) {
            throw DimensionError("SubsetMask: universes differ");
        }
        SubsetMask k(universe());
        for (std::size_t j = 0; j < bits_.size(); ++j) {
            k.bits_[j] = op(bits_[j] != 0, o.bits_[j] != 0) ? 1 : 0;
        }
        return k;
    }

    std::vector<unsigned char> bits_;
};

} // namespace hsframe
