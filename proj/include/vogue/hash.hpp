#pragma once

#include <cstdint>
#include <fstream>
#include <string>

#include "vogue/errors.hpp"

namespace vogue {

// FNV-1a 64-bit. std::hash is not stable across runs or implementations;
// manifests need a deterministic digest.
class Fnv1a {
public:
    static constexpr std::uint64_t kPrime = 0x100000001b3ULL;
    static constexpr std::uint64_t kOffset = 0xcbf29ce484222325ULL;

    void update(const char* data, std::size_t len) {
        for (std::size_t i = 0; i < len; ++i) {
            hash_ ^= static_cast<unsigned char>(data[i]);
            hash_ *= kPrime;
        }
    }
    void update(const std::string& s) { update(s.data(), s.size()); }

    std::uint64_t value() const { return hash_; }

    std::string hex() const {
        static const char* digits = "0123456789abcdef";
        std::string out(16, '0');
        std::uint64_t v = hash_;
        for (int i = 15; i >= 0; --i) {
            out[static_cast<std::size_t>(i)] = digits[v & 0xf];
            v >>= 4;
        }
        return out;
    }

private:
    std::uint64_t hash_ = kOffset;
};

inline std::string hash_string(const std::string& s) {
    Fnv1a h;
    h.update(s);
    return h.hex();
}

inline std::string hash_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot hash unreadable file: " + path);
    Fnv1a h;
    char buffer[1 << 16];
    while (in.read(buffer, sizeof(buffer)) || in.gcount() > 0) {
        h.update(buffer, static_cast<std::size_t>(in.gcount()));
    }
    return h.hex();
}

}  // namespace vogue
