#pragma once

#include <array>
#include <optional>

#include "arl/bytes.hpp"
#include "arl/rng.hpp"

namespace arl {

struct PublicKey {
    std::array<uint8_t, 32> bytes{};
    ByteView view() const { return ByteView(bytes.data(), bytes.size()); }
    auto operator<=>(const PublicKey&) const = default;
};

struct SecretKey {
    std::array<uint8_t, 64> bytes{};
};

struct Signature {
    std::array<uint8_t, 64> bytes{};
    ByteView view() const { return ByteView(bytes.data(), bytes.size()); }
    auto operator<=>(const Signature&) const = default;
};

struct KeyPair {
    PublicKey pk;
    SecretKey sk;

    static KeyPair from_seed(const std::array<uint8_t, 32>& seed);
    static KeyPair generate(Rng& rng) { return from_seed(rng.bytes32()); }
};

Signature sign(const SecretKey& sk, ByteView message);
bool verify_signature(const PublicKey& pk, ByteView message, const Signature& sig);

}  // namespace arl
