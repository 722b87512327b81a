#include "arl/ed25519.hpp"

#include <sodium.h>

#include <stdexcept>

namespace arl {

namespace {
void ensure_sodium() {
    static const int rc = sodium_init();
    if (rc < 0) throw std::runtime_error("libsodium initialization failed");
}
}  // namespace

static_assert(crypto_sign_PUBLICKEYBYTES == 32);
static_assert(crypto_sign_SECRETKEYBYTES == 64);
static_assert(crypto_sign_BYTES == 64);

KeyPair KeyPair::from_seed(const std::array<uint8_t, 32>& seed) {
    ensure_sodium();
    KeyPair kp;
    crypto_sign_seed_keypair(kp.pk.bytes.data(), kp.sk.bytes.data(), seed.data());
    return kp;
}

Signature sign(const SecretKey& sk, ByteView message) {
    ensure_sodium();
    Signature sig;
    crypto_sign_detached(sig.bytes.data(), nullptr, message.data(), message.size(),
                         sk.bytes.data());
    return sig;
}

bool verify_signature(const PublicKey& pk, ByteView message, const Signature& sig) {
    ensure_sodium();
    return crypto_sign_verify_detached(sig.bytes.data(), message.data(), message.size(),
                                       pk.bytes.data()) == 0;
}

}  // namespace arl
