#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace fracsync {

enum class CodecKind { Paper36, Base36, Ascii128 };

// Symbol <-> code table. paper36 is the table-driven mapping (digits 0-9 keep
// their value, a -> 11 ... y -> 35, z -> 10); base36 is the conventional one
// (a -> 10 ... z -> 35); ascii128 passes raw 7-bit codes through, modulus 128.
class Codec {
public:
    explicit Codec(CodecKind kind) : kind_(kind) {}
    static Codec from_name(const std::string& name);

    CodecKind kind() const { return kind_; }
    std::string name() const;
    int modulus() const { return kind_ == CodecKind::Ascii128 ? 128 : 36; }

    // Lowercases and strips non-alphanumeric bytes for the 36-symbol codecs;
    // identity for ascii128.
    std::string normalize(const std::string& text) const;

    int encode_symbol(char symbol, std::size_t position) const;
    char decode_symbol(int code) const;

private:
    CodecKind kind_;
};

class KeySource {
public:
    enum class Kind { Explicit, Seeded, Trajectory };

    static KeySource explicit_keys(std::vector<std::uint64_t> keys);
    static KeySource seeded(std::uint64_t seed);
    static KeySource trajectory(std::vector<double> z_series, std::size_t t0_index,
                                double scale = 1e6);

    Kind kind() const { return kind_; }
    // One key per symbol. Throws ConfigError when an explicit list runs out,
    // DomainError when a trajectory series is too short.
    std::vector<std::uint64_t> keys(std::size_t count) const;

private:
    KeySource() = default;
    Kind kind_ = Kind::Explicit;
    std::vector<std::uint64_t> explicit_;
    std::uint64_t seed_ = 0;
    std::vector<double> z_;
    std::size_t t0_index_ = 0;
    double scale_ = 1e6;
};

// k_i = floor(|z[t0_index + i]| * scale), i = 1..count.
std::vector<std::uint64_t> derive_keys_from_trajectory(const std::vector<double>& z_series,
                                                       std::size_t t0_index,
                                                       std::size_t count,
                                                       double scale = 1e6);

struct CipherSession {
    Codec codec;
    KeySource keys;
};

// c_i = (p_i + k_i) mod m over the normalized plaintext.
std::vector<int> encrypt(const CipherSession& session, const std::string& plaintext);

// p_i = (c_i - k_i) mod m decoded through the codec.
std::string decrypt(const CipherSession& session, const std::vector<int>& ciphertext);

// Quantization-margin check between sender and receiver key derivations from
// two z series over the same grid. A mismatch at position i means
// floor(|z1|*scale) != floor(|z2|*scale) for the i-th key.
struct KeyAgreementReport {
    std::vector<std::size_t> mismatch_positions;  // 0-based symbol positions
    std::vector<double> sender_margins;  // distance to the nearest key boundary
    bool all_match = true;
};

KeyAgreementReport key_agreement(const std::vector<double>& sender_z,
                                 const std::vector<double>& receiver_z,
                                 std::size_t t0_index, std::size_t count,
                                 double scale = 1e6);

}  // namespace fracsync
