#include "fracsync/cipher.hpp"

#include <cmath>
#include <random>

#include "fracsync/errors.hpp"

namespace fracsync {

Codec Codec::from_name(const std::string& name) {
    if (name == "paper36") return Codec(CodecKind::Paper36);
    if (name == "base36") return Codec(CodecKind::Base36);
    if (name == "ascii128") return Codec(CodecKind::Ascii128);
    throw ConfigError("unknown codec '" + name +
                      "' (expected paper36, base36, ascii128)");
}

std::string Codec::name() const {
    switch (kind_) {
        case CodecKind::Paper36: return "paper36";
        case CodecKind::Base36: return "base36";
        case CodecKind::Ascii128: return "ascii128";
    }
    return "unknown";
}

std::string Codec::normalize(const std::string& text) const {
    if (kind_ == CodecKind::Ascii128) return text;
    std::string out;
    out.reserve(text.size());
    for (char ch : text) {
        const unsigned char u = static_cast<unsigned char>(ch);
        if (u >= '0' && u <= '9') out.push_back(ch);
        else if (u >= 'a' && u <= 'z') out.push_back(ch);
        else if (u >= 'A' && u <= 'Z') out.push_back(static_cast<char>(u - 'A' + 'a'));
    }
    return out;
}

int Codec::encode_symbol(char symbol, std::size_t position) const {
    const unsigned char u = static_cast<unsigned char>(symbol);
    switch (kind_) {
        case CodecKind::Paper36:
            if (u >= '0' && u <= '9') return u - '0';
            if (u == 'z') return 10;
            if (u >= 'a' && u <= 'y') return 11 + (u - 'a');
            break;
        case CodecKind::Base36:
            if (u >= '0' && u <= '9') return u - '0';
            if (u >= 'a' && u <= 'z') return 10 + (u - 'a');
            break;
        case CodecKind::Ascii128:
            if (u <= 127) return u;
            break;
    }
    throw CodecError("symbol '" + std::string(1, symbol) + "' at position " +
                     std::to_string(position) + " is not representable in " + name());
}

char Codec::decode_symbol(int code) const {
    if (code < 0 || code >= modulus())
        throw CodecError("code " + std::to_string(code) + " out of range for " + name());
    switch (kind_) {
        case CodecKind::Paper36:
            if (code <= 9) return static_cast<char>('0' + code);
            if (code == 10) return 'z';
            return static_cast<char>('a' + (code - 11));
        case CodecKind::Base36:
            if (code <= 9) return static_cast<char>('0' + code);
            return static_cast<char>('a' + (code - 10));
        case CodecKind::Ascii128:
            return static_cast<char>(code);
    }
    throw CodecError("unreachable codec kind");
}

KeySource KeySource::explicit_keys(std::vector<std::uint64_t> keys) {
    KeySource src;
    src.kind_ = Kind::Explicit;
    src.explicit_ = std::move(keys);
    return src;
}

KeySource KeySource::seeded(std::uint64_t seed) {
    KeySource src;
    src.kind_ = Kind::Seeded;
    src.seed_ = seed;
    return src;
}

KeySource KeySource::trajectory(std::vector<double> z_series, std::size_t t0_index,
                                double scale) {
    KeySource src;
    src.kind_ = Kind::Trajectory;
    src.z_ = std::move(z_series);
    src.t0_index_ = t0_index;
    src.scale_ = scale;
    return src;
}

std::vector<std::uint64_t> KeySource::keys(std::size_t count) const {
    switch (kind_) {
        case Kind::Explicit: {
            if (explicit_.size() < count)
                throw ConfigError("key source exhausted: needed " +
                                  std::to_string(count) + " keys, " +
                                  std::to_string(explicit_.size()) + " available");
            return {explicit_.begin(), explicit_.begin() + count};
        }
        case Kind::Seeded: {
            std::mt19937_64 engine(seed_);
            std::vector<std::uint64_t> out(count);
            for (auto& k : out) k = engine() % 1000000u;
            return out;
        }
        case Kind::Trajectory:
            return derive_keys_from_trajectory(z_, t0_index_, count, scale_);
    }
    throw ConfigError("unreachable key source kind");
}

std::vector<std::uint64_t> derive_keys_from_trajectory(const std::vector<double>& z_series,
                                                       std::size_t t0_index,
                                                       std::size_t count, double scale) {
    if (!(scale > 0.0)) throw DomainError("key scale must be positive");
    if (t0_index + count >= z_series.size())
        throw DomainError("z series too short: need indices up to " +
                          std::to_string(t0_index + count) + ", have " +
                          std::to_string(z_series.size()) + " samples");
    std::vector<std::uint64_t> out(count);
    for (std::size_t i = 1; i <= count; ++i) {
        const double z = z_series[t0_index + i];
        if (!std::isfinite(z)) throw DomainError("non-finite z sample in key derivation");
        out[i - 1] = static_cast<std::uint64_t>(std::floor(std::fabs(z) * scale));
    }
    return out;
}

std::vector<int> encrypt(const CipherSession& session, const std::string& plaintext) {
    const std::string normalized = session.codec.normalize(plaintext);
    const auto keys = session.keys.keys(normalized.size());
    const int m = session.codec.modulus();
    std::vector<int> out(normalized.size());
    for (std::size_t i = 0; i < normalized.size(); ++i) {
        const int p = session.codec.encode_symbol(normalized[i], i);
        out[i] = static_cast<int>((p + keys[i] % m) % m);
    }
    return out;
}

std::string decrypt(const CipherSession& session, const std::vector<int>& ciphertext) {
    const auto keys = session.keys.keys(ciphertext.size());
    const int m = session.codec.modulus();
    std::string out;
    out.reserve(ciphertext.size());
    for (std::size_t i = 0; i < ciphertext.size(); ++i) {
        const int c = ciphertext[i];
        if (c < 0 || c >= m)
            throw CodecError("ciphertext code " + std::to_string(c) + " at position " +
                             std::to_string(i) + " out of range for modulus " +
                             std::to_string(m));
        const int kr = static_cast<int>(keys[i] % static_cast<std::uint64_t>(m));
        const int p = ((c - kr) % m + m) % m;
        out.push_back(session.codec.decode_symbol(p));
    }
    return out;
}

KeyAgreementReport key_agreement(const std::vector<double>& sender_z,
                                 const std::vector<double>& receiver_z,
                                 std::size_t t0_index, std::size_t count,
                                 double scale) {
    const auto sender = derive_keys_from_trajectory(sender_z, t0_index, count, scale);
    const auto receiver = derive_keys_from_trajectory(receiver_z, t0_index, count, scale);
    KeyAgreementReport report;
    report.sender_margins.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double s = std::fabs(sender_z[t0_index + i + 1]) * scale;
        const double frac = s - std::floor(s);
        report.sender_margins[i] = std::min(frac, 1.0 - frac);
        if (sender[i] != receiver[i]) report.mismatch_positions.push_back(i);
    }
    report.all_match = report.mismatch_positions.empty();
    return report;
}

}  // namespace fracsync
