#include "paes/aes_core.hpp"

#include <stdexcept>

namespace paes::aes {

namespace {

constexpr std::array<Byte, 256> kSbox = {
    0x63, 0x7c, 0x77, 0x7b, 0xf2, 0x6b, 0x6f, 0xc5, 0x30, 0x01, 0x67, 0x2b, 0xfe, 0xd7, 0xab, 0x76,
    0xca, 0x82, 0xc9, 0x7d, 0xfa, 0x59, 0x47, 0xf0, 0xad, 0xd4, 0xa2, 0xaf, 0x9c, 0xa4, 0x72, 0xc0,
    0xb7, 0xfd, 0x93, 0x26, 0x36, 0x3f, 0xf7, 0xcc, 0x34, 0xa5, 0xe5, 0xf1, 0x71, 0xd8, 0x31, 0x15,
    0x04, 0xc7, 0x23, 0xc3, 0x18, 0x96, 0x05, 0x9a, 0x07, 0x12, 0x80, 0xe2, 0xeb, 0x27, 0xb2, 0x75,
    0x09, 0x83, 0x2c, 0x1a, 0x1b, 0x6e, 0x5a, 0xa0, 0x52, 0x3b, 0xd6, 0xb3, 0x29, 0xe3, 0x2f, 0x84,
    0x53, 0xd1, 0x00, 0xed, 0x20, 0xfc, 0xb1, 0x5b, 0x6a, 0xcb, 0xbe, 0x39, 0x4a, 0x4c, 0x58, 0xcf,
    0xd0, 0xef, 0xaa, 0xfb, 0x43, 0x4d, 0x33, 0x85, 0x45, 0xf9, 0x02, 0x7f, 0x50, 0x3c, 0x9f, 0xa8,
    0x51, 0xa3, 0x40, 0x8f, 0x92, 0x9d, 0x38, 0xf5, 0xbc, 0xb6, 0xda, 0x21, 0x10, 0xff, 0xf3, 0xd2,
    0xcd, 0x0c, 0x13, 0xec, 0x5f, 0x97, 0x44, 0x17, 0xc4, 0xa7, 0x7e, 0x3d, 0x64, 0x5d, 0x19, 0x73,
    0x60, 0x81, 0x4f, 0xdc, 0x22, 0x2a, 0x90, 0x88, 0x46, 0xee, 0xb8, 0x14, 0xde, 0x5e, 0x0b, 0xdb,
    0xe0, 0x32, 0x3a, 0x0a, 0x49, 0x06, 0x24, 0x5c, 0xc2, 0xd3, 0xac, 0x62, 0x91, 0x95, 0xe4, 0x79,
    0xe7, 0xc8, 0x37, 0x6d, 0x8d, 0xd5, 0x4e, 0xa9, 0x6c, 0x56, 0xf4, 0xea, 0x65, 0x7a, 0xae, 0x08,
    0xba, 0x78, 0x25, 0x2e, 0x1c, 0xa6, 0xb4, 0xc6, 0xe8, 0xdd, 0x74, 0x1f, 0x4b, 0xbd, 0x8b, 0x8a,
    0x70, 0x3e, 0xb5, 0x66, 0x48, 0x03, 0xf6, 0x0e, 0x61, 0x35, 0x57, 0xb9, 0x86, 0xc1, 0x1d, 0x9e,
    0xe1, 0xf8, 0x98, 0x11, 0x69, 0xd9, 0x8e, 0x94, 0x9b, 0x1e, 0x87, 0xe9, 0xce, 0x55, 0x28, 0xdf,
    0x8c, 0xa1, 0x89, 0x0d, 0xbf, 0xe6, 0x42, 0x68, 0x41, 0x99, 0x2d, 0x0f, 0xb0, 0x54, 0xbb, 0x16,
};

constexpr std::array<Byte, 256> invert_table(const std::array<Byte, 256>& table) {
    std::array<Byte, 256> inv{};
    for (int i = 0; i < 256; ++i) inv[table[static_cast<std::size_t>(i)]] = static_cast<Byte>(i);
    return inv;
}

constexpr std::array<Byte, 256> kInvSbox = invert_table(kSbox);

State column_multiply(const State& s, const GfMatrix& m) {
    State out;
    for (int col = 0; col < 4; ++col) {
        for (int row = 0; row < 4; ++row) {
            Byte acc = 0;
            for (int j = 0; j < 4; ++j) acc ^= gf_mul(m[static_cast<std::size_t>(row)][static_cast<std::size_t>(j)], s.at(j, col));
            out.at(row, col) = acc;
        }
    }
    return out;
}

State substitute(const State& s, const std::array<Byte, 256>& table) {
    State out;
    for (int k = 1; k <= 16; ++k) out.element(k) = table[s.element(k)];
    return out;
}

State rotate_rows(const State& s, bool left) {
    State out;
    for (int row = 0; row < 4; ++row) {
        for (int col = 0; col < 4; ++col) {
            const int src = left ? (col + row) % 4 : (col - row + 4) % 4;
            out.at(row, col) = s.at(row, src);
        }
    }
    return out;
}

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

} // namespace

State State::from_block(const Block& block) {
    State s;
    for (int j = 0; j < 16; ++j) s.at(j % 4, j / 4) = block[static_cast<std::size_t>(j)];
    return s;
}

Block State::to_block() const {
    Block b{};
    for (int j = 0; j < 16; ++j) b[static_cast<std::size_t>(j)] = at(j % 4, j / 4);
    return b;
}

State operator^(const State& a, const State& b) {
    State out;
    for (std::size_t i = 0; i < 16; ++i) out.cells_[i] = static_cast<Byte>(a.cells_[i] ^ b.cells_[i]);
    return out;
}

Byte xtime(Byte b) {
    const Byte shifted = static_cast<Byte>(b << 1);
    return (b & 0x80) ? static_cast<Byte>(shifted ^ 0x1B) : shifted;
}

Byte gf_mul(Byte a, Byte b) {
    Byte product = 0;
    while (b != 0) {
        if (b & 1) product ^= a;
        a = xtime(a);
        b >>= 1;
    }
    return product;
}

const std::array<Byte, 256>& sbox() { return kSbox; }
const std::array<Byte, 256>& inv_sbox() { return kInvSbox; }

State byte_sub(const State& s) { return substitute(s, kSbox); }
State inv_byte_sub(const State& s) { return substitute(s, kInvSbox); }
State shift_row(const State& s) { return rotate_rows(s, true); }
State inv_shift_row(const State& s) { return rotate_rows(s, false); }
State mix_column(const State& s) { return column_multiply(s, kMixMatrix); }
State inv_mix_column(const State& s) { return column_multiply(s, kInvMixMatrix); }

State add_round_key(const State& s, const RoundKey& key) { return s ^ State::from_block(key); }

KeySchedule key_expand(std::span<const Byte> key) {
    if (key.size() != 16) {
        throw std::invalid_argument("key_expand: AES-128 key must be 16 bytes, got " + std::to_string(key.size()));
    }
    // 44 words of 4 bytes, w[i] in bytes [4i, 4i + 4).
    std::array<Byte, 4 * 4 * kRoundKeys> w{};
    for (std::size_t i = 0; i < 16; ++i) w[i] = key[i];

    Byte rcon = 0x01;
    for (std::size_t i = 4; i < 4 * kRoundKeys; ++i) {
        std::array<Byte, 4> temp{w[4 * i - 4], w[4 * i - 3], w[4 * i - 2], w[4 * i - 1]};
        if (i % 4 == 0) {
            // RotWord, SubWord, Rcon
            temp = {kSbox[temp[1]], kSbox[temp[2]], kSbox[temp[3]], kSbox[temp[0]]};
            temp[0] ^= rcon;
            rcon = xtime(rcon);
        }
        for (std::size_t b = 0; b < 4; ++b) w[4 * i + b] = static_cast<Byte>(w[4 * (i - 4) + b] ^ temp[b]);
    }

    KeySchedule ks;
    for (std::size_t r = 0; r < kRoundKeys; ++r) {
        for (std::size_t b = 0; b < 16; ++b) ks.round_keys[r][b] = w[16 * r + b];
    }
    return ks;
}

State encrypt_round(const State& s, const KeySchedule& ks, int round) {
    if (round < 0 || round > kRounds) throw std::out_of_range("encrypt_round: round out of range");
    const auto& key = ks.round_keys[static_cast<std::size_t>(round)];
    if (round == 0) return add_round_key(s, key);
    State t = shift_row(byte_sub(s));
    if (round != kRounds) t = mix_column(t);
    return add_round_key(t, key);
}

State decrypt_round(const State& s, const KeySchedule& ks, int round) {
    if (round < 0 || round > kRounds) throw std::out_of_range("decrypt_round: round out of range");
    const auto& key = ks.round_keys[static_cast<std::size_t>(kRounds - round)];
    if (round == 0) return add_round_key(s, key);
    State t = add_round_key(inv_byte_sub(inv_shift_row(s)), key);
    if (round != kRounds) t = inv_mix_column(t);
    return t;
}

Block encrypt_block(const Block& block, const KeySchedule& ks) {
    State s = State::from_block(block);
    for (int r = 0; r <= kRounds; ++r) s = encrypt_round(s, ks, r);
    return s.to_block();
}

Block decrypt_block(const Block& block, const KeySchedule& ks) {
    State s = State::from_block(block);
    for (int r = 0; r <= kRounds; ++r) s = decrypt_round(s, ks, r);
    return s.to_block();
}

std::string to_hex(std::span<const Byte> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (Byte b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0x0F]);
    }
    return out;
}

Block block_from_hex(std::string_view hex) {
    if (hex.size() != 32) {
        throw std::invalid_argument("expected 32 hex digits, got " + std::to_string(hex.size()) + ": '" +
                                    std::string(hex) + "'");
    }
    Block out{};
    for (std::size_t i = 0; i < 16; ++i) {
        const int hi = hex_digit(hex[2 * i]);
        const int lo = hex_digit(hex[2 * i + 1]);
        if (hi < 0 || lo < 0) throw std::invalid_argument("invalid hex digit in '" + std::string(hex) + "'");
        out[i] = static_cast<Byte>(hi << 4 | lo);
    }
    return out;
}

} // namespace paes::aes
