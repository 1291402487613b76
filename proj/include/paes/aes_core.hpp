#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>

// AES-128 built from its named transformations. Everything here is a pure
// function of its arguments.
namespace paes::aes {

using Byte = std::uint8_t;
using Block = std::array<Byte, 16>;
using RoundKey = std::array<Byte, 16>;

inline constexpr int kRounds = 10;
inline constexpr int kRoundKeys = kRounds + 1;

// The 4x4 byte matrix the round transforms operate on.
//
// Storage is row-major, so a one-based matrix index k addresses
// (row, col) = ((k - 1) / 4, (k - 1) % 4) and a matrix column reads as
// cells k, k + 4, k + 8, k + 12. Byte j of a wire block lands at
// (row, col) = (j % 4, j / 4), the usual AES column-major loading.
class State {
  public:
    State() = default;

    static State from_block(const Block& block);
    Block to_block() const;

    Byte& at(int row, int col) { return cells_[static_cast<std::size_t>(row * 4 + col)]; }
    Byte at(int row, int col) const { return cells_[static_cast<std::size_t>(row * 4 + col)]; }

    // One-based matrix index, 1..16.
    Byte& element(int k) { return cells_[static_cast<std::size_t>(k - 1)]; }
    Byte element(int k) const { return cells_[static_cast<std::size_t>(k - 1)]; }

    const std::array<Byte, 16>& cells() const { return cells_; }

    friend bool operator==(const State&, const State&) = default;
    friend State operator^(const State& a, const State& b);

  private:
    std::array<Byte, 16> cells_{};
};

struct KeySchedule {
    std::array<RoundKey, kRoundKeys> round_keys{};
};

// GF(2^8) with reduction polynomial x^8 + x^4 + x^3 + x + 1.
Byte xtime(Byte b);
Byte gf_mul(Byte a, Byte b);

using GfMatrix = std::array<std::array<Byte, 4>, 4>;

// Mix_Column multiplier and its inverse.
inline constexpr GfMatrix kMixMatrix{{{0x02, 0x03, 0x01, 0x01},
                                      {0x01, 0x02, 0x03, 0x01},
                                      {0x01, 0x01, 0x02, 0x03},
                                      {0x03, 0x01, 0x01, 0x02}}};
inline constexpr GfMatrix kInvMixMatrix{{{0x0E, 0x0B, 0x0D, 0x09},
                                         {0x09, 0x0E, 0x0B, 0x0D},
                                         {0x0D, 0x09, 0x0E, 0x0B},
                                         {0x0B, 0x0D, 0x09, 0x0E}}};

const std::array<Byte, 256>& sbox();
const std::array<Byte, 256>& inv_sbox();

State byte_sub(const State& s);
State inv_byte_sub(const State& s);
State shift_row(const State& s);
State inv_shift_row(const State& s);
State mix_column(const State& s);
State inv_mix_column(const State& s);
State add_round_key(const State& s, const RoundKey& key);

// Throws std::invalid_argument unless the key is exactly 16 bytes.
KeySchedule key_expand(std::span<const Byte> key);

// Round r of the forward cipher: 0 is the initial key addition, 1..9 are the
// standard rounds and 10 the final round without Mix_Column.
State encrypt_round(const State& s, const KeySchedule& ks, int round);

// Round r of the inverse cipher, r = 0..10 in processing order. Round 0 adds
// round key 10; round r in 1..9 applies inv_shift_row, inv_byte_sub,
// round key 10 - r and inv_mix_column; round 10 ends with round key 0.
State decrypt_round(const State& s, const KeySchedule& ks, int round);

Block encrypt_block(const Block& block, const KeySchedule& ks);
Block decrypt_block(const Block& block, const KeySchedule& ks);

// Lowercase hex, no separators.
std::string to_hex(std::span<const Byte> bytes);

// Exactly 32 hex digits (either case). Throws std::invalid_argument otherwise.
Block block_from_hex(std::string_view hex);

} // namespace paes::aes
