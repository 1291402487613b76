#include <doctest.h>

#include <random>
#include <stdexcept>

#include "oracles.hpp"
#include "paes/aes_core.hpp"

using namespace paes::aes;

namespace {

State random_state(std::mt19937& rng) {
    std::uniform_int_distribution<int> byte(0, 255);
    Block b{};
    for (auto& x : b) x = static_cast<Byte>(byte(rng));
    return State::from_block(b);
}

State column_state(const oracle::Column& col) {
    State s;
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) s.at(r, c) = col[static_cast<std::size_t>(r)];
    return s;
}

Block hex(const char* h) { return block_from_hex(h); }

} // namespace

TEST_CASE("gf_mul identity, reduction and agreement with carry-less oracle") {
    CHECK(gf_mul(0x57, 0x01) == 0x57);
    CHECK(gf_mul(0x02, 0x80) == 0x1B);
    CHECK(xtime(0x80) == 0x1B);
    CHECK(xtime(0x57) == 0xAE);
    for (int a = 0; a < 256; ++a)
        for (int b = 0; b < 256; ++b)
            REQUIRE(gf_mul(static_cast<Byte>(a), static_cast<Byte>(b)) ==
                    oracle::gf_mul(static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b)));
}

TEST_CASE("gf_mul field laws") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<int> byte(0, 255);
    for (int i = 0; i < 2000; ++i) {
        const Byte a = static_cast<Byte>(byte(rng)), b = static_cast<Byte>(byte(rng)), c = static_cast<Byte>(byte(rng));
        CHECK(gf_mul(a, b) == gf_mul(b, a));
        CHECK(gf_mul(gf_mul(a, b), c) == gf_mul(a, gf_mul(b, c)));
        CHECK(gf_mul(a, static_cast<Byte>(b ^ c)) == (gf_mul(a, b) ^ gf_mul(a, c)));
    }
}

TEST_CASE("off-diagonal entry of D*E vanishes") {
    const Byte v = gf_mul(0x0E, 0x03) ^ gf_mul(0x0B, 0x02) ^ gf_mul(0x0D, 0x01) ^ gf_mul(0x09, 0x01);
    CHECK(v == 0x00);
    const auto w = oracle::gf_mul(0x0E, 0x03) ^ oracle::gf_mul(0x0B, 0x02) ^ oracle::gf_mul(0x0D, 0x01) ^
                   oracle::gf_mul(0x09, 0x01);
    CHECK(w == 0x00);
}

TEST_CASE("matrix constants are inverse over GF(2^8)") {
    oracle::Matrix e{}, d{};
    for (std::size_t r = 0; r < 4; ++r)
        for (std::size_t c = 0; c < 4; ++c) {
            e[r][c] = kMixMatrix[r][c];
            d[r][c] = kInvMixMatrix[r][c];
        }
    CHECK(e == oracle::kE);
    CHECK(d == oracle::kD);
    const oracle::Matrix identity{{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}}};
    CHECK(oracle::mat_mul(d, e) == identity);
    CHECK(oracle::mat_mul(e, d) == identity);
}

TEST_CASE("S-box matches inverse-plus-affine generation") {
    const auto generated = oracle::generate_sbox();
    for (int i = 0; i < 256; ++i) REQUIRE(sbox()[static_cast<std::size_t>(i)] == generated[static_cast<std::size_t>(i)]);
    CHECK(sbox()[0x00] == 0x63);
    CHECK(sbox()[0x53] == 0xED);
    for (int i = 0; i < 256; ++i) CHECK(inv_sbox()[sbox()[static_cast<std::size_t>(i)]] == i);
}

TEST_CASE("byte_sub and inv_byte_sub") {
    State s;
    for (int k = 1; k <= 16; ++k) s.element(k) = static_cast<Byte>(k == 1 ? 0x00 : 0x53);
    const State t = byte_sub(s);
    CHECK(t.element(1) == 0x63);
    CHECK(t.element(2) == 0xED);
    for (int v = 0; v < 256; v += 16) {
        State u;
        for (int k = 1; k <= 16; ++k) u.element(k) = static_cast<Byte>(v + k - 1);
        CHECK(inv_byte_sub(byte_sub(u)) == u);
    }
}

TEST_CASE("shift_row rotates row r left by r") {
    State s;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) s.at(r, c) = static_cast<Byte>(16 * r + c);
    const State t = shift_row(s);
    for (int c = 0; c < 4; ++c) CHECK(t.at(0, c) == s.at(0, c));
    CHECK(t.at(1, 0) == s.at(1, 1));
    CHECK(t.at(1, 1) == s.at(1, 2));
    CHECK(t.at(1, 2) == s.at(1, 3));
    CHECK(t.at(1, 3) == s.at(1, 0));
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) CHECK(t.at(r, c) == s.at(r, (c + r) % 4));

    State flat;
    for (int k = 1; k <= 16; ++k) flat.element(k) = 0x5A;
    CHECK(shift_row(flat) == flat);

    std::mt19937 rng(11);
    for (int i = 0; i < 200; ++i) {
        const State x = random_state(rng);
        CHECK(inv_shift_row(shift_row(x)) == x);
        // Four rotations of row 1 return to the start.
        CHECK(shift_row(shift_row(shift_row(shift_row(x)))) == x);
    }
}

TEST_CASE("mix_column against brute-force matrix product") {
    const oracle::Column in{0xDB, 0x13, 0x53, 0x45};
    const oracle::Column expected = oracle::mat_vec(oracle::kE, in);
    CHECK(expected == oracle::Column{0x8E, 0x4D, 0xA1, 0xBC});

    const State out = mix_column(column_state(in));
    for (int c = 0; c < 4; ++c)
        for (int r = 0; r < 4; ++r) CHECK(out.at(r, c) == expected[static_cast<std::size_t>(r)]);

    const State back = inv_mix_column(out);
    CHECK(back == column_state(in));

    std::mt19937 rng(3);
    for (int i = 0; i < 300; ++i) {
        const State s = random_state(rng);
        const State m = mix_column(s);
        for (int c = 0; c < 4; ++c) {
            oracle::Column col{};
            for (int r = 0; r < 4; ++r) col[static_cast<std::size_t>(r)] = s.at(r, c);
            const auto want = oracle::mat_vec(oracle::kE, col);
            const auto want_inv = oracle::mat_vec(oracle::kD, col);
            const State mi = inv_mix_column(s);
            for (int r = 0; r < 4; ++r) {
                REQUIRE(m.at(r, c) == want[static_cast<std::size_t>(r)]);
                REQUIRE(mi.at(r, c) == want_inv[static_cast<std::size_t>(r)]);
            }
        }
    }
}

TEST_CASE("element form of Mix_Column follows the matrix, not a repeated first term") {
    std::mt19937 rng(5);
    for (int i = 0; i < 100; ++i) {
        const State s = random_state(rng);
        const State m = mix_column(s);
        for (int col = 1; col <= 4; ++col) {
            const Byte b1 = s.element(col), b5 = s.element(col + 4), b9 = s.element(col + 8), b13 = s.element(col + 12);
            CHECK(m.element(col) == (gf_mul(2, b1) ^ gf_mul(3, b5) ^ b9 ^ b13));
            CHECK(m.element(col + 4) == (b1 ^ gf_mul(2, b5) ^ gf_mul(3, b9) ^ b13));
            CHECK(m.element(col + 8) == (b1 ^ b5 ^ gf_mul(2, b9) ^ gf_mul(3, b13)));
            CHECK(m.element(col + 12) == (gf_mul(3, b1) ^ b5 ^ b9 ^ gf_mul(2, b13)));
        }
    }
}

TEST_CASE("constant columns are fixed points of both column mixes") {
    for (int x = 0; x < 256; ++x) {
        State s;
        for (int k = 1; k <= 16; ++k) s.element(k) = static_cast<Byte>(x);
        CHECK(mix_column(s) == s);
        CHECK(inv_mix_column(s) == s);
    }
}

TEST_CASE("mix_column is GF-linear and inverted by inv_mix_column") {
    std::mt19937 rng(9);
    for (int i = 0; i < 1000; ++i) {
        const State a = random_state(rng);
        const State b = random_state(rng);
        CHECK(mix_column(a ^ b) == (mix_column(a) ^ mix_column(b)));
        CHECK(inv_mix_column(mix_column(a)) == a);
        CHECK(mix_column(inv_mix_column(a)) == a);
    }
}

TEST_CASE("add_round_key") {
    std::mt19937 rng(13);
    const RoundKey zero{};
    RoundKey low_nibble{};
    low_nibble.fill(0x0F);
    State ones;
    for (int k = 1; k <= 16; ++k) ones.element(k) = 0xFF;
    const State r = add_round_key(ones, low_nibble);
    for (int k = 1; k <= 16; ++k) CHECK(r.element(k) == 0xF0);
    for (int i = 0; i < 200; ++i) {
        const State s = random_state(rng);
        const RoundKey k = random_state(rng).to_block();
        CHECK(add_round_key(s, zero) == s);
        CHECK(add_round_key(add_round_key(s, k), k) == s);
    }
}

TEST_CASE("key_expand") {
    SUBCASE("first round key is the cipher key") {
        const Block key = hex("000102030405060708090a0b0c0d0e0f");
        CHECK(key_expand(key).round_keys[0] == key);
    }
    SUBCASE("all-zero key") {
        const Block key{};
        const KeySchedule ks = key_expand(key);
        CHECK(to_hex(ks.round_keys[1]) == "62636363626363636263636362636363");
    }
    SUBCASE("reference expansion of 2b7e1516...") {
        const KeySchedule ks = key_expand(hex("2b7e151628aed2a6abf7158809cf4f3c"));
        CHECK(to_hex(ks.round_keys[1]) == "a0fafe1788542cb123a339392a6c7605");
        CHECK(to_hex(ks.round_keys[10]) == "d014f9a8c9ee2589e13f0cc8b6630ca6");
    }
    SUBCASE("wrong key length is rejected") {
        const std::array<Byte, 15> short_key{};
        CHECK_THROWS_AS(key_expand(short_key), std::invalid_argument);
        const std::array<Byte, 24> long_key{};
        CHECK_THROWS_AS(key_expand(long_key), std::invalid_argument);
    }
}

TEST_CASE("published AES-128 vectors") {
    const KeySchedule ks = key_expand(hex("000102030405060708090a0b0c0d0e0f"));
    const Block ct = encrypt_block(hex("00112233445566778899aabbccddeeff"), ks);
    CHECK(to_hex(ct) == "69c4e0d86a7b0430d8cdb78070b4c55a");
    CHECK(to_hex(decrypt_block(ct, ks)) == "00112233445566778899aabbccddeeff");

    const KeySchedule ks2 = key_expand(hex("2b7e151628aed2a6abf7158809cf4f3c"));
    CHECK(to_hex(encrypt_block(hex("3243f6a8885a308d313198a2e0370734"), ks2)) == "3925841d02dc09fbdc118597196a0b32");
}

TEST_CASE("round trip and block independence on random inputs") {
    std::mt19937 rng(2024);
    for (int i = 0; i < 1000; ++i) {
        const Block key = random_state(rng).to_block();
        const Block pt = random_state(rng).to_block();
        const KeySchedule ks = key_expand(key);
        const Block ct = encrypt_block(pt, ks);
        REQUIRE(decrypt_block(ct, ks) == pt);
        CHECK(encrypt_block(pt, ks) == ct);
    }
}

TEST_CASE("block <-> state byte order") {
    const Block b = hex("000102030405060708090a0b0c0d0e0f");
    const State s = State::from_block(b);
    CHECK(s.at(0, 0) == 0x00);
    CHECK(s.at(1, 0) == 0x01);
    CHECK(s.at(0, 1) == 0x04);
    CHECK(s.element(2) == 0x04); // row 0, col 1
    CHECK(s.element(5) == 0x01); // row 1, col 0
    CHECK(s.to_block() == b);
}

TEST_CASE("hex parsing") {
    CHECK(to_hex(hex("00112233445566778899AABBCCDDEEFF")) == "00112233445566778899aabbccddeeff");
    CHECK_THROWS_AS(block_from_hex("0011223344556677889aabbccddeeff"), std::invalid_argument);
    CHECK_THROWS_AS(block_from_hex("00112233445566778899aabbccddeefg"), std::invalid_argument);
    CHECK_THROWS_AS(block_from_hex(""), std::invalid_argument);
}

TEST_CASE("round functions compose to the block cipher") {
    const KeySchedule ks = key_expand(hex("000102030405060708090a0b0c0d0e0f"));
    State s = State::from_block(hex("00112233445566778899aabbccddeeff"));
    for (int r = 0; r <= kRounds; ++r) s = encrypt_round(s, ks, r);
    CHECK(to_hex(s.to_block()) == "69c4e0d86a7b0430d8cdb78070b4c55a");
    for (int r = 0; r <= kRounds; ++r) s = decrypt_round(s, ks, r);
    CHECK(to_hex(s.to_block()) == "00112233445566778899aabbccddeeff");
    CHECK_THROWS_AS(encrypt_round(s, ks, 11), std::out_of_range);
}
