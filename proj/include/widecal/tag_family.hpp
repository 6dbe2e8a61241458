#pragma once

#include <array>
#include <cstdint>

namespace widecal {

// Fixed 36-bit square tag family (6x6 payload). 100 codewords with pairwise
// Hamming distance >= 11 across all four rotations, and self-rotation
// distance >= 11, so orientation is recoverable and decode tolerates up to
// two bit errors with a wide margin.
inline constexpr int kFamilyBits = 6;
inline constexpr int kFamilyMaxHamming = 2;

inline constexpr std::array<uint64_t, 100> kFamilyCodes = {
    0x05c50eb982ull, 0x0594419a89ull, 0x03e6f349e9ull, 0x0112a172a3ull,
    0x01c3bbc0e3ull, 0x0a6f4b9475ull, 0x039f091ce4ull, 0x0c17d4bb44ull,
    0x08a97a064full, 0x0f1d8607d4ull, 0x047e15125cull, 0x0532bfd2b4ull,
    0x0331099c3full, 0x0afc76f8fcull, 0x040bb77e84ull, 0x03df40ec72ull,
    0x0c60faccdbull, 0x0faf2ba182ull, 0x0aa597626eull, 0x0e61576d8cull,
    0x09ed5b4cd0ull, 0x00a93965fbull, 0x075c532e64ull, 0x0c8992a1baull,
    0x05b91d2d8full, 0x059caf9f2bull, 0x0b89d5c28aull, 0x00a143ad2eull,
    0x0675602160ull, 0x011b38d466ull, 0x0b09fbade2ull, 0x098f237b44ull,
    0x0aa3daa9f9ull, 0x016f74a8ddull, 0x0843814357ull, 0x039090c313ull,
    0x0f6d8af520ull, 0x0dc75d9f8cull, 0x056a8294efull, 0x0bccf44c93ull,
    0x0e8a5a2787ull, 0x0b3cdf96a2ull, 0x07f9a82387ull, 0x00fa22b6c2ull,
    0x078c79cea4ull, 0x0931367585ull, 0x004ca1971bull, 0x033792d8abull,
    0x06e714ba68ull, 0x035a4870a4ull, 0x09ea90a3edull, 0x0990d3584bull,
    0x07528568b6ull, 0x0114b6685aull, 0x0ceef41914ull, 0x06589a8db0ull,
    0x0c3516ecf3ull, 0x05a8c4e065ull, 0x0b57a9bda7ull, 0x086de32f69ull,
    0x0a720eec13ull, 0x0153522362ull, 0x037916f04bull, 0x04257db2e9ull,
    0x04b1ad8477ull, 0x086c139fd7ull, 0x07344e0689ull, 0x0f20b82eefull,
    0x0aa1439600ull, 0x079b8c9032ull, 0x049011bd78ull, 0x00ad87f841ull,
    0x0c6f17c0adull, 0x0dfa00528bull, 0x089cddf6ecull, 0x0c798d577bull,
    0x03d8cd0887ull, 0x0154cf851eull, 0x0b6e9c668aull, 0x0d48782438ull,
    0x03a5d4b1d2ull, 0x0a3baeadbeull, 0x0d8319fbf7ull, 0x0cec3e8a6cull,
    0x08661be5ceull, 0x03986ad107ull, 0x08e6a401dfull, 0x0e2c73c408ull,
    0x03aed784ceull, 0x02d7e07beaull, 0x006043a345ull, 0x038418f8dfull,
    0x002a547c6bull, 0x0264658dcfull, 0x0bc2107691ull, 0x08c2e62820ull,
    0x00bd712ed7ull, 0x05b6c9ac79ull, 0x008f078cd2ull, 0x07c77dd365ull,
};

}  // namespace widecal
