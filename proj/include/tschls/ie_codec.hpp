#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "tschls/core.hpp"

namespace tschls {

// Header-IE layout: a 16-bit little-endian header with bits 0-6 the content
// length, bits 7-14 the element identifier, bit 15 the type bit (0).
// Element identifiers below come from an unmanaged range.
inline constexpr std::uint8_t kSleepElementId = 0x2A;   // 3-octet IE, 1-octet content
inline constexpr std::uint8_t kXsleepElementId = 0x2B;  // 5-octet IE, 3-octet content

using IeBytes = std::vector<std::uint8_t>;

/// Encode a basic sleep command: content octet bits 0-5 carry n_slp,
/// bits 6-7 are reserved (written zero).
IeBytes encode_sleep(const SleepCommand& cmd);

/// Encode an xsleep command: 24-bit little-endian content, bits 0-11 n_slp,
/// bits 12-17 n_snz, bits 18-23 reserved.
IeBytes encode_xsleep(const SleepCommand& cmd);

/// Dispatch on the command kind.
IeBytes encode_ie(const SleepCommand& cmd);

/// Parse one sleep or xsleep IE. Reserved bits are ignored on read.
/// Throws DecodeError with a specific Kind on malformed input.
SleepCommand decode_ie(std::span<const std::uint8_t> bytes);

}  // namespace tschls
