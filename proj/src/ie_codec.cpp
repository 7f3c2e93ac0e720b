#include "tschls/ie_codec.hpp"

namespace tschls {

namespace {

IeBytes make_header(std::uint8_t element_id, int content_length) {
    const auto header = static_cast<std::uint16_t>((content_length & 0x7F) |
                                                   (static_cast<std::uint16_t>(element_id) << 7));
    return {static_cast<std::uint8_t>(header & 0xFF), static_cast<std::uint8_t>(header >> 8)};
}

}  // namespace

IeBytes encode_sleep(const SleepCommand& cmd) {
    if (cmd.kind != SleepKind::basic) {
        throw ConfigError("encode_sleep expects a basic command");
    }
    cmd.validate();
    IeBytes out = make_header(kSleepElementId, 1);
    out.push_back(static_cast<std::uint8_t>(cmd.n_slp & 0x3F));
    return out;
}

IeBytes encode_xsleep(const SleepCommand& cmd) {
    if (cmd.kind != SleepKind::extended) {
        throw ConfigError("encode_xsleep expects an extended command");
    }
    cmd.validate();
    IeBytes out = make_header(kXsleepElementId, 3);
    const std::uint32_t content = static_cast<std::uint32_t>(cmd.n_slp & 0xFFF) |
                                  (static_cast<std::uint32_t>(cmd.n_snz & 0x3F) << 12);
    out.push_back(static_cast<std::uint8_t>(content & 0xFF));
    out.push_back(static_cast<std::uint8_t>((content >> 8) & 0xFF));
    out.push_back(static_cast<std::uint8_t>((content >> 16) & 0xFF));
    return out;
}

IeBytes encode_ie(const SleepCommand& cmd) {
    return cmd.kind == SleepKind::basic ? encode_sleep(cmd) : encode_xsleep(cmd);
}

SleepCommand decode_ie(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2) {
        throw DecodeError(DecodeError::Kind::truncated, "IE shorter than its 2-octet header");
    }
    const std::uint16_t header =
        static_cast<std::uint16_t>(bytes[0]) | (static_cast<std::uint16_t>(bytes[1]) << 8);
    const int content_length = header & 0x7F;
    const auto element_id = static_cast<std::uint8_t>((header >> 7) & 0xFF);
    const bool type_bit = (header & 0x8000) != 0;

    if (type_bit || (element_id != kSleepElementId && element_id != kXsleepElementId)) {
        throw DecodeError(DecodeError::Kind::unknown_element, "not a sleep or xsleep IE");
    }

    const int expected_length = element_id == kSleepElementId ? 1 : 3;
    if (content_length != expected_length) {
        throw DecodeError(DecodeError::Kind::length_mismatch,
                          "IE length field does not match the element's content size");
    }
    if (bytes.size() < static_cast<std::size_t>(2 + content_length)) {
        throw DecodeError(DecodeError::Kind::truncated, "IE content truncated");
    }
    if (bytes.size() > static_cast<std::size_t>(2 + content_length)) {
        throw DecodeError(DecodeError::Kind::length_mismatch, "trailing octets after IE content");
    }

    if (element_id == kSleepElementId) {
        // Bits 6-7 of the content octet are reserved; tolerate any value.
        return SleepCommand{SleepKind::basic, bytes[2] & 0x3F, 0};
    }

    const std::uint32_t content = static_cast<std::uint32_t>(bytes[2]) |
                                  (static_cast<std::uint32_t>(bytes[3]) << 8) |
                                  (static_cast<std::uint32_t>(bytes[4]) << 16);
    const int n_slp = static_cast<int>(content & 0xFFF);
    const int n_snz = static_cast<int>((content >> 12) & 0x3F);
    SleepCommand cmd{SleepKind::extended, n_slp, n_snz};
    if (!(n_snz < n_slp || (n_slp == 0 && n_snz == 0))) {
        throw DecodeError(DecodeError::Kind::invalid_command,
                          "xsleep requires n_snz < n_slp unless it is the all-zero reset");
    }
    return cmd;
}

}  // namespace tschls
