#pragma once

#include <stdexcept>
#include <string>

namespace tschls {

/// Base class for everything this library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Invalid scenario, strategy parameters, or operation preconditions.
struct ConfigError : Error {
    using Error::Error;
};

/// A structured-document field failed validation; `key` names the offender.
struct SchemaError : ConfigError {
    SchemaError(std::string key_path, const std::string& what)
        : ConfigError("schema error at '" + key_path + "': " + what), key(std::move(key_path)) {}
    std::string key;
};

/// Sleep-IE decoding failure, with the failure class preserved for callers.
struct DecodeError : Error {
    enum class Kind {
        truncated,        // fewer octets than the header/length demand
        unknown_element,  // element identifier (or type bit) not ours
        length_mismatch,  // length field disagrees with the octet count
        invalid_command,  // fields decode to an out-of-contract command
    };

    DecodeError(Kind k, const std::string& what) : Error(what), kind(k) {}
    Kind kind;
};

}  // namespace tschls
