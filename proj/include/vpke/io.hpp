#pragma once

#include <string>
#include <string_view>

#include "vpke/escrow.hpp"
#include "vpke/keygen.hpp"
#include "vpke/mccurley.hpp"

namespace vpke {

/// Line-oriented ASCII records, LF endings, fields as canonical lowercase
/// hex. Emission is bit-exact; parsing is strict (exact header, exact key
/// order, unknown keys rejected). Throws FormatError on anything off.

std::string emit_public_key(const PublicKey& pub);
PublicKey parse_public_key(std::string_view text);

std::string emit_private_key(const PrivateKey& priv);
PrivateKey parse_private_key(std::string_view text);

std::string emit_escrow(const EscrowPackage& pkg);
EscrowPackage parse_escrow(std::string_view text);

std::string emit_ciphertext(const Ciphertext& ct);
Ciphertext parse_ciphertext(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace vpke
