#include "vpke/io.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace vpke {

namespace {

constexpr std::string_view kPublicHeader = "MCCURLEY-PUBLIC-KEY v1";
constexpr std::string_view kPrivateHeader = "MCCURLEY-PRIVATE-KEY v1";
constexpr std::string_view kEscrowHeader = "MCCURLEY-ESCROW v1";
constexpr std::string_view kCiphertextHeader = "MCCURLEY-CIPHERTEXT v1";

void emit_field(std::string& out, std::string_view key, const mpz_class& v) {
    out.append(key);
    out.append(" = ");
    out.append(to_hex(v));
    out.push_back('\n');
}

class RecordParser {
public:
    RecordParser(std::string_view text, std::string_view header) {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t nl = text.find('\n', pos);
            std::size_t end = nl == std::string_view::npos ? text.size() : nl;
            lines_.push_back(text.substr(pos, end - pos));
            pos = end + 1;
        }
        if (lines_.empty() || lines_[0] != header)
            throw FormatError("missing or wrong header (expected '" +
                              std::string(header) + "')");
        next_ = 1;
    }

    mpz_class expect(std::string_view key) {
        auto v = take(key);
        if (!v) throw FormatError("missing field '" + std::string(key) + "'");
        return *v;
    }

    std::optional<mpz_class> take(std::string_view key) {
        if (next_ >= lines_.size()) return std::nullopt;
        std::string_view line = lines_[next_];
        std::string prefix = std::string(key) + " = ";
        if (line.substr(0, prefix.size()) != prefix) return std::nullopt;
        ++next_;
        return from_hex(line.substr(prefix.size()));
    }

    void finish() {
        if (next_ != lines_.size())
            throw FormatError("unexpected trailing line: '" +
                              std::string(lines_[next_]) + "'");
    }

private:
    std::vector<std::string_view> lines_;
    std::size_t next_ = 0;
};

}  // namespace

std::string emit_public_key(const PublicKey& pub) {
    std::string out(kPublicHeader);
    out.push_back('\n');
    emit_field(out, "n", pub.n);
    emit_field(out, "y", pub.y);
    return out;
}

PublicKey parse_public_key(std::string_view text) {
    RecordParser p(text, kPublicHeader);
    PublicKey pub;
    pub.n = p.expect("n");
    pub.y = p.expect("y");
    p.finish();
    return pub;
}

std::string emit_private_key(const PrivateKey& priv) {
    std::string out(kPrivateHeader);
    out.push_back('\n');
    emit_field(out, "n", priv.p * priv.q);
    emit_field(out, "p", priv.p);
    emit_field(out, "q", priv.q);
    emit_field(out, "s", priv.s);
    if (priv.plus_witness_p) emit_field(out, "wp", *priv.plus_witness_p);
    if (priv.plus_witness_q) emit_field(out, "wq", *priv.plus_witness_q);
    return out;
}

PrivateKey parse_private_key(std::string_view text) {
    RecordParser p(text, kPrivateHeader);
    mpz_class n = p.expect("n");
    PrivateKey priv;
    priv.p = p.expect("p");
    priv.q = p.expect("q");
    priv.s = p.expect("s");
    priv.plus_witness_p = p.take("wp");
    priv.plus_witness_q = p.take("wq");
    p.finish();
    if (priv.p * priv.q != n)
        throw FormatError("private key n does not equal p*q");
    return priv;
}

std::string emit_escrow(const EscrowPackage& pkg) {
    std::string out(kEscrowHeader);
    out.push_back('\n');
    emit_field(out, "n", pkg.n);
    emit_field(out, "factor", pkg.factor);
    if (pkg.plus_witness_p) emit_field(out, "wp", *pkg.plus_witness_p);
    if (pkg.plus_witness_q) emit_field(out, "wq", *pkg.plus_witness_q);
    return out;
}

EscrowPackage parse_escrow(std::string_view text) {
    RecordParser p(text, kEscrowHeader);
    EscrowPackage pkg;
    pkg.n = p.expect("n");
    pkg.factor = p.expect("factor");
    pkg.plus_witness_p = p.take("wp");
    pkg.plus_witness_q = p.take("wq");
    p.finish();
    return pkg;
}

std::string emit_ciphertext(const Ciphertext& ct) {
    std::string out(kCiphertextHeader);
    out.push_back('\n');
    emit_field(out, "u", ct.u);
    emit_field(out, "t", ct.t);
    return out;
}

Ciphertext parse_ciphertext(std::string_view text) {
    RecordParser p(text, kCiphertextHeader);
    Ciphertext ct;
    ct.u = p.expect("u");
    ct.t = p.expect("t");
    p.finish();
    return ct;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot write " + path);
    out << content;
    if (!out) throw FormatError("write failed for " + path);
}

}  // namespace vpke
