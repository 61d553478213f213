#include "superflow/ip.hpp"

#include <charconv>

namespace superflow {

namespace {

// Strict dotted-quad octet: 1-3 digits, value <= 255, no sign, no leading
// garbage. Returns chars consumed or 0.
std::size_t parse_octet(std::string_view text, uint32_t& out) {
    std::size_t n = 0;
    uint32_t value = 0;
    while (n < text.size() && n < 3 && text[n] >= '0' && text[n] <= '9') {
        value = value * 10 + static_cast<uint32_t>(text[n] - '0');
        ++n;
    }
    if (n == 0 || value > 255) return 0;
    out = value;
    return n;
}

} // namespace

std::optional<uint32_t> parse_ipv4(std::string_view text) {
    uint32_t addr = 0;
    std::size_t pos = 0;
    for (int i = 0; i < 4; ++i) {
        uint32_t octet = 0;
        std::size_t n = parse_octet(text.substr(pos), octet);
        if (n == 0) return std::nullopt;
        pos += n;
        addr = (addr << 8) | octet;
        if (i < 3) {
            if (pos >= text.size() || text[pos] != '.') return std::nullopt;
            ++pos;
        }
    }
    if (pos != text.size()) return std::nullopt;
    return addr;
}

std::string format_ipv4(uint32_t addr) {
    std::string out;
    out.reserve(15);
    for (int shift = 24; shift >= 0; shift -= 8) {
        out += std::to_string((addr >> shift) & 0xff);
        if (shift) out += '.';
    }
    return out;
}

Cidr Cidr::make(uint32_t addr, uint8_t len) {
    Cidr c;
    c.prefix_len = len > 32 ? 32 : len;
    c.network = len == 0 ? 0 : addr & (~uint32_t{0} << (32 - c.prefix_len));
    return c;
}

std::optional<Cidr> parse_cidr(std::string_view text) {
    auto slash = text.find('/');
    if (slash != std::string_view::npos) {
        auto ip = parse_ipv4(text.substr(0, slash));
        if (!ip) return std::nullopt;
        std::string_view len_text = text.substr(slash + 1);
        unsigned len = 0;
        auto [ptr, ec] = std::from_chars(len_text.data(),
                                         len_text.data() + len_text.size(), len);
        if (ec != std::errc{} || ptr != len_text.data() + len_text.size() ||
            len > 32) {
            return std::nullopt;
        }
        return Cidr::make(*ip, static_cast<uint8_t>(len));
    }

    // Glob form: trailing ".*" components, e.g. 192.168.1.*
    if (!text.ends_with('*')) return std::nullopt;
    int stars = 0;
    std::string_view head = text;
    while (head.ends_with('*')) {
        head.remove_suffix(1);
        if (!head.ends_with('.')) return std::nullopt;
        head.remove_suffix(1);
        ++stars;
    }
    if (stars == 0 || stars > 3) return std::nullopt;
    std::string full(head);
    for (int i = 0; i < stars; ++i) full += ".0";
    auto ip = parse_ipv4(full);
    if (!ip) return std::nullopt;
    return Cidr::make(*ip, static_cast<uint8_t>(32 - 8 * stars));
}

std::string format_cidr(const Cidr& c) {
    return format_ipv4(c.network) + "/" + std::to_string(c.prefix_len);
}

} // namespace superflow
