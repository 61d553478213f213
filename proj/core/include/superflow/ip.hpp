#ifndef SUPERFLOW_IP_HPP
#define SUPERFLOW_IP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace superflow {

// IPv4 addresses are held as host-order uint32_t throughout.

std::optional<uint32_t> parse_ipv4(std::string_view text);
std::string format_ipv4(uint32_t addr);

/// IPv4 prefix. `network` is stored pre-masked.
struct Cidr {
    uint32_t network = 0;
    uint8_t prefix_len = 0;

    static Cidr make(uint32_t addr, uint8_t len);

    uint32_t mask() const {
        return prefix_len == 0 ? 0u : ~uint32_t{0} << (32 - prefix_len);
    }
    bool contains(uint32_t addr) const { return (addr & mask()) == network; }

    friend bool operator==(const Cidr&, const Cidr&) = default;
};

/// Accepts "a.b.c.d/len" and the glob spelling "a.b.*" (trailing stars on
/// octet boundaries).
std::optional<Cidr> parse_cidr(std::string_view text);
std::string format_cidr(const Cidr& c);

} // namespace superflow

#endif // SUPERFLOW_IP_HPP
