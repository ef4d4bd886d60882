#ifndef TSLAB_UTIL_HPP
#define TSLAB_UTIL_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tslab {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Invariant violations inside the library (not caller errors).
struct internal_error : std::logic_error {
    explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

inline void check_internal(bool ok, const char* what) {
    if (!ok) throw internal_error(what);
}

inline std::string to_string_i128(i128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    u128 x = neg ? (u128)(-v) : (u128)v;
    char buf[48];
    int i = 48;
    while (x) { buf[--i] = char('0' + (int)(x % 10)); x /= 10; }
    std::string s(buf + i, buf + 48);
    return neg ? "-" + s : s;
}

}  // namespace tslab

#endif
