#include "ghzkit/phase.hpp"

#include <charconv>

namespace ghzkit {

namespace {

long long parse_int(std::string_view text, std::string_view whole) {
    long long value = 0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last)
        throw ParseError("bad phase fraction '" + std::string(whole) + "'");
    return value;
}

} // namespace

PhaseFrac PhaseFrac::parse(std::string_view text) {
    if (text.empty())
        throw ParseError("empty phase fraction");
    const auto slash = text.find('/');
    if (slash == std::string_view::npos)
        return PhaseFrac(parse_int(text, text), 1);
    const auto num = text.substr(0, slash);
    const auto den = text.substr(slash + 1);
    if (num.empty() || den.empty())
        throw ParseError("bad phase fraction '" + std::string(text) + "'");
    return PhaseFrac(parse_int(num, text), parse_int(den, text));
}

} // namespace ghzkit
