#include "cocreate/random.hpp"
#include "cocreate/error.hpp"

#include <cmath>
#include <numbers>

namespace cocreate
{
namespace
{

constexpr std::uint64_t golden_gamma = 0x9E3779B97F4A7C15ULL;

constexpr std::uint64_t mix64(std::uint64_t z) noexcept
{
    z += golden_gamma;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t absorb(std::uint64_t state, std::uint64_t label) noexcept
{
    return mix64(((state << 23) | (state >> 41)) ^ mix64(label ^ 0x2545F4914F6CDD1DULL));
}

} // namespace

StreamLabel::StreamLabel(std::string_view tag) noexcept
{
    // FNV-1a, then tagged so "7" and 7 never collide by accident
    std::uint64_t h = 0xCBF29CE484222325ULL;
    for (unsigned char c : tag) {
        h ^= c;
        h *= 0x100000001B3ULL;
    }
    m_value = mix64(h ^ 0x5354524C41424C45ULL);
}

Stream::result_type Stream::operator()() noexcept
{
    ++m_counter;
    return mix64(m_key ^ mix64(m_counter * golden_gamma));
}

Stream Stream::fork(std::initializer_list<StreamLabel> labels) const
{
    std::uint64_t h = absorb(m_key, 0x464F524BULL);
    for (const auto& label : labels) {
        h = absorb(h, label.value());
    }
    return Stream(h);
}

Stream derive_stream(std::uint64_t master_seed, std::initializer_list<StreamLabel> labels)
{
    if (labels.size() == 0) {
        throw ParameterError("derive_stream: label path must not be empty");
    }
    std::uint64_t h = mix64(master_seed ^ 0x6D61737465720000ULL);
    for (const auto& label : labels) {
        h = absorb(h, label.value());
    }
    return Stream(h);
}

std::uint64_t uniform_index(Stream& rng, std::uint64_t bound)
{
    if (bound == 0) {
        throw ParameterError("uniform_index: bound must be positive");
    }
    // Lemire's multiply-shift with rejection
    unsigned __int128 m = static_cast<unsigned __int128>(rng()) * bound;
    auto low = static_cast<std::uint64_t>(m);
    if (low < bound) {
        const std::uint64_t threshold = (0 - bound) % bound;
        while (low < threshold) {
            m = static_cast<unsigned __int128>(rng()) * bound;
            low = static_cast<std::uint64_t>(m);
        }
    }
    return static_cast<std::uint64_t>(m >> 64);
}

double uniform01(Stream& rng)
{
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_real(Stream& rng, double low, double high)
{
    return low + (high - low) * uniform01(rng);
}

double standard_normal(Stream& rng)
{
    const double u1 = 1.0 - uniform01(rng); // (0, 1]
    const double u2 = uniform01(rng);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

} // namespace cocreate
