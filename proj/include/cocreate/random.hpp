#pragma once

#include <cstdint>
#include <initializer_list>
#include <limits>
#include <string_view>

namespace cocreate
{

/// One component of a stream label: either a numeric id or a short tag.
class StreamLabel
{
public:
    constexpr StreamLabel(std::uint64_t id) noexcept
        : m_value(id)
    {
    }
    constexpr StreamLabel(std::uint32_t id) noexcept
        : m_value(id)
    {
    }
    constexpr StreamLabel(int id) noexcept
        : m_value(static_cast<std::uint64_t>(static_cast<std::int64_t>(id)))
    {
    }
    StreamLabel(std::string_view tag) noexcept;
    StreamLabel(const char* tag) noexcept
        : StreamLabel(std::string_view(tag))
    {
    }

    constexpr std::uint64_t value() const noexcept
    {
        return m_value;
    }

private:
    std::uint64_t m_value;
};

/**
 * Counter-based random stream.
 *
 * The n-th output is a pure function of (key, n), so a stream can be copied to
 * replay the exact same draws and child streams can be split off by label
 * without touching the parent's position. Satisfies UniformRandomBitGenerator.
 */
class Stream
{
public:
    using result_type = std::uint64_t;

    explicit Stream(std::uint64_t key) noexcept
        : m_key(key)
    {
    }

    static constexpr result_type min() noexcept
    {
        return 0;
    }
    static constexpr result_type max() noexcept
    {
        return std::numeric_limits<result_type>::max();
    }

    result_type operator()() noexcept;

    /// Child stream keyed by (this key, labels); independent of the draw position.
    Stream fork(std::initializer_list<StreamLabel> labels) const;

    std::uint64_t key() const noexcept
    {
        return m_key;
    }
    std::uint64_t position() const noexcept
    {
        return m_counter;
    }

private:
    std::uint64_t m_key;
    std::uint64_t m_counter = 0;
};

/// Stream for an ordered label path under a master seed. Throws ParameterError on an empty path.
Stream derive_stream(std::uint64_t master_seed, std::initializer_list<StreamLabel> labels);

/// Unbiased integer in [0, bound). bound must be positive.
std::uint64_t uniform_index(Stream& rng, std::uint64_t bound);

/// Double in [0, 1) with 53 random bits.
double uniform01(Stream& rng);

double uniform_real(Stream& rng, double low, double high);

/// Standard normal draw via Box-Muller (consumes two outputs, no caching).
double standard_normal(Stream& rng);

} // namespace cocreate
