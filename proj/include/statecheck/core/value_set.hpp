#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace statecheck
{

// Maximum number of values a single type of state may declare. Value sets
// are stored as a 64-bit mask.
inline constexpr std::size_t max_values_per_type = 64;

// A subset of the values of one type of state, addressed by value index.
class ValueSet
{
    std::uint64_t bits_ = 0;

    explicit constexpr ValueSet( std::uint64_t bits ) : bits_{ bits } {}

public:
    constexpr ValueSet() = default;

    static constexpr ValueSet from_bits( std::uint64_t bits ) { return ValueSet{ bits }; }

    static constexpr ValueSet full( std::size_t size )
    {
        return ValueSet{ size >= 64 ? ~std::uint64_t{ 0 } : ( std::uint64_t{ 1 } << size ) - 1 };
    }

    static constexpr ValueSet single( std::size_t value ) { return ValueSet{ std::uint64_t{ 1 } << value }; }

    [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr std::size_t size() const { return static_cast< std::size_t >( std::popcount( bits_ ) ); }

    [[nodiscard]] constexpr bool contains( std::size_t value ) const
    {
        return value < 64 && ( bits_ >> value & 1U ) != 0;
    }

    constexpr void insert( std::size_t value ) { bits_ |= std::uint64_t{ 1 } << value; }
    constexpr void erase( std::size_t value ) { bits_ &= ~( std::uint64_t{ 1 } << value ); }

    [[nodiscard]] constexpr bool subset_of( ValueSet other ) const { return ( bits_ & ~other.bits_ ) == 0; }

    // Lowest member; undefined on an empty set.
    [[nodiscard]] constexpr std::size_t first() const { return static_cast< std::size_t >( std::countr_zero( bits_ ) ); }

    [[nodiscard]] std::vector< std::size_t > members() const
    {
        std::vector< std::size_t > out;
        for ( auto rest = bits_; rest != 0; rest &= rest - 1 )
            out.push_back( static_cast< std::size_t >( std::countr_zero( rest ) ) );
        return out;
    }

    constexpr ValueSet& operator|=( ValueSet other )
    {
        bits_ |= other.bits_;
        return *this;
    }

    constexpr ValueSet& operator&=( ValueSet other )
    {
        bits_ &= other.bits_;
        return *this;
    }

    friend constexpr ValueSet operator|( ValueSet a, ValueSet b ) { return a |= b; }
    friend constexpr ValueSet operator&( ValueSet a, ValueSet b ) { return a &= b; }
    friend constexpr bool operator==( ValueSet, ValueSet ) = default;
    friend constexpr auto operator<=>( ValueSet, ValueSet ) = default;
};

} // namespace statecheck
