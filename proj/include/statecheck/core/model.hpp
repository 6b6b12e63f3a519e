#pragma once

#include "statecheck/core/value_set.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

namespace statecheck
{

// Raised when a model object is constructed in violation of its invariants.
// Ingestion reports the same conditions as diagnostics before this point.
class ModelError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Descriptive fields attached to a type of state. None of them take part in
// verification.
struct StateTypeMetadata
{
    std::string target;
    std::string information;
    std::string context;
    std::string abstraction_level;
    std::string view;

    [[nodiscard]] bool empty() const
    {
        return target.empty() && information.empty() && context.empty() && abstraction_level.empty()
               && view.empty();
    }

    friend bool operator==( const StateTypeMetadata&, const StateTypeMetadata& ) = default;
};

class StateType
{
    std::string id_;
    std::vector< std::string > values_;
    StateTypeMetadata metadata_;

public:
    StateType( std::string id, std::vector< std::string > values, StateTypeMetadata metadata = {} )
        : id_{ std::move( id ) }, values_{ std::move( values ) }, metadata_{ std::move( metadata ) }
    {
        if ( id_.empty() )
            throw ModelError( "type id must not be empty" );
        if ( id_.find( '.' ) != std::string::npos )
            throw ModelError( "type id '" + id_ + "' must not contain '.'" );
        if ( values_.empty() )
            throw ModelError( "type '" + id_ + "' has no values" );
        if ( values_.size() > max_values_per_type )
            throw ModelError( "type '" + id_ + "' has more than 64 values" );
        for ( std::size_t i = 0; i < values_.size(); ++i )
        {
            if ( values_[ i ].empty() )
                throw ModelError( "type '" + id_ + "' has an empty value id" );
            for ( std::size_t j = 0; j < i; ++j )
                if ( values_[ i ] == values_[ j ] )
                    throw ModelError( "type '" + id_ + "' repeats value '" + values_[ i ] + "'" );
        }
    }

    [[nodiscard]] const std::string& id() const { return id_; }
    [[nodiscard]] const std::vector< std::string >& values() const { return values_; }
    [[nodiscard]] const StateTypeMetadata& metadata() const { return metadata_; }
    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] ValueSet all() const { return ValueSet::full( values_.size() ); }

    [[nodiscard]] std::optional< std::size_t > find_value( std::string_view value ) const
    {
        for ( std::size_t i = 0; i < values_.size(); ++i )
            if ( values_[ i ] == value )
                return i;
        return std::nullopt;
    }

    friend bool operator==( const StateType&, const StateType& ) = default;
};

// Addresses one value of one type by index.
struct ValueRef
{
    std::size_t type = 0;
    std::size_t value = 0;

    friend constexpr bool operator==( ValueRef, ValueRef ) = default;
    friend constexpr auto operator<=>( ValueRef, ValueRef ) = default;
};

// The ordered universe of types of state. Values are addressed globally by
// the qualified id `type.value`; the type id never contains '.', so the first
// dot splits the two.
class StateModel
{
    std::vector< StateType > types_;
    std::vector< std::size_t > offsets_;
    std::unordered_map< std::string, std::size_t > type_index_;

public:
    explicit StateModel( std::vector< StateType > types ) : types_{ std::move( types ) }
    {
        if ( types_.empty() )
            throw ModelError( "a state model needs at least one type" );
        std::size_t offset = 0;
        for ( std::size_t i = 0; i < types_.size(); ++i )
        {
            if ( !type_index_.emplace( types_[ i ].id(), i ).second )
                throw ModelError( "duplicate type id '" + types_[ i ].id() + "'" );
            offsets_.push_back( offset );
            offset += types_[ i ].size();
        }
        offsets_.push_back( offset );
    }

    [[nodiscard]] const std::vector< StateType >& types() const { return types_; }
    [[nodiscard]] std::size_t type_count() const { return types_.size(); }
    [[nodiscard]] const StateType& type( std::size_t index ) const { return types_.at( index ); }
    [[nodiscard]] std::size_t value_count() const { return offsets_.back(); }

    [[nodiscard]] std::optional< std::size_t > find_type( std::string_view id ) const
    {
        const auto it = type_index_.find( std::string{ id } );
        if ( it == type_index_.end() )
            return std::nullopt;
        return it->second;
    }

    // Index of a value in the flattened (type order, value order) numbering.
    [[nodiscard]] std::size_t global_index( ValueRef ref ) const { return offsets_[ ref.type ] + ref.value; }

    [[nodiscard]] ValueRef value_at( std::size_t global ) const
    {
        std::size_t type = 0;
        while ( offsets_[ type + 1 ] <= global )
            ++type;
        return { type, global - offsets_[ type ] };
    }

    [[nodiscard]] std::string qualified( ValueRef ref ) const
    {
        return types_[ ref.type ].id() + "." + types_[ ref.type ].values()[ ref.value ];
    }

    [[nodiscard]] std::optional< ValueRef > resolve( std::string_view qualified_id ) const
    {
        const auto dot = qualified_id.find( '.' );
        if ( dot == std::string_view::npos )
            return std::nullopt;
        const auto type = find_type( qualified_id.substr( 0, dot ) );
        if ( !type )
            return std::nullopt;
        const auto value = types_[ *type ].find_value( qualified_id.substr( dot + 1 ) );
        if ( !value )
            return std::nullopt;
        return ValueRef{ *type, *value };
    }

    // All values in canonical order.
    [[nodiscard]] std::vector< ValueRef > all_values() const
    {
        std::vector< ValueRef > out;
        out.reserve( value_count() );
        for ( std::size_t t = 0; t < types_.size(); ++t )
            for ( std::size_t v = 0; v < types_[ t ].size(); ++v )
                out.push_back( { t, v } );
        return out;
    }

    friend bool operator==( const StateModel& a, const StateModel& b ) { return a.types_ == b.types_; }
};

// One value per type, in model type order. Ordering is lexicographic by type
// order then value order, which is the canonical enumeration order.
class Configuration
{
    std::vector< std::uint8_t > values_;

public:
    Configuration() = default;
    explicit Configuration( std::vector< std::uint8_t > values ) : values_{ std::move( values ) } {}

    static Configuration from_indices( const std::vector< std::size_t >& values )
    {
        std::vector< std::uint8_t > raw;
        raw.reserve( values.size() );
        for ( auto v : values )
            raw.push_back( static_cast< std::uint8_t >( v ) );
        return Configuration{ std::move( raw ) };
    }

    [[nodiscard]] std::size_t size() const { return values_.size(); }
    [[nodiscard]] std::size_t operator[]( std::size_t type ) const { return values_[ type ]; }
    void set( std::size_t type, std::size_t value ) { values_[ type ] = static_cast< std::uint8_t >( value ); }
    [[nodiscard]] const std::vector< std::uint8_t >& raw() const { return values_; }

    [[nodiscard]] bool valid_for( const StateModel& model ) const
    {
        if ( values_.size() != model.type_count() )
            return false;
        for ( std::size_t t = 0; t < values_.size(); ++t )
            if ( values_[ t ] >= model.type( t ).size() )
                return false;
        return true;
    }

    friend bool operator==( const Configuration&, const Configuration& ) = default;
    friend auto operator<=>( const Configuration&, const Configuration& ) = default;
};

// Human form `(v1, v2, ...)` using bare value ids.
inline std::string describe( const StateModel& model, const Configuration& config )
{
    std::string out = "(";
    for ( std::size_t t = 0; t < config.size(); ++t )
    {
        if ( t != 0 )
            out += ", ";
        out += model.type( t ).values()[ config[ t ] ];
    }
    out += ")";
    return out;
}

} // namespace statecheck
