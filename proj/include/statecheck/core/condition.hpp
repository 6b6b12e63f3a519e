#pragma once

#include "statecheck/core/model.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace statecheck
{

// One authorized subset per type of state. Shared by use-case preconditions
// and mode conditions. An empty subset is representable and makes the
// condition unsatisfiable.
class Condition
{
    std::vector< ValueSet > authorized_;

public:
    Condition() = default;
    explicit Condition( std::vector< ValueSet > authorized ) : authorized_{ std::move( authorized ) } {}

    static Condition everything( const StateModel& model )
    {
        std::vector< ValueSet > sets;
        for ( const auto& type : model.types() )
            sets.push_back( type.all() );
        return Condition{ std::move( sets ) };
    }

    static Condition nothing( const StateModel& model )
    {
        return Condition{ std::vector< ValueSet >( model.type_count() ) };
    }

    [[nodiscard]] std::size_t size() const { return authorized_.size(); }
    [[nodiscard]] ValueSet operator[]( std::size_t type ) const { return authorized_[ type ]; }
    [[nodiscard]] const std::vector< ValueSet >& authorized() const { return authorized_; }

    void authorize( ValueRef ref ) { authorized_[ ref.type ].insert( ref.value ); }
    void set( std::size_t type, ValueSet values ) { authorized_[ type ] = values; }

    [[nodiscard]] std::vector< std::size_t > empty_types() const
    {
        std::vector< std::size_t > out;
        for ( std::size_t t = 0; t < authorized_.size(); ++t )
            if ( authorized_[ t ].empty() )
                out.push_back( t );
        return out;
    }

    [[nodiscard]] bool has_empty_type() const { return !empty_types().empty(); }

    // Per-type union.
    Condition& operator|=( const Condition& other )
    {
        for ( std::size_t t = 0; t < authorized_.size(); ++t )
            authorized_[ t ] |= other.authorized_[ t ];
        return *this;
    }

    friend Condition operator|( Condition a, const Condition& b ) { return a |= b; }
    friend bool operator==( const Condition&, const Condition& ) = default;
    friend auto operator<=>( const Condition&, const Condition& ) = default;
};

struct UseCase
{
    std::string id;
    std::vector< std::string > scope_path;
    Condition precondition;

    [[nodiscard]] std::string scope() const
    {
        std::string out;
        for ( const auto& part : scope_path )
        {
            if ( !out.empty() )
                out += '/';
            out += part;
        }
        return out;
    }

    friend bool operator==( const UseCase&, const UseCase& ) = default;
};

} // namespace statecheck
