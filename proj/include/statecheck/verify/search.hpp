#pragma once

#include "statecheck/core/condition.hpp"
#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"

#include <algorithm>
#include <bit>
#include <cstddef>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace statecheck::verify
{

// Backtracking search over configurations. Types are assigned in a static
// order of ascending domain size; after every assignment the domains of the
// unassigned types are pruned against the simple constraints, and complex
// constraints with a single unassigned involved type prune that type.
class Search
{
    const StateModel& model_;
    const SimpleConstraintSet& simple_;
    std::span< const ComplexConstraint > complex_;
    std::vector< std::vector< std::size_t > > involvement_;       // per constraint
    std::vector< std::vector< std::size_t > > constraints_of_;    // per type

    std::vector< std::size_t > order_;
    std::vector< std::vector< ValueSet > > domains_; // per depth
    std::vector< bool > assigned_;
    Configuration current_;

public:
    Search( const StateModel& model, const SimpleConstraintSet& simple,
            std::span< const ComplexConstraint > complex = {} )
        : model_{ model }, simple_{ simple }, complex_{ complex }, constraints_of_( model.type_count() )
    {
        for ( std::size_t c = 0; c < complex_.size(); ++c )
        {
            involvement_.push_back( complex_[ c ].involvement() );
            for ( auto t : involvement_.back() )
                constraints_of_[ t ].push_back( c );
        }
    }

    // Calls `visit(config)` for every configuration inside `domains` that
    // satisfies the constraints, until `visit` returns false. Returns false
    // when stopped early.
    template < typename Visitor >
    bool run( std::vector< ValueSet > domains, Visitor&& visit )
    {
        const auto n = model_.type_count();
        for ( std::size_t t = 0; t < n; ++t )
        {
            domains[ t ] &= model_.type( t ).all();
            if ( domains[ t ].empty() )
                return true;
        }
        order_.resize( n );
        std::iota( order_.begin(), order_.end(), std::size_t{ 0 } );
        std::stable_sort( order_.begin(), order_.end(), [ & ]( std::size_t a, std::size_t b ) {
            return domains[ a ].size() < domains[ b ].size();
        } );
        domains_.assign( n + 1, {} );
        domains_[ 0 ] = std::move( domains );
        assigned_.assign( n, false );
        current_ = Configuration{ std::vector< std::uint8_t >( n, 0 ) };
        return descend( 0, visit );
    }

    template < typename Visitor >
    bool run( const Condition& within, Visitor&& visit )
    {
        return run( within.authorized(), std::forward< Visitor >( visit ) );
    }

    std::optional< Configuration > first( std::vector< ValueSet > domains )
    {
        std::optional< Configuration > found;
        run( std::move( domains ), [ & ]( const Configuration& c ) {
            found = c;
            return false;
        } );
        return found;
    }

private:
    template < typename Visitor >
    bool descend( std::size_t depth, Visitor& visit )
    {
        if ( depth == order_.size() )
            return visit( static_cast< const Configuration& >( current_ ) );

        const auto type = order_[ depth ];
        const auto& here = domains_[ depth ];
        for ( auto rest = here[ type ].bits(); rest != 0; rest &= rest - 1 )
        {
            const auto value = static_cast< std::size_t >( std::countr_zero( rest ) );
            auto& next = domains_[ depth + 1 ];
            next = here;
            next[ type ] = ValueSet::single( value );
            current_.set( type, value );
            assigned_[ type ] = true;
            if ( prune( type, value, next ) && !descend( depth + 1, visit ) )
            {
                assigned_[ type ] = false;
                return false;
            }
            assigned_[ type ] = false;
        }
        return true;
    }

    bool prune( std::size_t type, std::size_t value, std::vector< ValueSet >& domains ) const
    {
        const auto global = model_.global_index( { type, value } );
        for ( std::size_t u = 0; u < domains.size(); ++u )
        {
            if ( assigned_[ u ] )
                continue;
            domains[ u ] &= simple_.compatible_with( global, u );
            if ( domains[ u ].empty() )
                return false;
        }
        for ( auto c : constraints_of_[ type ] )
        {
            const auto& constraint = complex_[ c ];
            std::optional< std::size_t > open;
            std::size_t open_count = 0;
            bool outside = false;
            for ( auto t : involvement_[ c ] )
            {
                if ( !assigned_[ t ] )
                {
                    open = t;
                    ++open_count;
                }
                else if ( !constraint.subset( t ).contains( current_[ t ] ) )
                {
                    outside = true;
                    break;
                }
            }
            if ( outside || open_count > 1 )
                continue;
            if ( open_count == 0 )
                return false;
            domains[ *open ] = ValueSet::from_bits( domains[ *open ].bits() & ~constraint.subset( *open ).bits() );
            if ( domains[ *open ].empty() )
                return false;
        }
        return true;
    }
};

inline std::vector< ValueSet > full_domains( const StateModel& model )
{
    std::vector< ValueSet > out;
    for ( const auto& type : model.types() )
        out.push_back( type.all() );
    return out;
}

} // namespace statecheck::verify
