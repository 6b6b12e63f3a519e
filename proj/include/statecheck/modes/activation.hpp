#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/core/predicates.hpp"
#include "statecheck/modes/mode_structure.hpp"

#include <cstddef>
#include <vector>

namespace statecheck::modes
{

// Active modes by top-down traversal: maximal nodes are evaluated in full,
// then only children of active nodes are visited, each checking just the
// types where its condition is narrower than the parent it was reached from.
// Returns node indices in ascending order.
inline std::vector< std::size_t > active_modes( const Configuration& config, const ModeStructure& ms )
{
    std::vector< char > state( ms.nodes().size(), 0 ); // 0 unvisited, 1 active, 2 inactive
    std::vector< std::size_t > frontier;
    for ( auto r : ms.roots() )
    {
        const bool on = satisfies_condition( config, ms.node( r ).condition );
        state[ r ] = on ? 1 : 2;
        if ( on )
            frontier.push_back( r );
    }
    while ( !frontier.empty() )
    {
        const auto parent = frontier.back();
        frontier.pop_back();
        const auto& children = ms.children( parent );
        for ( std::size_t k = 0; k < children.size(); ++k )
        {
            const auto child = children[ k ];
            if ( state[ child ] != 0 )
                continue;
            bool on = true;
            for ( const auto& d : ms.delta( parent, k ) )
                if ( !d.allowed.contains( config[ d.type ] ) )
                {
                    on = false;
                    break;
                }
            state[ child ] = on ? 1 : 2;
            if ( on )
                frontier.push_back( child );
        }
    }
    std::vector< std::size_t > out;
    for ( std::size_t n = 0; n < state.size(); ++n )
        if ( state[ n ] == 1 )
            out.push_back( n );
    return out;
}

// Reference evaluator: every node checked independently.
inline std::vector< std::size_t > active_modes_naive( const Configuration& config, const ModeStructure& ms )
{
    std::vector< std::size_t > out;
    for ( std::size_t n = 0; n < ms.nodes().size(); ++n )
        if ( satisfies_condition( config, ms.node( n ).condition ) )
            out.push_back( n );
    return out;
}

inline bool is_active( const Configuration& config, const ModeStructure& ms, std::size_t node )
{
    return satisfies_condition( config, ms.node( node ).condition );
}

} // namespace statecheck::modes
