#pragma once

#include "statecheck/core/condition.hpp"
#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <utility>

namespace statecheck
{

inline bool satisfies_simple( const StateModel& model, const Configuration& config,
                              const SimpleConstraintSet& constraints )
{
    for ( std::size_t i = 0; i < config.size(); ++i )
    {
        const auto gi = model.global_index( { i, config[ i ] } );
        for ( std::size_t j = i + 1; j < config.size(); ++j )
            if ( !constraints.compatible_with( gi, j ).contains( config[ j ] ) )
                return false;
    }
    return true;
}

// The first incompatible pair in (type order, type order), if any.
inline std::optional< std::pair< ValueRef, ValueRef > >
first_simple_violation( const StateModel& model, const Configuration& config, const SimpleConstraintSet& constraints )
{
    for ( std::size_t i = 0; i < config.size(); ++i )
    {
        const auto gi = model.global_index( { i, config[ i ] } );
        for ( std::size_t j = i + 1; j < config.size(); ++j )
            if ( !constraints.compatible_with( gi, j ).contains( config[ j ] ) )
                return std::pair{ ValueRef{ i, config[ i ] }, ValueRef{ j, config[ j ] } };
    }
    return std::nullopt;
}

// False exactly when every involved type takes a value inside its subset.
inline bool satisfies_complex( const Configuration& config, const ComplexConstraint& constraint )
{
    bool involved = false;
    for ( std::size_t t = 0; t < config.size(); ++t )
    {
        const auto subset = constraint.subset( t );
        if ( subset.empty() )
            continue;
        involved = true;
        if ( !subset.contains( config[ t ] ) )
            return true;
    }
    return !involved;
}

inline bool satisfies_all_complex( const Configuration& config, std::span< const ComplexConstraint > constraints )
{
    for ( const auto& c : constraints )
        if ( !satisfies_complex( config, c ) )
            return false;
    return true;
}

inline bool satisfies_condition( const Configuration& config, const Condition& condition )
{
    for ( std::size_t t = 0; t < config.size(); ++t )
        if ( !condition[ t ].contains( config[ t ] ) )
            return false;
    return true;
}

// Per-type subset inclusion. Sufficient for semantic implication; it does not
// consider the constraints.
inline bool implies( const Condition& a, const Condition& b )
{
    for ( std::size_t t = 0; t < a.size(); ++t )
        if ( !a[ t ].subset_of( b[ t ] ) )
            return false;
    return true;
}

} // namespace statecheck
