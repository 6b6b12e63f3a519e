#pragma once

#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/predicates.hpp"
#include "statecheck/verify/search.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace statecheck::verify
{

// Configurations in canonical order (type order, then value order).
struct ConfigurationSet
{
    std::vector< Configuration > items;

    [[nodiscard]] std::size_t size() const { return items.size(); }
    [[nodiscard]] bool empty() const { return items.empty(); }
    [[nodiscard]] bool contains( const Configuration& c ) const
    {
        return std::binary_search( items.begin(), items.end(), c );
    }

    friend bool operator==( const ConfigurationSet&, const ConfigurationSet& ) = default;
};

struct Enumeration
{
    ConfigurationSet configurations; // complete only when !exploded
    std::size_t count = 0;           // legal configurations found
    bool exploded = false;           // more than `cap` exist (E_EXPLOSION)
    bool count_exact = true;         // false when counting stopped at the count limit
};

// Counting continues past the cap up to this multiple of it so the size of
// the explosion can still be reported.
inline constexpr std::size_t explosion_count_factor = 100;

inline Enumeration enumerate_configurations( const StateModel& model, const SimpleConstraintSet& simple,
                                             std::size_t cap )
{
    Enumeration result;
    const auto limit = cap > SIZE_MAX / explosion_count_factor ? SIZE_MAX : cap * explosion_count_factor;
    Search search{ model, simple };
    const bool finished = search.run( full_domains( model ), [ & ]( const Configuration& c ) {
        ++result.count;
        if ( result.count <= cap )
            result.configurations.items.push_back( c );
        else if ( !result.exploded )
        {
            result.exploded = true;
            result.configurations.items.clear();
            result.configurations.items.shrink_to_fit();
        }
        return result.count < limit;
    } );
    result.count_exact = finished;
    std::sort( result.configurations.items.begin(), result.configurations.items.end() );
    return result;
}

inline ConfigurationSet filter_complex( const ConfigurationSet& set, std::span< const ComplexConstraint > constraints )
{
    ConfigurationSet out;
    for ( const auto& c : set.items )
        if ( satisfies_all_complex( c, constraints ) )
            out.items.push_back( c );
    return out;
}

// Values appearing in no member of `set`, in model order.
inline std::vector< ValueRef > check_value_coverage( const StateModel& model, const ConfigurationSet& set )
{
    std::vector< ValueSet > seen( model.type_count() );
    for ( const auto& c : set.items )
        for ( std::size_t t = 0; t < c.size(); ++t )
            seen[ t ].insert( c[ t ] );
    std::vector< ValueRef > dead;
    for ( const auto ref : model.all_values() )
        if ( !seen[ ref.type ].contains( ref.value ) )
            dead.push_back( ref );
    return dead;
}

// Type pairs (i < j) whose block of the compatibility relation is all zero.
inline std::vector< std::pair< std::size_t, std::size_t > > check_pair_coverage( const StateModel& model,
                                                                               const SimpleConstraintSet& simple )
{
    std::vector< std::pair< std::size_t, std::size_t > > failures;
    for ( std::size_t i = 0; i < model.type_count(); ++i )
        for ( std::size_t j = i + 1; j < model.type_count(); ++j )
        {
            bool any = false;
            for ( std::size_t v = 0; v < model.type( i ).size() && !any; ++v )
                any = !simple.compatible_with( model.global_index( { i, v } ), j ).empty();
            if ( !any )
                failures.emplace_back( i, j );
        }
    return failures;
}

// A partial assignment: at most one value per type.
using PinnedAssignment = std::vector< std::optional< std::size_t > >;

inline std::optional< Configuration > exists_configuration( const StateModel& model, const SimpleConstraintSet& simple,
                                                            std::span< const ComplexConstraint > complex,
                                                            const PinnedAssignment& pinned )
{
    auto domains = full_domains( model );
    for ( std::size_t t = 0; t < pinned.size() && t < domains.size(); ++t )
        if ( pinned[ t ] )
            domains[ t ] = ValueSet::single( *pinned[ t ] );
    Search search{ model, simple, complex };
    return search.first( std::move( domains ) );
}

// Dead values found with one existence query per value; used when the legal
// set is too large to materialize.
inline std::vector< ValueRef > dead_values_by_query( const StateModel& model, const SimpleConstraintSet& simple,
                                                     std::span< const ComplexConstraint > complex )
{
    std::vector< ValueSet > covered( model.type_count() );
    std::vector< ValueRef > dead;
    Search search{ model, simple, complex };
    for ( const auto ref : model.all_values() )
    {
        if ( covered[ ref.type ].contains( ref.value ) )
            continue;
        auto domains = full_domains( model );
        domains[ ref.type ] = ValueSet::single( ref.value );
        const auto witness = search.first( std::move( domains ) );
        if ( !witness )
        {
            dead.push_back( ref );
            continue;
        }
        for ( std::size_t t = 0; t < witness->size(); ++t )
            covered[ t ].insert( ( *witness )[ t ] );
    }
    return dead;
}

} // namespace statecheck::verify
