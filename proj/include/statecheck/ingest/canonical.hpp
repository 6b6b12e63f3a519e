#pragma once

// Writers producing the canonical file form of each input. Parsing their
// output yields objects equal to the ones written.

#include "statecheck/core/condition.hpp"
#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/scope_tree.hpp"
#include "statecheck/ingest/derivations.hpp"
#include "statecheck/ingest/transitions.hpp"
#include "statecheck/util/csv.hpp"

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

namespace statecheck::ingest
{

inline std::string write_state_types( const StateModel& model )
{
    std::string out = csv::join( { "type", "value", "target", "information", "context", "abstraction_level", "view" } );
    for ( const auto& type : model.types() )
        for ( std::size_t v = 0; v < type.size(); ++v )
        {
            const auto& m = type.metadata();
            if ( v == 0 )
                out += csv::join( { type.id(), type.values()[ v ], m.target, m.information, m.context,
                                    m.abstraction_level, m.view } );
            else
                out += csv::join( { type.id(), type.values()[ v ], "", "", "", "", "" } );
        }
    return out;
}

// Full square, blank on the diagonal blocks.
inline std::string write_simple_matrix( const StateModel& model, const SimpleConstraintSet& constraints )
{
    const auto values = model.all_values();
    std::vector< std::string > header{ "" };
    for ( const auto ref : values )
        header.push_back( model.qualified( ref ) );
    std::string out = csv::join( header );
    for ( const auto row : values )
    {
        std::vector< std::string > fields{ model.qualified( row ) };
        for ( const auto col : values )
            fields.push_back( row.type == col.type ? "" : constraints.compatible( model, row, col ) ? "1" : "0" );
        out += csv::join( fields );
    }
    return out;
}

inline std::string write_complex_matrix( const StateModel& model, const std::vector< ComplexConstraint >& constraints )
{
    const auto values = model.all_values();
    std::vector< std::string > header{ "constraint" };
    for ( const auto ref : values )
        header.push_back( model.qualified( ref ) );
    std::string out = csv::join( header );
    for ( const auto& c : constraints )
    {
        std::vector< std::string > fields{ c.id() };
        for ( const auto ref : values )
            fields.push_back( c.subset( ref.type ).contains( ref.value ) ? "1" : "0" );
        out += csv::join( fields );
    }
    return out;
}

inline std::string write_preconditions( const StateModel& model, const std::vector< UseCase >& use_cases )
{
    const auto values = model.all_values();
    std::vector< std::string > header{ "use_case", "scope" };
    for ( const auto ref : values )
        header.push_back( model.qualified( ref ) );
    std::string out = csv::join( header );
    for ( const auto& uc : use_cases )
    {
        std::vector< std::string > fields{ uc.id, uc.scope() };
        for ( const auto ref : values )
            fields.push_back( uc.precondition[ ref.type ].contains( ref.value ) ? "1" : "0" );
        out += csv::join( fields );
    }
    return out;
}

// Depth-first, children in declaration order.
inline std::string write_scopes( const ScopeTree& tree )
{
    std::string out;
    std::vector< std::size_t > stack( tree.root().children.rbegin(), tree.root().children.rend() );
    while ( !stack.empty() )
    {
        const auto n = stack.back();
        stack.pop_back();
        out += tree.node( n ).path + "\n";
        const auto& children = tree.node( n ).children;
        stack.insert( stack.end(), children.rbegin(), children.rend() );
    }
    return out;
}

// Only declared types are written; the others are completed on reading.
inline std::string write_transitions( const StateModel& model, const TransitionTable& table )
{
    std::string out = csv::join( { "type", "from", "to", "signal" } );
    for ( std::size_t t = 0; t < model.type_count(); ++t )
    {
        if ( !table.declared[ t ] )
            continue;
        const auto& type = model.type( t );
        for ( const auto& tr : table.per_type[ t ] )
            out += csv::join( { type.id(), type.values()[ tr.from ], type.values()[ tr.to ], tr.signal.value_or( "" ) } );
    }
    return out;
}

inline std::string write_derivations( const StateModel& model, const DerivationTable& table )
{
    std::vector< std::size_t > source_types;
    for ( const auto& d : table.derivations )
        for ( auto s : d.sources )
            if ( std::find( source_types.begin(), source_types.end(), s ) == source_types.end() )
                source_types.push_back( s );
    std::sort( source_types.begin(), source_types.end() );

    std::vector< std::string > header{ "derived", "value" };
    for ( auto s : source_types )
        header.push_back( model.type( s ).id() );
    std::string out = csv::join( header );
    for ( const auto& d : table.derivations )
        for ( const auto& [ key, value ] : d.mapping )
        {
            std::vector< std::string > fields{ model.type( d.target ).id(), model.type( d.target ).values()[ value ] };
            for ( auto s : source_types )
            {
                std::string cell;
                for ( std::size_t i = 0; i < d.sources.size(); ++i )
                    if ( d.sources[ i ] == s )
                        cell = model.type( s ).values()[ key[ i ] ];
                fields.push_back( cell );
            }
            out += csv::join( fields );
        }
    return out;
}

} // namespace statecheck::ingest
