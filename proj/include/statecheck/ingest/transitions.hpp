#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/ingest/common.hpp"
#include "statecheck/util/csv.hpp"

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

namespace statecheck
{

struct Transition
{
    std::size_t from = 0;
    std::size_t to = 0;
    std::optional< std::string > signal; // unnamed transitions get a generated signal

    friend bool operator==( const Transition&, const Transition& ) = default;
};

// Directed transition relation per type of state. A type without declared
// rows is completed to the full digraph on its values (no self-loops).
struct TransitionTable
{
    std::vector< std::vector< Transition > > per_type;
    std::vector< bool > declared;

    static TransitionTable complete( const StateModel& model )
    {
        TransitionTable table;
        table.per_type.resize( model.type_count() );
        table.declared.assign( model.type_count(), false );
        for ( std::size_t t = 0; t < model.type_count(); ++t )
            table.fill_complete( model, t );
        return table;
    }

    void fill_complete( const StateModel& model, std::size_t type )
    {
        per_type[ type ].clear();
        const auto n = model.type( type ).size();
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                if ( a != b )
                    per_type[ type ].push_back( { a, b, std::nullopt } );
    }

    friend bool operator==( const TransitionTable&, const TransitionTable& ) = default;
};

namespace ingest
{

// `type,from,to[,signal]`, bare value ids.
inline Checked< TransitionTable > parse_transitions( std::string_view text, const StateModel& model,
                                                     bool allow_self_transitions = false,
                                                     const std::string& file = "transitions.csv" )
{
    Diagnostics diag;
    auto table = TransitionTable::complete( model );
    const auto rows = csv::parse( text );
    if ( rows.empty() )
        return finish< TransitionTable >( std::move( table ), std::move( diag ) );

    const auto& header = rows.front().fields;
    const auto type_col = column_of( header, "type" );
    const auto from_col = column_of( header, "from" );
    const auto to_col = column_of( header, "to" );
    const auto signal_col = column_of( header, "signal" );
    if ( !type_col || !from_col || !to_col )
    {
        diag.error( file, rows.front().line, 0, "E_MALFORMED_ROW", "header must name columns 'type', 'from', 'to'" );
        return finish< TransitionTable >( std::nullopt, std::move( diag ) );
    }

    std::vector< std::vector< Transition > > declared( model.type_count() );
    std::set< std::tuple< std::size_t, std::size_t, std::size_t > > seen;
    for ( std::size_t r = 1; r < rows.size(); ++r )
    {
        const auto& row = rows[ r ];
        const auto& type_id = field_or_empty( row, *type_col );
        const auto type = model.find_type( type_id );
        if ( !type )
        {
            diag.error( file, row.line, *type_col + 1, "E_UNKNOWN_TYPE", "unknown type '" + type_id + "'" );
            continue;
        }
        const auto& from_id = field_or_empty( row, *from_col );
        const auto& to_id = field_or_empty( row, *to_col );
        const auto from = model.type( *type ).find_value( from_id );
        const auto to = model.type( *type ).find_value( to_id );
        if ( !from )
        {
            diag.error( file, row.line, *from_col + 1, "E_UNKNOWN_VALUE",
                        "type '" + type_id + "' has no value '" + from_id + "'" );
            continue;
        }
        if ( !to )
        {
            diag.error( file, row.line, *to_col + 1, "E_UNKNOWN_VALUE",
                        "type '" + type_id + "' has no value '" + to_id + "'" );
            continue;
        }
        if ( *from == *to && !allow_self_transitions )
        {
            diag.error( file, row.line, 0, "E_SELF_TRANSITION", "self transition on " + type_id + "." + from_id );
            continue;
        }
        if ( !seen.emplace( *type, *from, *to ).second )
        {
            diag.error( file, row.line, 0, "E_DUP_TRANSITION",
                        "transition " + type_id + ": " + from_id + " -> " + to_id + " repeated" );
            continue;
        }
        std::optional< std::string > signal;
        if ( signal_col && !field_or_empty( row, *signal_col ).empty() )
            signal = field_or_empty( row, *signal_col );
        declared[ *type ].push_back( { *from, *to, std::move( signal ) } );
    }

    for ( std::size_t t = 0; t < model.type_count(); ++t )
        if ( !declared[ t ].empty() )
        {
            table.per_type[ t ] = std::move( declared[ t ] );
            table.declared[ t ] = true;
        }
    return finish< TransitionTable >( std::move( table ), std::move( diag ) );
}

} // namespace ingest
} // namespace statecheck
