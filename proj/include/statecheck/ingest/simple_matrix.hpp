#pragma once

#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/ingest/common.hpp"
#include "statecheck/util/csv.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace statecheck::ingest
{

// Compatibility matrix: the header row (after a corner cell) and the first
// column hold qualified value ids. Cells are 0, 1 or blank. Rows and columns
// may list different values, so a full square, one triangle, or a set of
// rectangular blocks are all accepted as long as every cross-type pair is
// given at least once. Where both orientations of a pair are present they
// must agree.
inline Checked< SimpleConstraintSet > parse_simple_matrix( std::string_view text, const StateModel& model,
                                                           const std::string& file = "simple_constraints.csv" )
{
    Diagnostics diag;
    const auto rows = csv::parse( text );
    if ( rows.empty() )
    {
        diag.error( file, 0, 0, "E_INCOMPLETE_MATRIX", "simple-constraint matrix is empty" );
        return finish< SimpleConstraintSet >( std::nullopt, std::move( diag ) );
    }

    const auto& header = rows.front();
    std::vector< std::optional< ValueRef > > columns( header.fields.size() );
    std::set< ValueRef > seen_columns;
    for ( std::size_t c = 1; c < header.fields.size(); ++c )
    {
        const auto ref = model.resolve( header.fields[ c ] );
        if ( !ref )
        {
            diag.error( file, header.line, c + 1, "E_UNKNOWN_VALUE",
                        "unknown value id '" + header.fields[ c ] + "' in header" );
            continue;
        }
        if ( !seen_columns.insert( *ref ).second )
        {
            diag.error( file, header.line, c + 1, "E_DUP_HEADER", "column '" + header.fields[ c ] + "' repeated" );
            continue;
        }
        columns[ c ] = ref;
    }

    struct Entry
    {
        bool compatible;
        bool row_is_lower; // orientation: row value has the smaller global index
        std::size_t line;
        std::size_t column;
    };
    std::map< std::pair< std::size_t, std::size_t >, Entry > entries;
    std::set< ValueRef > seen_rows;

    for ( std::size_t r = 1; r < rows.size(); ++r )
    {
        const auto& row = rows[ r ];
        const auto row_ref = model.resolve( row.fields.front() );
        if ( !row_ref )
        {
            diag.error( file, row.line, 1, "E_UNKNOWN_VALUE", "unknown value id '" + row.fields.front() + "'" );
            continue;
        }
        if ( !seen_rows.insert( *row_ref ).second )
        {
            diag.error( file, row.line, 1, "E_DUP_HEADER", "row '" + row.fields.front() + "' repeated" );
            continue;
        }
        if ( row.fields.size() > header.fields.size() )
            diag.error( file, row.line, header.fields.size() + 1, "E_MALFORMED_ROW",
                        "row has more cells than the header" );

        for ( std::size_t c = 1; c < row.fields.size() && c < header.fields.size(); ++c )
        {
            const auto& cell = row.fields[ c ];
            if ( !columns[ c ] )
                continue;
            const auto col_ref = *columns[ c ];
            if ( cell.empty() )
                continue;
            const auto bit = parse_bit( cell );
            if ( !bit )
            {
                diag.error( file, row.line, c + 1, "E_BAD_CELL", "cell '" + cell + "' is not 0, 1 or blank" );
                continue;
            }
            if ( col_ref.type == row_ref->type )
            {
                diag.warning( file, row.line, c + 1, "W_INTRA_TYPE_CELL",
                              "cell within type '" + model.type( col_ref.type ).id() + "' is ignored" );
                continue;
            }
            const auto gr = model.global_index( *row_ref );
            const auto gc = model.global_index( col_ref );
            const auto key = std::pair{ std::min( gr, gc ), std::max( gr, gc ) };
            const Entry entry{ *bit, gr < gc, row.line, c + 1 };
            const auto [ it, inserted ] = entries.emplace( key, entry );
            if ( !inserted && it->second.compatible != entry.compatible )
                diag.error( file, row.line, c + 1, "E_ASYMMETRY",
                            "cell " + model.qualified( *row_ref ) + " x " + model.qualified( col_ref )
                                    + " disagrees with its mirror at line " + std::to_string( it->second.line ) );
        }
    }

    // Totality, reported once per block of two types.
    for ( std::size_t ti = 0; ti < model.type_count(); ++ti )
        for ( std::size_t tj = ti + 1; tj < model.type_count(); ++tj )
        {
            std::size_t missing = 0;
            std::string example;
            for ( std::size_t vi = 0; vi < model.type( ti ).size(); ++vi )
                for ( std::size_t vj = 0; vj < model.type( tj ).size(); ++vj )
                {
                    const auto key
                            = std::pair{ model.global_index( { ti, vi } ), model.global_index( { tj, vj } ) };
                    if ( entries.contains( key ) )
                        continue;
                    if ( missing++ == 0 )
                        example = model.qualified( { ti, vi } ) + " x " + model.qualified( { tj, vj } );
                }
            if ( missing != 0 )
            {
                const auto total = model.type( ti ).size() * model.type( tj ).size();
                diag.error( file, 0, 0, "E_INCOMPLETE_MATRIX",
                            "block " + model.type( ti ).id() + " x " + model.type( tj ).id() + ": "
                                    + std::to_string( missing ) + " of " + std::to_string( total )
                                    + " cells missing (first: " + example + ")" );
            }
        }

    if ( diag.has_errors() )
        return finish< SimpleConstraintSet >( std::nullopt, std::move( diag ) );

    SimpleConstraintSet set{ model };
    for ( const auto& [ key, entry ] : entries )
        if ( !entry.compatible )
            set.forbid( model, model.value_at( key.first ), model.value_at( key.second ) );
    return finish< SimpleConstraintSet >( std::move( set ), std::move( diag ) );
}

} // namespace statecheck::ingest
