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
#include <vector>

namespace statecheck::ingest
{

// `type,value[,target,information,context,abstraction_level,view]`, one row
// per value. Rows of a type must be contiguous; metadata comes from the first
// row of each type.
inline Checked< StateModel > parse_state_types( std::string_view text, const std::string& file = "state_types.csv" )
{
    Diagnostics diag;
    const auto rows = csv::parse( text );
    if ( rows.empty() )
    {
        diag.error( file, 0, 0, "E_MALFORMED_ROW", "state-types file is empty" );
        return finish< StateModel >( std::nullopt, std::move( diag ) );
    }

    const auto& header = rows.front().fields;
    const auto type_col = column_of( header, "type" );
    const auto value_col = column_of( header, "value" );
    if ( !type_col || !value_col )
    {
        diag.error( file, rows.front().line, 0, "E_MALFORMED_ROW", "header must name columns 'type' and 'value'" );
        return finish< StateModel >( std::nullopt, std::move( diag ) );
    }
    const auto target_col = column_of( header, "target" );
    const auto information_col = column_of( header, "information" );
    const auto context_col = column_of( header, "context" );
    const auto level_col = column_of( header, "abstraction_level" );
    const auto view_col = column_of( header, "view" );
    for ( std::size_t c = 0; c < header.size(); ++c )
    {
        static const std::set< std::string > known{ "type",    "value",          "target",          "information",
                                                    "context", "abstraction_level", "view" };
        if ( !known.contains( header[ c ] ) )
            diag.warning( file, rows.front().line, c + 1, "W_UNKNOWN_COLUMN",
                          "column '" + header[ c ] + "' is ignored" );
    }

    struct Draft
    {
        std::string id;
        std::size_t line;
        std::vector< std::string > values;
        StateTypeMetadata metadata;
    };
    std::vector< Draft > drafts;
    std::set< std::string > closed; // types whose block of rows has ended

    const auto meta = [ & ]( const csv::Row& row, const std::optional< std::size_t >& col ) {
        return col ? field_or_empty( row, *col ) : std::string{};
    };

    for ( std::size_t r = 1; r < rows.size(); ++r )
    {
        const auto& row = rows[ r ];
        if ( row.fields.size() > header.size() )
        {
            diag.error( file, row.line, header.size() + 1, "E_MALFORMED_ROW", "row has more fields than the header" );
            continue;
        }
        const auto& type_id = field_or_empty( row, *type_col );
        const auto& value_id = field_or_empty( row, *value_col );
        if ( type_id.empty() )
        {
            diag.error( file, row.line, *type_col + 1, "E_MALFORMED_ROW", "missing type id" );
            continue;
        }
        if ( type_id.find( '.' ) != std::string::npos )
        {
            diag.error( file, row.line, *type_col + 1, "E_BAD_ID", "type id '" + type_id + "' contains '.'" );
            continue;
        }

        if ( drafts.empty() || drafts.back().id != type_id )
        {
            if ( closed.contains( type_id ) )
            {
                diag.error( file, row.line, *type_col + 1, "E_DUP_TYPE",
                            "type '" + type_id + "' is declared again after other types" );
                continue;
            }
            if ( !drafts.empty() )
                closed.insert( drafts.back().id );
            StateTypeMetadata metadata{ meta( row, target_col ), meta( row, information_col ), meta( row, context_col ),
                                        meta( row, level_col ), meta( row, view_col ) };
            drafts.push_back( { type_id, row.line, {}, std::move( metadata ) } );
        }

        auto& draft = drafts.back();
        if ( value_id.empty() )
            continue;
        bool seen = false;
        for ( const auto& v : draft.values )
            if ( v == value_id )
                seen = true;
        if ( seen )
        {
            diag.error( file, row.line, *value_col + 1, "E_DUP_VALUE",
                        "value '" + value_id + "' repeated under type '" + type_id + "'" );
            continue;
        }
        draft.values.push_back( value_id );
    }

    std::vector< StateType > types;
    for ( auto& draft : drafts )
    {
        if ( draft.values.empty() )
        {
            diag.error( file, draft.line, 0, "E_EMPTY_TYPE", "type '" + draft.id + "' declares no values" );
            continue;
        }
        if ( draft.values.size() > max_values_per_type )
        {
            diag.error( file, draft.line, 0, "E_TOO_MANY_VALUES",
                        "type '" + draft.id + "' declares more than 64 values" );
            continue;
        }
        types.emplace_back( draft.id, std::move( draft.values ), std::move( draft.metadata ) );
    }
    if ( drafts.empty() )
        diag.error( file, 0, 0, "E_MALFORMED_ROW", "no types declared" );

    if ( diag.has_errors() )
        return finish< StateModel >( std::nullopt, std::move( diag ) );
    return finish< StateModel >( StateModel{ std::move( types ) }, std::move( diag ) );
}

} // namespace statecheck::ingest
