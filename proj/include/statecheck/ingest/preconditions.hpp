#pragma once

#include "statecheck/core/condition.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/scope_tree.hpp"
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

// `use_case,scope,<qualified value ids...>`. A value of a type that has some
// columns but not this one is unauthorized. A type with no column at all is
// fully authorized and reported with W_DEFAULTED_TYPE.
inline Checked< std::vector< UseCase > > parse_preconditions( std::string_view text, const StateModel& model,
                                                              const ScopeTree& scopes,
                                                              const std::string& file = "preconditions.csv" )
{
    using Result = std::vector< UseCase >;
    Diagnostics diag;
    const auto rows = csv::parse( text );
    if ( rows.empty() )
        return finish< Result >( Result{}, std::move( diag ) );

    const auto& header = rows.front();
    if ( header.fields.size() < 2 || header.fields[ 0 ] != "use_case" || header.fields[ 1 ] != "scope" )
    {
        diag.error( file, header.line, 0, "E_MALFORMED_ROW", "header must start with 'use_case,scope'" );
        return finish< Result >( std::nullopt, std::move( diag ) );
    }

    std::vector< std::optional< ValueRef > > columns( header.fields.size() );
    std::set< ValueRef > seen_columns;
    std::vector< bool > type_present( model.type_count(), false );
    for ( std::size_t c = 2; c < header.fields.size(); ++c )
    {
        const auto ref = model.resolve( header.fields[ c ] );
        if ( !ref )
            diag.error( file, header.line, c + 1, "E_UNKNOWN_VALUE",
                        "unknown value id '" + header.fields[ c ] + "' in header" );
        else if ( !seen_columns.insert( *ref ).second )
            diag.error( file, header.line, c + 1, "E_DUP_HEADER", "column '" + header.fields[ c ] + "' repeated" );
        else
        {
            columns[ c ] = ref;
            type_present[ ref->type ] = true;
        }
    }
    for ( std::size_t t = 0; t < model.type_count(); ++t )
        if ( !type_present[ t ] )
            diag.warning( file, header.line, 0, "W_DEFAULTED_TYPE",
                          "type '" + model.type( t ).id() + "' has no columns; all its values are authorized" );

    Result use_cases;
    std::set< std::string > ids;
    for ( std::size_t r = 1; r < rows.size(); ++r )
    {
        const auto& row = rows[ r ];
        const auto& id = row.fields.front();
        if ( id.empty() )
        {
            diag.error( file, row.line, 1, "E_MALFORMED_ROW", "missing use-case id" );
            continue;
        }
        if ( !ids.insert( id ).second )
        {
            diag.error( file, row.line, 1, "E_DUP_USE_CASE", "use case '" + id + "' repeated" );
            continue;
        }
        if ( row.fields.size() != header.fields.size() )
        {
            diag.error( file, row.line, 0, "E_MALFORMED_ROW",
                        "row has " + std::to_string( row.fields.size() ) + " fields, header has "
                                + std::to_string( header.fields.size() ) );
            continue;
        }
        const auto path = split_path( row.fields[ 1 ] );
        if ( !path || !scopes.find( join_path( *path ) ) )
        {
            diag.error( file, row.line, 2, "E_UNKNOWN_SCOPE", "unknown scope '" + row.fields[ 1 ] + "'" );
            continue;
        }

        auto condition = Condition::nothing( model );
        for ( std::size_t t = 0; t < model.type_count(); ++t )
            if ( !type_present[ t ] )
                condition.set( t, model.type( t ).all() );
        bool row_ok = true;
        for ( std::size_t c = 2; c < row.fields.size(); ++c )
        {
            const auto bit = parse_bit( row.fields[ c ] );
            if ( !bit )
            {
                diag.error( file, row.line, c + 1, "E_BAD_CELL", "cell '" + row.fields[ c ] + "' is not 0 or 1" );
                row_ok = false;
                continue;
            }
            if ( *bit && columns[ c ] )
                condition.authorize( *columns[ c ] );
        }
        if ( row_ok )
            use_cases.push_back( { id, *path, std::move( condition ) } );
    }
    return finish< Result >( std::move( use_cases ), std::move( diag ) );
}

} // namespace statecheck::ingest
