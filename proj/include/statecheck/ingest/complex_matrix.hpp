#pragma once

#include "statecheck/core/constraints.hpp"
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

// One constraint per row: first field is the constraint id, then an
// indicator cell per qualified value id of the header. Values whose column is
// absent are outside the constraint's subsets.
inline Checked< std::vector< ComplexConstraint > >
parse_complex_matrix( std::string_view text, const StateModel& model,
                      const std::string& file = "complex_constraints.csv" )
{
    using Result = std::vector< ComplexConstraint >;
    Diagnostics diag;
    const auto rows = csv::parse( text );
    if ( rows.empty() )
        return finish< Result >( Result{}, std::move( diag ) );

    const auto& header = rows.front();
    std::vector< std::optional< ValueRef > > columns( header.fields.size() );
    std::set< ValueRef > seen_columns;
    for ( std::size_t c = 1; c < header.fields.size(); ++c )
    {
        const auto ref = model.resolve( header.fields[ c ] );
        if ( !ref )
            diag.error( file, header.line, c + 1, "E_UNKNOWN_VALUE",
                        "unknown value id '" + header.fields[ c ] + "' in header" );
        else if ( !seen_columns.insert( *ref ).second )
            diag.error( file, header.line, c + 1, "E_DUP_HEADER", "column '" + header.fields[ c ] + "' repeated" );
        else
            columns[ c ] = ref;
    }

    Result constraints;
    std::set< std::string > ids;
    for ( std::size_t r = 1; r < rows.size(); ++r )
    {
        const auto& row = rows[ r ];
        const auto& id = row.fields.front();
        if ( id.empty() )
        {
            diag.error( file, row.line, 1, "E_MALFORMED_ROW", "missing constraint id" );
            continue;
        }
        if ( !ids.insert( id ).second )
        {
            diag.error( file, row.line, 1, "E_DUP_CONSTRAINT", "constraint '" + id + "' repeated" );
            continue;
        }
        if ( row.fields.size() != header.fields.size() )
        {
            diag.error( file, row.line, 0, "E_MALFORMED_ROW",
                        "row has " + std::to_string( row.fields.size() ) + " fields, header has "
                                + std::to_string( header.fields.size() ) );
            continue;
        }

        std::vector< ValueSet > subsets( model.type_count() );
        bool row_ok = true;
        for ( std::size_t c = 1; c < row.fields.size(); ++c )
        {
            const auto bit = parse_bit( row.fields[ c ] );
            if ( !bit )
            {
                diag.error( file, row.line, c + 1, "E_BAD_CELL", "cell '" + row.fields[ c ] + "' is not 0 or 1" );
                row_ok = false;
                continue;
            }
            if ( *bit && columns[ c ] )
                subsets[ columns[ c ]->type ].insert( columns[ c ]->value );
        }
        if ( !row_ok )
            continue;

        std::size_t involved = 0;
        for ( const auto& s : subsets )
            if ( !s.empty() )
                ++involved;
        if ( involved <= 1 )
        {
            diag.error( file, row.line, 0, "E_DEGENERATE_COMPLEX",
                        "constraint '" + id + "' involves " + std::to_string( involved )
                                + " type(s); at least two are required" );
            continue;
        }
        if ( involved == 2 )
            diag.warning( file, row.line, 0, "W_COMPLEX_ARITY_2",
                          "constraint '" + id + "' involves two types; simple constraints can express it" );
        constraints.emplace_back( id, std::move( subsets ) );
    }
    return finish< Result >( std::move( constraints ), std::move( diag ) );
}

} // namespace statecheck::ingest
