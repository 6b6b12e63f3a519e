#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/ingest/common.hpp"
#include "statecheck/util/csv.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace statecheck
{

// Lookup table computing a derived type from the values of its source types.
struct Derivation
{
    std::size_t target = 0;
    std::vector< std::size_t > sources;                           // type indices, model order
    std::map< std::vector< std::uint8_t >, std::size_t > mapping; // source values (per `sources`) -> value

    friend bool operator==( const Derivation&, const Derivation& ) = default;
};

struct DerivationTable
{
    std::vector< Derivation > derivations; // ordered by target type index

    [[nodiscard]] const Derivation* find( std::size_t target ) const
    {
        for ( const auto& d : derivations )
            if ( d.target == target )
                return &d;
        return nullptr;
    }

    [[nodiscard]] bool is_derived( std::size_t type ) const { return find( type ) != nullptr; }

    friend bool operator==( const DerivationTable&, const DerivationTable& ) = default;
};

namespace ingest
{

// `derived,value,<source type ids...>`. Each row maps one combination of
// source values (non-blank cells) to a value of the derived type. All rows of
// one derived type must fill the same source columns. Totality and
// acyclicity are checked when the holonic model is assembled.
inline Checked< DerivationTable > parse_derivations( std::string_view text, const StateModel& model,
                                                     const std::string& file = "derivations.csv" )
{
    Diagnostics diag;
    DerivationTable table;
    const auto rows = csv::parse( text );
    if ( rows.empty() )
        return finish< DerivationTable >( std::move( table ), std::move( diag ) );

    const auto& header = rows.front();
    if ( header.fields.size() < 3 || header.fields[ 0 ] != "derived" || header.fields[ 1 ] != "value" )
    {
        diag.error( file, header.line, 0, "E_MALFORMED_ROW", "header must start with 'derived,value' and name sources" );
        return finish< DerivationTable >( std::nullopt, std::move( diag ) );
    }
    std::vector< std::optional< std::size_t > > source_cols( header.fields.size() );
    for ( std::size_t c = 2; c < header.fields.size(); ++c )
    {
        const auto type = model.find_type( header.fields[ c ] );
        if ( !type )
            diag.error( file, header.line, c + 1, "E_UNKNOWN_TYPE", "unknown type '" + header.fields[ c ] + "'" );
        else
        {
            for ( std::size_t p = 2; p < c; ++p )
                if ( source_cols[ p ] == type )
                    diag.error( file, header.line, c + 1, "E_DUP_HEADER",
                                "column '" + header.fields[ c ] + "' repeated" );
            source_cols[ c ] = type;
        }
    }
    if ( diag.has_errors() )
        return finish< DerivationTable >( std::nullopt, std::move( diag ) );

    std::map< std::size_t, Derivation > by_target;
    std::map< std::pair< std::size_t, std::vector< std::uint8_t > >, std::size_t > first_line;
    for ( std::size_t r = 1; r < rows.size(); ++r )
    {
        const auto& row = rows[ r ];
        const auto target = model.find_type( row.fields.front() );
        if ( !target )
        {
            diag.error( file, row.line, 1, "E_UNKNOWN_TYPE", "unknown type '" + row.fields.front() + "'" );
            continue;
        }
        const auto& value_id = field_or_empty( row, 1 );
        const auto value = model.type( *target ).find_value( value_id );
        if ( !value )
        {
            diag.error( file, row.line, 2, "E_UNKNOWN_VALUE",
                        "type '" + row.fields.front() + "' has no value '" + value_id + "'" );
            continue;
        }
        if ( row.fields.size() > header.fields.size() )
        {
            diag.error( file, row.line, header.fields.size() + 1, "E_MALFORMED_ROW", "row has more fields than the header" );
            continue;
        }

        std::vector< std::pair< std::size_t, std::uint8_t > > assignment;
        bool row_ok = true;
        for ( std::size_t c = 2; c < header.fields.size(); ++c )
        {
            const auto& cell = field_or_empty( row, c );
            if ( cell.empty() )
                continue;
            const auto source = *source_cols[ c ];
            if ( source == *target )
            {
                diag.error( file, row.line, c + 1, "E_DERIVATION_CYCLE",
                            "type '" + model.type( source ).id() + "' is derived from itself" );
                row_ok = false;
                continue;
            }
            const auto v = model.type( source ).find_value( cell );
            if ( !v )
            {
                diag.error( file, row.line, c + 1, "E_UNKNOWN_VALUE",
                            "type '" + model.type( source ).id() + "' has no value '" + cell + "'" );
                row_ok = false;
                continue;
            }
            assignment.emplace_back( source, static_cast< std::uint8_t >( *v ) );
        }
        if ( !row_ok )
            continue;
        if ( assignment.empty() )
        {
            diag.error( file, row.line, 0, "E_MALFORMED_ROW", "derivation row names no source value" );
            continue;
        }
        std::sort( assignment.begin(), assignment.end() );
        std::vector< std::size_t > sources;
        std::vector< std::uint8_t > key;
        for ( const auto& [ type, v ] : assignment )
        {
            sources.push_back( type );
            key.push_back( v );
        }

        auto [ it, fresh ] = by_target.try_emplace( *target );
        auto& derivation = it->second;
        if ( fresh )
        {
            derivation.target = *target;
            derivation.sources = sources;
        }
        else if ( derivation.sources != sources )
        {
            diag.error( file, row.line, 0, "E_INCONSISTENT_SOURCES",
                        "row fills different source columns than earlier rows for '" + model.type( *target ).id()
                                + "'" );
            continue;
        }
        const auto [ m, inserted ] = derivation.mapping.emplace( key, *value );
        if ( !inserted )
        {
            if ( m->second != *value )
                diag.error( file, row.line, 0, "E_DUP_DERIVATION",
                            "source combination already mapped at line "
                                    + std::to_string( first_line[ { *target, key } ] ) );
            continue;
        }
        first_line[ { *target, key } ] = row.line;
    }

    for ( auto& [ target, derivation ] : by_target )
        table.derivations.push_back( std::move( derivation ) );
    return finish< DerivationTable >( std::move( table ), std::move( diag ) );
}

} // namespace ingest
} // namespace statecheck
