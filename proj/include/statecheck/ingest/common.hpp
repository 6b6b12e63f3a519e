#pragma once

#include "statecheck/util/csv.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace statecheck::ingest
{

// Matrix cells accept exactly "0" or "1".
inline std::optional< bool > parse_bit( std::string_view cell )
{
    if ( cell == "1" )
        return true;
    if ( cell == "0" )
        return false;
    return std::nullopt;
}

// Splits a `/`-separated scope path; an empty component yields nullopt.
inline std::optional< std::vector< std::string > > split_path( std::string_view path )
{
    std::vector< std::string > parts;
    std::size_t start = 0;
    while ( true )
    {
        const auto slash = path.find( '/', start );
        const auto part = csv::trim( path.substr( start, slash == std::string_view::npos ? slash : slash - start ) );
        if ( part.empty() )
            return std::nullopt;
        parts.emplace_back( part );
        if ( slash == std::string_view::npos )
            break;
        start = slash + 1;
    }
    return parts;
}

inline std::string join_path( const std::vector< std::string >& parts )
{
    std::string out;
    for ( const auto& p : parts )
    {
        if ( !out.empty() )
            out += '/';
        out += p;
    }
    return out;
}

inline std::optional< std::size_t > column_of( const std::vector< std::string >& header, std::string_view name )
{
    for ( std::size_t i = 0; i < header.size(); ++i )
        if ( header[ i ] == name )
            return i;
    return std::nullopt;
}

inline const std::string& field_or_empty( const csv::Row& row, std::size_t column )
{
    static const std::string empty;
    return column < row.fields.size() ? row.fields[ column ] : empty;
}

} // namespace statecheck::ingest
