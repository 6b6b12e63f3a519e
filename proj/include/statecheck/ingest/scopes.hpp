#pragma once

#include "statecheck/core/scope_tree.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/ingest/common.hpp"
#include "statecheck/util/csv.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace statecheck::ingest
{

// One `/`-separated path per line; blank lines and `#` comments are skipped.
// Every proper prefix of a path must be declared on some line of its own.
inline Checked< ScopeTree > parse_scopes( std::string_view text, const std::string& file = "scopes.txt" )
{
    Diagnostics diag;

    struct Entry
    {
        std::vector< std::string > parts;
        std::size_t line;
    };
    std::vector< Entry > entries;
    std::map< std::string, std::size_t > declared;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while ( start <= text.size() )
    {
        const auto nl = text.find( '\n', start );
        const auto raw = text.substr( start, nl == std::string_view::npos ? std::string_view::npos : nl - start );
        start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        ++line_no;

        const auto line = csv::trim( raw );
        if ( line.empty() || line.front() == '#' )
            continue;
        auto parts = split_path( line );
        if ( !parts )
        {
            diag.error( file, line_no, 0, "E_MALFORMED_ROW", "scope path '" + std::string{ line } + "' has an empty component" );
            continue;
        }
        const auto path = join_path( *parts );
        if ( const auto it = declared.find( path ); it != declared.end() )
        {
            diag.error( file, line_no, 0, "E_DUP_SCOPE",
                        "scope '" + path + "' already declared at line " + std::to_string( it->second ) );
            continue;
        }
        declared.emplace( path, line_no );
        entries.push_back( { std::move( *parts ), line_no } );
    }

    for ( const auto& e : entries )
    {
        std::vector< std::string > prefix;
        for ( std::size_t i = 0; i + 1 < e.parts.size(); ++i )
        {
            prefix.push_back( e.parts[ i ] );
            if ( !declared.contains( join_path( prefix ) ) )
            {
                diag.error( file, e.line, 0, "E_ORPHAN_SCOPE",
                            "scope '" + join_path( e.parts ) + "' has undeclared parent '" + join_path( prefix ) + "'" );
                break;
            }
        }
    }

    if ( entries.empty() && !diag.has_errors() )
        diag.warning( file, 0, 0, "W_EMPTY_SCOPES", "no scopes declared" );
    if ( diag.has_errors() )
        return finish< ScopeTree >( std::nullopt, std::move( diag ) );

    // Parents first; siblings keep file order.
    std::stable_sort( entries.begin(), entries.end(),
                      []( const Entry& a, const Entry& b ) { return a.parts.size() < b.parts.size(); } );
    ScopeTree tree;
    for ( const auto& e : entries )
    {
        std::size_t parent = 0;
        for ( std::size_t i = 0; i + 1 < e.parts.size(); ++i )
            parent = *tree.child( parent, e.parts[ i ] );
        tree.add( parent, e.parts.back() );
    }
    return finish< ScopeTree >( std::move( tree ), std::move( diag ) );
}

} // namespace statecheck::ingest
