#pragma once

#include "statecheck/core/condition.hpp"
#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/scope_tree.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/ingest/complex_matrix.hpp"
#include "statecheck/ingest/derivations.hpp"
#include "statecheck/ingest/preconditions.hpp"
#include "statecheck/ingest/scopes.hpp"
#include "statecheck/ingest/simple_matrix.hpp"
#include "statecheck/ingest/state_types.hpp"
#include "statecheck/ingest/transitions.hpp"
#include "statecheck/util/csv.hpp"

#include <charconv>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace statecheck
{

struct ProjectSettings
{
    std::size_t enumeration_cap = 1'000'000;
    std::size_t layer_cap = 10;
    bool allow_self_transitions = false;

    friend bool operator==( const ProjectSettings&, const ProjectSettings& ) = default;
};

// Input file locations, resolved against the manifest's directory.
struct ProjectManifest
{
    std::filesystem::path state_types;
    std::filesystem::path simple_constraints;
    std::optional< std::filesystem::path > complex_constraints;
    std::filesystem::path preconditions;
    std::filesystem::path scopes;
    std::optional< std::filesystem::path > transitions;
    std::optional< std::filesystem::path > derivations;
    ProjectSettings settings;
};

struct Project
{
    StateModel model;
    SimpleConstraintSet simple;
    std::vector< ComplexConstraint > complex;
    std::vector< UseCase > use_cases;
    ScopeTree scopes;
    TransitionTable transitions;
    DerivationTable derivations;
    ProjectSettings settings;
};

namespace ingest
{

inline std::optional< std::string > read_file( const std::filesystem::path& path )
{
    std::ifstream in( path, std::ios::binary );
    if ( !in )
        return std::nullopt;
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// `key = value` lines; `#` starts a comment line. Relative paths are taken
// from `base_dir`.
inline Checked< ProjectManifest > parse_manifest( std::string_view text, const std::filesystem::path& base_dir,
                                                  const std::string& file = "manifest" )
{
    Diagnostics diag;
    std::map< std::string, std::pair< std::string, std::size_t > > entries;

    std::size_t line_no = 0;
    std::size_t start = 0;
    while ( start < text.size() )
    {
        const auto nl = text.find( '\n', start );
        const auto raw = text.substr( start, nl == std::string_view::npos ? std::string_view::npos : nl - start );
        start = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        const auto line = csv::trim( raw );
        if ( line.empty() || line.front() == '#' )
            continue;
        const auto eq = line.find( '=' );
        if ( eq == std::string_view::npos )
        {
            diag.error( file, line_no, 0, "E_MALFORMED_ROW", "expected key=value" );
            continue;
        }
        const std::string key{ csv::trim( line.substr( 0, eq ) ) };
        const std::string value{ csv::trim( line.substr( eq + 1 ) ) };
        if ( !entries.emplace( key, std::pair{ value, line_no } ).second )
            diag.error( file, line_no, 0, "E_DUP_KEY", "key '" + key + "' repeated" );
    }

    ProjectManifest manifest;
    const auto path_of = [ & ]( const std::string& key, bool required ) -> std::optional< std::filesystem::path > {
        const auto it = entries.find( key );
        if ( it == entries.end() || it->second.first.empty() )
        {
            if ( required )
                diag.error( file, 0, 0, "E_MISSING_FILE", "manifest does not name '" + key + "'" );
            return std::nullopt;
        }
        auto path = std::filesystem::path{ it->second.first };
        if ( path.is_relative() )
            path = base_dir / path;
        if ( !std::filesystem::exists( path ) )
        {
            diag.error( file, it->second.second, 0, "E_MISSING_FILE",
                        "'" + key + "' file not found: " + path.string() );
            return std::nullopt;
        }
        return path;
    };
    const auto count_of = [ & ]( const std::string& key, std::size_t fallback ) {
        const auto it = entries.find( key );
        if ( it == entries.end() )
            return fallback;
        const auto& text_value = it->second.first;
        std::size_t value = 0;
        const auto [ end, ec ] = std::from_chars( text_value.data(), text_value.data() + text_value.size(), value );
        if ( ec != std::errc{} || end != text_value.data() + text_value.size() || value == 0 )
        {
            diag.error( file, it->second.second, 0, "E_BAD_SETTING",
                        "'" + key + "' must be a positive integer, got '" + text_value + "'" );
            return fallback;
        }
        return value;
    };

    manifest.state_types = path_of( "state_types", true ).value_or( "" );
    manifest.simple_constraints = path_of( "simple_constraints", true ).value_or( "" );
    manifest.complex_constraints = path_of( "complex_constraints", false );
    manifest.preconditions = path_of( "preconditions", true ).value_or( "" );
    manifest.scopes = path_of( "scopes", true ).value_or( "" );
    manifest.transitions = path_of( "transitions", false );
    manifest.derivations = path_of( "derivations", false );
    manifest.settings.enumeration_cap = count_of( "enumeration_cap", manifest.settings.enumeration_cap );
    manifest.settings.layer_cap = count_of( "layer_cap", manifest.settings.layer_cap );
    if ( const auto it = entries.find( "allow_self_transitions" ); it != entries.end() )
    {
        if ( it->second.first == "true" )
            manifest.settings.allow_self_transitions = true;
        else if ( it->second.first != "false" )
            diag.error( file, it->second.second, 0, "E_BAD_SETTING", "'allow_self_transitions' must be true or false" );
    }

    static const char* known[]
            = { "state_types", "simple_constraints", "complex_constraints", "preconditions", "scopes", "transitions",
                "derivations", "enumeration_cap",    "layer_cap",           "allow_self_transitions" };
    for ( const auto& [ key, entry ] : entries )
    {
        bool is_known = false;
        for ( const auto* k : known )
            if ( key == k )
                is_known = true;
        if ( !is_known )
            diag.warning( file, entry.second, 0, "W_UNKNOWN_KEY", "key '" + key + "' is ignored" );
    }
    return finish< ProjectManifest >( std::move( manifest ), std::move( diag ) );
}

inline Checked< ProjectManifest > read_manifest( const std::filesystem::path& path )
{
    const auto text = read_file( path );
    if ( !text )
    {
        Diagnostics diag;
        diag.error( path.string(), 0, 0, "E_MISSING_FILE", "cannot read manifest" );
        return finish< ProjectManifest >( std::nullopt, std::move( diag ) );
    }
    return parse_manifest( *text, path.parent_path(), path.string() );
}

// Loads every file named by the manifest and cross-validates them against
// the single state model. All diagnostics are collected; any error fails the
// load.
inline Checked< Project > load_project( const ProjectManifest& manifest )
{
    Diagnostics diag;
    const auto load = [ & ]( const std::filesystem::path& path ) -> std::optional< std::string > {
        auto text = read_file( path );
        if ( !text )
            diag.error( path.string(), 0, 0, "E_MISSING_FILE", "cannot read file" );
        return text;
    };

    const auto types_text = load( manifest.state_types );
    if ( !types_text )
        return finish< Project >( std::nullopt, std::move( diag ) );
    auto model = parse_state_types( *types_text, manifest.state_types.string() );
    diag.append( model.diagnostics );
    if ( !model )
        return finish< Project >( std::nullopt, std::move( diag ) );
    const auto& m = *model.value;

    std::optional< SimpleConstraintSet > simple;
    if ( const auto text = load( manifest.simple_constraints ) )
    {
        auto parsed = parse_simple_matrix( *text, m, manifest.simple_constraints.string() );
        diag.append( parsed.diagnostics );
        simple = std::move( parsed.value );
    }

    std::vector< ComplexConstraint > complex;
    if ( manifest.complex_constraints )
        if ( const auto text = load( *manifest.complex_constraints ) )
        {
            auto parsed = parse_complex_matrix( *text, m, manifest.complex_constraints->string() );
            diag.append( parsed.diagnostics );
            if ( parsed )
                complex = std::move( *parsed.value );
        }

    std::optional< ScopeTree > scopes;
    if ( const auto text = load( manifest.scopes ) )
    {
        auto parsed = parse_scopes( *text, manifest.scopes.string() );
        diag.append( parsed.diagnostics );
        scopes = std::move( parsed.value );
    }

    std::vector< UseCase > use_cases;
    if ( scopes )
        if ( const auto text = load( manifest.preconditions ) )
        {
            auto parsed = parse_preconditions( *text, m, *scopes, manifest.preconditions.string() );
            diag.append( parsed.diagnostics );
            if ( parsed )
                use_cases = std::move( *parsed.value );
        }

    auto transitions = TransitionTable::complete( m );
    if ( manifest.transitions )
        if ( const auto text = load( *manifest.transitions ) )
        {
            auto parsed = parse_transitions( *text, m, manifest.settings.allow_self_transitions,
                                             manifest.transitions->string() );
            diag.append( parsed.diagnostics );
            if ( parsed )
                transitions = std::move( *parsed.value );
        }

    DerivationTable derivations;
    if ( manifest.derivations )
        if ( const auto text = load( *manifest.derivations ) )
        {
            auto parsed = parse_derivations( *text, m, manifest.derivations->string() );
            diag.append( parsed.diagnostics );
            if ( parsed )
                derivations = std::move( *parsed.value );
        }

    if ( diag.has_errors() || !simple || !scopes )
        return finish< Project >( std::nullopt, std::move( diag ) );
    return finish< Project >( Project{ m, std::move( *simple ), std::move( complex ), std::move( use_cases ),
                                       std::move( *scopes ), std::move( transitions ), std::move( derivations ),
                                       manifest.settings },
                              std::move( diag ) );
}

inline Checked< Project > load_project( const std::filesystem::path& manifest_path )
{
    auto manifest = read_manifest( manifest_path );
    if ( !manifest )
        return finish< Project >( std::nullopt, std::move( manifest.diagnostics ) );
    auto project = load_project( *manifest.value );
    Diagnostics diag = std::move( manifest.diagnostics );
    diag.append( project.diagnostics );
    return finish< Project >( std::move( project.value ), std::move( diag ) );
}

} // namespace ingest
} // namespace statecheck
