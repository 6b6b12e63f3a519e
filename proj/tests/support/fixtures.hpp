#pragma once

#include "oracle.hpp"

#include "statecheck/statecheck.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fixtures
{

inline std::filesystem::path samples_dir() { return STATECHECK_SAMPLES_DIR; }

inline std::filesystem::path sample( const std::string& name ) { return samples_dir() / name / "project.manifest"; }

inline statecheck::Project load_sample( const std::string& name )
{
    auto project = statecheck::ingest::load_project( sample( name ) );
    if ( !project )
    {
        std::string msg = "cannot load sample " + name + ":";
        for ( const auto& d : project.diagnostics.items() )
            msg += "\n" + statecheck::format( d );
        throw std::runtime_error( msg );
    }
    return *project.value;
}

// Parses the oracle's CSV text through the library's readers.
inline statecheck::Checked< statecheck::Project > parse_files( const oracle::Files& files )
{
    using namespace statecheck;
    Diagnostics diag;
    auto model = ingest::parse_state_types( files.state_types );
    diag.append( model.diagnostics );
    if ( !model )
        return finish< Project >( std::nullopt, std::move( diag ) );
    auto simple = ingest::parse_simple_matrix( files.simple, *model.value );
    auto complex = ingest::parse_complex_matrix( files.complex, *model.value );
    auto scopes = ingest::parse_scopes( files.scopes );
    diag.append( simple.diagnostics );
    diag.append( complex.diagnostics );
    diag.append( scopes.diagnostics );
    if ( !simple || !complex || !scopes )
        return finish< Project >( std::nullopt, std::move( diag ) );
    auto use_cases = ingest::parse_preconditions( files.preconditions, *model.value, *scopes.value );
    diag.append( use_cases.diagnostics );
    if ( !use_cases )
        return finish< Project >( std::nullopt, std::move( diag ) );
    Project p{ *model.value,
               *simple.value,
               *complex.value,
               *use_cases.value,
               *scopes.value,
               TransitionTable::complete( *model.value ),
               {},
               {} };
    return finish< Project >( std::move( p ), std::move( diag ) );
}

inline statecheck::Project load_raw( const oracle::RawProject& raw )
{
    auto p = parse_files( oracle::to_files( raw ) );
    if ( !p )
    {
        std::string msg = "oracle project rejected:";
        for ( const auto& d : p.diagnostics.items() )
            msg += "\n" + statecheck::format( d );
        throw std::runtime_error( msg );
    }
    return *p.value;
}

inline void write_file( const std::filesystem::path& path, const std::string& text )
{
    std::filesystem::create_directories( path.parent_path() );
    std::ofstream out( path, std::ios::binary );
    out << text;
}

// Writes the project files and a manifest into `dir`; returns the manifest.
inline std::filesystem::path write_project( const std::filesystem::path& dir, const oracle::RawProject& raw,
                                            const std::string& extra_manifest = "" )
{
    const auto files = oracle::to_files( raw );
    write_file( dir / "state_types.csv", files.state_types );
    write_file( dir / "simple.csv", files.simple );
    write_file( dir / "complex.csv", files.complex );
    write_file( dir / "preconditions.csv", files.preconditions );
    write_file( dir / "scopes.txt", files.scopes );
    write_file( dir / "project.manifest", "state_types = state_types.csv\nsimple_constraints = simple.csv\n"
                                          "complex_constraints = complex.csv\npreconditions = preconditions.csv\n"
                                          "scopes = scopes.txt\n"
                                                  + extra_manifest );
    return dir / "project.manifest";
}

inline oracle::Config names( const statecheck::StateModel& model, const statecheck::Configuration& c )
{
    oracle::Config out;
    for ( std::size_t t = 0; t < c.size(); ++t )
        out.push_back( model.type( t ).values()[ c[ t ] ] );
    return out;
}

inline std::set< oracle::Config > names( const statecheck::StateModel& model,
                                         const statecheck::verify::ConfigurationSet& set )
{
    std::set< oracle::Config > out;
    for ( const auto& c : set.items )
        out.insert( names( model, c ) );
    return out;
}

inline std::set< std::string > qualified( const statecheck::StateModel& model,
                                          const std::vector< statecheck::ValueRef >& refs )
{
    std::set< std::string > out;
    for ( const auto& r : refs )
        out.insert( model.qualified( r ) );
    return out;
}

inline oracle::RawCondition raw_condition( const statecheck::StateModel& model, const statecheck::Condition& c )
{
    oracle::RawCondition out;
    for ( std::size_t t = 0; t < c.size(); ++t )
    {
        oracle::Values vs;
        for ( auto v : c[ t ].members() )
            vs.insert( model.type( t ).values()[ v ] );
        out.push_back( std::move( vs ) );
    }
    return out;
}

// Raw form of a loaded project, for feeding library-parsed samples to the oracle.
inline oracle::RawProject raw_from_project( const statecheck::Project& p )
{
    oracle::RawProject raw;
    const auto& model = p.model;
    for ( const auto& t : model.types() )
        raw.types.push_back( { t.id(), t.values() } );
    const auto values = model.all_values();
    for ( const auto a : values )
        for ( const auto b : values )
            if ( a.type < b.type && !p.simple.compatible( model, a, b ) )
            {
                const auto qa = model.qualified( a ), qb = model.qualified( b );
                raw.forbidden.insert( { std::min( qa, qb ), std::max( qa, qb ) } );
            }
    for ( const auto& k : p.complex )
    {
        oracle::RawComplex rc{ k.id(), {} };
        for ( auto t : k.involvement() )
            for ( auto v : k.subset( t ).members() )
                rc.subsets[ model.type( t ).id() ].insert( model.type( t ).values()[ v ] );
        raw.complex.push_back( std::move( rc ) );
    }
    for ( const auto& uc : p.use_cases )
    {
        oracle::RawUseCase ru{ uc.id, uc.scope(), {} };
        const auto cond = raw_condition( model, uc.precondition );
        for ( std::size_t t = 0; t < cond.size(); ++t )
            ru.authorized[ model.type( t ).id() ] = cond[ t ];
        raw.use_cases.push_back( std::move( ru ) );
    }
    for ( std::size_t s = 1; s < p.scopes.size(); ++s )
        raw.scopes.push_back( p.scopes.node( s ).path );
    return raw;
}

inline std::filesystem::path temp_dir( const std::string& name )
{
    auto dir = std::filesystem::temp_directory_path() / ( "statecheck_" + name );
    std::filesystem::remove_all( dir );
    std::filesystem::create_directories( dir );
    return dir;
}

inline std::string read( const std::filesystem::path& path ) { return statecheck::ingest::read_file( path ).value_or( "" ); }

} // namespace fixtures
