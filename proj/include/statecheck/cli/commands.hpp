#pragma once

#include "statecheck/diagnostics.hpp"
#include "statecheck/exec/holonic.hpp"
#include "statecheck/exec/trace.hpp"
#include "statecheck/ingest/project.hpp"
#include "statecheck/modes/derive.hpp"
#include "statecheck/report/modes.hpp"
#include "statecheck/report/statechart.hpp"
#include "statecheck/report/trace.hpp"
#include "statecheck/report/verification.hpp"
#include "statecheck/verify/run_all.hpp"

#include <algorithm>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <string>

namespace statecheck::cli
{

namespace exit_code
{
inline constexpr int clean = 0;
inline constexpr int defects = 1;
inline constexpr int input_error = 2;
inline constexpr int resource_limit = 3;
} // namespace exit_code

struct Options
{
    std::optional< std::filesystem::path > report; // rendered report goes here instead of stdout
    report::Format format = report::Format::text;
    std::optional< std::size_t > cap;              // overrides the manifest's enumeration cap
    bool strict = false;                           // layer-cap warning becomes exit 3
    std::filesystem::path out_dir = ".";
};

struct Streams
{
    std::ostream& out;
    std::ostream& err;
};

namespace detail
{

inline bool write_text( const std::filesystem::path& path, const std::string& text, std::ostream& err )
{
    std::error_code ec;
    if ( path.has_parent_path() )
        std::filesystem::create_directories( path.parent_path(), ec );
    std::ofstream out( path, std::ios::binary | std::ios::trunc );
    out << text;
    if ( !out )
    {
        err << path.string() << ": error E_WRITE: cannot write file\n";
        return false;
    }
    return true;
}

inline bool emit( const Options& options, const std::string& rendered, Streams io )
{
    if ( options.report )
        return write_text( *options.report, rendered, io.err );
    io.out << rendered;
    return true;
}

inline std::optional< Project > load( const std::filesystem::path& manifest, const Options& options, Streams io )
{
    auto project = ingest::load_project( manifest );
    project.diagnostics.print( io.err );
    if ( !project )
        return std::nullopt;
    auto p = std::move( *project.value );
    if ( options.cap )
        p.settings.enumeration_cap = *options.cap;
    return p;
}

inline int modes_status( const modes::ModeDerivation& md, const Options& options )
{
    int status = exit_code::clean;
    if ( !md.empty_scopes.empty() )
        status = exit_code::defects;
    if ( md.layer_cap_hit && options.strict )
        status = std::max( status, exit_code::resource_limit );
    return status;
}

struct Holonic
{
    std::optional< exec::HolonicModel > model;
    Diagnostics diagnostics;
};

inline Holonic assemble( const Project& project )
{
    Holonic out;
    auto machines = exec::build_machines( project.model, project.transitions );
    out.diagnostics.append( machines.diagnostics );
    if ( !machines )
        return out;
    auto hm = exec::assemble_holonic( project.model, *machines.value, project.derivations );
    out.diagnostics.append( hm.diagnostics );
    out.model = std::move( hm.value );
    return out;
}

} // namespace detail

// Loads the project, runs every check and renders the report. Exit 1 on any
// defect, 2 on input errors, 3 when enumeration exceeded the cap.
inline int cmd_validate( const std::filesystem::path& manifest, const Options& options, Streams io )
{
    const auto project = detail::load( manifest, options, io );
    if ( !project )
        return exit_code::input_error;
    const auto vr = verify::run_all( *project );
    if ( !detail::emit( options, report::render_verification( project->model, vr, options.format ), io ) )
        return exit_code::input_error;

    int status = vr.has_defects() ? exit_code::defects : exit_code::clean;
    if ( vr.enumeration.exploded )
    {
        io.err << manifest.string() << ": error E_EXPLOSION: more than " << vr.enumeration.cap
               << " configurations under simple constraints\n";
        status = exit_code::resource_limit;
    }
    for ( const auto& u : vr.use_cases )
        if ( !u.clean() )
            io.err << "use case '" << u.id << "' has defects\n";
    return status;
}

// Derives the mode structure, writes modes.dot and modes.json to the output
// directory and renders the listing.
inline int cmd_modes( const std::filesystem::path& manifest, const Options& options, Streams io )
{
    const auto project = detail::load( manifest, options, io );
    if ( !project )
        return exit_code::input_error;
    const auto md = modes::derive_modes( *project );
    md.diagnostics.print( io.err );

    const auto listing = report::modes_json( project->model, md ).dump( 2 ) + "\n";
    if ( !detail::write_text( options.out_dir / "modes.dot", report::export_mode_graph( md.structure ), io.err )
         || !detail::write_text( options.out_dir / "modes.json", listing, io.err ) )
        return exit_code::input_error;
    const auto rendered
            = options.format == report::Format::structured ? listing : report::modes_text( project->model, md );
    if ( !detail::emit( options, rendered, io ) )
        return exit_code::input_error;
    return detail::modes_status( md, options );
}

// Writes statecharts.xml and modes.dot to the output directory.
inline int cmd_export( const std::filesystem::path& manifest, const Options& options, Streams io )
{
    const auto project = detail::load( manifest, options, io );
    if ( !project )
        return exit_code::input_error;
    const auto holonic = detail::assemble( *project );
    holonic.diagnostics.print( io.err );
    if ( !holonic.model )
        return exit_code::input_error;
    const auto md = modes::derive_modes( *project );
    md.diagnostics.print( io.err );

    const auto xml = options.out_dir / "statecharts.xml";
    const auto dot = options.out_dir / "modes.dot";
    if ( !detail::write_text( xml, report::export_machines( project->model, *holonic.model ), io.err )
         || !detail::write_text( dot, report::export_mode_graph( md.structure ), io.err ) )
        return exit_code::input_error;
    io.out << "wrote " << xml.string() << "\nwrote " << dot.string() << "\n";
    return detail::modes_status( md, options );
}

// Replays a trace against the assembled machines, the constraints and the
// mode structure. Exit 1 if any violation or initial-state warning occurred.
inline int cmd_trace( const std::filesystem::path& manifest, const std::filesystem::path& trace_path,
                      const Options& options, Streams io )
{
    const auto project = detail::load( manifest, options, io );
    if ( !project )
        return exit_code::input_error;
    const auto holonic = detail::assemble( *project );
    holonic.diagnostics.print( io.err );
    if ( !holonic.model )
        return exit_code::input_error;

    const auto text = ingest::read_file( trace_path );
    if ( !text )
    {
        io.err << trace_path.string() << ": error E_MISSING_FILE: cannot read file\n";
        return exit_code::input_error;
    }
    const auto trace = exec::parse_trace( *text, project->model, project->derivations, trace_path.string() );
    trace.diagnostics.print( io.err );
    if ( !trace )
        return exit_code::input_error;

    const auto md = modes::derive_modes( *project );
    const exec::TraceContext ctx{ project->model,     project->simple, project->complex,
                                  project->use_cases, *holonic.model,  md.structure };
    const auto tr = exec::check_trace( *trace, ctx, trace_path.string() );
    for ( const auto& w : tr.warnings )
        io.err << format( w ) << '\n';
    if ( !detail::emit( options, report::render_trace( project->model, tr, options.format ), io ) )
        return exit_code::input_error;
    return tr.clean() ? exit_code::clean : exit_code::defects;
}

} // namespace statecheck::cli
