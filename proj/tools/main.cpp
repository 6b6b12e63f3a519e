#include "statecheck/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <string>

int main( int argc, char** argv )
{
    namespace cli = statecheck::cli;

    CLI::App app{ "Checks state constraints and use-case preconditions, derives modes and replays traces" };
    app.require_subcommand( 1 );

    cli::Options options;
    std::string report;
    std::string format = "text";
    std::size_t cap = 0;
    std::string out_dir = ".";
    std::string manifest;
    std::string trace;

    const auto common = [ & ]( CLI::App* sub ) {
        sub->add_option( "manifest", manifest, "project manifest" )->required();
        sub->add_option( "--report", report, "write the rendered report to this file" );
        sub->add_option( "--format", format, "text or structured" )
                ->check( CLI::IsMember( { "text", "structured" } ) );
        sub->add_option( "--cap", cap, "enumeration cap" )->check( CLI::PositiveNumber );
        sub->add_flag( "--strict", options.strict, "treat the abstract-mode layer cap as a failure" );
        sub->add_option( "--out-dir", out_dir, "directory for exported artifacts" );
    };

    auto* validate = app.add_subcommand( "validate", "check constraints and preconditions" );
    common( validate );
    auto* modes = app.add_subcommand( "modes", "derive the mode structure" );
    common( modes );
    auto* exp = app.add_subcommand( "export", "write statecharts and the mode graph" );
    common( exp );
    auto* replay = app.add_subcommand( "trace", "replay an event trace" );
    common( replay );
    replay->add_option( "trace", trace, "trace file" )->required();

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        const int rc = app.exit( e );
        return rc == 0 ? 0 : cli::exit_code::input_error;
    }

    if ( !report.empty() )
        options.report = report;
    options.format = format == "structured" ? statecheck::report::Format::structured : statecheck::report::Format::text;
    if ( cap != 0 )
        options.cap = cap;
    options.out_dir = out_dir;

    const cli::Streams io{ std::cout, std::cerr };
    if ( validate->parsed() )
        return cli::cmd_validate( manifest, options, io );
    if ( modes->parsed() )
        return cli::cmd_modes( manifest, options, io );
    if ( exp->parsed() )
        return cli::cmd_export( manifest, options, io );
    return cli::cmd_trace( manifest, trace, options, io );
}
