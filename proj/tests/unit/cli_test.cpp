#include "fixtures.hpp"

#include "statecheck/cli/commands.hpp"

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace statecheck;
namespace fs = std::filesystem;

namespace
{

struct Run
{
    int status = -1;
    std::string out;
    std::string err;
};

template < typename Command >
Run run( Command&& command )
{
    std::ostringstream out, err;
    Run r;
    r.status = command( cli::Streams{ out, err } );
    r.out = out.str();
    r.err = err.str();
    return r;
}

Run validate( const fs::path& manifest, cli::Options options = {} )
{
    return run( [ & ]( cli::Streams io ) { return cli::cmd_validate( manifest, options, io ); } );
}

Run modes_cmd( const fs::path& manifest, cli::Options options )
{
    return run( [ & ]( cli::Streams io ) { return cli::cmd_modes( manifest, options, io ); } );
}

Run export_cmd( const fs::path& manifest, cli::Options options )
{
    return run( [ & ]( cli::Streams io ) { return cli::cmd_export( manifest, options, io ); } );
}

Run trace_cmd( const fs::path& manifest, const fs::path& trace, cli::Options options = {} )
{
    return run( [ & ]( cli::Streams io ) { return cli::cmd_trace( manifest, trace, options, io ); } );
}

cli::Options in_dir( const fs::path& dir )
{
    cli::Options o;
    o.out_dir = dir;
    return o;
}

// Copies a sample to a scratch directory so single files can be replaced.
fs::path copy_sample( const std::string& name, const std::string& scratch )
{
    const auto dir = fixtures::temp_dir( scratch );
    for ( const auto& entry : fs::directory_iterator( fixtures::samples_dir() / name ) )
        fs::copy_file( entry.path(), dir / entry.path().filename() );
    return dir;
}

int shell( const std::string& args )
{
    const auto command = std::string{ STATECHECK_CLI } + " " + args + " >/dev/null 2>&1";
    const int raw = std::system( command.c_str() );
    return WIFEXITED( raw ) ? WEXITSTATUS( raw ) : -1;
}

} // namespace

TEST( Cli, ValidateExitCodes )
{
    EXPECT_EQ( validate( fixtures::sample( "train" ) ).status, cli::exit_code::clean );
    EXPECT_EQ( validate( fixtures::sample( "fig2" ) ).status, cli::exit_code::clean );

    const auto regression = validate( fixtures::sample( "train_regression" ) );
    EXPECT_EQ( regression.status, cli::exit_code::defects );
    EXPECT_NE( regression.err.find( "use case 'Wake up train' has defects" ), std::string::npos );

    const auto missing = validate( fixtures::samples_dir() / "nowhere" / "project.manifest" );
    EXPECT_EQ( missing.status, cli::exit_code::input_error );
    EXPECT_NE( missing.err.find( "E_MISSING_FILE" ), std::string::npos );

    cli::Options capped;
    capped.cap = 5;
    const auto exploded = validate( fixtures::sample( "train" ), capped );
    EXPECT_EQ( exploded.status, cli::exit_code::resource_limit );
    EXPECT_NE( exploded.err.find( "E_EXPLOSION" ), std::string::npos );
}

TEST( Cli, MalformedInputIsAnInputError )
{
    const auto dir = copy_sample( "train", "cli_malformed" );
    fixtures::write_file( dir / "simple_constraints.csv", ",Movement.Moving\nMovement.Moving,maybe\n" );
    const auto r = validate( dir / "project.manifest" );
    EXPECT_EQ( r.status, cli::exit_code::input_error );
    EXPECT_NE( r.err.find( "simple_constraints.csv" ), std::string::npos );
    EXPECT_TRUE( r.out.empty() );
}

TEST( Cli, FormatDoesNotChangeExitStatus )
{
    for ( const auto* name : { "train", "train_regression", "train_env" } )
    {
        cli::Options text, structured;
        structured.format = report::Format::structured;
        const auto a = validate( fixtures::sample( name ), text );
        const auto b = validate( fixtures::sample( name ), structured );
        EXPECT_EQ( a.status, b.status ) << name;
        EXPECT_TRUE( report::Json::accept( b.out ) );
    }
}

TEST( Cli, ReportOptionWritesFile )
{
    const auto dir = fixtures::temp_dir( "cli_report" );
    cli::Options o;
    o.report = dir / "sub" / "report.txt";
    const auto r = validate( fixtures::sample( "train" ), o );
    EXPECT_EQ( r.status, 0 );
    EXPECT_TRUE( r.out.empty() );
    EXPECT_NE( fixtures::read( *o.report ).find( "Wake up train" ), std::string::npos );
}

TEST( Cli, ModesWritesArtifacts )
{
    const auto dir = fixtures::temp_dir( "cli_modes" );
    const auto r = modes_cmd( fixtures::sample( "fig2" ), in_dir( dir ) );
    EXPECT_EQ( r.status, 0 ) << r.err;
    EXPECT_TRUE( fs::exists( dir / "modes.dot" ) );
    const auto doc = report::Json::parse( fixtures::read( dir / "modes.json" ) );
    EXPECT_EQ( doc[ "summary" ][ "nodes" ], 14 );
    EXPECT_NE( r.out.find( "modes: 14 nodes, 17 edges" ), std::string::npos ) << r.out;
}

TEST( Cli, EmptyScopeAndLayerCap )
{
    const auto empty = copy_sample( "fig2", "cli_empty_scope" );
    fixtures::write_file( empty / "scopes.txt", fixtures::read( empty / "scopes.txt" ) + "Storage\n" );
    const auto r = modes_cmd( empty / "project.manifest", in_dir( empty ) );
    EXPECT_EQ( r.status, cli::exit_code::defects );
    EXPECT_NE( r.err.find( "E_EMPTY_SCOPE" ), std::string::npos );

    const auto capped = copy_sample( "fig2", "cli_layer_cap" );
    fixtures::write_file( capped / "project.manifest", fixtures::read( capped / "project.manifest" ) + "layer_cap = 1\n" );
    auto options = in_dir( capped );
    const auto lenient = modes_cmd( capped / "project.manifest", options );
    EXPECT_EQ( lenient.status, cli::exit_code::clean );
    EXPECT_NE( lenient.err.find( "W_LAYER_CAP" ), std::string::npos );
    options.strict = true;
    EXPECT_EQ( modes_cmd( capped / "project.manifest", options ).status, cli::exit_code::resource_limit );
}

TEST( Cli, ExportWritesBothArtifacts )
{
    const auto dir = fixtures::temp_dir( "cli_export" );
    const auto r = export_cmd( fixtures::sample( "wakeup" ), in_dir( dir ) );
    EXPECT_EQ( r.status, 0 ) << r.err;
    const auto p = fixtures::load_sample( "wakeup" );
    const auto back = report::read_statecharts( fixtures::read( dir / "statecharts.xml" ), p.model );
    ASSERT_TRUE( back );
    EXPECT_EQ( *back.value, report::effective_transitions( p.model, p.transitions ) );
    oracle::DotChecker dot{ fixtures::read( dir / "modes.dot" ) };
    EXPECT_TRUE( dot.valid() );
}

TEST( Cli, ExportRejectsDerivationCycle )
{
    const auto dir = copy_sample( "wakeup", "cli_cycle" );
    std::string text = "derived,value,Operability,ActivationStatus\n";
    for ( const auto* v : { "Not operable", "Degraded", "Operable" } )
        text += std::string{ "ActivationStatus,Dormant," } + v + ",\n";
    for ( const auto* v : { "Dormant", "Active" } )
        text += std::string{ "Operability,Not operable,," } + v + "\n";
    fixtures::write_file( dir / "derivations.csv", text );
    const auto r = export_cmd( dir / "project.manifest", in_dir( dir ) );
    EXPECT_EQ( r.status, cli::exit_code::input_error );
    EXPECT_NE( r.err.find( "E_DERIVATION_CYCLE" ), std::string::npos ) << r.err;
    EXPECT_FALSE( fs::exists( dir / "statecharts.xml" ) );
}

TEST( Cli, TraceExitCodes )
{
    const auto wake = fixtures::samples_dir() / "wakeup";
    EXPECT_EQ( trace_cmd( fixtures::sample( "wakeup" ), wake / "wakeup_trace.csv" ).status, cli::exit_code::clean );
    const auto early = trace_cmd( fixtures::sample( "wakeup" ), wake / "early_wakeup_trace.csv" );
    EXPECT_EQ( early.status, cli::exit_code::defects );
    EXPECT_NE( early.out.find( "V_UC_OUTSIDE_MODE" ), std::string::npos );

    EXPECT_EQ( trace_cmd( fixtures::sample( "wakeup" ), wake / "absent.csv" ).status, cli::exit_code::input_error );
    const auto dir = fixtures::temp_dir( "cli_trace" );
    fixtures::write_file( dir / "bad.csv", "type,value\nMovement,Hovering\n" );
    EXPECT_EQ( trace_cmd( fixtures::sample( "wakeup" ), dir / "bad.csv" ).status, cli::exit_code::input_error );
}

TEST( Cli, RerunsAreByteIdentical )
{
    const auto a = fixtures::temp_dir( "cli_rerun_a" );
    const auto b = fixtures::temp_dir( "cli_rerun_b" );
    for ( const auto& dir : { a, b } )
    {
        export_cmd( fixtures::sample( "wakeup" ), in_dir( dir ) );
        modes_cmd( fixtures::sample( "wakeup" ), in_dir( dir ) );
    }
    for ( const auto* f : { "statecharts.xml", "modes.dot", "modes.json" } )
        EXPECT_EQ( fixtures::read( a / f ), fixtures::read( b / f ) ) << f;
    const auto wake = fixtures::samples_dir() / "wakeup";
    cli::Options structured;
    structured.format = report::Format::structured;
    EXPECT_EQ( trace_cmd( fixtures::sample( "wakeup" ), wake / "early_wakeup_trace.csv", structured ).out,
               trace_cmd( fixtures::sample( "wakeup" ), wake / "early_wakeup_trace.csv", structured ).out );
    EXPECT_EQ( validate( fixtures::sample( "train_env" ) ).out, validate( fixtures::sample( "train_env" ) ).out );
}

TEST( Cli, BinaryArgumentHandling )
{
    const auto train = fixtures::sample( "train" ).string();
    EXPECT_EQ( shell( "validate \"" + train + "\"" ), 0 );
    EXPECT_EQ( shell( "validate \"" + fixtures::sample( "train_regression" ).string() + "\"" ), 1 );
    EXPECT_EQ( shell( "validate \"" + train + "\" --cap 5" ), 3 );
    EXPECT_EQ( shell( "validate \"" + train + "\" --format yaml" ), 2 );
    EXPECT_EQ( shell( "validate \"" + train + "\" --cap 0" ), 2 );
    EXPECT_EQ( shell( "frobnicate" ), 2 );
    EXPECT_EQ( shell( "" ), 2 );
    EXPECT_EQ( shell( "--help" ), 0 );
}
