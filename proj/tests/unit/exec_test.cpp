#include "fixtures.hpp"

#include "statecheck/exec/holonic.hpp"
#include "statecheck/exec/trace.hpp"
#include "statecheck/modes/activation.hpp"
#include "statecheck/modes/derive.hpp"

#include <gtest/gtest.h>

#include <random>
#include <string>
#include <vector>

using namespace statecheck;
using namespace statecheck::exec;

namespace
{

struct Replay
{
    Project project;
    HolonicModel holonic;
    modes::ModeDerivation modes;

    explicit Replay( Project p ) : project{ std::move( p ) }
    {
        auto machines = build_machines( project.model, project.transitions );
        if ( !machines )
            throw std::runtime_error( "machines rejected" );
        auto hm = assemble_holonic( project.model, *machines.value, project.derivations );
        if ( !hm )
            throw std::runtime_error( "holonic model rejected" );
        holonic = std::move( *hm.value );
        modes = modes::derive_modes( project );
    }

    [[nodiscard]] TraceContext context() const
    {
        return { project.model, project.simple, project.complex, project.use_cases, holonic, modes.structure };
    }
};

TraceEvent signal( const std::string& name ) { return { EventKind::signal, name, 0 }; }
TraceEvent use_case( const std::string& name ) { return { EventKind::use_case, name, 0 }; }

Configuration parse_initial( const Replay& r, const std::string& rows )
{
    const auto t = parse_trace( "type,value\n" + rows + "kind,name\n", r.project.model, r.project.derivations );
    if ( !t )
        throw std::runtime_error( "bad initial" );
    return t->initial;
}

} // namespace

TEST( Machines, UnnamedTransitionsGetGeneratedSignals )
{
    const auto p = fixtures::load_sample( "train" );
    const auto machines = build_machines( p.model, p.transitions );
    ASSERT_TRUE( machines );
    const auto& movement = machines->at( 0 );
    ASSERT_EQ( movement.transitions.size(), 2u );
    EXPECT_EQ( movement.transitions[ 0 ].signal, generated_signal( p.model, 0, 0, 1 ) );
    EXPECT_EQ( movement.transitions[ 1 ].signal, generated_signal( p.model, 0, 1, 0 ) );
    EXPECT_NE( movement.transitions[ 0 ].signal, movement.transitions[ 1 ].signal );
    EXPECT_EQ( machines->at( 2 ).transitions.size(), 30u );
}

TEST( Machines, DuplicateSignalsAreRejected )
{
    const auto p = fixtures::load_sample( "train" );
    auto table = p.transitions;
    table.per_type[ 0 ] = { { 0, 1, "go" }, { 1, 0, "go" } };
    table.declared[ 0 ] = true;
    const auto machines = build_machines( p.model, table );
    EXPECT_FALSE( machines );
    EXPECT_TRUE( machines.diagnostics.has_code( "E_DUP_SIGNAL" ) );
}

TEST( Holonic, WakeupAssemblesDerivedMachine )
{
    const Replay r{ fixtures::load_sample( "wakeup" ) };
    const auto operability = *r.project.model.find_type( "Operability" );
    EXPECT_TRUE( r.holonic.is_derived( operability ) );
    EXPECT_EQ( r.holonic.derivation_order, ( std::vector< std::size_t >{ operability } ) );
    EXPECT_EQ( r.holonic.links.size(), 2u );
    for ( const auto& [ name, target ] : r.holonic.signals )
    {
        const bool port = std::find( r.holonic.input_ports.begin(), r.holonic.input_ports.end(), name )
                          != r.holonic.input_ports.end();
        EXPECT_EQ( port, target.type != operability ) << name;
    }
}

TEST( Holonic, PartialTablesAndCyclesAreRejected )
{
    const auto p = fixtures::load_sample( "wakeup" );
    const auto machines = *build_machines( p.model, p.transitions ).value;

    auto partial = p.derivations;
    partial.derivations.front().mapping.erase( partial.derivations.front().mapping.begin() );
    const auto hm = assemble_holonic( p.model, machines, partial );
    EXPECT_FALSE( hm );
    EXPECT_TRUE( hm.diagnostics.has_code( "E_PARTIAL_TABLE" ) );

    // Operability <- ActivationStatus and ActivationStatus <- Operability.
    const auto operability = *p.model.find_type( "Operability" );
    const auto activation = *p.model.find_type( "ActivationStatus" );
    DerivationTable cyclic;
    Derivation a{ activation, { operability }, {} };
    for ( std::uint8_t v = 0; v < p.model.type( operability ).size(); ++v )
        a.mapping[ { v } ] = 0;
    Derivation b{ operability, { activation }, {} };
    for ( std::uint8_t v = 0; v < p.model.type( activation ).size(); ++v )
        b.mapping[ { v } ] = 0;
    cyclic.derivations = activation < operability ? std::vector< Derivation >{ a, b } : std::vector< Derivation >{ b, a };
    const auto cycle = assemble_holonic( p.model, machines, cyclic );
    EXPECT_FALSE( cycle );
    EXPECT_TRUE( cycle.diagnostics.has_code( "E_DERIVATION_CYCLE" ) );
}

TEST( Trace, ParsesSectionsAndComputesDerivedInitial )
{
    const Replay r{ fixtures::load_sample( "wakeup" ) };
    const auto t = parse_trace( *ingest::read_file( fixtures::samples_dir() / "wakeup" / "wakeup_trace.csv" ),
                                r.project.model, r.project.derivations );
    ASSERT_TRUE( t );
    EXPECT_EQ( t->events.size(), 5u );
    EXPECT_EQ( t->events[ 3 ], ( TraceEvent{ EventKind::use_case, "Wake up train", 10 } ) );

    const auto& m = r.project.model;
    EXPECT_TRUE( parse_trace( "type,value\nMovement,Flying\n", m, r.project.derivations )
                         .diagnostics.has_code( "E_UNKNOWN_VALUE" ) );
    EXPECT_TRUE( parse_trace( "type,value\nWeather,Sunny\n", m, r.project.derivations )
                         .diagnostics.has_code( "E_UNKNOWN_TYPE" ) );
    EXPECT_TRUE( parse_trace( "type,value\nMovement,Moving\nMovement,Moving\n", m, r.project.derivations )
                         .diagnostics.has_code( "E_DUP_TYPE" ) );
    EXPECT_TRUE( parse_trace( "type,value\nMovement,Moving\n", m, r.project.derivations )
                         .diagnostics.has_code( "E_INCOMPLETE_INITIAL" ) );
    EXPECT_TRUE( parse_trace( "when,what\n", m, r.project.derivations ).diagnostics.has_code( "E_MALFORMED_ROW" ) );
    EXPECT_TRUE( parse_trace( "type,value\nMovement,Moving\nNeutralSection,Neutral\nElectricalSupply,No supply\n"
                              "ActivationStatus,Dormant\nkind,name\nbeep,x\n",
                              m, r.project.derivations )
                         .diagnostics.has_code( "E_MALFORMED_ROW" ) );
}

TEST( Trace, WakeupReplaysCleanly )
{
    const Replay r{ fixtures::load_sample( "wakeup" ) };
    const auto t = parse_trace( *ingest::read_file( fixtures::samples_dir() / "wakeup" / "wakeup_trace.csv" ),
                                r.project.model, r.project.derivations );
    ASSERT_TRUE( t );
    const auto report = check_trace( *t, r.context() );
    EXPECT_TRUE( report.clean() ) << report.violation_total();
    ASSERT_EQ( report.steps.size(), 5u );
    const auto operability = *r.project.model.find_type( "Operability" );
    const auto operable = *r.project.model.type( operability ).find_value( "Operable" );
    EXPECT_EQ( report.steps[ 2 ].configuration[ operability ], operable );
}

TEST( Trace, EarlyUseCaseIsOutsideItsMode )
{
    const Replay r{ fixtures::load_sample( "wakeup" ) };
    const auto t = parse_trace( *ingest::read_file( fixtures::samples_dir() / "wakeup" / "early_wakeup_trace.csv" ),
                                r.project.model, r.project.derivations );
    ASSERT_TRUE( t );
    const auto report = check_trace( *t, r.context() );
    EXPECT_EQ( report.violation_total(), 1u );
    EXPECT_EQ( report.violation_counts(), ( std::map< std::string, std::size_t >{ { "V_UC_OUTSIDE_MODE", 1 } } ) );
    EXPECT_EQ( report.steps[ 1 ].outcome.violations.front().code, "V_UC_OUTSIDE_MODE" );
    EXPECT_TRUE( report.steps[ 1 ].outcome.applied );
}

TEST( Trace, IllegalUnknownAndDerivedSignalsAreRejected )
{
    const Replay r{ fixtures::load_sample( "wakeup" ) };
    const auto ctx = r.context();
    const auto start = parse_initial( r, "Movement,Standstill\nNeutralSection,Neutral\nElectricalSupply,No supply\n"
                                         "ActivationStatus,Dormant\n" );

    const auto [ c1, illegal ] = step( start, signal( "sig_charge" ), ctx );
    EXPECT_FALSE( illegal.applied );
    EXPECT_EQ( illegal.rejection, "E_ILLEGAL_TRANSITION" );
    ASSERT_EQ( illegal.violations.size(), 1u );
    EXPECT_EQ( illegal.violations.front().code, "V_ILLEGAL_TRANSITION" );
    EXPECT_EQ( c1, start );

    const auto [ c2, unknown ] = step( start, signal( "sig_teleport" ), ctx );
    EXPECT_EQ( unknown.rejection, "E_UNKNOWN_SIGNAL" );
    EXPECT_EQ( unknown.violations.front().code, "V_UNKNOWN_EVENT" );
    EXPECT_EQ( c2, start );

    const auto [ c3, no_uc ] = step( start, use_case( "Fly" ), ctx );
    EXPECT_EQ( no_uc.rejection, "E_UNKNOWN_USE_CASE" );
    EXPECT_EQ( no_uc.violations.front().code, "V_UNKNOWN_EVENT" );

    const auto operability = *r.project.model.find_type( "Operability" );
    const auto& derived = r.holonic.machines[ operability ].transitions.front().signal;
    const auto [ c4, forced ] = step( start, signal( derived ), ctx );
    EXPECT_FALSE( forced.applied );
    EXPECT_EQ( forced.rejection, "E_DERIVED_SIGNAL" );
    EXPECT_EQ( forced.violations.front().code, "V_ILLEGAL_TRANSITION" );
    EXPECT_EQ( c4, start );
}

TEST( Trace, ConstraintBreachNamesTheComplexConstraint )
{
    // Complete transitions let every single-type move happen; look for one
    // that keeps the simple constraints but breaks C1.
    const Replay r{ fixtures::load_sample( "train_env" ) };
    const auto ctx = r.context();
    const auto& m = r.project.model;
    const auto legal = verify::enumerate_configurations( m, r.project.simple, 1000 ).configurations;
    bool found = false;
    for ( const auto& c : legal.items )
    {
        if ( !satisfies_complex( c, r.project.complex.front() ) )
            continue;
        for ( const auto& machine : r.holonic.machines )
            for ( const auto& tr : machine.transitions )
            {
                if ( found || c[ machine.type ] != tr.from )
                    continue;
                auto next = c;
                next.set( machine.type, tr.to );
                if ( !satisfies_simple( m, next, r.project.simple ) || satisfies_complex( next, r.project.complex.front() ) )
                    continue;
                const auto [ after, outcome ] = step( c, signal( tr.signal ), ctx );
                EXPECT_TRUE( outcome.applied );
                EXPECT_EQ( after, next );
                ASSERT_EQ( outcome.violations.size(), 1u );
                EXPECT_EQ( outcome.violations.front(), ( Violation{ "V_CONSTRAINT", "complex constraint C1" } ) );
                found = true;
            }
    }
    EXPECT_TRUE( found );
}

TEST( Trace, BadInitialConfigurationWarns )
{
    const Replay r{ fixtures::load_sample( "wakeup" ) };
    const auto t = parse_trace( "type,value\nMovement,Moving\nNeutralSection,Neutral\nElectricalSupply,No supply\n"
                                "ActivationStatus,Dormant\nOperability,Operable\nkind,name\n",
                                r.project.model, r.project.derivations );
    ASSERT_TRUE( t );
    const auto report = check_trace( *t, r.context() );
    EXPECT_FALSE( report.clean() );
    EXPECT_GE( report.warnings.size(), 2u );
    for ( const auto& w : report.warnings )
        EXPECT_EQ( w.code, "W_BAD_INITIAL" );

    const auto omitted = parse_trace( "type,value\nMovement,Standstill\nNeutralSection,Neutral\n"
                                      "ElectricalSupply,Shore supply\nActivationStatus,Active\nkind,name\n",
                                      r.project.model, r.project.derivations );
    ASSERT_TRUE( omitted );
    EXPECT_TRUE( check_trace( *omitted, r.context() ).warnings.empty() );
}

TEST( Trace, UseCaseEventsNeverChangeTheConfiguration )
{
    const Replay r{ fixtures::load_sample( "wakeup" ) };
    const auto ctx = r.context();
    std::vector< std::string > signals;
    for ( const auto& [ name, target ] : r.holonic.signals )
        signals.push_back( name );
    std::mt19937 rng{ 17 };
    std::uniform_int_distribution< std::size_t > pick_signal( 0, signals.size() - 1 );
    std::uniform_int_distribution< std::size_t > pick_uc( 0, r.project.use_cases.size() - 1 );

    for ( int round = 0; round < 50; ++round )
    {
        Trace trace{ parse_initial( r, "Movement,Standstill\nNeutralSection,Neutral\nElectricalSupply,No supply\n"
                                       "ActivationStatus,Dormant\n" ),
                     {},
                     {} };
        for ( int k = 0; k < 40; ++k )
            trace.events.push_back( std::bernoulli_distribution( 0.3 )( rng )
                                            ? use_case( r.project.use_cases[ pick_uc( rng ) ].id )
                                            : signal( signals[ pick_signal( rng ) ] ) );
        const auto report = check_trace( trace, ctx );
        auto before = report.initial;
        for ( const auto& s : report.steps )
        {
            if ( s.event.kind == EventKind::use_case )
            {
                EXPECT_EQ( s.configuration, before );
            }
            // Derived values always agree with their tables.
            auto recomputed = s.configuration;
            r.holonic.apply_derivations( recomputed );
            EXPECT_EQ( recomputed, s.configuration );
            // Reported modes match independent evaluation.
            std::vector< std::string > naive;
            for ( auto n : modes::active_modes_naive( s.configuration, r.modes.structure ) )
                naive.push_back( r.modes.structure.node( n ).id );
            std::sort( naive.begin(), naive.end() );
            EXPECT_EQ( s.active, naive );
            before = s.configuration;
        }
    }
}
