#include "fixtures.hpp"
#include "oracle.hpp"

#include "statecheck/modes/activation.hpp"
#include "statecheck/modes/derive.hpp"
#include "statecheck/modes/mode_structure.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

using namespace statecheck;
using namespace statecheck::modes;

namespace
{

oracle::RawStructure library_structure( const StateModel& model, const ModeStructure& ms )
{
    oracle::RawStructure out;
    for ( const auto& n : ms.nodes() )
        out.nodes.insert( fixtures::raw_condition( model, n.condition ) );
    for ( const auto& [ child, parent ] : ms.edges() )
        out.edges.emplace( fixtures::raw_condition( model, ms.node( child ).condition ),
                           fixtures::raw_condition( model, ms.node( parent ).condition ) );
    return out;
}

// Scope modes equal the union of the use-case conditions in their subtree.
void expect_scope_unions( const Project& p, const ModeStructure& ms )
{
    for ( const auto& n : ms.nodes() )
        for ( const auto& source : n.sources )
        {
            if ( !source.starts_with( "scope:" ) || n.kind == ModeKind::abstract )
                continue;
            const auto path = source.substr( 6 );
            auto expected = Condition::nothing( p.model );
            for ( const auto& uc : p.use_cases )
                if ( ScopeTree::within( uc.scope(), path ) )
                    expected |= uc.precondition;
            EXPECT_EQ( n.condition, expected ) << path;
        }
}

void expect_edges_are_strict_implications( const ModeStructure& ms )
{
    for ( const auto& [ child, parent ] : ms.edges() )
    {
        EXPECT_TRUE( implies( ms.node( child ).condition, ms.node( parent ).condition ) );
        EXPECT_NE( ms.node( child ).condition, ms.node( parent ).condition );
    }
    for ( std::size_t a = 0; a < ms.nodes().size(); ++a )
        for ( std::size_t b = a + 1; b < ms.nodes().size(); ++b )
            EXPECT_NE( ms.node( a ).condition, ms.node( b ).condition );
}

void expect_closure_is_implication( const ModeStructure& ms )
{
    const auto n = ms.nodes().size();
    const auto reach = oracle::closure( n, ms.edges() );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            if ( a == b )
                continue;
            EXPECT_EQ( reach.count( { a, b } ) == 1, implies( ms.node( a ).condition, ms.node( b ).condition ) )
                    << ms.node( a ).id << " -> " << ms.node( b ).id;
        }
}

Configuration random_configuration( const StateModel& model, std::mt19937& rng )
{
    std::vector< std::uint8_t > values;
    for ( const auto& t : model.types() )
        values.push_back( static_cast< std::uint8_t >( std::uniform_int_distribution< std::size_t >( 0, t.size() - 1 )( rng ) ) );
    return Configuration{ std::move( values ) };
}

} // namespace

TEST( Modes, TrainMergesUseCaseAndScope )
{
    const auto p = fixtures::load_sample( "train" );
    const auto md = derive_modes( p );
    ASSERT_EQ( md.structure.nodes().size(), 1u );
    const auto& n = md.structure.node( 0 );
    EXPECT_EQ( n.kind, ModeKind::scope );
    EXPECT_EQ( n.id, "scope:Preparation+uc:Wake up train" );
    EXPECT_EQ( n.sources, ( std::set< std::string >{ "scope:Preparation", "uc:Wake up train" } ) );
    EXPECT_TRUE( md.structure.edges().empty() );
    EXPECT_FALSE( md.diagnostics.has_errors() );
}

TEST( Modes, Fig2MatchesOracle )
{
    const auto p = fixtures::load_sample( "fig2" );
    const auto md = derive_modes( p );
    EXPECT_FALSE( md.diagnostics.has_errors() );
    const auto expected = oracle::mode_structure( fixtures::raw_from_project( p ), p.settings.layer_cap );
    const auto actual = library_structure( p.model, md.structure );
    EXPECT_EQ( actual.nodes, expected.nodes );
    EXPECT_EQ( actual.edges, expected.edges );
    EXPECT_EQ( md.structure.nodes().size(), 14u );
    EXPECT_EQ( md.structure.edges().size(), 17u );
    EXPECT_EQ( md.abstract_layers, 2u );
    EXPECT_FALSE( md.layer_cap_hit );
    expect_scope_unions( p, md.structure );
    expect_edges_are_strict_implications( md.structure );
    expect_closure_is_implication( md.structure );
    EXPECT_EQ( md.structure.roots().size(), 1u );
}

TEST( Modes, RandomProjectsMatchOracle )
{
    std::mt19937 rng{ 21 };
    for ( int round = 0; round < 200; ++round )
    {
        const auto raw = oracle::random_project( rng );
        const auto p = fixtures::load_raw( raw );
        const auto md = derive_modes( p );
        const auto expected = oracle::mode_structure( raw, p.settings.layer_cap );
        const auto actual = library_structure( p.model, md.structure );
        ASSERT_EQ( actual.nodes, expected.nodes ) << "round " << round;
        ASSERT_EQ( actual.edges, expected.edges ) << "round " << round;
        expect_scope_unions( p, md.structure );
        expect_edges_are_strict_implications( md.structure );
        expect_closure_is_implication( md.structure );
        for ( int k = 0; k < 20; ++k )
        {
            const auto c = random_configuration( p.model, rng );
            EXPECT_EQ( active_modes( c, md.structure ), active_modes_naive( c, md.structure ) );
        }
    }
}

TEST( Modes, ActiveChildImpliesActiveParent )
{
    const auto p = fixtures::load_sample( "fig2" );
    const auto md = derive_modes( p );
    std::mt19937 rng{ 5 };
    for ( int k = 0; k < 500; ++k )
    {
        const auto c = random_configuration( p.model, rng );
        const auto active = active_modes( c, md.structure );
        const std::set< std::size_t > on( active.begin(), active.end() );
        EXPECT_EQ( active, active_modes_naive( c, md.structure ) );
        for ( const auto& [ child, parent ] : md.structure.edges() )
        {
            if ( on.count( child ) )
            {
                EXPECT_TRUE( on.count( parent ) );
            }
        }
    }
}

TEST( Modes, DeduplicateIsIdempotent )
{
    const auto p = fixtures::load_sample( "fig2" );
    std::vector< ModeNode > nodes;
    for ( const auto& uc : p.use_cases )
        nodes.push_back( use_case_mode( uc ) );
    nodes.push_back( use_case_mode( p.use_cases.front() ) );
    auto scope = derive_scope_mode( "Mission/Stopping", std::vector< UseCase >{ p.use_cases[ 2 ] }, p.model );
    ASSERT_TRUE( scope );
    nodes.push_back( *scope );

    const auto once = deduplicate( nodes );
    EXPECT_EQ( once.size(), p.use_cases.size() );
    EXPECT_EQ( deduplicate( once ), once );
    const auto& merged = once[ 2 ];
    EXPECT_EQ( merged.kind, ModeKind::scope );
    EXPECT_EQ( merged.id, "scope:Mission/Stopping+uc:Stop at station" );
}

TEST( Modes, ScopeWithoutUseCasesIsReported )
{
    auto p = fixtures::load_sample( "fig2" );
    ASSERT_TRUE( p.scopes.add( 0, "Storage" ) );
    const auto md = derive_modes( p );
    EXPECT_TRUE( md.diagnostics.has_code( "E_EMPTY_SCOPE" ) );
    EXPECT_EQ( md.empty_scopes, ( std::vector< std::string >{ "Storage" } ) );
    EXPECT_FALSE( derive_scope_mode( "Storage", {}, p.model ) );
}

TEST( Modes, LayerCapStopsGeneration )
{
    auto p = fixtures::load_sample( "fig2" );
    p.settings.layer_cap = 1;
    const auto md = derive_modes( p );
    EXPECT_TRUE( md.layer_cap_hit );
    EXPECT_EQ( md.abstract_layers, 1u );
    EXPECT_TRUE( md.diagnostics.has_code( "W_LAYER_CAP" ) );
    EXPECT_FALSE( md.diagnostics.has_errors() );
    EXPECT_GT( md.structure.roots().size(), 1u );
    expect_edges_are_strict_implications( md.structure );
}

TEST( Modes, EmptyConditionsCreateNoMode )
{
    auto p = fixtures::load_sample( "train" );
    auto uc = p.use_cases.front();
    uc.id = "Impossible";
    uc.precondition.set( 0, ValueSet{} );
    p.use_cases.push_back( uc );
    const auto md = derive_modes( p );
    EXPECT_TRUE( md.diagnostics.has_code( "W_EMPTY_CONDITION" ) );
    EXPECT_FALSE( md.structure.find_source( "uc:Impossible" ) );
}

TEST( Modes, ImplicationDagRejectsDuplicates )
{
    const auto p = fixtures::load_sample( "train" );
    const auto n = use_case_mode( p.use_cases.front() );
    EXPECT_THROW( build_implication_dag( { n, n } ), ModelError );
}
