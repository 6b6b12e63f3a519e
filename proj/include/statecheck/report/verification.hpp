#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/verify/run_all.hpp"

#include <json.hpp>

#include <cstddef>
#include <string>
#include <vector>

namespace statecheck::report
{

using Json = nlohmann::ordered_json;

inline constexpr int report_version = 1;

enum class Format
{
    text,
    structured
};

inline Json configuration_json( const StateModel& model, const Configuration& config )
{
    Json out = Json::object();
    for ( std::size_t t = 0; t < config.size(); ++t )
        out[ model.type( t ).id() ] = model.type( t ).values()[ config[ t ] ];
    return out;
}

inline Json stage_json( const StateModel& model, const verify::StageResult& stage )
{
    Json out;
    out[ "satisfiable" ] = stage.satisfiable;
    out[ "count" ] = stage.count;
    out[ "count_capped" ] = stage.count_capped;
    out[ "witness" ] = stage.witness ? configuration_json( model, *stage.witness ) : Json( nullptr );
    out[ "unused" ] = verify::qualified_sorted( model, stage.unused );
    return out;
}

// Summary first, in the order of the six result categories, then details.
// Timing lives under its own key so consumers can drop it when diffing.
inline Json verification_json( const StateModel& model, const verify::VerificationReport& vr )
{
    Json doc;
    doc[ "report_version" ] = report_version;
    doc[ "kind" ] = "verification";

    Json summary;
    summary[ "types" ] = model.type_count();
    summary[ "values" ] = model.value_count();
    summary[ "use_cases" ] = vr.use_cases.size();
    summary[ "type_pairs_without_compatible_values" ] = vr.pair_coverage_failures.size();
    summary[ "values_in_no_configuration" ] = vr.dead_values_full.size();
    summary[ "complex_constraints" ] = vr.complex_constraint_count;
    summary[ "use_cases_lacking_values" ] = vr.use_cases_lacking_values();
    summary[ "use_cases_unsatisfiable" ] = vr.use_cases_unsatisfiable();
    summary[ "use_cases_with_unused_values" ] = vr.use_cases_with_unused_values();
    summary[ "total_unused_values" ] = vr.total_unused_values();
    summary[ "defects" ] = vr.has_defects();
    doc[ "summary" ] = summary;

    Json enumeration;
    enumeration[ "cap" ] = vr.enumeration.cap;
    enumeration[ "exploded" ] = vr.enumeration.exploded;
    enumeration[ "count_exact" ] = vr.enumeration.count_exact;
    enumeration[ "simple_count" ] = vr.enumeration.simple_count;
    enumeration[ "full_count" ] = vr.enumeration.exploded ? Json( nullptr ) : Json( vr.enumeration.full_count );
    doc[ "enumeration" ] = enumeration;

    Json pairs = Json::array();
    for ( const auto& [ a, b ] : vr.pair_coverage_failures )
        pairs.push_back( Json::array( { a, b } ) );
    doc[ "pair_coverage_failures" ] = pairs;
    doc[ "dead_values" ] = { { "simple", vr.dead_values_simple }, { "full", vr.dead_values_full } };
    doc[ "arity_two_constraints" ] = vr.arity_two_constraints;

    Json ucs = Json::array();
    for ( const auto& u : vr.use_cases )
    {
        Json j;
        j[ "id" ] = u.id;
        j[ "scope" ] = u.scope;
        std::vector< std::string > empty;
        for ( auto t : u.empty_types )
            empty.push_back( model.type( t ).id() );
        j[ "empty_types" ] = empty;
        j[ "lacks_values" ] = u.lacks_values();
        if ( u.lacks_values() )
        {
            j[ "simple" ] = nullptr;
            j[ "full" ] = nullptr;
        }
        else
        {
            j[ "simple" ] = stage_json( model, u.simple );
            j[ "full" ] = stage_json( model, u.full );
        }
        j[ "clean" ] = u.clean();
        ucs.push_back( j );
    }
    doc[ "use_cases" ] = ucs;
    doc[ "timing" ] = { { "elapsed_ms", vr.elapsed_ms } };
    return doc;
}

inline std::string verification_text( const StateModel& model, const verify::VerificationReport& vr )
{
    std::string out;
    const auto line = [ &out ]( const std::string& s ) { out += s + "\n"; };
    const auto n = []( std::size_t v ) { return std::to_string( v ); };

    line( "summary" );
    line( "  type pairs without compatible values: " + n( vr.pair_coverage_failures.size() ) + " of "
          + n( model.type_count() * ( model.type_count() - 1 ) / 2 ) );
    line( "  values in no configuration: " + n( vr.dead_values_full.size() ) + " of " + n( model.value_count() ) );
    line( "  complex constraints: " + n( vr.complex_constraint_count ) );
    line( "  use cases lacking values: " + n( vr.use_cases_lacking_values() ) + " of " + n( vr.use_cases.size() ) );
    line( "  use cases unsatisfiable: " + n( vr.use_cases_unsatisfiable() ) );
    line( "  use cases with unused values: " + n( vr.use_cases_with_unused_values() )
          + ", total cases: " + n( vr.total_unused_values() ) );

    line( "enumeration" );
    if ( vr.enumeration.exploded )
        line( "  more than " + n( vr.enumeration.cap ) + " configurations under simple constraints ("
              + ( vr.enumeration.count_exact ? "exactly " : "at least " ) + n( vr.enumeration.simple_count ) + ")" );
    else
    {
        line( "  simple constraints: " + n( vr.enumeration.simple_count ) + " configurations" );
        line( "  with complex constraints: " + n( vr.enumeration.full_count ) + " configurations" );
    }

    for ( const auto& [ a, b ] : vr.pair_coverage_failures )
        line( "pair without compatible values: " + a + " x " + b );
    for ( const auto& v : vr.dead_values_simple )
        line( "dead value (simple constraints): " + v );
    for ( const auto& v : vr.dead_values_full )
        line( "dead value (all constraints): " + v );
    for ( const auto& c : vr.arity_two_constraints )
        line( "complex constraint over two types: " + c );

    for ( const auto& u : vr.use_cases )
    {
        if ( u.clean() )
        {
            line( "use case " + u.id + " [" + u.scope + "]: ok, " + n( u.full.count )
                  + ( u.full.count_capped ? "+" : "" ) + " configurations" );
            continue;
        }
        line( "use case " + u.id + " [" + u.scope + "]:" );
        if ( u.lacks_values() )
        {
            std::string types;
            for ( auto t : u.empty_types )
                types += ( types.empty() ? "" : ", " ) + model.type( t ).id();
            line( "  lacks authorized values for: " + types );
            continue;
        }
        for ( const auto* stage : { &u.simple, &u.full } )
        {
            const std::string label = stage == &u.simple ? "simple constraints" : "all constraints";
            if ( !stage->satisfiable )
                line( "  unsatisfiable under " + label );
            for ( const auto& v : verify::qualified_sorted( model, stage->unused ) )
                line( "  unused under " + label + ": " + v );
        }
    }
    return out;
}

inline std::string render_verification( const StateModel& model, const verify::VerificationReport& vr, Format format )
{
    if ( format == Format::structured )
        return verification_json( model, vr ).dump( 2 ) + "\n";
    return verification_text( model, vr );
}

} // namespace statecheck::report
