#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/exec/trace.hpp"
#include "statecheck/report/verification.hpp"

#include <string>

namespace statecheck::report
{

inline Json trace_json( const StateModel& model, const exec::TraceReport& tr )
{
    Json doc;
    doc[ "report_version" ] = report_version;
    doc[ "kind" ] = "trace";

    Json counts = Json::object();
    for ( const auto& [ code, n ] : tr.violation_counts() )
        counts[ code ] = n;
    doc[ "summary" ] = { { "steps", tr.steps.size() },
                         { "violations", tr.violation_total() },
                         { "warnings", tr.warnings.size() },
                         { "by_class", counts } };

    Json warnings = Json::array();
    for ( const auto& w : tr.warnings )
        warnings.push_back( { { "code", w.code }, { "message", w.message } } );
    doc[ "warnings" ] = warnings;
    doc[ "initial" ] = { { "configuration", configuration_json( model, tr.initial ) },
                         { "active_modes", tr.initial_active } };

    Json steps = Json::array();
    for ( const auto& s : tr.steps )
    {
        Json j;
        j[ "line" ] = s.event.line;
        j[ "kind" ] = s.event.kind == exec::EventKind::signal ? "signal" : "usecase";
        j[ "name" ] = s.event.name;
        j[ "outcome" ] = s.outcome.applied ? "applied" : "rejected";
        j[ "reason" ] = s.outcome.applied ? Json( nullptr ) : Json( s.outcome.rejection );
        Json violations = Json::array();
        for ( const auto& v : s.outcome.violations )
            violations.push_back( { { "code", v.code }, { "message", v.message } } );
        j[ "violations" ] = violations;
        j[ "configuration" ] = configuration_json( model, s.configuration );
        j[ "active_modes" ] = s.active;
        steps.push_back( j );
    }
    doc[ "steps" ] = steps;
    return doc;
}

inline std::string trace_text( const StateModel& model, const exec::TraceReport& tr )
{
    std::string out;
    for ( const auto& w : tr.warnings )
        out += "warning " + w.code + ": " + w.message + "\n";
    out += "initial " + describe( model, tr.initial ) + "\n";
    for ( std::size_t i = 0; i < tr.steps.size(); ++i )
    {
        const auto& s = tr.steps[ i ];
        out += "step " + std::to_string( i + 1 ) + " "
               + ( s.event.kind == exec::EventKind::signal ? "signal " : "usecase " ) + s.event.name + ": "
               + ( s.outcome.applied ? "applied" : "rejected (" + s.outcome.rejection + ")" ) + " -> "
               + describe( model, s.configuration ) + "\n";
        for ( const auto& v : s.outcome.violations )
            out += "  " + v.code + ": " + v.message + "\n";
    }
    out += "violations: " + std::to_string( tr.violation_total() );
    for ( const auto& [ code, n ] : tr.violation_counts() )
        out += ", " + code + "=" + std::to_string( n );
    out += "\n";
    return out;
}

inline std::string render_trace( const StateModel& model, const exec::TraceReport& tr, Format format )
{
    if ( format == Format::structured )
        return trace_json( model, tr ).dump( 2 ) + "\n";
    return trace_text( model, tr );
}

} // namespace statecheck::report
