#pragma once

#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/predicates.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/exec/holonic.hpp"
#include "statecheck/ingest/common.hpp"
#include "statecheck/ingest/project.hpp"
#include "statecheck/modes/activation.hpp"
#include "statecheck/modes/mode_structure.hpp"
#include "statecheck/util/csv.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace statecheck::exec
{

enum class EventKind
{
    signal,
    use_case
};

struct TraceEvent
{
    EventKind kind = EventKind::signal;
    std::string name;
    std::size_t line = 0;

    friend bool operator==( const TraceEvent&, const TraceEvent& ) = default;
};

struct Trace
{
    Configuration initial;
    std::vector< TraceEvent > events;
    std::vector< bool > specified; // per type: initial value given in the trace
};

// Two CSV sections: a `type,value` header followed by the initial value of
// every type, then a `kind,name` header followed by events (`signal` or
// `usecase`). Derived types may be left out of the initial section; they are
// computed from their sources.
inline Checked< Trace > parse_trace( std::string_view text, const StateModel& model,
                                     const DerivationTable& derivations, const std::string& file = "trace.csv" )
{
    Diagnostics diag;
    const auto rows = csv::parse( text );
    if ( rows.empty() || rows.front().fields.size() < 2 || rows.front().fields[ 0 ] != "type"
         || rows.front().fields[ 1 ] != "value" )
    {
        diag.error( file, rows.empty() ? 0 : rows.front().line, 0, "E_MALFORMED_ROW",
                    "trace must start with a 'type,value' header" );
        return finish< Trace >( std::nullopt, std::move( diag ) );
    }

    std::vector< std::optional< std::size_t > > initial( model.type_count() );
    std::vector< TraceEvent > events;
    bool in_events = false;
    for ( std::size_t r = 1; r < rows.size(); ++r )
    {
        const auto& row = rows[ r ];
        if ( row.fields.size() != 2 )
        {
            diag.error( file, row.line, 0, "E_MALFORMED_ROW", "expected two fields" );
            continue;
        }
        const auto& a = row.fields[ 0 ];
        const auto& b = row.fields[ 1 ];
        if ( !in_events && a == "kind" && b == "name" )
        {
            in_events = true;
            continue;
        }
        if ( !in_events )
        {
            const auto type = model.find_type( a );
            if ( !type )
            {
                diag.error( file, row.line, 1, "E_UNKNOWN_TYPE", "unknown type '" + a + "'" );
                continue;
            }
            const auto value = model.type( *type ).find_value( b );
            if ( !value )
            {
                diag.error( file, row.line, 2, "E_UNKNOWN_VALUE", "type '" + a + "' has no value '" + b + "'" );
                continue;
            }
            if ( initial[ *type ] )
            {
                diag.error( file, row.line, 1, "E_DUP_TYPE", "type '" + a + "' assigned twice" );
                continue;
            }
            initial[ *type ] = value;
            continue;
        }
        if ( a == "signal" )
            events.push_back( { EventKind::signal, b, row.line } );
        else if ( a == "usecase" )
            events.push_back( { EventKind::use_case, b, row.line } );
        else
            diag.error( file, row.line, 1, "E_MALFORMED_ROW", "event kind must be 'signal' or 'usecase'" );
    }

    std::vector< std::size_t > values( model.type_count(), 0 );
    std::vector< bool > specified( model.type_count(), false );
    for ( std::size_t t = 0; t < model.type_count(); ++t )
    {
        specified[ t ] = initial[ t ].has_value();
        if ( initial[ t ] )
            values[ t ] = *initial[ t ];
        else if ( !derivations.is_derived( t ) )
            diag.error( file, 0, 0, "E_INCOMPLETE_INITIAL", "no initial value for type '" + model.type( t ).id() + "'" );
    }
    if ( diag.has_errors() )
        return finish< Trace >( std::nullopt, std::move( diag ) );
    return finish< Trace >( Trace{ Configuration::from_indices( values ), std::move( events ), std::move( specified ) },
                            std::move( diag ) );
}

struct Violation
{
    std::string code;
    std::string message;

    friend bool operator==( const Violation&, const Violation& ) = default;
};

struct StepOutcome
{
    bool applied = false;
    std::string rejection; // error code when not applied
    std::vector< Violation > violations;
};

struct StepRecord
{
    TraceEvent event;
    StepOutcome outcome;
    Configuration configuration;      // after the step
    std::vector< std::string > active; // mode ids after the step
};

struct TraceReport
{
    Configuration initial;
    std::vector< std::string > initial_active;
    std::vector< Diagnostic > warnings;
    std::vector< StepRecord > steps;

    [[nodiscard]] std::map< std::string, std::size_t > violation_counts() const
    {
        std::map< std::string, std::size_t > counts;
        for ( const auto& s : steps )
            for ( const auto& v : s.outcome.violations )
                ++counts[ v.code ];
        return counts;
    }

    [[nodiscard]] std::size_t violation_total() const
    {
        std::size_t n = 0;
        for ( const auto& s : steps )
            n += s.outcome.violations.size();
        return n;
    }

    [[nodiscard]] bool clean() const { return violation_total() == 0 && warnings.empty(); }
};

// Everything a replay reads; all of it is shared and left untouched.
struct TraceContext
{
    const StateModel& model;
    const SimpleConstraintSet& simple;
    std::span< const ComplexConstraint > complex;
    std::span< const UseCase > use_cases;
    const HolonicModel& holonic;
    const modes::ModeStructure& modes;
};

inline std::vector< Violation > constraint_violations( const TraceContext& ctx, const Configuration& config )
{
    std::vector< Violation > out;
    for ( std::size_t i = 0; i < config.size(); ++i )
        for ( std::size_t j = i + 1; j < config.size(); ++j )
        {
            const ValueRef a{ i, config[ i ] };
            const ValueRef b{ j, config[ j ] };
            if ( !ctx.simple.compatible( ctx.model, a, b ) )
                out.push_back( { "V_CONSTRAINT",
                                 "simple constraint " + ctx.model.qualified( a ) + " x " + ctx.model.qualified( b ) } );
        }
    for ( const auto& c : ctx.complex )
        if ( !satisfies_complex( config, c ) )
            out.push_back( { "V_CONSTRAINT", "complex constraint " + c.id() } );
    return out;
}

inline std::vector< std::string > active_ids( const TraceContext& ctx, const Configuration& config )
{
    std::vector< std::string > out;
    for ( auto n : modes::active_modes( config, ctx.modes ) )
        out.push_back( ctx.modes.node( n ).id );
    std::sort( out.begin(), out.end() );
    return out;
}

// Signals move one non-derived type along a declared transition; derived
// types are then recomputed. Use-case events never change the configuration
// and are checked against their mode. Violations are recorded without
// stopping the step.
inline std::pair< Configuration, StepOutcome > step( const Configuration& config, const TraceEvent& event,
                                                     const TraceContext& ctx )
{
    StepOutcome outcome;
    if ( event.kind == EventKind::use_case )
    {
        const UseCase* uc = nullptr;
        for ( const auto& u : ctx.use_cases )
            if ( u.id == event.name )
                uc = &u;
        if ( !uc )
        {
            outcome.rejection = "E_UNKNOWN_USE_CASE";
            outcome.violations.push_back( { "V_UNKNOWN_EVENT", "unknown use case '" + event.name + "'" } );
            return { config, outcome };
        }
        outcome.applied = true;
        const auto node = ctx.modes.find_source( modes::use_case_source( uc->id ) );
        bool active = false;
        if ( node )
            for ( auto n : modes::active_modes( config, ctx.modes ) )
                if ( n == *node )
                    active = true;
        if ( !active )
            outcome.violations.push_back(
                    { "V_UC_OUTSIDE_MODE", "use case '" + uc->id + "' invoked while its mode is inactive" } );
        return { config, outcome };
    }

    const auto target = ctx.holonic.signals.find( event.name );
    if ( target == ctx.holonic.signals.end() )
    {
        outcome.rejection = "E_UNKNOWN_SIGNAL";
        outcome.violations.push_back( { "V_UNKNOWN_EVENT", "unknown signal '" + event.name + "'" } );
        return { config, outcome };
    }
    const auto type = target->second.type;
    const auto& tr = ctx.holonic.machines[ type ].transitions[ target->second.transition ];
    const auto& values = ctx.model.type( type ).values();
    if ( ctx.holonic.is_derived( type ) )
    {
        outcome.rejection = "E_DERIVED_SIGNAL";
        outcome.violations.push_back(
                { "V_ILLEGAL_TRANSITION", "signal '" + event.name + "' targets derived type '"
                                                  + ctx.model.type( type ).id() + "'" } );
        return { config, outcome };
    }
    if ( config[ type ] != tr.from )
    {
        outcome.rejection = "E_ILLEGAL_TRANSITION";
        outcome.violations.push_back( { "V_ILLEGAL_TRANSITION", "signal '" + event.name + "' expects "
                                                                        + ctx.model.type( type ).id() + "="
                                                                        + values[ tr.from ] + " but it is "
                                                                        + values[ config[ type ] ] } );
        return { config, outcome };
    }

    auto next = config;
    next.set( type, tr.to );
    ctx.holonic.apply_derivations( next );
    for ( auto d : ctx.holonic.derivation_order )
    {
        if ( next[ d ] == config[ d ] )
            continue;
        bool declared = false;
        for ( const auto& dt : ctx.holonic.machines[ d ].transitions )
            if ( dt.from == config[ d ] && dt.to == next[ d ] )
                declared = true;
        if ( !declared )
        {
            const auto& dv = ctx.model.type( d ).values();
            outcome.violations.push_back( { "V_DERIVED_TRANSITION", "derived type '" + ctx.model.type( d ).id()
                                                                            + "' moved " + dv[ config[ d ] ] + " -> "
                                                                            + dv[ next[ d ] ]
                                                                            + " without a declared transition" } );
        }
    }
    outcome.applied = true;
    auto breaches = constraint_violations( ctx, next );
    outcome.violations.insert( outcome.violations.end(), breaches.begin(), breaches.end() );
    return { std::move( next ), std::move( outcome ) };
}

inline TraceReport check_trace( const Trace& trace, const TraceContext& ctx, const std::string& file = "trace.csv" )
{
    TraceReport report;
    auto config = trace.initial;
    ctx.holonic.apply_derivations( config );
    for ( auto d : ctx.holonic.derivation_order )
        if ( d < trace.specified.size() && trace.specified[ d ] && config[ d ] != trace.initial[ d ] )
        {
            report.warnings.push_back( { Severity::warning, file, 0, 0, "W_BAD_INITIAL",
                                         "initial " + ctx.model.type( d ).id() + " recomputed from its sources" } );
            break;
        }
    for ( const auto& v : constraint_violations( ctx, config ) )
        report.warnings.push_back(
                { Severity::warning, file, 0, 0, "W_BAD_INITIAL", "initial configuration breaks " + v.message } );

    report.initial = config;
    report.initial_active = active_ids( ctx, config );
    for ( const auto& event : trace.events )
    {
        auto [ next, outcome ] = step( config, event, ctx );
        config = std::move( next );
        report.steps.push_back( { event, std::move( outcome ), config, active_ids( ctx, config ) } );
    }
    return report;
}

} // namespace statecheck::exec
