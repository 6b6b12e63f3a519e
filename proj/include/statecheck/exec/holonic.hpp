#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/ingest/derivations.hpp"
#include "statecheck/ingest/transitions.hpp"

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace statecheck::exec
{

struct MachineTransition
{
    std::size_t from = 0;
    std::size_t to = 0;
    std::string signal;

    friend bool operator==( const MachineTransition&, const MachineTransition& ) = default;
};

// Flat state machine for one type of state; its states are the type's values.
struct StateMachine
{
    std::size_t type = 0;
    std::vector< MachineTransition > transitions;

    friend bool operator==( const StateMachine&, const StateMachine& ) = default;
};

// `sig_<type>_<from>_<to>` with every character outside [A-Za-z0-9_]
// replaced by '_'.
inline std::string generated_signal( const StateModel& model, std::size_t type, std::size_t from, std::size_t to )
{
    const auto& t = model.type( type );
    std::string name = "sig_" + t.id() + "_" + t.values()[ from ] + "_" + t.values()[ to ];
    for ( auto& c : name )
    {
        const bool ok = ( c >= 'a' && c <= 'z' ) || ( c >= 'A' && c <= 'Z' ) || ( c >= '0' && c <= '9' ) || c == '_';
        if ( !ok )
            c = '_';
    }
    return name;
}

inline Checked< std::vector< StateMachine > > build_machines( const StateModel& model, const TransitionTable& table,
                                                              const std::string& file = "transitions.csv" )
{
    using Result = std::vector< StateMachine >;
    Diagnostics diag;
    Result machines;
    std::map< std::string, std::string > owner; // signal -> "type: from -> to"
    for ( std::size_t t = 0; t < model.type_count(); ++t )
    {
        StateMachine machine{ t, {} };
        for ( const auto& tr : table.per_type[ t ] )
        {
            auto signal = tr.signal ? *tr.signal : generated_signal( model, t, tr.from, tr.to );
            const auto where = model.type( t ).id() + ": " + model.type( t ).values()[ tr.from ] + " -> "
                               + model.type( t ).values()[ tr.to ];
            const auto [ it, fresh ] = owner.emplace( signal, where );
            if ( !fresh )
                diag.error( file, 0, 0, "E_DUP_SIGNAL",
                            "signal '" + signal + "' used by " + it->second + " and " + where );
            machine.transitions.push_back( { tr.from, tr.to, std::move( signal ) } );
        }
        machines.push_back( std::move( machine ) );
    }
    return finish< Result >( std::move( machines ), std::move( diag ) );
}

// All machines enclosed in one system node. Non-derived machines take their
// signals from input ports; derived machines are fed internally by their
// derivation tables and expose no input port.
struct HolonicModel
{
    struct Link
    {
        std::size_t source;
        std::size_t derived;

        friend bool operator==( const Link&, const Link& ) = default;
    };
    struct SignalTarget
    {
        std::size_t type;
        std::size_t transition;
    };

    std::vector< StateMachine > machines;
    DerivationTable derivations;
    std::vector< std::size_t > derivation_order; // derived types, sources before dependents
    std::vector< Link > links;
    std::vector< std::string > input_ports;      // signals of non-derived machines, machine order
    std::map< std::string, SignalTarget > signals;

    [[nodiscard]] bool is_derived( std::size_t type ) const { return derivations.is_derived( type ); }

    [[nodiscard]] std::size_t derive( std::size_t type, const Configuration& config ) const
    {
        const auto* d = derivations.find( type );
        std::vector< std::uint8_t > key;
        for ( auto s : d->sources )
            key.push_back( static_cast< std::uint8_t >( config[ s ] ) );
        return d->mapping.at( key );
    }

    // Recomputes every derived type in dependency order.
    void apply_derivations( Configuration& config ) const
    {
        for ( auto t : derivation_order )
            config.set( t, derive( t, config ) );
    }
};

inline Checked< HolonicModel > assemble_holonic( const StateModel& model, std::vector< StateMachine > machines,
                                                 DerivationTable derivations,
                                                 const std::string& file = "derivations.csv" )
{
    Diagnostics diag;

    for ( const auto& d : derivations.derivations )
    {
        std::size_t expected = 1;
        for ( auto s : d.sources )
            expected *= model.type( s ).size();
        if ( d.mapping.size() == expected )
            continue;
        // First unmapped combination in odometer order.
        std::vector< std::uint8_t > key( d.sources.size(), 0 );
        while ( d.mapping.contains( key ) )
            for ( std::size_t i = key.size(); i-- > 0; )
            {
                if ( ++key[ i ] < model.type( d.sources[ i ] ).size() )
                    break;
                key[ i ] = 0;
            }
        std::string tuple;
        for ( std::size_t i = 0; i < key.size(); ++i )
            tuple += ( i ? ", " : "" ) + model.qualified( { d.sources[ i ], key[ i ] } );
        diag.error( file, 0, 0, "E_PARTIAL_TABLE",
                    "derivation of '" + model.type( d.target ).id() + "' maps " + std::to_string( d.mapping.size() )
                            + " of " + std::to_string( expected ) + " source combinations; missing (" + tuple + ")" );
    }

    // Kahn's algorithm over derived types.
    std::vector< std::size_t > order;
    {
        std::map< std::size_t, std::size_t > pending; // derived -> number of derived sources not yet ordered
        for ( const auto& d : derivations.derivations )
        {
            std::size_t n = 0;
            for ( auto s : d.sources )
                if ( derivations.is_derived( s ) )
                    ++n;
            pending[ d.target ] = n;
        }
        bool progress = true;
        while ( progress )
        {
            progress = false;
            for ( auto& [ target, count ] : pending )
            {
                if ( count != 0 || std::find( order.begin(), order.end(), target ) != order.end() )
                    continue;
                order.push_back( target );
                progress = true;
                for ( const auto& d : derivations.derivations )
                    for ( auto s : d.sources )
                        if ( s == target )
                            --pending[ d.target ];
            }
        }
        if ( order.size() != derivations.derivations.size() )
        {
            std::string stuck;
            for ( const auto& [ target, count ] : pending )
                if ( std::find( order.begin(), order.end(), target ) == order.end() )
                    stuck += ( stuck.empty() ? "" : ", " ) + model.type( target ).id();
            diag.error( file, 0, 0, "E_DERIVATION_CYCLE", "derivations form a cycle through: " + stuck );
        }
    }

    if ( diag.has_errors() )
        return finish< HolonicModel >( std::nullopt, std::move( diag ) );

    HolonicModel hm;
    hm.derivation_order = std::move( order );
    for ( const auto& d : derivations.derivations )
        for ( auto s : d.sources )
            hm.links.push_back( { s, d.target } );
    for ( const auto& m : machines )
        for ( std::size_t k = 0; k < m.transitions.size(); ++k )
        {
            hm.signals.emplace( m.transitions[ k ].signal, HolonicModel::SignalTarget{ m.type, k } );
            if ( !derivations.is_derived( m.type ) )
                hm.input_ports.push_back( m.transitions[ k ].signal );
        }
    hm.machines = std::move( machines );
    hm.derivations = std::move( derivations );
    return finish< HolonicModel >( std::move( hm ), std::move( diag ) );
}

} // namespace statecheck::exec
