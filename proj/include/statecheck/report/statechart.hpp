#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/exec/holonic.hpp"
#include "statecheck/ingest/transitions.hpp"

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace statecheck::report
{

namespace pt = boost::property_tree;

// Document layout:
//
//   <statecharts version="1">
//     <system name="system">
//       <port signal="..." machine="..."/>           one per environment signal
//       <machine type="..." internal="false">
//         <state name="..."/>
//         <transition from="..." to="..." signal="..." generated="true|false"/>
//       </machine>
//       <machine type="..." internal="true">         derived type
//         ...
//         <derivation>
//           <source type="..."/>
//           <row value="..."><in type="..." value="..."/></row>
//         </derivation>
//       </machine>
//       <link source="..." derived="..."/>
//     </system>
//   </statecharts>
inline std::string export_machines( const StateModel& model, const exec::HolonicModel& hm )
{
    pt::ptree system;
    system.put( "<xmlattr>.name", "system" );
    for ( const auto& signal : hm.input_ports )
    {
        pt::ptree port;
        port.put( "<xmlattr>.signal", signal );
        port.put( "<xmlattr>.machine", model.type( hm.signals.at( signal ).type ).id() );
        system.add_child( "port", port );
    }
    for ( const auto& m : hm.machines )
    {
        const auto& type = model.type( m.type );
        pt::ptree machine;
        machine.put( "<xmlattr>.type", type.id() );
        machine.put( "<xmlattr>.internal", hm.is_derived( m.type ) ? "true" : "false" );
        for ( const auto& v : type.values() )
        {
            pt::ptree state;
            state.put( "<xmlattr>.name", v );
            machine.add_child( "state", state );
        }
        for ( const auto& tr : m.transitions )
        {
            pt::ptree t;
            t.put( "<xmlattr>.from", type.values()[ tr.from ] );
            t.put( "<xmlattr>.to", type.values()[ tr.to ] );
            t.put( "<xmlattr>.signal", tr.signal );
            t.put( "<xmlattr>.generated",
                   tr.signal == exec::generated_signal( model, m.type, tr.from, tr.to ) ? "true" : "false" );
            machine.add_child( "transition", t );
        }
        if ( const auto* d = hm.derivations.find( m.type ) )
        {
            pt::ptree derivation;
            for ( auto s : d->sources )
            {
                pt::ptree source;
                source.put( "<xmlattr>.type", model.type( s ).id() );
                derivation.add_child( "source", source );
            }
            for ( const auto& [ key, value ] : d->mapping )
            {
                pt::ptree row;
                row.put( "<xmlattr>.value", type.values()[ value ] );
                for ( std::size_t i = 0; i < key.size(); ++i )
                {
                    pt::ptree in;
                    in.put( "<xmlattr>.type", model.type( d->sources[ i ] ).id() );
                    in.put( "<xmlattr>.value", model.type( d->sources[ i ] ).values()[ key[ i ] ] );
                    row.add_child( "in", in );
                }
                derivation.add_child( "row", row );
            }
            machine.add_child( "derivation", derivation );
        }
        system.add_child( "machine", machine );
    }
    for ( const auto& l : hm.links )
    {
        pt::ptree link;
        link.put( "<xmlattr>.source", model.type( l.source ).id() );
        link.put( "<xmlattr>.derived", model.type( l.derived ).id() );
        system.add_child( "link", link );
    }

    pt::ptree root;
    pt::ptree charts;
    charts.put( "<xmlattr>.version", "1" );
    charts.add_child( "system", system );
    root.add_child( "statecharts", charts );

    std::ostringstream out;
    pt::write_xml( out, root, pt::xml_writer_make_settings< std::string >( ' ', 2 ) );
    return out.str();
}

// Transition table as the export would reproduce it: generated signal names
// become unnamed, and a type counts as declared unless its relation is the
// default complete digraph with generated names.
inline TransitionTable effective_transitions( const StateModel& model, TransitionTable table )
{
    const auto defaults = TransitionTable::complete( model );
    for ( std::size_t t = 0; t < model.type_count(); ++t )
    {
        for ( auto& tr : table.per_type[ t ] )
            if ( tr.signal && *tr.signal == exec::generated_signal( model, t, tr.from, tr.to ) )
                tr.signal.reset();
        table.declared[ t ] = table.per_type[ t ] != defaults.per_type[ t ];
    }
    return table;
}

// Reads the machines of an exported document back as a transition table.
inline Checked< TransitionTable > read_statecharts( std::string_view text, const StateModel& model,
                                                    const std::string& file = "statecharts.xml" )
{
    Diagnostics diag;
    pt::ptree root;
    try
    {
        std::istringstream in{ std::string{ text } };
        pt::read_xml( in, root, pt::xml_parser::trim_whitespace );
    }
    catch ( const pt::xml_parser_error& e )
    {
        diag.error( file, e.line(), 0, "E_MALFORMED_XML", e.message() );
        return finish< TransitionTable >( std::nullopt, std::move( diag ) );
    }

    TransitionTable table;
    table.per_type.resize( model.type_count() );
    table.declared.assign( model.type_count(), false );
    std::vector< bool > seen( model.type_count(), false );
    const auto system = root.get_child_optional( "statecharts.system" );
    if ( !system )
    {
        diag.error( file, 0, 0, "E_MALFORMED_XML", "missing statecharts/system element" );
        return finish< TransitionTable >( std::nullopt, std::move( diag ) );
    }
    for ( const auto& [ tag, machine ] : *system )
    {
        if ( tag != "machine" )
            continue;
        const auto id = machine.get< std::string >( "<xmlattr>.type", "" );
        const auto type = model.find_type( id );
        if ( !type )
        {
            diag.error( file, 0, 0, "E_UNKNOWN_TYPE", "unknown machine type '" + id + "'" );
            continue;
        }
        seen[ *type ] = true;
        for ( const auto& [ ttag, t ] : machine )
        {
            if ( ttag != "transition" )
                continue;
            const auto from = model.type( *type ).find_value( t.get< std::string >( "<xmlattr>.from", "" ) );
            const auto to = model.type( *type ).find_value( t.get< std::string >( "<xmlattr>.to", "" ) );
            if ( !from || !to )
            {
                diag.error( file, 0, 0, "E_UNKNOWN_VALUE", "transition of '" + id + "' names an unknown value" );
                continue;
            }
            Transition tr{ *from, *to, std::nullopt };
            if ( t.get< std::string >( "<xmlattr>.generated", "false" ) != "true" )
                tr.signal = t.get< std::string >( "<xmlattr>.signal", "" );
            table.per_type[ *type ].push_back( std::move( tr ) );
        }
    }
    for ( std::size_t t = 0; t < model.type_count(); ++t )
        if ( !seen[ t ] )
            diag.error( file, 0, 0, "E_MISSING_MACHINE", "no machine for type '" + model.type( t ).id() + "'" );
    if ( diag.has_errors() )
        return finish< TransitionTable >( std::nullopt, std::move( diag ) );
    return finish< TransitionTable >( effective_transitions( model, std::move( table ) ), std::move( diag ) );
}

} // namespace statecheck::report
