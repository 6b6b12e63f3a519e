#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/modes/derive.hpp"
#include "statecheck/modes/mode_structure.hpp"
#include "statecheck/report/verification.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace statecheck::report
{

inline Json condition_json( const StateModel& model, const Condition& condition )
{
    Json out = Json::object();
    for ( std::size_t t = 0; t < condition.size(); ++t )
    {
        Json values = Json::array();
        for ( auto v : condition[ t ].members() )
            values.push_back( model.type( t ).values()[ v ] );
        out[ model.type( t ).id() ] = values;
    }
    return out;
}

inline Json modes_json( const StateModel& model, const modes::ModeDerivation& md )
{
    const auto& ms = md.structure;
    Json doc;
    doc[ "report_version" ] = report_version;
    doc[ "kind" ] = "modes";

    std::size_t use_case = 0, scope = 0, abstract = 0;
    for ( const auto& n : ms.nodes() )
        for ( const auto& s : n.sources )
        {
            if ( s.starts_with( "uc:" ) )
                ++use_case;
            else if ( s.starts_with( "scope:" ) && n.kind != modes::ModeKind::abstract )
                ++scope;
        }
    for ( const auto& n : ms.nodes() )
        if ( n.kind == modes::ModeKind::abstract )
            ++abstract;
    doc[ "summary" ] = { { "nodes", ms.nodes().size() },     { "edges", ms.edges().size() },
                         { "use_case_modes", use_case },     { "scope_modes", scope },
                         { "abstract_modes", abstract },     { "abstract_layers", md.abstract_layers },
                         { "layer_cap_hit", md.layer_cap_hit }, { "empty_scopes", md.empty_scopes } };

    Json nodes = Json::array();
    for ( std::size_t i = 0; i < ms.nodes().size(); ++i )
    {
        const auto& n = ms.node( i );
        Json j;
        j[ "id" ] = n.id;
        j[ "kind" ] = modes::to_string( n.kind );
        j[ "sources" ] = n.sources;
        j[ "condition" ] = condition_json( model, n.condition );
        std::vector< std::string > parents;
        for ( auto p : ms.parents( i ) )
            parents.push_back( ms.node( p ).id );
        j[ "implies" ] = parents;
        nodes.push_back( j );
    }
    doc[ "nodes" ] = nodes;

    Json edges = Json::array();
    for ( const auto& [ child, parent ] : ms.edges() )
        edges.push_back( { { "from", ms.node( child ).id }, { "to", ms.node( parent ).id } } );
    doc[ "edges" ] = edges;
    return doc;
}

inline std::string dot_quote( const std::string& s )
{
    std::string out = "\"";
    for ( char c : s )
    {
        if ( c == '"' || c == '\\' )
            out += '\\';
        if ( c == '\n' )
        {
            out += "\\n";
            continue;
        }
        out += c;
    }
    return out + "\"";
}

// One node per mode in structure order, styled by kind; one edge per reduced
// implication, drawn from the implying mode to the implied one.
inline std::string export_mode_graph( const modes::ModeStructure& ms )
{
    std::string out = "digraph modes {\n  rankdir=BT;\n  node [fontname=\"Helvetica\"];\n";
    for ( const auto& n : ms.nodes() )
    {
        std::string style;
        switch ( n.kind )
        {
        case modes::ModeKind::scope:
            style = "shape=box, style=bold";
            break;
        case modes::ModeKind::abstract:
            style = "shape=box, style=dashed";
            break;
        case modes::ModeKind::use_case:
            style = "shape=ellipse";
            break;
        }
        out += "  " + dot_quote( n.id ) + " [" + style + ", kind=" + dot_quote( modes::to_string( n.kind ) )
               + "];\n";
    }
    for ( const auto& [ child, parent ] : ms.edges() )
        out += "  " + dot_quote( ms.node( child ).id ) + " -> " + dot_quote( ms.node( parent ).id ) + ";\n";
    out += "}\n";
    return out;
}

inline std::string modes_text( const StateModel& model, const modes::ModeDerivation& md )
{
    const auto& ms = md.structure;
    std::string out;
    const auto doc = modes_json( model, md );
    const auto& s = doc[ "summary" ];
    out += "modes: " + std::to_string( s[ "nodes" ].get< std::size_t >() ) + " nodes, "
           + std::to_string( s[ "edges" ].get< std::size_t >() ) + " edges\n";
    out += "  use-case modes: " + std::to_string( s[ "use_case_modes" ].get< std::size_t >() ) + "\n";
    out += "  scope modes: " + std::to_string( s[ "scope_modes" ].get< std::size_t >() ) + "\n";
    out += "  abstract modes: " + std::to_string( s[ "abstract_modes" ].get< std::size_t >() ) + " in "
           + std::to_string( md.abstract_layers ) + " layers\n";
    for ( std::size_t i = 0; i < ms.nodes().size(); ++i )
    {
        const auto& n = ms.node( i );
        std::string parents;
        for ( auto p : ms.parents( i ) )
            parents += ( parents.empty() ? "" : ", " ) + ms.node( p ).id;
        out += std::string( modes::to_string( n.kind ) ) + " " + n.id
               + ( parents.empty() ? std::string{} : " -> " + parents ) + "\n";
    }
    return out;
}

} // namespace statecheck::report
