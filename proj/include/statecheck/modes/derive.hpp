#pragma once

#include "statecheck/core/condition.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/predicates.hpp"
#include "statecheck/diagnostics.hpp"
#include "statecheck/ingest/project.hpp"
#include "statecheck/modes/mode_structure.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace statecheck::modes
{

inline ModeNode use_case_mode( const UseCase& uc )
{
    return { use_case_source( uc.id ), ModeKind::use_case, uc.precondition, { use_case_source( uc.id ) } };
}

// Scope mode: per type, the union of the authorized subsets of the use cases
// classified under the scope. Returns nullopt for a scope without use cases.
inline std::optional< ModeNode > derive_scope_mode( const std::string& scope_path, std::span< const UseCase > use_cases,
                                                    const StateModel& model )
{
    if ( use_cases.empty() )
        return std::nullopt;
    auto condition = Condition::nothing( model );
    for ( const auto& uc : use_cases )
        condition |= uc.precondition;
    return ModeNode{ scope_source( scope_path ), ModeKind::scope, std::move( condition ),
                     { scope_source( scope_path ) } };
}

// Merges nodes with equal conditions. The merged node keeps the union of the
// sources, the highest-precedence kind, and (when more than one source) the
// id `src1+src2+...` over the sorted sources. First-occurrence order is kept.
inline std::vector< ModeNode > deduplicate( std::vector< ModeNode > nodes )
{
    std::vector< ModeNode > out;
    std::map< Condition, std::size_t > index;
    for ( auto& n : nodes )
    {
        const auto [ it, fresh ] = index.emplace( n.condition, out.size() );
        if ( fresh )
        {
            out.push_back( std::move( n ) );
            continue;
        }
        auto& kept = out[ it->second ];
        kept.sources.insert( n.sources.begin(), n.sources.end() );
        if ( precedence( n.kind ) > precedence( kept.kind ) )
            kept.kind = n.kind;
        if ( kept.sources.size() > 1 )
        {
            std::string id;
            for ( const auto& s : kept.sources )
                id += ( id.empty() ? "" : "+" ) + s;
            kept.id = std::move( id );
        }
    }
    return out;
}

struct AbstractGeneration
{
    std::vector< ModeNode > abstract_modes;
    std::size_t layers = 0;
    bool layer_cap_hit = false;
};

// Repeatedly takes the maximal scope/abstract nodes (those implying no other
// such node) and adds the per-type union of every pair of them as an abstract
// mode, skipping conditions that already exist. Stops when a single maximal
// node remains, nothing new appears, or `layer_cap` layers have been added.
inline AbstractGeneration generate_abstract_modes( const std::vector< ModeNode >& nodes, std::size_t layer_cap )
{
    AbstractGeneration result;
    std::set< Condition > existing;
    std::vector< ModeNode > pool;
    for ( const auto& n : nodes )
    {
        existing.insert( n.condition );
        if ( n.kind != ModeKind::use_case )
            pool.push_back( n );
    }

    while ( true )
    {
        std::vector< std::size_t > maximal;
        for ( std::size_t a = 0; a < pool.size(); ++a )
        {
            bool implies_other = false;
            for ( std::size_t b = 0; b < pool.size() && !implies_other; ++b )
                implies_other = a != b && implies( pool[ a ].condition, pool[ b ].condition );
            if ( !implies_other )
                maximal.push_back( a );
        }
        if ( maximal.size() <= 1 )
            break;
        if ( result.layers == layer_cap )
        {
            result.layer_cap_hit = true;
            break;
        }

        std::vector< ModeNode > layer;
        for ( std::size_t i = 0; i < maximal.size(); ++i )
            for ( std::size_t j = i + 1; j < maximal.size(); ++j )
            {
                const auto& a = pool[ maximal[ i ] ];
                const auto& b = pool[ maximal[ j ] ];
                auto condition = a.condition | b.condition;
                if ( !existing.insert( condition ).second )
                    continue;
                ModeNode node;
                node.id = "abstract:" + std::to_string( result.abstract_modes.size() + layer.size() + 1 );
                node.kind = ModeKind::abstract;
                node.condition = std::move( condition );
                for ( const auto* parent : { &a, &b } )
                    for ( const auto& s : parent->sources )
                        if ( s.starts_with( "scope:" ) )
                            node.sources.insert( s );
                layer.push_back( std::move( node ) );
            }
        if ( layer.empty() )
            break;
        ++result.layers;
        for ( auto& n : layer )
        {
            pool.push_back( n );
            result.abstract_modes.push_back( std::move( n ) );
        }
    }
    return result;
}

// Transitive reduction of the strict implication order over `nodes`, whose
// conditions must be pairwise distinct.
inline ModeStructure build_implication_dag( std::vector< ModeNode > nodes )
{
    const auto n = nodes.size();
    std::vector< std::vector< char > > imp( n, std::vector< char >( n, 0 ) );
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
            if ( a != b && implies( nodes[ a ].condition, nodes[ b ].condition ) )
            {
                if ( nodes[ a ].condition == nodes[ b ].condition )
                    throw ModelError( "modes '" + nodes[ a ].id + "' and '" + nodes[ b ].id
                                      + "' have equal conditions; deduplicate first" );
                imp[ a ][ b ] = 1;
            }

    std::vector< std::pair< std::size_t, std::size_t > > edges;
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            if ( !imp[ a ][ b ] )
                continue;
            bool redundant = false;
            for ( std::size_t c = 0; c < n && !redundant; ++c )
                redundant = imp[ a ][ c ] && imp[ c ][ b ];
            if ( !redundant )
                edges.emplace_back( a, b );
        }
    return ModeStructure{ std::move( nodes ), std::move( edges ) };
}

struct ModeDerivation
{
    ModeStructure structure;
    Diagnostics diagnostics;
    std::size_t abstract_layers = 0;
    bool layer_cap_hit = false;
    std::vector< std::string > empty_scopes;
};

// Use-case modes, scope modes (over each scope's whole subtree), merging of
// equal conditions, abstract modes, then the reduced implication DAG. Modes
// with an empty authorized subset can never activate and are left out.
inline ModeDerivation derive_modes( const Project& project )
{
    ModeDerivation result;
    std::vector< ModeNode > nodes;

    for ( const auto& uc : project.use_cases )
    {
        if ( uc.precondition.has_empty_type() )
        {
            result.diagnostics.warning( "", 0, 0, "W_EMPTY_CONDITION",
                                        "use case '" + uc.id + "' has an empty authorized subset; no mode created" );
            continue;
        }
        nodes.push_back( use_case_mode( uc ) );
    }

    for ( std::size_t s = 1; s < project.scopes.size(); ++s )
    {
        const auto& path = project.scopes.node( s ).path;
        std::vector< UseCase > members;
        for ( const auto& uc : project.use_cases )
            if ( ScopeTree::within( uc.scope(), path ) )
                members.push_back( uc );
        auto mode = derive_scope_mode( path, members, project.model );
        if ( !mode )
        {
            result.empty_scopes.push_back( path );
            result.diagnostics.error( "", 0, 0, "E_EMPTY_SCOPE", "scope '" + path + "' has no use cases" );
            continue;
        }
        if ( mode->condition.has_empty_type() )
        {
            result.diagnostics.warning( "", 0, 0, "W_EMPTY_CONDITION",
                                        "scope '" + path + "' has an empty authorized subset; no mode created" );
            continue;
        }
        nodes.push_back( std::move( *mode ) );
    }

    nodes = deduplicate( std::move( nodes ) );
    auto generation = generate_abstract_modes( nodes, project.settings.layer_cap );
    result.abstract_layers = generation.layers;
    result.layer_cap_hit = generation.layer_cap_hit;
    if ( generation.layer_cap_hit )
        result.diagnostics.warning( "", 0, 0, "W_LAYER_CAP",
                                    "abstract-mode generation stopped after "
                                            + std::to_string( project.settings.layer_cap )
                                            + " layers without reaching a single maximal mode" );
    for ( auto& n : generation.abstract_modes )
        nodes.push_back( std::move( n ) );
    result.structure = build_implication_dag( std::move( nodes ) );
    return result;
}

} // namespace statecheck::modes
