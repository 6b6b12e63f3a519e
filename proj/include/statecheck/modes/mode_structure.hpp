#pragma once

#include "statecheck/core/condition.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/predicates.hpp"

#include <algorithm>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace statecheck::modes
{

enum class ModeKind
{
    use_case,
    abstract,
    scope
};

inline const char* to_string( ModeKind kind )
{
    switch ( kind )
    {
    case ModeKind::use_case:
        return "use_case";
    case ModeKind::abstract:
        return "abstract";
    case ModeKind::scope:
        return "scope";
    }
    return "?";
}

// When nodes with equal conditions are merged, the higher-ranked kind wins.
inline int precedence( ModeKind kind )
{
    switch ( kind )
    {
    case ModeKind::scope:
        return 3;
    case ModeKind::abstract:
        return 2;
    case ModeKind::use_case:
        return 1;
    }
    return 0;
}

// Source ids are prefixed: `uc:<use case id>` or `scope:<scope path>`.
inline std::string use_case_source( const std::string& id ) { return "uc:" + id; }
inline std::string scope_source( const std::string& path ) { return "scope:" + path; }

struct ModeNode
{
    std::string id;
    ModeKind kind = ModeKind::use_case;
    Condition condition;
    std::set< std::string > sources;

    friend bool operator==( const ModeNode&, const ModeNode& ) = default;
};

// Nodes with pairwise distinct conditions and the transitive reduction of
// their strict implication order. An edge (child, parent) means the child's
// condition implies the parent's.
class ModeStructure
{
public:
    struct Delta
    {
        std::size_t type;
        ValueSet allowed;
    };

private:
    std::vector< ModeNode > nodes_;
    std::vector< std::pair< std::size_t, std::size_t > > edges_;
    std::vector< std::vector< std::size_t > > parents_;
    std::vector< std::vector< std::size_t > > children_;
    std::vector< std::vector< std::vector< Delta > > > child_deltas_; // [parent][k] for children_[parent][k]
    std::vector< std::size_t > roots_;

public:
    ModeStructure() = default;

    ModeStructure( std::vector< ModeNode > nodes, std::vector< std::pair< std::size_t, std::size_t > > edges )
        : nodes_{ std::move( nodes ) }, edges_{ std::move( edges ) }, parents_( nodes_.size() ),
          children_( nodes_.size() ), child_deltas_( nodes_.size() )
    {
        std::sort( edges_.begin(), edges_.end() );
        for ( const auto& [ child, parent ] : edges_ )
        {
            parents_[ child ].push_back( parent );
            children_[ parent ].push_back( child );
            std::vector< Delta > delta;
            const auto& c = nodes_[ child ].condition;
            const auto& p = nodes_[ parent ].condition;
            for ( std::size_t t = 0; t < c.size(); ++t )
                if ( c[ t ] != p[ t ] )
                    delta.push_back( { t, c[ t ] } );
            child_deltas_[ parent ].push_back( std::move( delta ) );
        }
        for ( std::size_t n = 0; n < nodes_.size(); ++n )
            if ( parents_[ n ].empty() )
                roots_.push_back( n );
    }

    [[nodiscard]] const std::vector< ModeNode >& nodes() const { return nodes_; }
    [[nodiscard]] const ModeNode& node( std::size_t index ) const { return nodes_.at( index ); }
    [[nodiscard]] const std::vector< std::pair< std::size_t, std::size_t > >& edges() const { return edges_; }
    [[nodiscard]] const std::vector< std::size_t >& parents( std::size_t n ) const { return parents_.at( n ); }
    [[nodiscard]] const std::vector< std::size_t >& children( std::size_t n ) const { return children_.at( n ); }
    [[nodiscard]] const std::vector< Delta >& delta( std::size_t parent, std::size_t k ) const
    {
        return child_deltas_.at( parent ).at( k );
    }
    // Maximal nodes: those implying no other node.
    [[nodiscard]] const std::vector< std::size_t >& roots() const { return roots_; }
    [[nodiscard]] bool empty() const { return nodes_.empty(); }

    [[nodiscard]] std::optional< std::size_t > find( const std::string& id ) const
    {
        for ( std::size_t n = 0; n < nodes_.size(); ++n )
            if ( nodes_[ n ].id == id )
                return n;
        return std::nullopt;
    }

    // The node carrying `source` (a `uc:` or `scope:` id).
    [[nodiscard]] std::optional< std::size_t > find_source( const std::string& source ) const
    {
        for ( std::size_t n = 0; n < nodes_.size(); ++n )
            if ( nodes_[ n ].sources.contains( source ) )
                return n;
        return std::nullopt;
    }
};

} // namespace statecheck::modes
