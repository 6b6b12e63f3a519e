#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace statecheck
{

// Functional breakdown that classifies use cases. Node 0 is a synthetic
// root with an empty name; every declared scope is addressed by its
// `/`-joined path from the root.
class ScopeTree
{
public:
    struct Node
    {
        std::string name;
        std::string path;
        std::size_t parent = 0;
        std::vector< std::size_t > children;

        friend bool operator==( const Node&, const Node& ) = default;
    };

private:
    std::vector< Node > nodes_{ Node{} };

public:
    [[nodiscard]] const std::vector< Node >& nodes() const { return nodes_; }
    [[nodiscard]] const Node& node( std::size_t index ) const { return nodes_.at( index ); }
    [[nodiscard]] const Node& root() const { return nodes_.front(); }
    [[nodiscard]] std::size_t size() const { return nodes_.size(); }

    [[nodiscard]] std::optional< std::size_t > find( const std::string& path ) const
    {
        if ( path.empty() )
            return 0;
        for ( std::size_t i = 1; i < nodes_.size(); ++i )
            if ( nodes_[ i ].path == path )
                return i;
        return std::nullopt;
    }

    [[nodiscard]] std::optional< std::size_t > child( std::size_t parent, const std::string& name ) const
    {
        for ( auto c : nodes_.at( parent ).children )
            if ( nodes_[ c ].name == name )
                return c;
        return std::nullopt;
    }

    // Adds `name` under `parent`; returns nullopt when a sibling already uses
    // the name.
    std::optional< std::size_t > add( std::size_t parent, const std::string& name )
    {
        if ( child( parent, name ) )
            return std::nullopt;
        Node node;
        node.name = name;
        node.parent = parent;
        node.path = parent == 0 ? name : nodes_[ parent ].path + "/" + name;
        nodes_.push_back( std::move( node ) );
        nodes_[ parent ].children.push_back( nodes_.size() - 1 );
        return nodes_.size() - 1;
    }

    // True when `path` is `ancestor` or lies below it.
    static bool within( const std::string& path, const std::string& ancestor )
    {
        if ( ancestor.empty() || path == ancestor )
            return true;
        return path.size() > ancestor.size() && path.compare( 0, ancestor.size(), ancestor ) == 0
               && path[ ancestor.size() ] == '/';
    }

    friend bool operator==( const ScopeTree&, const ScopeTree& ) = default;
};

} // namespace statecheck
