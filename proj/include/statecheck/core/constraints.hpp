#pragma once

#include "statecheck/core/model.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace statecheck
{

// Symmetric compatibility relation between values of distinct types. A false
// entry for (x, y) stands for the clause (not x or not y). Pairs within the
// same type carry no entry: a type always holds exactly one value.
class SimpleConstraintSet
{
    std::size_t type_count_ = 0;
    std::size_t value_count_ = 0;
    std::vector< std::size_t > owner_;        // global value -> type
    std::vector< std::size_t > local_;        // global value -> value index
    std::vector< ValueSet > compatible_;      // [global value * type_count + type]

public:
    SimpleConstraintSet() = default;

    // Everything compatible.
    explicit SimpleConstraintSet( const StateModel& model )
        : type_count_{ model.type_count() }, value_count_{ model.value_count() }
    {
        compatible_.resize( value_count_ * type_count_ );
        for ( const auto ref : model.all_values() )
        {
            owner_.push_back( ref.type );
            local_.push_back( ref.value );
            for ( std::size_t u = 0; u < type_count_; ++u )
                compatible_[ model.global_index( ref ) * type_count_ + u ]
                        = u == ref.type ? ValueSet::single( ref.value ) : model.type( u ).all();
        }
    }

    [[nodiscard]] std::size_t type_count() const { return type_count_; }
    [[nodiscard]] std::size_t value_count() const { return value_count_; }

    // Sets both (a, b) and (b, a). Same-type pairs are rejected.
    void set( const StateModel& model, ValueRef a, ValueRef b, bool compatible )
    {
        if ( a.type == b.type )
            throw ModelError( "simple constraints are only defined across distinct types" );
        const auto ga = model.global_index( a );
        const auto gb = model.global_index( b );
        auto& ab = compatible_[ ga * type_count_ + b.type ];
        auto& ba = compatible_[ gb * type_count_ + a.type ];
        if ( compatible )
        {
            ab.insert( b.value );
            ba.insert( a.value );
        }
        else
        {
            ab.erase( b.value );
            ba.erase( a.value );
        }
    }

    void forbid( const StateModel& model, ValueRef a, ValueRef b ) { set( model, a, b, false ); }

    [[nodiscard]] bool compatible( const StateModel& model, ValueRef a, ValueRef b ) const
    {
        if ( a.type == b.type )
            return a.value == b.value;
        return compatible_[ model.global_index( a ) * type_count_ + b.type ].contains( b.value );
    }

    // Values of `type` compatible with the value at global index `global`.
    [[nodiscard]] ValueSet compatible_with( std::size_t global, std::size_t type ) const
    {
        return compatible_[ global * type_count_ + type ];
    }

    friend bool operator==( const SimpleConstraintSet& a, const SimpleConstraintSet& b )
    {
        return a.type_count_ == b.type_count_ && a.compatible_ == b.compatible_;
    }
};

// Forbids every configuration whose value lies inside `subsets[t]` for every
// involved type t (the types with a non-empty subset).
class ComplexConstraint
{
    std::string id_;
    std::vector< ValueSet > subsets_;

public:
    ComplexConstraint( std::string id, std::vector< ValueSet > subsets )
        : id_{ std::move( id ) }, subsets_{ std::move( subsets ) }
    {
        if ( involvement().size() < 2 )
            throw ModelError( "complex constraint '" + id_ + "' must involve at least two types" );
    }

    [[nodiscard]] const std::string& id() const { return id_; }
    [[nodiscard]] const std::vector< ValueSet >& subsets() const { return subsets_; }
    [[nodiscard]] ValueSet subset( std::size_t type ) const { return subsets_[ type ]; }

    [[nodiscard]] std::vector< std::size_t > involvement() const
    {
        std::vector< std::size_t > out;
        for ( std::size_t t = 0; t < subsets_.size(); ++t )
            if ( !subsets_[ t ].empty() )
                out.push_back( t );
        return out;
    }

    friend bool operator==( const ComplexConstraint&, const ComplexConstraint& ) = default;
};

} // namespace statecheck
