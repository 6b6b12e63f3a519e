#pragma once

#include "statecheck/core/condition.hpp"
#include "statecheck/core/constraints.hpp"
#include "statecheck/core/model.hpp"
#include "statecheck/core/predicates.hpp"
#include "statecheck/verify/enumerate.hpp"
#include "statecheck/verify/search.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace statecheck::verify
{

// Result of checking one precondition under one set of constraints.
struct StageResult
{
    bool satisfiable = false;
    std::size_t count = 0;     // satisfying configurations, up to the cap
    bool count_capped = false; // more than `count` exist
    std::optional< Configuration > witness;
    std::vector< ValueRef > unused; // authorized values in no satisfying configuration, model order

    friend bool operator==( const StageResult&, const StageResult& ) = default;
};

struct UseCaseReport
{
    std::string id;
    std::string scope;
    std::vector< std::size_t > empty_types; // types with no authorized value
    StageResult simple;                     // simple constraints only
    StageResult full;                       // simple and complex constraints

    [[nodiscard]] bool lacks_values() const { return !empty_types.empty(); }
    [[nodiscard]] bool clean() const
    {
        return !lacks_values() && simple.satisfiable && full.satisfiable && simple.unused.empty()
               && full.unused.empty();
    }

    friend bool operator==( const UseCaseReport&, const UseCaseReport& ) = default;
};

namespace detail
{

inline std::vector< ValueRef > unused_from_cover( const Condition& condition, const std::vector< ValueSet >& covered )
{
    std::vector< ValueRef > out;
    for ( std::size_t t = 0; t < condition.size(); ++t )
        for ( auto v : condition[ t ].members() )
            if ( !covered[ t ].contains( v ) )
                out.push_back( { t, v } );
    return out;
}

// Scans an already enumerated legal set.
inline StageResult stage_from_set( const Condition& condition, const ConfigurationSet& legal )
{
    StageResult r;
    std::vector< ValueSet > covered( condition.size() );
    for ( const auto& c : legal.items )
    {
        if ( !satisfies_condition( c, condition ) )
            continue;
        if ( r.count++ == 0 )
            r.witness = c;
        for ( std::size_t t = 0; t < c.size(); ++t )
            covered[ t ].insert( c[ t ] );
    }
    r.satisfiable = r.count != 0;
    r.unused = unused_from_cover( condition, covered );
    return r;
}

// Searches inside the precondition, counting up to `cap`; falls back to one
// pinned existence query per still-uncovered value when the cap is hit.
inline StageResult stage_by_search( const StateModel& model, const SimpleConstraintSet& simple,
                                    std::span< const ComplexConstraint > complex, const Condition& condition,
                                    std::size_t cap )
{
    StageResult r;
    std::vector< ValueSet > covered( condition.size() );
    Search search{ model, simple, complex };
    search.run( condition.authorized(), [ & ]( const Configuration& c ) {
        if ( r.count == cap )
        {
            r.count_capped = true;
            return false;
        }
        ++r.count;
        if ( !r.witness || c < *r.witness )
            r.witness = c;
        for ( std::size_t t = 0; t < c.size(); ++t )
            covered[ t ].insert( c[ t ] );
        return true;
    } );
    r.satisfiable = r.count != 0;
    if ( r.count_capped )
    {
        for ( std::size_t t = 0; t < condition.size(); ++t )
            for ( auto v : condition[ t ].members() )
            {
                if ( covered[ t ].contains( v ) )
                    continue;
                auto domains = condition.authorized();
                domains[ t ] = ValueSet::single( v );
                if ( const auto w = search.first( std::move( domains ) ) )
                    for ( std::size_t u = 0; u < w->size(); ++u )
                        covered[ u ].insert( ( *w )[ u ] );
            }
    }
    r.unused = unused_from_cover( condition, covered );
    return r;
}

} // namespace detail

// Legal configuration sets already enumerated for the project, if any. When
// present, use-case stages scan them instead of searching.
struct LegalSets
{
    const ConfigurationSet* simple = nullptr;
    const ConfigurationSet* full = nullptr;
};

// Four phases: satisfiability and unused values under the simple constraints,
// then the same after the complex constraints. A precondition with an empty
// type is reported as lacking values and not checked further.
inline UseCaseReport check_use_case( const UseCase& uc, const StateModel& model, const SimpleConstraintSet& simple,
                                     std::span< const ComplexConstraint > complex, std::size_t cap,
                                     LegalSets legal = {} )
{
    UseCaseReport report;
    report.id = uc.id;
    report.scope = uc.scope();
    report.empty_types = uc.precondition.empty_types();
    if ( report.lacks_values() )
        return report;

    report.simple = legal.simple ? detail::stage_from_set( uc.precondition, *legal.simple )
                                 : detail::stage_by_search( model, simple, {}, uc.precondition, cap );
    report.full = legal.full ? detail::stage_from_set( uc.precondition, *legal.full )
                             : detail::stage_by_search( model, simple, complex, uc.precondition, cap );
    return report;
}

} // namespace statecheck::verify
