#pragma once

#include "statecheck/core/model.hpp"
#include "statecheck/ingest/project.hpp"
#include "statecheck/verify/enumerate.hpp"
#include "statecheck/verify/use_case.hpp"

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace statecheck::verify
{

struct EnumerationSummary
{
    std::size_t simple_count = 0;
    std::size_t full_count = 0; // 0 when the simple stage exploded
    bool exploded = false;
    bool count_exact = true;
    std::size_t cap = 0;
};

struct VerificationReport
{
    std::vector< std::pair< std::string, std::string > > pair_coverage_failures; // type ids
    std::vector< std::string > dead_values_simple;                               // qualified ids, sorted
    std::vector< std::string > dead_values_full;
    EnumerationSummary enumeration;
    std::size_t complex_constraint_count = 0;
    std::vector< std::string > arity_two_constraints; // complex constraints over two types
    std::vector< UseCaseReport > use_cases;           // declaration order
    double elapsed_ms = 0.0;

    [[nodiscard]] std::size_t use_cases_lacking_values() const
    {
        return static_cast< std::size_t >( std::count_if( use_cases.begin(), use_cases.end(),
                                                          []( const auto& u ) { return u.lacks_values(); } ) );
    }

    // Preconditions that admit no configuration (after the complex filter),
    // not counting those already lacking values.
    [[nodiscard]] std::size_t use_cases_unsatisfiable() const
    {
        return static_cast< std::size_t >( std::count_if( use_cases.begin(), use_cases.end(), []( const auto& u ) {
            return !u.lacks_values() && !u.full.satisfiable;
        } ) );
    }

    [[nodiscard]] std::size_t use_cases_with_unused_values() const
    {
        return static_cast< std::size_t >( std::count_if( use_cases.begin(), use_cases.end(),
                                                          []( const auto& u ) { return !u.full.unused.empty(); } ) );
    }

    [[nodiscard]] std::size_t total_unused_values() const
    {
        std::size_t n = 0;
        for ( const auto& u : use_cases )
            n += u.full.unused.size();
        return n;
    }

    [[nodiscard]] bool has_defects() const
    {
        return !pair_coverage_failures.empty() || !dead_values_simple.empty() || !dead_values_full.empty()
               || std::any_of( use_cases.begin(), use_cases.end(), []( const auto& u ) { return !u.clean(); } );
    }
};

inline std::vector< std::string > qualified_sorted( const StateModel& model, const std::vector< ValueRef >& refs )
{
    std::vector< std::string > out;
    for ( const auto r : refs )
        out.push_back( model.qualified( r ) );
    std::sort( out.begin(), out.end() );
    return out;
}

// The whole verification pass: pair coverage, enumeration under the simple
// constraints, complex filtering, dead values at both stages, then every use
// case. An explosion (more legal configurations than the cap) is recorded in
// the report and the coverage checks fall back to existence queries.
inline VerificationReport run_all( const Project& project )
{
    const auto started = std::chrono::steady_clock::now();
    const auto& model = project.model;
    const auto cap = project.settings.enumeration_cap;
    VerificationReport report;

    for ( const auto& [ i, j ] : check_pair_coverage( model, project.simple ) )
        report.pair_coverage_failures.emplace_back( model.type( i ).id(), model.type( j ).id() );

    report.complex_constraint_count = project.complex.size();
    for ( const auto& c : project.complex )
        if ( c.involvement().size() == 2 )
            report.arity_two_constraints.push_back( c.id() );

    const auto enumeration = enumerate_configurations( model, project.simple, cap );
    report.enumeration.simple_count = enumeration.count;
    report.enumeration.exploded = enumeration.exploded;
    report.enumeration.count_exact = enumeration.count_exact;
    report.enumeration.cap = cap;

    ConfigurationSet filtered;
    LegalSets legal;
    if ( !enumeration.exploded )
    {
        filtered = filter_complex( enumeration.configurations, project.complex );
        report.enumeration.full_count = filtered.size();
        report.dead_values_simple = qualified_sorted( model, check_value_coverage( model, enumeration.configurations ) );
        report.dead_values_full = qualified_sorted( model, check_value_coverage( model, filtered ) );
        legal = { &enumeration.configurations, &filtered };
    }
    else
    {
        report.dead_values_simple = qualified_sorted( model, dead_values_by_query( model, project.simple, {} ) );
        report.dead_values_full
                = qualified_sorted( model, dead_values_by_query( model, project.simple, project.complex ) );
    }

    for ( const auto& uc : project.use_cases )
        report.use_cases.push_back( check_use_case( uc, model, project.simple, project.complex, cap, legal ) );

    report.elapsed_ms
            = std::chrono::duration< double, std::milli >( std::chrono::steady_clock::now() - started ).count();
    return report;
}

} // namespace statecheck::verify
