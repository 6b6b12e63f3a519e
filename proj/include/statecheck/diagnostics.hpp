#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace statecheck
{

enum class Severity
{
    warning,
    error
};

inline const char* to_string( Severity severity ) { return severity == Severity::error ? "error" : "warning"; }

// Rows and columns are 1-based; 0 means "not applicable".
struct Diagnostic
{
    Severity severity = Severity::error;
    std::string file;
    std::size_t row = 0;
    std::size_t column = 0;
    std::string code;
    std::string message;

    friend bool operator==( const Diagnostic&, const Diagnostic& ) = default;
};

inline std::string format( const Diagnostic& d )
{
    std::string out = d.file.empty() ? std::string{ "<input>" } : d.file;
    if ( d.row != 0 )
    {
        out += ":" + std::to_string( d.row );
        if ( d.column != 0 )
            out += ":" + std::to_string( d.column );
    }
    out += ": ";
    out += to_string( d.severity );
    out += " " + d.code + ": " + d.message;
    return out;
}

class Diagnostics
{
    std::vector< Diagnostic > items_;

public:
    void error( std::string file, std::size_t row, std::size_t column, std::string code, std::string message )
    {
        items_.push_back(
                { Severity::error, std::move( file ), row, column, std::move( code ), std::move( message ) } );
    }

    void warning( std::string file, std::size_t row, std::size_t column, std::string code, std::string message )
    {
        items_.push_back(
                { Severity::warning, std::move( file ), row, column, std::move( code ), std::move( message ) } );
    }

    void add( Diagnostic d ) { items_.push_back( std::move( d ) ); }

    void append( const Diagnostics& other )
    {
        items_.insert( items_.end(), other.items_.begin(), other.items_.end() );
    }

    [[nodiscard]] const std::vector< Diagnostic >& items() const { return items_; }
    [[nodiscard]] bool empty() const { return items_.empty(); }
    [[nodiscard]] std::size_t size() const { return items_.size(); }

    [[nodiscard]] bool has_errors() const
    {
        return std::any_of( items_.begin(), items_.end(),
                            []( const Diagnostic& d ) { return d.severity == Severity::error; } );
    }

    [[nodiscard]] bool has_code( const std::string& code ) const
    {
        return std::any_of( items_.begin(), items_.end(), [ & ]( const Diagnostic& d ) { return d.code == code; } );
    }

    [[nodiscard]] const Diagnostic* find( const std::string& code ) const
    {
        for ( const auto& d : items_ )
            if ( d.code == code )
                return &d;
        return nullptr;
    }

    void print( std::ostream& out ) const
    {
        for ( const auto& d : items_ )
            out << format( d ) << '\n';
    }
};

// A value produced together with the diagnostics raised while producing it.
// `value` is empty whenever an error-severity diagnostic was raised.
template < typename T >
struct Checked
{
    std::optional< T > value;
    Diagnostics diagnostics;

    [[nodiscard]] bool ok() const { return value.has_value(); }
    explicit operator bool() const { return ok(); }
    const T& operator*() const { return *value; }
    const T* operator->() const { return &*value; }
};

template < typename T >
Checked< T > finish( std::optional< T > value, Diagnostics diagnostics )
{
    if ( diagnostics.has_errors() )
        value.reset();
    return { std::move( value ), std::move( diagnostics ) };
}

} // namespace statecheck
