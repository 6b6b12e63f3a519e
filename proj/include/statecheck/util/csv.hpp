#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace statecheck::csv
{

struct Row
{
    std::size_t line = 0; // 1-based line the row starts on
    std::vector< std::string > fields;
};

inline std::string_view trim( std::string_view s )
{
    const auto* ws = " \t\r\n";
    const auto first = s.find_first_not_of( ws );
    if ( first == std::string_view::npos )
        return {};
    const auto last = s.find_last_not_of( ws );
    return s.substr( first, last - first + 1 );
}

// Comma-separated, double-quote quoting, LF or CRLF line ends. Fields are
// trimmed; rows whose fields are all empty are dropped. A leading UTF-8 BOM
// is skipped.
inline std::vector< Row > parse( std::string_view text )
{
    if ( text.size() >= 3 && text.substr( 0, 3 ) == "\xEF\xBB\xBF" )
        text.remove_prefix( 3 );

    std::vector< Row > rows;
    Row row;
    std::string field;
    bool quoted = false;
    bool in_quotes = false;
    std::size_t line = 1;
    row.line = 1;

    const auto end_field = [ & ] {
        row.fields.push_back( quoted ? field : std::string{ trim( field ) } );
        field.clear();
        quoted = false;
    };
    const auto end_row = [ & ] {
        end_field();
        bool blank = true;
        for ( const auto& f : row.fields )
            if ( !f.empty() )
                blank = false;
        if ( !blank )
            rows.push_back( std::move( row ) );
        row = Row{};
    };

    for ( std::size_t i = 0; i < text.size(); ++i )
    {
        const char c = text[ i ];
        if ( in_quotes )
        {
            if ( c == '"' )
            {
                if ( i + 1 < text.size() && text[ i + 1 ] == '"' )
                {
                    field += '"';
                    ++i;
                }
                else
                    in_quotes = false;
            }
            else
            {
                if ( c == '\n' )
                    ++line;
                field += c;
            }
            continue;
        }
        switch ( c )
        {
        case '"':
            if ( trim( field ).empty() )
            {
                field.clear();
                quoted = true;
                in_quotes = true;
            }
            else
                field += c;
            break;
        case ',':
            end_field();
            break;
        case '\r':
            break;
        case '\n':
            end_row();
            ++line;
            row.line = line;
            break;
        default:
            field += c;
        }
    }
    if ( !field.empty() || !row.fields.empty() || quoted )
        end_row();
    return rows;
}

inline std::string quote( std::string_view field )
{
    const bool needs = field.find_first_of( ",\"\r\n" ) != std::string_view::npos
                       || ( !field.empty() && ( field.front() == ' ' || field.back() == ' ' ) );
    if ( !needs )
        return std::string{ field };
    std::string out = "\"";
    for ( char c : field )
    {
        if ( c == '"' )
            out += '"';
        out += c;
    }
    out += '"';
    return out;
}

inline std::string join( const std::vector< std::string >& fields )
{
    std::string out;
    for ( std::size_t i = 0; i < fields.size(); ++i )
    {
        if ( i != 0 )
            out += ',';
        out += quote( fields[ i ] );
    }
    out += '\n';
    return out;
}

} // namespace statecheck::csv
