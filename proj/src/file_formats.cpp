#include "itl/parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>
#include <set>

namespace itl
{

namespace
{

// A slice of the input with its byte offset in the whole text.
struct piece
{
    std::string_view text;
    std::size_t offset = 0;

    [[nodiscard]] source_span span() const { return { offset, offset + text.size() }; }
    [[nodiscard]] bool empty() const { return text.empty(); }
    [[nodiscard]] std::string str() const { return std::string{ text }; }

    [[nodiscard]] piece sub( std::size_t pos, std::size_t len = std::string_view::npos ) const
    {
        pos = std::min( pos, text.size() );
        return { text.substr( pos, len ), offset + pos };
    }

    [[nodiscard]] piece trimmed() const
    {
        std::size_t b = 0;
        std::size_t e = text.size();
        while ( b < e && std::isspace( static_cast< unsigned char >( text[ b ] ) ) )
            ++b;
        while ( e > b && std::isspace( static_cast< unsigned char >( text[ e - 1 ] ) ) )
            --e;
        return sub( b, e - b );
    }
};

[[noreturn]] void fail( const std::string& message, source_span span, std::string expected = {} )
{
    throw parse_error( message, span, std::move( expected ) );
}

// Non-empty lines with comments removed and whitespace trimmed.
std::vector< piece > content_lines( std::string_view text )
{
    std::vector< piece > out;
    std::size_t pos = 0;
    while ( pos <= text.size() )
    {
        std::size_t end = text.find( '\n', pos );
        if ( end == std::string_view::npos )
            end = text.size();
        piece line{ text.substr( pos, end - pos ), pos };
        if ( auto hash = line.text.find( '#' ); hash != std::string_view::npos )
            line = line.sub( 0, hash );
        line = line.trimmed();
        if ( !line.empty() )
            out.push_back( line );
        pos = end + 1;
    }
    return out;
}

std::vector< piece > words( const piece& p )
{
    std::vector< piece > out;
    std::size_t i = 0;
    while ( i < p.text.size() )
    {
        while ( i < p.text.size() && std::isspace( static_cast< unsigned char >( p.text[ i ] ) ) )
            ++i;
        std::size_t start = i;
        while ( i < p.text.size() && !std::isspace( static_cast< unsigned char >( p.text[ i ] ) ) )
            ++i;
        if ( i > start )
            out.push_back( p.sub( start, i - start ) );
    }
    return out;
}

std::vector< piece > split( const piece& p, char sep )
{
    std::vector< piece > out;
    std::size_t start = 0;
    for ( std::size_t i = 0; i <= p.text.size(); ++i )
        if ( i == p.text.size() || p.text[ i ] == sep )
        {
            out.push_back( p.sub( start, i - start ).trimmed() );
            start = i + 1;
        }
    return out;
}

// Splits "key: rest" at the first colon.
std::pair< piece, piece > key_value( const piece& line, const std::string& format )
{
    auto colon = line.text.find( ':' );
    if ( colon == std::string_view::npos )
        fail( "expected 'key: value' in " + format + " file", line.span(), "':'" );
    return { line.sub( 0, colon ).trimmed(), line.sub( colon + 1 ).trimmed() };
}

formula parse_formula_at( const piece& p )
{
    try
    {
        return parse_formula( p.text );
    }
    catch ( const parse_error& e )
    {
        throw parse_error( e.what(), { p.offset + e.span().begin, p.offset + e.span().end }, e.expected() );
    }
}

bool is_identifier( std::string_view s )
{
    if ( s.empty() || !( std::isalpha( static_cast< unsigned char >( s[ 0 ] ) ) || s[ 0 ] == '_' ) )
        return false;
    return std::all_of( s.begin(), s.end(), []( char c ) {
        return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '\'';
    } );
}

std::size_t parse_count( const piece& p )
{
    std::size_t value = 0;
    auto [ ptr, ec ] = std::from_chars( p.text.data(), p.text.data() + p.text.size(), value );
    if ( ec != std::errc{} || ptr != p.text.data() + p.text.size() )
        fail( "expected a non-negative integer, found '" + p.str() + "'", p.span(), "integer" );
    return value;
}

rational parse_rational_at( const piece& p )
{
    static const std::regex number{ R"([+-]?\d+(/\d+)?)" };
    std::string s = p.str();
    if ( !std::regex_match( s, number ) )
        fail( "expected a rational number, found '" + s + "'", p.span(), "rational" );
    if ( s[ 0 ] == '+' )
        s.erase( 0, 1 );
    rational q{ s };
    if ( q.get_den() == 0 )
        fail( "zero denominator", p.span(), "rational" );
    q.canonicalize();
    return q;
}

} // namespace

rational parse_rational( std::string_view text )
{
    return parse_rational_at( piece{ text, 0 }.trimmed() );
}

// ---------------------------------------------------------------------------
// poset models

poset_model parse_poset_model( std::string_view text )
{
    std::optional< piece > worlds_line;
    std::vector< piece > order_items;
    std::optional< piece > step_line;
    std::vector< std::pair< piece, piece > > vals; // (atom, value)

    for ( const auto& line : content_lines( text ) )
    {
        auto [ key, value ] = key_value( line, "model" );
        if ( key.text == "worlds" )
        {
            if ( worlds_line )
                fail( "duplicate worlds section", key.span() );
            worlds_line = value;
        }
        else if ( key.text == "order" )
        {
            auto ws = words( value );
            order_items.insert( order_items.end(), ws.begin(), ws.end() );
        }
        else if ( key.text == "step" )
        {
            if ( step_line )
                fail( "duplicate step section", key.span() );
            step_line = value;
        }
        else if ( key.text.substr( 0, 4 ) == "val " )
        {
            piece atom = key.sub( 4 ).trimmed();
            if ( !is_identifier( atom.text ) )
                fail( "expected an atom name after 'val'", atom.span(), "identifier" );
            vals.emplace_back( atom, value );
        }
        else
            fail( "unknown section '" + key.str() + "'", key.span(), "worlds, order, step or val" );
    }

    if ( !worlds_line || words( *worlds_line ).empty() )
        fail( "at least one world required", worlds_line ? worlds_line->span() : source_span{}, "worlds" );

    std::vector< std::string > names;
    for ( const auto& w : words( *worlds_line ) )
    {
        if ( !is_identifier( w.text ) )
            fail( "invalid world name '" + w.str() + "'", w.span(), "identifier" );
        if ( std::find( names.begin(), names.end(), w.text ) != names.end() )
            fail( "duplicate world '" + w.str() + "'", w.span() );
        names.push_back( w.str() );
    }
    if ( names.size() > max_worlds )
        fail( "at most " + std::to_string( max_worlds ) + " worlds supported", worlds_line->span() );

    auto lookup = [ & ]( const piece& p ) {
        auto it = std::find( names.begin(), names.end(), p.text );
        if ( it == names.end() )
            fail( "unknown world '" + p.str() + "'", p.span(), "world name" );
        return static_cast< std::size_t >( it - names.begin() );
    };

    std::vector< std::pair< std::size_t, std::size_t > > order;
    for ( const auto& item : order_items )
    {
        auto le = item.text.find( "<=" );
        if ( le == std::string_view::npos )
            fail( "expected 'a<=b'", item.span(), "'<='" );
        order.emplace_back( lookup( item.sub( 0, le ) ), lookup( item.sub( le + 2 ) ) );
    }

    if ( !step_line )
        fail( "step section required", source_span{ text.size(), text.size() }, "step" );
    std::vector< std::optional< std::size_t > > step( names.size() );
    for ( const auto& item : words( *step_line ) )
    {
        auto arrow = item.text.find( "->" );
        if ( arrow == std::string_view::npos )
            fail( "expected 'a->b'", item.span(), "'->'" );
        std::size_t from = lookup( item.sub( 0, arrow ) );
        if ( step[ from ] )
            fail( "step of '" + names[ from ] + "' given twice", item.span() );
        step[ from ] = lookup( item.sub( arrow + 2 ) );
    }
    std::vector< std::size_t > steps;
    for ( std::size_t w = 0; w < names.size(); ++w )
    {
        if ( !step[ w ] )
            fail( "step missing for world '" + names[ w ] + "'", step_line->span(), names[ w ] + "->..." );
        steps.push_back( *step[ w ] );
    }

    poset_model m{ dynamic_poset::from_relation( names, order, steps ), {} };
    std::set< std::string > seen;
    for ( const auto& [ atom, value ] : vals )
    {
        if ( !seen.insert( atom.str() ).second )
            fail( "valuation of '" + atom.str() + "' given twice", atom.span() );
        world_set s;
        for ( const auto& w : words( value ) )
            s.insert( lookup( w ) );
        m.val.assign( atom.str(), s );
    }
    m.check_valuation();
    return m;
}

std::string print_poset_model( const poset_model& m )
{
    const auto& f = m.frame;
    std::string out = "worlds:";
    for ( const auto& n : f.names() )
        out += " " + n;
    out += "\norder:";
    for ( std::size_t a = 0; a < f.size(); ++a )
        f.up( a ).for_each( [ & ]( std::size_t b ) {
            if ( a != b )
                out += " " + f.name( a ) + "<=" + f.name( b );
        } );
    out += "\nstep:";
    for ( std::size_t w = 0; w < f.size(); ++w )
        out += " " + f.name( w ) + "->" + f.name( f.step( w ) );
    out += "\n";
    for ( const auto& [ atom, set ] : m.val.entries() )
    {
        out += "val " + atom + ":";
        set.for_each( [ & ]( std::size_t w ) { out += " " + f.name( w ); } );
        out += "\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// intervals and real systems

namespace
{

std::optional< rational > parse_bound( const piece& p, bool lower )
{
    if ( p.text == "inf" || p.text == "+inf" )
    {
        if ( lower )
            fail( "lower bound cannot be +inf", p.span(), "number or -inf" );
        return std::nullopt;
    }
    if ( p.text == "-inf" )
    {
        if ( !lower )
            fail( "upper bound cannot be -inf", p.span(), "number or inf" );
        return std::nullopt;
    }
    return parse_rational_at( p );
}

interval_set parse_component( const piece& p )
{
    if ( p.text.size() < 2 )
        fail( "expected an interval", p.span(), "interval" );
    const char open = p.text.front();
    const char close = p.text.back();
    if ( open != '(' && open != '[' )
        fail( "expected '(' or '['", p.sub( 0, 1 ).span(), "'(' or '['" );
    if ( close != ')' && close != ']' )
        fail( "expected ')' or ']'", p.sub( p.text.size() - 1 ).span(), "')' or ']'" );
    auto parts = split( p.sub( 1, p.text.size() - 2 ), ',' );
    if ( parts.size() != 2 )
        fail( "an interval has exactly two bounds", p.span(), "'a, b'" );
    interval_set::bound lo{ parse_bound( parts[ 0 ], true ), open == '[' };
    interval_set::bound hi{ parse_bound( parts[ 1 ], false ), close == ']' };
    try
    {
        return interval_set::interval( lo, hi );
    }
    catch ( const invalid_structure& e )
    {
        fail( e.what(), p.span(), "interval" );
    }
}

interval_set parse_interval_set_at( const piece& p )
{
    piece t = p.trimmed();
    if ( t.text == "empty" || t.text == "{}" )
        return interval_set::empty();
    if ( t.empty() )
        fail( "expected an interval set", t.span(), "interval or 'empty'" );

    // components are separated by a standalone 'u'
    interval_set out;
    std::size_t start = 0;
    int depth = 0;
    for ( std::size_t i = 0; i <= t.text.size(); ++i )
    {
        const char c = i < t.text.size() ? t.text[ i ] : '\0';
        if ( c == '(' || c == '[' )
            ++depth;
        if ( c == ')' || c == ']' )
            --depth;
        if ( i == t.text.size() || ( depth == 0 && c == 'u' ) )
        {
            out = out | parse_component( t.sub( start, i - start ).trimmed() );
            start = i + 1;
        }
    }
    return out;
}

affine parse_affine( const piece& p )
{
    // signed terms: r, r*x, rx, x
    piece t = p.trimmed();
    if ( t.empty() )
        fail( "expected an affine expression", t.span(), "a*x + c" );
    affine f{ 0, 0 };
    std::size_t i = 0;
    bool first = true;
    while ( i < t.text.size() )
    {
        while ( i < t.text.size() && t.text[ i ] == ' ' )
            ++i;
        int sign = 1;
        if ( t.text[ i ] == '+' || t.text[ i ] == '-' )
        {
            sign = t.text[ i ] == '-' ? -1 : 1;
            ++i;
            while ( i < t.text.size() && t.text[ i ] == ' ' )
                ++i;
        }
        else if ( !first )
            fail( "expected '+' or '-'", t.sub( i, 1 ).span(), "'+' or '-'" );
        std::size_t start = i;
        while ( i < t.text.size() && t.text[ i ] != '+' && t.text[ i ] != '-' )
            ++i;
        piece term = t.sub( start, i - start ).trimmed();
        if ( term.empty() )
            fail( "missing term", t.sub( start, 1 ).span(), "term" );

        if ( term.text.back() == 'x' )
        {
            piece coef = term.sub( 0, term.text.size() - 1 ).trimmed();
            if ( !coef.empty() && coef.text.back() == '*' )
                coef = coef.sub( 0, coef.text.size() - 1 ).trimmed();
            rational a = coef.empty() ? rational{ 1 } : parse_rational_at( coef );
            f.slope += sign * a;
        }
        else
            f.intercept += sign * parse_rational_at( term );
        first = false;
    }
    return f;
}

// Lower and upper bound of a guard such as "x<=0", "0<x<=1" or "x>1".
std::pair< std::optional< rational >, std::optional< rational > > parse_guard( const piece& p )
{
    static const std::regex upper{ R"(x\s*<=?\s*([+-]?\d+(?:/\d+)?))" };
    static const std::regex lower{ R"(x\s*>=?\s*([+-]?\d+(?:/\d+)?))" };
    static const std::regex lower_rev{ R"(([+-]?\d+(?:/\d+)?)\s*<=?\s*x)" };
    static const std::regex between{ R"(([+-]?\d+(?:/\d+)?)\s*<=?\s*x\s*<=?\s*([+-]?\d+(?:/\d+)?))" };

    std::string s = p.str();
    std::smatch m;
    if ( std::regex_match( s, m, between ) )
        return { parse_rational( m[ 1 ].str() ), parse_rational( m[ 2 ].str() ) };
    if ( std::regex_match( s, m, upper ) )
        return { std::nullopt, parse_rational( m[ 1 ].str() ) };
    if ( std::regex_match( s, m, lower ) || std::regex_match( s, m, lower_rev ) )
        return { parse_rational( m[ 1 ].str() ), std::nullopt };
    if ( s == "true" )
        return { std::nullopt, std::nullopt };
    fail( "expected a guard such as 'x<=0', 'x>0' or '0<=x<=1'", p.span(), "guard" );
}

piecewise_affine_map parse_map( const piece& p )
{
    piece t = p.trimmed();
    if ( t.text.substr( 0, 9 ) != "piecewise" )
        return piecewise_affine_map{ parse_affine( t ) };

    std::vector< rational > breaks;
    std::vector< affine > pieces;
    std::optional< rational > previous_hi;
    auto parts = split( t.sub( 9 ), ';' );
    for ( std::size_t i = 0; i < parts.size(); ++i )
    {
        const auto& part = parts[ i ];
        auto colon = part.text.find( ':' );
        if ( colon == std::string_view::npos )
            fail( "expected 'guard : expression'", part.span(), "':'" );
        auto [ lo, hi ] = parse_guard( part.sub( 0, colon ).trimmed() );
        if ( i == 0 && lo )
            fail( "the first piece must be unbounded below", part.span(), "x<=b" );
        if ( i > 0 && ( !lo || !previous_hi || *lo != *previous_hi ) )
            fail( "pieces must be listed left to right and meet at their breakpoints", part.span() );
        if ( i + 1 == parts.size() && hi )
            fail( "the last piece must be unbounded above", part.span(), "x>=b" );
        if ( i + 1 < parts.size() && !hi )
            fail( "only the last piece may be unbounded above", part.span() );
        if ( lo && hi && !( *lo < *hi ) )
            fail( "empty piece", part.span() );
        if ( hi )
            breaks.push_back( *hi );
        previous_hi = hi;
        pieces.push_back( parse_affine( part.sub( colon + 1 ) ) );
    }
    try
    {
        return piecewise_affine_map{ breaks, pieces };
    }
    catch ( const invalid_structure& e )
    {
        fail( e.what(), t.span() );
    }
}

} // namespace

interval_set parse_interval_set( std::string_view text )
{
    return parse_interval_set_at( piece{ text, 0 } );
}

real_system parse_real_system( std::string_view text )
{
    real_system sys;
    bool have_map = false;
    std::set< std::string > seen;
    for ( const auto& line : content_lines( text ) )
    {
        auto [ key, value ] = key_value( line, "system" );
        if ( key.text == "map" )
        {
            if ( have_map )
                fail( "duplicate map", key.span() );
            sys.map = parse_map( value );
            have_map = true;
        }
        else if ( key.text == "caps" )
        {
            for ( const auto& item : words( value ) )
            {
                auto eq = item.text.find( '=' );
                if ( eq == std::string_view::npos )
                    fail( "expected name=value", item.span(), "'='" );
                auto name = item.sub( 0, eq );
                std::size_t n = parse_count( item.sub( eq + 1 ) );
                if ( name.text == "iter" )
                    sys.caps.iter = n;
                else if ( name.text == "restart" )
                    sys.caps.restart = n;
                else if ( name.text == "orbit" )
                    sys.caps.orbit = n;
                else if ( name.text == "window" )
                    sys.caps.window = n;
                else
                    fail( "unknown cap '" + name.str() + "'", name.span(), "iter, restart, orbit or window" );
            }
        }
        else if ( key.text.substr( 0, 4 ) == "val " )
        {
            piece atom = key.sub( 4 ).trimmed();
            if ( !is_identifier( atom.text ) )
                fail( "expected an atom name after 'val'", atom.span(), "identifier" );
            if ( !seen.insert( atom.str() ).second )
                fail( "valuation of '" + atom.str() + "' given twice", atom.span() );
            sys.val[ atom.str() ] = parse_interval_set_at( value );
        }
        else
            fail( "unknown section '" + key.str() + "'", key.span(), "map, val or caps" );
    }
    if ( !have_map )
        fail( "map section required", source_span{ text.size(), text.size() }, "map" );
    sys.validate();
    return sys;
}

std::string print_real_system( const real_system& s )
{
    std::string out = "map: " + s.map.to_string() + "\n";
    for ( const auto& [ atom, set ] : s.val )
        out += "val " + atom + ": " + set.to_string() + "\n";
    out += "caps: iter=" + std::to_string( s.caps.iter ) + " restart=" + std::to_string( s.caps.restart ) +
           " orbit=" + std::to_string( s.caps.orbit ) + " window=" + std::to_string( s.caps.window ) + "\n";
    return out;
}

// ---------------------------------------------------------------------------
// derivations

derivation parse_derivation( std::string_view text )
{
    derivation d;
    for ( const auto& line : content_lines( text ) )
    {
        const std::size_t number = d.lines.size() + 1;
        auto dot = line.text.find( '.' );
        if ( dot == std::string_view::npos )
            fail( "expected 'N. formula ; justification'", line.span(), "line number" );
        piece num = line.sub( 0, dot ).trimmed();
        if ( parse_count( num ) != number )
            fail( "expected line number " + std::to_string( number ), num.span(), std::to_string( number ) );

        piece rest = line.sub( dot + 1 );
        auto semi = rest.text.find( ';' );
        if ( semi == std::string_view::npos )
            fail( "missing justification after ';'", rest.span(), "';'" );
        derivation_line dl;
        dl.f = parse_formula_at( rest.sub( 0, semi ).trimmed() );
        dl.source_line = static_cast< std::size_t >( std::count( text.begin(), text.begin() + line.offset, '\n' ) ) + 1;

        piece just = rest.sub( semi + 1 ).trimmed();
        auto ws = words( just );
        if ( ws.empty() )
            fail( "missing justification", just.span(), "axiom, ipc-taut or a rule" );

        if ( ws[ 0 ].text == "ipc-taut" )
        {
            if ( ws.size() > 1 )
                fail( "ipc-taut takes no arguments", ws[ 1 ].span() );
            dl.just.how = justification::kind::ipc_taut;
        }
        else if ( ws[ 0 ].text == "axiom" )
        {
            if ( ws.size() < 2 )
                fail( "missing schema name", just.span(), "schema name" );
            dl.just.how = justification::kind::axiom;
            dl.just.schema = ws[ 1 ].str();
            piece tail = just.sub( ws[ 1 ].offset + ws[ 1 ].text.size() - just.offset ).trimmed();
            if ( !tail.empty() )
            {
                if ( tail.text.front() != '{' || tail.text.back() != '}' )
                    fail( "expected '{mv:=formula, ...}'", tail.span(), "'{'" );
                for ( const auto& binding : split( tail.sub( 1, tail.text.size() - 2 ), ',' ) )
                {
                    auto assign = binding.text.find( ":=" );
                    if ( assign == std::string_view::npos )
                        fail( "expected 'mv:=formula'", binding.span(), "':='" );
                    piece mv = binding.sub( 0, assign ).trimmed();
                    if ( !is_identifier( mv.text ) )
                        fail( "invalid metavariable", mv.span(), "identifier" );
                    if ( dl.just.subst.count( mv.str() ) )
                        fail( "metavariable bound twice", mv.span() );
                    dl.just.subst.emplace( mv.str(), parse_formula_at( binding.sub( assign + 2 ).trimmed() ) );
                }
            }
        }
        else if ( auto rule = parse_rule_kind( ws[ 0 ].text ) )
        {
            dl.just.how = justification::kind::rule;
            dl.just.rule = *rule;
            if ( ws.size() - 1 != premise_count( *rule ) )
                fail( ws[ 0 ].str() + " takes " + std::to_string( premise_count( *rule ) ) + " line reference(s)",
                      just.span(), "line numbers" );
            for ( std::size_t k = 1; k < ws.size(); ++k )
            {
                std::size_t ref = parse_count( ws[ k ] );
                if ( ref == 0 || ref >= number )
                    fail( "dangling reference to line " + ws[ k ].str(), ws[ k ].span(),
                          "a line number below " + std::to_string( number ) );
                dl.just.premises.push_back( ref - 1 );
            }
        }
        else
            fail( "unknown justification '" + ws[ 0 ].str() + "'", ws[ 0 ].span(),
                  "axiom, ipc-taut, mp, nec-next, nec-box, mon-dia or ind-dia" );
        d.lines.push_back( std::move( dl ) );
    }
    if ( d.lines.empty() )
        fail( "empty derivation", source_span{ 0, text.size() }, "at least one line" );
    return d;
}

std::string print_derivation( const derivation& d )
{
    std::string out;
    for ( std::size_t i = 0; i < d.lines.size(); ++i )
    {
        const auto& line = d.lines[ i ];
        out += std::to_string( i + 1 ) + ". " + print_formula( line.f ) + " ; ";
        switch ( line.just.how )
        {
        case justification::kind::ipc_taut: out += "ipc-taut"; break;
        case justification::kind::axiom:
        {
            out += "axiom " + line.just.schema;
            if ( !line.just.subst.empty() )
            {
                out += " {";
                bool first = true;
                for ( const auto& [ mv, g ] : line.just.subst )
                {
                    out += ( first ? "" : ", " ) + mv + ":=" + print_formula( g );
                    first = false;
                }
                out += "}";
            }
            break;
        }
        case justification::kind::rule:
            out += to_string( line.just.rule );
            for ( auto p : line.just.premises )
                out += " " + std::to_string( p + 1 );
            break;
        }
        out += "\n";
    }
    return out;
}

} // namespace itl
