#include "itl/parser.hpp"

#include <cctype>
#include <optional>

namespace itl
{

namespace
{

enum class tok
{
    end,
    ident,
    kw_false,
    lparen,
    rparen,
    arrow,
    iff,
    bar,
    amp,
    tilde,
    next,
    diamond,
    box,
    wbox,
};

std::string describe( tok t )
{
    switch ( t )
    {
    case tok::end: return "end of input";
    case tok::ident: return "identifier";
    case tok::kw_false: return "'false'";
    case tok::lparen: return "'('";
    case tok::rparen: return "')'";
    case tok::arrow: return "'->'";
    case tok::iff: return "'<->'";
    case tok::bar: return "'|'";
    case tok::amp: return "'&'";
    case tok::tilde: return "'~'";
    case tok::next: return "'O'";
    case tok::diamond: return "'<>'";
    case tok::box: return "'[]'";
    case tok::wbox: return "'[*]'";
    }
    return "?";
}

struct token
{
    tok kind;
    std::string text;
    source_span span;
};

bool ident_start( char c ) { return std::isalpha( static_cast< unsigned char >( c ) ) || c == '_'; }
bool ident_char( char c ) { return std::isalnum( static_cast< unsigned char >( c ) ) || c == '_' || c == '\''; }

// Unicode spellings accepted on input (UTF-8 byte sequences).
struct alias
{
    std::string_view bytes;
    tok kind;
};

constexpr alias unicode_aliases[] = {
    { "○", tok::next },
    { "◯", tok::next },
    { "◇", tok::diamond },
    { "◊", tok::diamond },
    { "□", tok::box },
    { "⊡", tok::wbox },
    { "¬", tok::tilde },
    { "→", tok::arrow },
    { "↔", tok::iff },
    { "∧", tok::amp },
    { "∨", tok::bar },
    { "⊥", tok::kw_false },
};

class lexer
{
    std::string_view _text;
    std::size_t _pos = 0;

public:
    explicit lexer( std::string_view text ) : _text{ text } {}

    token next_token()
    {
        while ( _pos < _text.size() && std::isspace( static_cast< unsigned char >( _text[ _pos ] ) ) )
            ++_pos;
        const std::size_t start = _pos;
        if ( _pos >= _text.size() )
            return { tok::end, {}, { start, start } };

        auto rest = _text.substr( _pos );
        auto simple = [ & ]( tok k, std::size_t len ) {
            _pos += len;
            return token{ k, std::string{ rest.substr( 0, len ) }, { start, _pos } };
        };

        for ( const auto& a : unicode_aliases )
            if ( rest.substr( 0, a.bytes.size() ) == a.bytes )
                return simple( a.kind, a.bytes.size() );

        if ( rest.substr( 0, 3 ) == "<->" )
            return simple( tok::iff, 3 );
        if ( rest.substr( 0, 2 ) == "->" )
            return simple( tok::arrow, 2 );
        if ( rest.substr( 0, 2 ) == "<>" )
            return simple( tok::diamond, 2 );
        if ( rest.substr( 0, 2 ) == "[]" )
            return simple( tok::box, 2 );
        if ( rest.substr( 0, 3 ) == "[*]" )
            return simple( tok::wbox, 3 );

        switch ( rest[ 0 ] )
        {
        case '(': return simple( tok::lparen, 1 );
        case ')': return simple( tok::rparen, 1 );
        case '|': return simple( tok::bar, 1 );
        case '&': return simple( tok::amp, 1 );
        case '~': return simple( tok::tilde, 1 );
        default: break;
        }

        if ( ident_start( rest[ 0 ] ) )
        {
            std::size_t len = 1;
            while ( len < rest.size() && ident_char( rest[ len ] ) )
                ++len;
            std::string word{ rest.substr( 0, len ) };
            _pos += len;
            tok kind = tok::ident;
            if ( word == "O" )
                kind = tok::next;
            else if ( word == "false" )
                kind = tok::kw_false;
            return { kind, std::move( word ), { start, _pos } };
        }

        throw parse_error( "unexpected character '" + std::string( 1, rest[ 0 ] ) + "'", { start, start + 1 },
                           "formula" );
    }
};

class formula_parser
{
    lexer _lex;
    token _cur;

    void advance() { _cur = _lex.next_token(); }

    [[noreturn]] void fail( const std::string& expected )
    {
        std::string found = _cur.kind == tok::end ? "end of input" : "'" + _cur.text + "'";
        throw parse_error( "expected " + expected + ", found " + found, _cur.span, expected );
    }

    void expect( tok k )
    {
        if ( _cur.kind != k )
            fail( describe( k ) );
        advance();
    }

public:
    explicit formula_parser( std::string_view text ) : _lex{ text }, _cur{ _lex.next_token() } {}

    formula parse_all()
    {
        formula f = parse_impl();
        if ( _cur.kind != tok::end )
            fail( "'->', '<->', '|', '&' or end of input" );
        return f;
    }

private:
    formula parse_impl()
    {
        formula lhs = parse_disj();
        if ( _cur.kind == tok::arrow )
        {
            advance();
            return formula::implies( lhs, parse_impl() );
        }
        if ( _cur.kind == tok::iff )
        {
            advance();
            formula rhs = parse_disj();
            if ( _cur.kind == tok::iff || _cur.kind == tok::arrow )
                fail( "parentheses around a '<->' operand (it does not associate)" );
            return formula::iff( lhs, rhs );
        }
        return lhs;
    }

    formula parse_disj()
    {
        formula f = parse_conj();
        while ( _cur.kind == tok::bar )
        {
            advance();
            f = formula::disj( f, parse_conj() );
        }
        return f;
    }

    formula parse_conj()
    {
        formula f = parse_unary();
        while ( _cur.kind == tok::amp )
        {
            advance();
            f = formula::conj( f, parse_unary() );
        }
        return f;
    }

    formula parse_unary()
    {
        switch ( _cur.kind )
        {
        case tok::tilde: advance(); return formula::negation( parse_unary() );
        case tok::next: advance(); return formula::next( parse_unary() );
        case tok::diamond: advance(); return formula::eventually( parse_unary() );
        case tok::box: advance(); return formula::strong_box( parse_unary() );
        case tok::wbox: advance(); return formula::weak_box( parse_unary() );
        default: return parse_atom();
        }
    }

    formula parse_atom()
    {
        switch ( _cur.kind )
        {
        case tok::kw_false: advance(); return formula::bottom();
        case tok::ident:
        {
            formula f = formula::atom( _cur.text );
            advance();
            return f;
        }
        case tok::lparen:
        {
            advance();
            formula f = parse_impl();
            expect( tok::rparen );
            return f;
        }
        default: fail( "formula" );
        }
    }
};

// Binding strength; higher binds tighter.
constexpr int prec_impl = 1;
constexpr int prec_disj = 2;
constexpr int prec_conj = 3;
constexpr int prec_unary = 4;

int precedence( const formula& f )
{
    switch ( f.kind() )
    {
    case op::implies: return f.is_negation() ? prec_unary : prec_impl;
    case op::disj: return prec_disj;
    case op::conj: return prec_conj;
    default: return prec_unary;
    }
}

void print( const formula& f, std::string& out );

void print_wrapped( const formula& f, bool parens, std::string& out )
{
    if ( parens )
        out += '(';
    print( f, out );
    if ( parens )
        out += ')';
}

void print_prefix( std::string_view symbol, const formula& operand, std::string& out )
{
    out += symbol;
    std::string inner;
    print_wrapped( operand, precedence( operand ) < prec_unary, inner );
    if ( symbol == "O" && !inner.empty() && ident_char( inner[ 0 ] ) )
        out += ' ';
    out += inner;
}

void print( const formula& f, std::string& out )
{
    switch ( f.kind() )
    {
    case op::bottom: out += "false"; return;
    case op::atom: out += f.name(); return;
    case op::next: print_prefix( "O", f.operand(), out ); return;
    case op::eventually: print_prefix( "<>", f.operand(), out ); return;
    case op::strong_box: print_prefix( "[]", f.operand(), out ); return;
    case op::weak_box: print_prefix( "[*]", f.operand(), out ); return;
    case op::implies:
        if ( f.is_negation() )
        {
            print_prefix( "~", f.lhs(), out );
            return;
        }
        print_wrapped( f.lhs(), precedence( f.lhs() ) <= prec_impl, out );
        out += " -> ";
        print_wrapped( f.rhs(), precedence( f.rhs() ) < prec_impl, out );
        return;
    case op::disj:
        print_wrapped( f.lhs(), precedence( f.lhs() ) < prec_disj, out );
        out += " | ";
        print_wrapped( f.rhs(), precedence( f.rhs() ) <= prec_disj, out );
        return;
    case op::conj:
        print_wrapped( f.lhs(), precedence( f.lhs() ) < prec_conj, out );
        out += " & ";
        print_wrapped( f.rhs(), precedence( f.rhs() ) <= prec_conj, out );
        return;
    }
}

} // namespace

formula parse_formula( std::string_view text )
{
    return formula_parser{ text }.parse_all();
}

std::string print_formula( const formula& f )
{
    std::string out;
    print( f, out );
    return out;
}

} // namespace itl
