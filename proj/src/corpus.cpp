#include "itl/corpus.hpp"

#include "itl/errors.hpp"
#include "itl/parser.hpp"
#include "itl/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

#ifndef ITL_CORPUS_DIR
#define ITL_CORPUS_DIR "corpus"
#endif

namespace itl
{

namespace fs = std::filesystem;

namespace
{

struct kind_info
{
    entry_kind kind;
    const char* name;
    const char* dir;
    const char* ext;
};

constexpr kind_info kinds[] = {
    { entry_kind::poset_model, "poset", "poset", ".dpm" },
    { entry_kind::real_system, "real", "real", ".rds" },
    { entry_kind::derivation, "deriv", "deriv", ".drv" },
    { entry_kind::formula, "formula", "formula", ".fml" },
    { entry_kind::edges, "edges", "edges", ".edg" },
};

const kind_info& info( entry_kind k )
{
    for ( const auto& i : kinds )
        if ( i.kind == k )
            return i;
    return kinds[ 0 ];
}

std::string read_file( const fs::path& p )
{
    std::ifstream in{ p, std::ios::binary };
    if ( !in )
        throw corpus_missing( "cannot read " + p.string() );
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string trim( std::string_view s )
{
    auto b = s.find_first_not_of( " \t\r" );
    if ( b == std::string_view::npos )
        return {};
    auto e = s.find_last_not_of( " \t\r" );
    return std::string( s.substr( b, e - b + 1 ) );
}

// Non-blank lines with '#' comments removed, paired with 1-based numbers.
std::vector< std::pair< std::size_t, std::string > > lines_of( std::string_view text )
{
    std::vector< std::pair< std::size_t, std::string > > out;
    std::size_t number = 0;
    std::size_t at = 0;
    while ( at <= text.size() )
    {
        auto nl = text.find( '\n', at );
        if ( nl == std::string_view::npos )
            nl = text.size();
        ++number;
        auto line = text.substr( at, nl - at );
        line = line.substr( 0, line.find( '#' ) );
        if ( auto t = trim( line ); !t.empty() )
            out.emplace_back( number, t );
        at = nl + 1;
    }
    return out;
}

std::vector< std::string > split_words( const std::string& s )
{
    std::istringstream in{ s };
    std::vector< std::string > out;
    for ( std::string w; in >> w; )
        out.push_back( w );
    return out;
}

template < typename F >
auto with_id( std::string_view id, F&& f ) -> decltype( f() )
{
    try
    {
        return f();
    }
    catch ( const parse_error& e )
    {
        throw parse_error( std::string( id ) + ": " + e.what(), e.span(), e.expected() );
    }
    catch ( const unknown_entry& )
    {
        throw;
    }
    catch ( const corpus_error& )
    {
        throw;
    }
    catch ( const error& e )
    {
        throw corpus_error( std::string( id ) + ": " + e.what() );
    }
}

} // namespace

std::string to_string( entry_kind k )
{
    return info( k ).name;
}

std::vector< corpus_edge > parse_edges( std::string_view text )
{
    std::vector< corpus_edge > out;
    for ( const auto& [ number, line ] : lines_of( text ) )
    {
        auto w = split_words( line );
        if ( w.size() != 6 )
            throw parse_error( "line " + std::to_string( number ) +
                                   ": expected 'from to solid|dashed label witness derivation'",
                               source_span{}, "six fields" );
        corpus_edge e;
        e.from = w[ 0 ];
        e.to = w[ 1 ];
        if ( w[ 2 ] != "solid" && w[ 2 ] != "dashed" )
            throw parse_error( "line " + std::to_string( number ) + ": style must be solid or dashed",
                               source_span{}, "solid or dashed" );
        e.solid = w[ 2 ] == "solid";
        e.label = w[ 3 ];
        if ( !find_schema( e.label ) )
            throw parse_error( "line " + std::to_string( number ) + ": unknown schema " + e.label, source_span{} );
        // kind:id@point or none
        if ( w[ 4 ] == "none" )
            e.witness_kind = "none";
        else
        {
            auto colon = w[ 4 ].find( ':' );
            auto at = w[ 4 ].find( '@' );
            if ( colon == std::string::npos || at == std::string::npos || at < colon )
                throw parse_error( "line " + std::to_string( number ) + ": witness must be kind:id@point or none",
                                   source_span{} );
            e.witness_kind = w[ 4 ].substr( 0, colon );
            e.witness_id = w[ 4 ].substr( colon + 1, at - colon - 1 );
            e.witness_point = w[ 4 ].substr( at + 1 );
            if ( e.witness_kind != "poset" && e.witness_kind != "real" )
                throw parse_error( "line " + std::to_string( number ) + ": witness kind must be poset or real",
                                   source_span{} );
        }
        e.derivation = w[ 5 ];
        (void)logic_by_name( e.from + ".db" );
        (void)logic_by_name( e.to + ".db" );
        e.source_line = number;
        out.push_back( std::move( e ) );
    }
    return out;
}

corpus::corpus( fs::path dir ) : _dir{ std::move( dir ) }
{
}

corpus corpus::open( std::optional< fs::path > dir )
{
    if ( !dir )
    {
        if ( const char* env = std::getenv( "ITL_CORPUS" ); env && *env )
            dir = fs::path{ env };
        else
            dir = fs::path{ ITL_CORPUS_DIR };
    }
    std::error_code ec;
    fs::path root = fs::absolute( *dir, ec );
    if ( ec || !fs::is_regular_file( root / "index.txt" ) )
        throw corpus_missing( "no corpus index at " + ( *dir / "index.txt" ).string() );

    corpus c{ root };
    for ( const auto& [ number, line ] : lines_of( read_file( root / "index.txt" ) ) )
    {
        auto w = split_words( line );
        if ( w.size() != 3 )
            throw corpus_error( "index.txt line " + std::to_string( number ) + ": expected 'id kind anchor'" );
        auto k = std::find_if( std::begin( kinds ), std::end( kinds ),
                               [ & ]( const kind_info& i ) { return w[ 1 ] == i.name; } );
        if ( k == std::end( kinds ) )
            throw corpus_error( "index.txt line " + std::to_string( number ) + ": unknown kind " + w[ 1 ] );
        corpus_entry e{ w[ 0 ], k->kind, root / k->dir / ( w[ 0 ] + k->ext ), w[ 2 ] };
        for ( const auto& other : c._entries )
            if ( other.id == e.id )
                throw corpus_error( "index.txt line " + std::to_string( number ) + ": duplicate id " + e.id );
        c._entries.push_back( std::move( e ) );
    }
    return c;
}

const corpus_entry& corpus::entry( std::string_view id ) const
{
    for ( const auto& e : _entries )
        if ( e.id == id )
            return e;
    throw unknown_entry( "unknown corpus entry " + std::string( id ) );
}

artifact corpus::load( std::string_view id ) const
{
    const auto& e = entry( id );
    return with_id( id, [ & ]() -> artifact {
        auto text = read_file( e.path );
        switch ( e.kind )
        {
        case entry_kind::poset_model: return parse_poset_model( text );
        case entry_kind::real_system: return parse_real_system( text );
        case entry_kind::derivation: return parse_derivation( text );
        case entry_kind::formula:
        {
            auto lines = lines_of( text );
            if ( lines.size() != 1 )
                throw parse_error( "a formula entry holds exactly one formula", source_span{} );
            return parse_formula( lines[ 0 ].second );
        }
        case entry_kind::edges: return parse_edges( text );
        }
        throw corpus_error( "unreachable" );
    } );
}

namespace
{

template < typename T >
T expect_kind( const corpus& c, std::string_view id )
{
    auto a = c.load( id );
    if ( auto* v = std::get_if< T >( &a ) )
        return std::move( *v );
    throw corpus_error( std::string( id ) + ": entry is a " + to_string( c.entry( id ).kind ) );
}

} // namespace

poset_model corpus::load_poset( std::string_view id ) const
{
    return expect_kind< poset_model >( *this, id );
}

real_system corpus::load_real( std::string_view id ) const
{
    return expect_kind< real_system >( *this, id );
}

derivation corpus::load_derivation( std::string_view id ) const
{
    return expect_kind< derivation >( *this, id );
}

formula corpus::load_formula( std::string_view id ) const
{
    return expect_kind< formula >( *this, id );
}

std::vector< corpus_edge > corpus::load_edges( std::string_view id ) const
{
    return expect_kind< std::vector< corpus_edge > >( *this, id );
}

std::vector< expectation > corpus::expectations() const
{
    std::vector< expectation > out;
    auto path = _dir / "expect.txt";
    if ( !fs::exists( path ) )
        return out;
    for ( const auto& [ number, line ] : lines_of( read_file( path ) ) )
    {
        std::vector< std::string > fields;
        std::size_t at = 0;
        for ( int k = 0; k < 3; ++k )
        {
            auto semi = line.find( ';', at );
            if ( semi == std::string::npos )
                throw corpus_error( "expect.txt line " + std::to_string( number ) +
                                    ": expected 'id ; check ; argument ; text'" );
            fields.push_back( trim( std::string_view( line ).substr( at, semi - at ) ) );
            at = semi + 1;
        }
        fields.push_back( trim( std::string_view( line ).substr( at ) ) );
        (void)entry( fields[ 0 ] );
        out.push_back( { fields[ 0 ], fields[ 1 ], fields[ 2 ], fields[ 3 ], number } );
    }
    return out;
}

// ---------------------------------------------------------------------------
// anchored checks

namespace
{

std::string world_list( const dynamic_poset& f, world_set s )
{
    std::string out;
    s.for_each( [ & ]( std::size_t w ) { out += ( out.empty() ? "" : " " ) + f.name( w ); } );
    return out.empty() ? "none" : out;
}

void check_poset( const corpus& c, const expectation& x, expectation_result& r )
{
    auto m = c.load_poset( x.id );
    const auto& f = m.frame;
    if ( x.check == "frame" )
    {
        std::string got = f.continuous() ? "continuous" : "not-continuous";
        got += f.open() ? " open" : " not-open";
        auto want = split_words( x.arg );
        auto have = split_words( got );
        r.passed = std::all_of( want.begin(), want.end(), [ & ]( const std::string& w ) {
            return std::find( have.begin(), have.end(), w ) != have.end();
        } );
        r.detail = got;
        return;
    }
    auto phi = parse_formula( x.text );
    auto ext = eval( m, phi );
    auto refuted = ext.complement( f.size() );
    if ( x.check == "falsified-exactly" )
    {
        world_set want;
        for ( const auto& w : split_words( x.arg ) )
        {
            auto i = f.index_of( w );
            if ( !i )
                throw corpus_error( x.id + ": no world " + w );
            want.insert( *i );
        }
        r.passed = refuted == want;
        r.detail = "falsified at: " + world_list( f, refuted );
    }
    else if ( x.check == "valid" )
    {
        r.passed = refuted.empty();
        r.detail = "falsified at: " + world_list( f, refuted );
    }
    else
        throw corpus_error( "expect.txt line " + std::to_string( x.source_line ) + ": unknown check " + x.check );
}

void check_real( const corpus& c, const expectation& x, expectation_result& r )
{
    auto sys = c.load_real( x.id );
    auto phi = parse_formula( x.text );
    auto out = eval_real( sys, phi );
    r.detail = out.value.to_string() + " [" + to_string( out.status ) + "]";
    if ( out.status == real_status::undetermined )
    {
        r.passed = false;
        r.detail += " " + out.reason;
        return;
    }
    if ( x.check == "extension" )
        r.passed = out.value == parse_interval_set( x.arg );
    else if ( x.check == "excludes" )
        r.passed = !out.value.contains( parse_rational( x.arg ) );
    else if ( x.check == "includes" )
        r.passed = out.value.contains( parse_rational( x.arg ) );
    else
        throw corpus_error( "expect.txt line " + std::to_string( x.source_line ) + ": unknown check " + x.check );
}

void check_derivation( const corpus& c, const expectation& x, expectation_result& r )
{
    auto d = c.load_derivation( x.id );
    auto logic = logic_by_name( x.arg );
    auto v = check( d, logic );
    if ( x.check == "accepted" )
    {
        r.passed = v.accepted;
        r.detail = v.accepted ? "accepted (" + std::to_string( v.lines ) + " lines)"
                              : "rejected at line " + std::to_string( v.failing_index + 1 ) + ": " + v.reason;
        if ( v.accepted && !x.text.empty() && !( d.lines.back().f == parse_formula( x.text ) ) )
        {
            r.passed = false;
            r.detail += ", but concludes " + print_formula( d.lines.back().f );
        }
    }
    else if ( x.check == "rejected" )
    {
        r.passed = !v.accepted;
        r.detail = v.accepted ? "accepted" : "rejected at line " + std::to_string( v.failing_index + 1 ) + ": " + v.reason;
    }
    else
        throw corpus_error( "expect.txt line " + std::to_string( x.source_line ) + ": unknown check " + x.check );
}

void check_formula( const corpus& c, const expectation& x, expectation_result& r )
{
    auto phi = c.load_formula( x.id );
    auto w = split_words( x.arg );
    if ( w.size() != 2 )
        throw corpus_error( "expect.txt line " + std::to_string( x.source_line ) + ": expected 'class bound'" );
    auto cls = parse_model_class( w[ 0 ] );
    if ( !cls )
        throw corpus_error( "expect.txt line " + std::to_string( x.source_line ) + ": unknown class " + w[ 0 ] );
    semantic_class sc{ *cls, static_cast< std::size_t >( std::stoul( w[ 1 ] ) ) };
    auto res = validity( phi, sc );
    r.detail = to_string( res.outcome );
    if ( res.witness )
        r.detail += " with " + std::to_string( res.witness->model.frame.size() ) + " worlds";
    if ( x.check == "valid-up-to" )
        r.passed = res.outcome == validity_outcome::valid_up_to;
    else if ( x.check == "countermodel" )
        r.passed = res.outcome == validity_outcome::countermodel;
    else
        throw corpus_error( "expect.txt line " + std::to_string( x.source_line ) + ": unknown check " + x.check );
}

void check_edges( const corpus& c, const expectation& x, expectation_result& r )
{
    auto edges = c.load_edges( x.id );
    auto solid = std::count_if( edges.begin(), edges.end(), []( const corpus_edge& e ) { return e.solid; } );
    std::string got = std::to_string( solid ) + " solid " + std::to_string( edges.size() - solid ) + " dashed";
    r.detail = got;
    if ( x.check != "edges" )
        throw corpus_error( "expect.txt line " + std::to_string( x.source_line ) + ": unknown check " + x.check );
    r.passed = got == x.arg;
}

} // namespace

std::vector< expectation_result > run_paper_suite( const corpus& c, std::string_view filter )
{
    std::vector< expectation_result > out;
    for ( const auto& e : c.entries() )
    {
        if ( !filter.empty() && e.id != filter )
            continue;
        expectation_result r;
        r.exp = { e.id, "loads", to_string( e.kind ), e.anchor, 0 };
        try
        {
            (void)c.load( e.id );
            r.passed = true;
            r.detail = "ok";
        }
        catch ( const error& ex )
        {
            r.detail = ex.what();
        }
        out.push_back( std::move( r ) );
    }
    if ( !filter.empty() )
        (void)c.entry( filter );

    for ( const auto& x : c.expectations() )
    {
        if ( !filter.empty() && x.id != filter )
            continue;
        expectation_result r;
        r.exp = x;
        try
        {
            switch ( c.entry( x.id ).kind )
            {
            case entry_kind::poset_model: check_poset( c, x, r ); break;
            case entry_kind::real_system: check_real( c, x, r ); break;
            case entry_kind::derivation: check_derivation( c, x, r ); break;
            case entry_kind::formula: check_formula( c, x, r ); break;
            case entry_kind::edges: check_edges( c, x, r ); break;
            }
        }
        catch ( const error& ex )
        {
            r.passed = false;
            r.detail = ex.what();
        }
        out.push_back( std::move( r ) );
    }
    return out;
}

} // namespace itl
