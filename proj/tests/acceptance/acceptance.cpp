// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance          run all
//   acceptance 3 11     run the listed ones
// Exit status is 0 only when every selected criterion passes.

#include "support.hpp"

#include "itl/corpus.hpp"
#include "itl/errors.hpp"
#include "itl/hilbert.hpp"
#include "itl/parser.hpp"
#include "itl/poset_model.hpp"
#include "itl/realline.hpp"
#include "itl/search.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <sstream>

using namespace itl;

namespace
{

formula P( const char* s ) { return parse_formula( s ); }
interval_set I( const char* s ) { return parse_interval_set( s ); }

const corpus& bundled()
{
    static const corpus c = corpus::open();
    return c;
}

// Collects failures; a criterion passes when none were noted.
struct ledger
{
    std::vector< std::string > failures;
    std::ostringstream info;

    void expect( bool ok, const std::string& what )
    {
        if ( !ok )
            failures.push_back( what );
    }
};

std::string worlds_of( const dynamic_poset& f, world_set s ) { return format_world_set( f, s ); }

void falsified_exactly( ledger& l, const poset_model& m, const formula& f, std::initializer_list< const char* > at )
{
    world_set want;
    for ( auto w : at )
        want.insert( *m.frame.index_of( w ) );
    auto got = eval( m, f ).complement( m.frame.size() );
    l.expect( got == want, print_formula( f ) + " falsified at " + worlds_of( m.frame, got ) );
}

void extension_is( ledger& l, const real_system& sys, const formula& f, const interval_set& want )
{
    auto r = eval_real( sys, f );
    l.expect( r.status != real_status::undetermined && r.value == want,
              print_formula( f ) + " = " + r.value.to_string() + " (" + to_string( r.status ) + ")" );
}

void excludes( ledger& l, const real_system& sys, const formula& f, const rational& x )
{
    auto r = eval_real( sys, f );
    l.expect( r.status != real_status::undetermined && !r.value.contains( x ),
              print_formula( f ) + " at " + to_string( x ) + ": " + r.value.to_string() + " (" +
                  to_string( r.status ) + ")" );
}

// ---------------------------------------------------------------------------

void c1( ledger& l )
{
    auto m = bundled().load_poset( "fig4-fs" );
    falsified_exactly( l, m, P( "(<>p -> []q) -> [](p -> q)" ), { "w" } );
    falsified_exactly( l, m, P( "(O p -> O q) -> O(p -> q)" ), { "w" } );
    l.expect( m.frame.continuous() && !m.frame.open(), "frame is not continuous-not-open" );
}

void c2( ledger& l )
{
    auto m = bundled().load_poset( "fig5-cem" );
    falsified_exactly( l, m, P( "~O p & O~~p -> O q | ~O q" ), { "w0" } );
}

void c3( ledger& l )
{
    auto s = bundled().load_real( "r-kinked" );
    extension_is( l, s, P( "[*]p" ), I( "(-inf, 0)" ) );
    extension_is( l, s, P( "O[*]p" ), I( "empty" ) );
    extension_is( l, s, P( "[*][*]p" ), I( "empty" ) );
    extension_is( l, s, P( "[*]p -> O[*]p" ), I( "(0, inf)" ) );
    extension_is( l, s, P( "[*]O p -> O[*]p" ), I( "(0, inf)" ) );
    extension_is( l, s, P( "[*]p -> [*][*]p" ), I( "(0, inf)" ) );
}

void c4( ledger& l )
{
    auto s = bundled().load_real( "r-double" );
    excludes( l, s, P( "[](p | q) -> []p | <>q" ), 0 );
    excludes( l, s, P( "[](p | q) & [](O q -> q) -> []p | q" ), 0 );
    extension_is( l, s, P( "[]p" ), I( "(-inf, 0)" ) );
    extension_is( l, s, P( "<>q" ), I( "(0, inf)" ) );
}

void c5( ledger& l )
{
    auto s = bundled().load_real( "r-const" );
    auto fs = P( "(<>p -> []q) -> [](p -> q)" );
    excludes( l, s, fs, -1 );
    excludes( l, s, translate_weak( fs ), -1 );
}

void c6( ledger& l )
{
    struct run
    {
        const char* logic;
        model_class cls;
    };
    for ( auto [ logic, cls ] : { run{ "ITL.db", model_class::e }, run{ "ITL.dw", model_class::e },
                                  run{ "CDTL.db", model_class::e }, run{ "CDTL.b", model_class::e },
                                  run{ "CDTL+.db", model_class::p } } )
    {
        auto rep = soundness_sweep( logic_by_name( logic ), { cls, 3 } );
        std::size_t models = 0;
        for ( const auto& e : rep.entries )
        {
            models += e.result.models_checked;
            l.expect( e.result.outcome == validity_outcome::valid_up_to,
                      std::string( logic ) + " schema " + e.schema + ": " + to_string( e.result.outcome ) );
        }
        l.info << logic << "/" << to_string( cls ) << " " << rep.entries.size() << " schemas " << models
               << " models; ";
    }
}

std::vector< formula > battery()
{
    std::vector< formula > out;
    for ( const char* s : { "p", "~p", "p | ~p", "p -> q", "O p", "<>p", "[]p", "[]q", "[](p | q)", "[]~~p",
                            "~~[]p", "[](p -> O p)", "O[]p", "[]O p", "<>[]p", "[]<>p", "[](p -> q) -> []p",
                            "~O p & O~~p", "O q | ~O q", "(<>p -> []q) -> [](p -> q)", "(O p -> O q) -> O(p -> q)",
                            "[](p | q) -> []p | <>q", "[](~p | p)", "<>(p & q)", "O(p -> q)", "[][]p",
                            "<>~p -> q", "[](O q -> q)", "p & [](p -> O p)", "~[]~p" } )
        out.push_back( P( s ) );
    return out;
}

void c7( ledger& l )
{
    std::mt19937_64 rng{ 4049 };
    auto forms = battery();
    std::size_t bad = 0;
    for ( int trial = 0; trial < 1000; ++trial )
    {
        auto m = testing::random_model( rng, 8, { "p", "q" } );
        for ( const auto& phi : forms )
        {
            auto orbit = eval_box_by_orbit( m, phi );
            if ( eval( m, formula::strong_box( phi ) ) != orbit || eval( m, formula::weak_box( phi ) ) != orbit )
                if ( ++bad <= 3 )
                    l.expect( false, "disagreement on " + print_formula( phi ) + " in\n" + print_poset_model( m ) );
        }
    }
    l.expect( bad == 0, std::to_string( bad ) + " discrepancies" );
    l.info << "1000 models x " << forms.size() << " formulas";
}

void c8( ledger& l )
{
    auto strong = P( "[]p" );
    auto weak = P( "[*]p" );
    std::size_t models = 0;
    enumerate_models( { model_class::e, 3 }, { "p" }, [ & ]( const poset_model& m ) {
        ++models;
        auto a = eval( m, strong );
        auto b = eval( m, weak );
        l.expect( a == b, "strong and weak henceforth differ on\n" + print_poset_model( m ) );
        return true;
    } );
    std::size_t systems = 0;
    for ( const auto& e : bundled().entries() )
    {
        if ( e.kind != entry_kind::real_system )
            continue;
        ++systems;
        auto s = bundled().load_real( e.id );
        auto a = eval_real( s, strong );
        auto b = eval_real( s, weak );
        bool certified = a.status != real_status::undetermined && b.status != real_status::undetermined;
        l.expect( certified, e.id + ": undetermined" );
        l.expect( a.value.subset_of( b.value ), e.id + ": [] " + a.value.to_string() + " not inside [*] " +
                                                     b.value.to_string() );
        if ( s.map.open() )
            l.expect( a.value == b.value, e.id + " (open): [] " + a.value.to_string() + " vs [*] " +
                                              b.value.to_string() );
    }
    l.info << models << " models, " << systems << " real systems";
}

void c9( ledger& l )
{
    auto f = P( "[]~~p -> ~~[]p" );
    auto p4 = validity( f, { model_class::p, 4 } );
    l.expect( p4.outcome == validity_outcome::valid_up_to, "class p bound 4: " + to_string( p4.outcome ) );
    // the expanding direction is recorded only
    auto e4 = validity( f, { model_class::e, 4 } );
    l.expect( e4.outcome != validity_outcome::undetermined, "class e bound 4: undetermined" );
    l.info << "p4 " << to_string( p4.outcome ) << " (" << p4.models_checked << " models); e4 "
           << to_string( e4.outcome ) << " (" << e4.models_checked << " models)";
}

// Single-line mutations of line i.
std::vector< derivation > mutants_at( const derivation& d, std::size_t i )
{
    std::vector< derivation > out;
    auto with = [ & ]( const formula& g ) {
        derivation m = d;
        m.lines[ i ].f = g;
        out.push_back( std::move( m ) );
    };
    const formula& f = d.lines[ i ].f;
    with( formula::next( f ) );
    with( formula::conj( f, formula::atom( "r" ) ) );
    with( formula::negation( f ) );
    with( formula::strong_box( f ) );
    const auto& j = d.lines[ i ].just;
    if ( j.how == justification::kind::rule && j.rule == rule_kind::mp )
    {
        derivation m = d;
        std::swap( m.lines[ i ].just.premises[ 0 ], m.lines[ i ].just.premises[ 1 ] );
        out.push_back( std::move( m ) );
    }
    if ( j.how == justification::kind::axiom )
    {
        derivation m = d;
        m.lines[ i ].just.schema = j.schema == "ii" ? "x" : "ii";
        out.push_back( std::move( m ) );
    }
    return out;
}

void c10( ledger& l )
{
    const std::pair< const char*, const char* > targets[] = {
        { "d-wh", "ITL.db" },     { "d-fs", "ITL+.db" },    { "d-cd-bi", "ITL0.db" },
        { "d-bi-cd", "ITL0.db" }, { "d-yuse-1", "ITL.db" }, { "d-yuse-2", "ITL.db" },
    };
    std::size_t total = 0;
    for ( const auto& [ id, name ] : targets )
    {
        auto d = bundled().load_derivation( id );
        auto logic = logic_by_name( name );
        auto v = check( d, logic );
        l.expect( v.accepted, std::string( id ) + " rejected in " + name + ": " + v.reason );
        std::size_t tried = 0;
        for ( std::size_t i = 0; i < d.lines.size(); ++i )
            for ( const auto& m : mutants_at( d, i ) )
            {
                ++tried;
                auto r = check( m, logic );
                l.expect( !r.accepted && r.failing_index == i,
                          std::string( id ) + " mutant at line " + std::to_string( i + 1 ) + " not caught there" );
            }
        l.expect( tried >= 10, std::string( id ) + ": only " + std::to_string( tried ) + " mutants" );
        total += tried;
    }
    l.info << total << " mutants";
}

void c11( ledger& l )
{
    auto rep = build_separation_matrix( bundled() );
    std::size_t ok = 0;
    for ( const auto& e : rep.edges )
    {
        if ( e.status == edge_status::verified )
            ++ok;
        else
            l.expect( false, e.edge.from + " -> " + e.edge.to + " (" + e.edge.label + "): " + to_string( e.status ) +
                                 ", " + e.reason );
    }
    l.info << ok << "/" << rep.edges.size() << " edges verified";
}

void c12( ledger& l )
{
    auto cem = P( "~O p & O~~p -> O q | ~O q" );
    std::mt19937_64 rng{ 1212 };
    for ( const char* id : { "r-double", "r-kinked" } )
    {
        auto sys = bundled().load_real( id );
        extension_is( l, sys, cem, interval_set::all() );
        for ( int k = 0; k < 20; ++k )
        {
            sys.val[ "p" ] = testing::random_interval_set( rng, true );
            sys.val[ "q" ] = testing::random_interval_set( rng, true );
            sys.validate();
            extension_is( l, sys, cem, interval_set::all() );
        }
    }
    l.info << "2 systems x 21 valuations";
}

void c13( ledger& l )
{
    std::mt19937_64 rng{ 1313 };
    auto dbl = piecewise_affine_map{ affine{ 2, 0 } };
    auto kink = parse_real_system( "map: piecewise x<=0 : 0 ; x>=0 : 2*x\n" ).map;
    auto zigzag = parse_real_system( "map: piecewise x<=-1 : -x - 2 ; -1<=x<=1 : x ; x>=1 : 3*x - 2\n" ).map;
    const piecewise_affine_map* maps[] = { &dbl, &kink, &zigzag };

    std::size_t bad = 0;
    auto need = [ & ]( bool ok, const char* what ) {
        if ( !ok && ++bad <= 5 )
            l.expect( false, what );
    };
    for ( int i = 0; i < 10000; ++i )
    {
        auto a = testing::random_interval_set( rng );
        auto b = testing::random_interval_set( rng );

        interval_set again{ a.breakpoints(), a.point_bits(), a.gap_bits() };
        need( again == a, "canonical form" );
        need( ( a | b ).complement() == ( a.complement() & b.complement() ), "de morgan (union)" );
        need( ( a & b ).complement() == ( a.complement() | b.complement() ), "de morgan (meet)" );
        need( a.complement().complement() == a, "double complement" );
        need( a.interior() == a.complement().closure().complement(), "interior/closure duality" );
        need( a.interior().subset_of( a ) && a.subset_of( a.closure() ), "interior inside closure" );

        const auto& s = *maps[ i % 3 ];
        auto pre = s.preimage( a );
        for ( int k = 0; k < 4; ++k )
        {
            rational x = testing::random_rational( rng, 8, 8 );
            need( pre.contains( x ) == a.contains( s( x ) ), "preimage against sampling" );
        }
        for ( const auto& x : pre.breakpoints() )
            need( pre.contains( x ) == a.contains( s( x ) ), "preimage at its breakpoints" );
    }
    l.expect( bad == 0, std::to_string( bad ) + " failures" );
    l.info << "10000 rounds";
}

struct criterion
{
    int number;
    const char* name;
    double limit_s; // 0: no limit
    void ( *run )( ledger& );
};

const criterion criteria[] = {
    { 1, "three-world countermodel falsifies both Fischer Servi forms at w", 1, c1 },
    { 2, "five-world countermodel falsifies CEM at w0", 1, c2 },
    { 3, "weak henceforth on the kinked map", 1, c3 },
    { 4, "CD and BI fail at 0 under doubling", 1, c4 },
    { 5, "Fischer Servi fails at -1 under the constant map", 1, c5 },
    { 6, "soundness sweeps up to three worlds", 0, c6 },
    { 7, "both henceforths match the orbit oracle on random models", 0, c7 },
    { 8, "strong henceforth inside weak henceforth", 0, c8 },
    { 9, "box double negation on persistent posets", 0, c9 },
    { 10, "bundled derivations and their mutants", 5, c10 },
    { 11, "separation graph certificates", 120, c11 },
    { 12, "CEM holds on the whole line", 0, c12 },
    { 13, "interval algebra properties", 30, c13 },
};

bool run( const criterion& c )
{
    ledger l;
    auto start = std::chrono::steady_clock::now();
    try
    {
        c.run( l );
    }
    catch ( const std::exception& e )
    {
        l.expect( false, std::string( "exception: " ) + e.what() );
    }
    double secs = std::chrono::duration< double >( std::chrono::steady_clock::now() - start ).count();
    if ( c.limit_s > 0 && secs > c.limit_s )
        l.expect( false, "took longer than " + std::to_string( c.limit_s ) + " s" );

    bool ok = l.failures.empty();
    std::printf( "%s %2d %s (%.2f s)", ok ? "PASS" : "FAIL", c.number, c.name, secs );
    if ( !l.info.str().empty() )
        std::printf( " [%s]", l.info.str().c_str() );
    std::printf( "\n" );
    for ( const auto& f : l.failures )
        std::printf( "     - %s\n", f.c_str() );
    std::fflush( stdout );
    return ok;
}

} // namespace

int main( int argc, char** argv )
{
    std::vector< int > wanted;
    for ( int i = 1; i < argc; ++i )
        wanted.push_back( std::atoi( argv[ i ] ) );
    bool all = true;
    int ran = 0;
    for ( const auto& c : criteria )
    {
        if ( !wanted.empty() && std::find( wanted.begin(), wanted.end(), c.number ) == wanted.end() )
            continue;
        ++ran;
        all = run( c ) && all;
    }
    if ( ran == 0 )
    {
        std::fprintf( stderr, "no such criterion\n" );
        return 2;
    }
    return all ? 0 : 1;
}
