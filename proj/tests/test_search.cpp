#include "itl/errors.hpp"
#include "itl/parser.hpp"
#include "itl/search.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

using namespace itl;

namespace
{

formula P( const char* s ) { return parse_formula( s ); }

std::size_t count_frames( const semantic_class& cls, const search_options& opts = {} )
{
    std::size_t n = 0;
    for_each_frame( cls, [ & ]( const dynamic_poset& ) { return ++n, true; }, opts );
    return n;
}

// Brute force over every relation and every map, sharing no code with the
// enumerator.
std::set< std::string > naive_frames( std::size_t n, model_class cls )
{
    std::set< std::string > out;
    const std::size_t cells = n * n;
    std::vector< std::string > names;
    for ( std::size_t w = 0; w < n; ++w )
        names.push_back( "w" + std::to_string( w ) );
    for ( std::uint32_t rel = 0; rel < ( 1U << cells ); ++rel )
    {
        auto le = [ & ]( std::size_t a, std::size_t b ) { return ( rel >> ( a * n + b ) ) & 1U; };
        bool order = true;
        for ( std::size_t a = 0; a < n; ++a )
        {
            order = order && le( a, a );
            for ( std::size_t b = 0; b < n; ++b )
            {
                if ( a != b && le( a, b ) && le( b, a ) )
                    order = false;
                for ( std::size_t c = 0; c < n; ++c )
                    if ( le( a, b ) && le( b, c ) && !le( a, c ) )
                        order = false;
            }
        }
        if ( !order )
            continue;
        std::size_t maps = 1;
        for ( std::size_t k = 0; k < n; ++k )
            maps *= n;
        for ( std::size_t code = 0; code < maps; ++code )
        {
            std::vector< std::size_t > step( n );
            for ( std::size_t k = 0, c = code; k < n; ++k, c /= n )
                step[ k ] = c % n;
            bool mono = true, open = true;
            for ( std::size_t a = 0; a < n; ++a )
                for ( std::size_t b = 0; b < n; ++b )
                    if ( le( a, b ) && !le( step[ a ], step[ b ] ) )
                        mono = false;
            // open: S(w) <= v implies v = S(w') for some w' >= w
            for ( std::size_t w = 0; w < n; ++w )
                for ( std::size_t v = 0; v < n; ++v )
                {
                    if ( !le( step[ w ], v ) )
                        continue;
                    bool lifted = false;
                    for ( std::size_t w2 = 0; w2 < n; ++w2 )
                        lifted = lifted || ( le( w, w2 ) && step[ w2 ] == v );
                    open = open && lifted;
                }
            if ( !mono || ( cls == model_class::p && !open ) )
                continue;
            std::vector< std::pair< std::size_t, std::size_t > > pairs;
            for ( std::size_t a = 0; a < n; ++a )
                for ( std::size_t b = 0; b < n; ++b )
                    if ( a != b && le( a, b ) )
                        pairs.emplace_back( a, b );
            out.insert( encode_frame( dynamic_poset::from_relation( names, pairs, step ) ) );
        }
    }
    return out;
}

std::set< std::string > enumerated( std::size_t n, model_class cls, bool dedup = false )
{
    std::set< std::string > out;
    search_options opts;
    opts.dedup = dedup;
    for_each_frame(
        { cls, n },
        [ & ]( const dynamic_poset& f ) {
            if ( f.size() == n )
                out.insert( dedup ? canonical_form( f ) : encode_frame( f ) );
            return true;
        },
        opts );
    return out;
}

// Canonical text of a model: carrier plus valuation, least over relabelings.
std::string model_form( const poset_model& m, const std::vector< std::string >& atom_list )
{
    const std::size_t n = m.frame.size();
    std::vector< std::size_t > perm( n );
    std::iota( perm.begin(), perm.end(), std::size_t{ 0 } );
    std::string best;
    do
    {
        std::vector< std::size_t > inv( n );
        for ( std::size_t k = 0; k < n; ++k )
            inv[ perm[ k ] ] = k;
        std::string s;
        for ( std::size_t a = 0; a < n; ++a )
            for ( std::size_t b = 0; b < n; ++b )
                s += m.frame.leq( perm[ a ], perm[ b ] ) ? '1' : '0';
        s += '|';
        for ( std::size_t a = 0; a < n; ++a )
            s += static_cast< char >( '0' + inv[ m.frame.step( perm[ a ] ) ] );
        for ( const auto& atom : atom_list )
        {
            s += '|';
            for ( std::size_t a = 0; a < n; ++a )
                s += m.val( atom ).contains( perm[ a ] ) ? '1' : '0';
        }
        if ( best.empty() || s < best )
            best = s;
    } while ( std::next_permutation( perm.begin(), perm.end() ) );
    return best;
}

} // namespace

TEST_CASE( "model counts" )
{
    std::size_t models = 0;
    enumerate_models( { model_class::e, 1 }, { "p" }, [ & ]( const poset_model& ) { return ++models, true; } );
    CHECK( models == 2 );

    CHECK( count_frames( { model_class::e, 2 } ) == 11 );
    CHECK( count_frames( { model_class::e, 1 } ) == 1 );
    CHECK_THROWS_AS( (void)count_frames( { model_class::e, 6 } ), bound_too_large );

    search_options wide;
    wide.max_bound = 6;
    CHECK_NOTHROW( (void)validity( P( "p -> p" ), { model_class::e, 1 }, wide ) );
}

TEST_CASE( "enumeration matches a naive generator" )
{
    for ( std::size_t n = 1; n <= 3; ++n )
        for ( auto cls : { model_class::e, model_class::p } )
        {
            auto mine = enumerated( n, cls );
            auto naive = naive_frames( n, cls );
            CHECK( mine == naive );

            std::set< std::string > classes;
            for_each_frame( { cls, n }, [ & ]( const dynamic_poset& f ) {
                if ( f.size() == n )
                    classes.insert( canonical_form( f ) );
                return true;
            } );
            CHECK( enumerated( n, cls, true ) == classes );
        }
}

TEST_CASE( "the persistent class drops continuous maps that are not open" )
{
    auto fig4 = parse_poset_model( "worlds: w v u\norder: v<=u\nstep: w->v v->v u->u\n" );
    auto form = canonical_form( fig4.frame );
    CHECK( enumerated( 3, model_class::e, true ).count( form ) == 1 );
    CHECK( enumerated( 3, model_class::p, true ).count( form ) == 0 );
}

TEST_CASE( "validity examples" )
{
    auto fs = validity( P( "(<>p -> []q) -> [](p -> q)" ), { model_class::e, 3 } );
    REQUIRE( fs.outcome == validity_outcome::countermodel );
    REQUIRE( fs.witness );
    CHECK_FALSE( eval( fs.witness->model, fs.witness->f ).contains( fs.witness->world ) );
    CHECK( fs.witness->model.frame.continuous() );

    auto cem = validity( P( "~O p & O~~p -> O q | ~O q" ), { model_class::e, 5 } );
    REQUIRE( cem.outcome == validity_outcome::countermodel );
    CHECK( cem.witness->model.frame.size() <= 5 );

    auto cd = validity( P( "[](p | q) -> []p | <>q" ), { model_class::e, 4 } );
    CHECK( cd.outcome == validity_outcome::valid_up_to );
    CHECK( cd.models_checked > 0 );

    auto dneg = validity( P( "[]~~p -> ~~[]p" ), { model_class::p, 4 } );
    CHECK( dneg.outcome == validity_outcome::valid_up_to );

    auto rec = to_record( fs );
    CHECK( rec.find( "verdict: countermodel" ) != std::string::npos );
    CHECK( parse_poset_model( rec.substr( rec.find( "worlds:" ), rec.find( "end\n" ) - rec.find( "worlds:" ) ) )
               .frame.size() == fs.witness->model.frame.size() );
}

TEST_CASE( "the figure countermodels are among the enumerated ones" )
{
    auto fig4 = parse_poset_model( "worlds: w v u\norder: v<=u\nstep: w->v v->v u->u\nval p: u\n" );
    auto fig5 = parse_poset_model( "worlds: w0 w1 v0 v1 v2\norder: w0<=w1 v0<=v1 v1<=v2 v0<=v2\n"
                                   "step: w0->v0 w1->v1 v0->v0 v1->v1 v2->v2\nval p: v2\nval q: v1 v2\n" );
    struct want
    {
        poset_model m;
        formula f;
        std::size_t size;
    };
    for ( const auto& [ m, f, size ] :
          { want{ fig4, P( "(<>p -> []q) -> [](p -> q)" ), 3 }, want{ fig5, P( "~O p & O~~p -> O q | ~O q" ), 5 } } )
    {
        auto target = model_form( m, { "p", "q" } );
        auto shape = canonical_form( m.frame );
        bool found = false;
        search_options opts;
        opts.dedup = true;
        // find the carrier first, then the valuation on it
        for_each_frame(
            { model_class::e, size },
            [ & ]( const dynamic_poset& frame ) {
                if ( frame.size() != size || canonical_form( frame ) != shape )
                    return true;
                for ( auto p : up_sets( frame ) )
                    for ( auto q : up_sets( frame ) )
                    {
                        poset_model cand{ frame, {} };
                        cand.val.assign( "p", p );
                        cand.val.assign( "q", q );
                        if ( model_form( cand, { "p", "q" } ) == target )
                            found = !( eval( cand, f ) == frame.all() );
                    }
                return false;
            },
            opts );
        CHECK( found );
    }
}

TEST_CASE( "first countermodels do not depend on the thread count" )
{
    for ( const char* text : { "(<>p -> []q) -> [](p -> q)", "~O p & O~~p -> O q | ~O q", "(O p -> O q) -> O(p -> q)" } )
    {
        search_options one, four;
        one.threads = 1;
        four.threads = 4;
        auto a = validity( P( text ), { model_class::e, 4 }, one );
        auto b = validity( P( text ), { model_class::e, 4 }, four );
        REQUIRE( a.witness );
        REQUIRE( b.witness );
        CHECK( print_poset_model( a.witness->model ) == print_poset_model( b.witness->model ) );
        CHECK( a.witness->world == b.witness->world );
        CHECK( a.models_checked == b.models_checked );
    }
}

TEST_CASE( "sweeps" )
{
    auto plus = soundness_sweep( logic_by_name( "ITL+.db" ), { model_class::e, 3 } );
    CHECK_FALSE( plus.all_valid() );
    for ( const auto& e : plus.entries )
        CHECK( ( e.result.outcome == validity_outcome::valid_up_to ) == ( e.schema != "fs-next" ) );

    auto plus_p = soundness_sweep( logic_by_name( "ITL+.db" ), { model_class::p, 3 } );
    CHECK( plus_p.all_valid() );
}
