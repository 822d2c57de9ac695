#include "support.hpp"

#include "itl/errors.hpp"
#include "itl/parser.hpp"

#include <doctest.h>

using namespace itl;

namespace
{

formula P( const char* s ) { return parse_formula( s ); }
interval_set I( const char* s ) { return parse_interval_set( s ); }
rational Q( const char* s ) { return parse_rational( s ); }

real_system system_of( const char* text ) { return parse_real_system( text ); }

const char* kinked = "map: piecewise x<=0 : 0 ; x>=0 : 2*x\nval p: (-inf, 1)\n";
const char* doubling = "map: 2*x\nval p: (-inf, 1)\nval q: (0, inf)\n";
const char* constant = "map: 0\nval p: (0, inf)\n";

} // namespace

TEST_CASE( "interval set algebra" )
{
    CHECK( I( "(-inf, 0]" ).interior() == I( "(-inf, 0)" ) );
    CHECK( I( "[2, 2]" ).interior().closure().is_empty() );
    CHECK( I( "(0, 1)" ).complement() == I( "(-inf, 0] u [1, inf)" ) );
    CHECK( I( "(0, 1) u [1, 2)" ) == I( "(0, 2)" ) );
    CHECK( I( "(0, 1) u (1, 2)" ).to_string() == "(0, 1) u (1, 2)" );
    CHECK( I( "empty" ).is_empty() );
    CHECK( I( "(-inf, inf)" ).is_all() );
    CHECK( I( "[1/2, 3/4)" ).to_string() == "[1/2, 3/4)" );
    CHECK_THROWS_AS( (void)I( "[-inf, 0)" ), parse_error );
    CHECK_THROWS_AS( (void)I( "(1, 0)" ), parse_error );
    CHECK_THROWS_AS( (void)I( "(1, 1)" ), parse_error );
}

TEST_CASE( "preimage and image" )
{
    auto dbl = piecewise_affine_map{ affine{ 2, 0 } };
    auto kink = system_of( kinked ).map;
    CHECK( kink.preimage( I( "(-inf, 1)" ) ) == I( "(-inf, 1/2)" ) );
    CHECK( dbl.preimage( I( "(-inf, 1)" ) ) == I( "(-inf, 1/2)" ) );
    CHECK( piecewise_affine_map{ affine{ 0, 0 } }.preimage( I( "(0, inf)" ) ).is_empty() );
    CHECK( kink.preimage( interval_set::all() ).is_all() );

    CHECK( dbl.image( I( "(-inf, 0)" ) ) == I( "(-inf, 0)" ) );
    CHECK( piecewise_affine_map{ affine{ 0, 3 } }.image( I( "(5, 7)" ) ) == I( "[3, 3]" ) );
    CHECK( dbl.image( interval_set::empty() ).is_empty() );

    CHECK_FALSE( kink.open() );
    CHECK( dbl.open() );
    CHECK_THROWS_AS( (void)system_of( "map: piecewise x<=0 : 0 ; x>=0 : 2*x + 1\n" ), parse_error );
}

TEST_CASE( "systems reject closed valuations" )
{
    CHECK_THROWS_AS( (void)system_of( "map: x\nval p: [0, 1)\n" ), invalid_structure );
}

TEST_CASE( "weak henceforth on the kinked map" )
{
    auto sys = system_of( kinked );
    auto at = [ & ]( const char* f ) { return eval_real( sys, P( f ) ); };

    auto wp = at( "[*]p" );
    CHECK( wp.status == real_status::extrapolated );
    CHECK( wp.value == I( "(-inf, 0)" ) );
    CHECK( at( "O[*]p" ).value.is_empty() );
    CHECK( at( "[*][*]p" ).value.is_empty() );
    CHECK( at( "[*]p -> O[*]p" ).value == I( "(0, inf)" ) );
    CHECK( at( "[*]O p -> O[*]p" ).value == I( "(0, inf)" ) );
    CHECK( at( "[*]p -> [*][*]p" ).value == I( "(0, inf)" ) );
    CHECK( at( "[]p" ).value.is_empty() );
    CHECK( at( "[]p" ).status == real_status::extrapolated );
}

TEST_CASE( "doubling map" )
{
    auto sys = system_of( doubling );
    auto box = eval_real( sys, P( "[]p" ) );
    CHECK( box.value == I( "(-inf, 0)" ) );
    CHECK( box.status != real_status::undetermined );
    CHECK( eval_real( sys, P( "[*]p" ) ).value == I( "(-inf, 0)" ) );
    CHECK( eval_real( sys, P( "<>q" ) ).value == I( "(0, inf)" ) );
    CHECK_FALSE( eval_real( sys, P( "[](p | q) -> []p | <>q" ) ).value.contains( 0 ) );
    CHECK_FALSE( eval_real( sys, P( "[](p | q) & [](O q -> q) -> []p | q" ) ).value.contains( 0 ) );

    // every point right of a > 0 stays right of it
    sys.val[ "r" ] = I( "(1/3, inf)" );
    CHECK( I( "(1/3, inf)" ).subset_of( eval_real( sys, P( "[]r" ) ).value ) );
}

TEST_CASE( "constant map" )
{
    auto sys = system_of( constant );
    auto fs = eval_real( sys, P( "(<>p -> []q) -> [](p -> q)" ) );
    REQUIRE( fs.status == real_status::exact );
    CHECK_FALSE( fs.value.contains( -1 ) );
    CHECK_FALSE( eval_real( sys, P( "(<>p -> [*]q) -> [*](p -> q)" ) ).value.contains( -1 ) );
    CHECK( eval_real( sys, P( "<>p" ) ).value == I( "(0, inf)" ) );
}

TEST_CASE( "fragmenting chains are undetermined" )
{
    auto sys = system_of( doubling );
    auto r = eval_real( sys, P( "[](p | ~p)" ) );
    CHECK( r.status == real_status::undetermined );
    CHECK_THROWS_AS( (void)check_pointwise( sys, P( "[](p | ~p)" ), { 0 } ), undetermined_extension );
}

TEST_CASE( "pointwise checks" )
{
    auto sys = system_of( kinked );
    sys.val[ "q" ] = I( "(0, 1)" );
    auto cem = check_pointwise( sys, P( "~O p & O~~p -> O q | ~O q" ),
                                { Q( "-2" ), Q( "-1" ), Q( "0" ), Q( "1/3" ), Q( "1" ), Q( "2" ) } );
    CHECK( std::all_of( cem.begin(), cem.end(), []( bool b ) { return b; } ) );
    CHECK_FALSE( check_pointwise( sys, formula::bottom(), { 0 } )[ 0 ] );

    auto cdm = check_pointwise( system_of( "map: 2*x\nval p: (0, inf)\n" ), P( "[](~p | p) -> []~p | <>p" ),
                                { Q( "-1" ), Q( "0" ), Q( "1" ) } );
    CHECK( std::all_of( cdm.begin(), cdm.end(), []( bool b ) { return b; } ) );
}

TEST_CASE( "interval algebra properties" )
{
    std::mt19937_64 rng{ 31337 };
    auto dbl = piecewise_affine_map{ affine{ 2, 0 } };
    auto kink = system_of( kinked ).map;
    auto zigzag = system_of( "map: piecewise x<=-1 : -x - 2 ; -1<=x<=1 : x ; x>=1 : 3*x - 2\n" ).map;
    const piecewise_affine_map* maps[] = { &dbl, &kink, &zigzag };

    for ( int i = 0; i < 10000; ++i )
    {
        auto a = testing::random_interval_set( rng );
        auto b = testing::random_interval_set( rng );
        auto c = testing::random_interval_set( rng );

        // canonical form: rebuilding from the stored bits changes nothing
        interval_set again{ a.breakpoints(), a.point_bits(), a.gap_bits() };
        REQUIRE( again == a );
        REQUIRE( ( a | b ) == ( b | a ) );
        REQUIRE( ( a & b ) == ( b & a ) );
        REQUIRE( ( ( a | b ) | c ) == ( a | ( b | c ) ) );
        REQUIRE( ( ( a & b ) & c ) == ( a & ( b & c ) ) );
        REQUIRE( ( a | ( a & b ) ) == a );
        REQUIRE( ( a & ( a | b ) ) == a );
        REQUIRE( ( a | b ).complement() == ( a.complement() & b.complement() ) );
        REQUIRE( a.interior().interior() == a.interior() );
        REQUIRE( a.closure().closure() == a.closure() );
        REQUIRE( a.interior() == a.complement().closure().complement() );

        const auto& s = *maps[ i % 3 ];
        auto pre = s.preimage( a );
        REQUIRE( s.preimage( a | b ) == ( pre | s.preimage( b ) ) );
        REQUIRE( s.preimage( a & b ) == ( pre & s.preimage( b ) ) );
        rational x = testing::random_rational( rng, 8, 8 );
        REQUIRE( pre.contains( x ) == a.contains( s( x ) ) );
        if ( a.contains( x ) )
            REQUIRE( s.image( a ).contains( s( x ) ) );
    }
}
