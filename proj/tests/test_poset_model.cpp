#include "support.hpp"

#include "itl/errors.hpp"
#include "itl/parser.hpp"

#include <doctest.h>

using namespace itl;

namespace
{

formula P( const char* s ) { return parse_formula( s ); }

// Three worlds, v below u; w steps to v, the other two are fixed.
poset_model fs_model()
{
    return parse_poset_model( "worlds: w v u\n"
                              "order: v<=u\n"
                              "step: w->v v->v u->u\n"
                              "val p: u\n" );
}

world_set named( const dynamic_poset& f, std::initializer_list< const char* > ws )
{
    world_set s;
    for ( auto w : ws )
        s.insert( *f.index_of( w ) );
    return s;
}

// Thirty formulas over p and q, mixing every connective.
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

} // namespace

TEST_CASE( "frame validation" )
{
    auto m = fs_model();
    CHECK( m.frame.continuous() );
    CHECK_FALSE( m.frame.open() );
    auto diag = m.frame.validate();
    REQUIRE( diag.openness_violations.size() == 1 );
    CHECK( m.frame.name( diag.openness_violations[ 0 ].first ) == "w" );
    CHECK( m.frame.name( diag.openness_violations[ 0 ].second ) == "u" );

    auto id = dynamic_poset::from_relation( { "a", "b", "c" }, { { 0, 1 } }, { 0, 1, 2 } );
    CHECK( id.continuous() );
    CHECK( id.open() );

    auto swap = dynamic_poset::from_relation( { "w", "u" }, { { 0, 1 } }, { 1, 0 } );
    CHECK_FALSE( swap.continuous() );
    REQUIRE( swap.validate().continuity_violations.size() == 1 );
    CHECK( swap.validate().continuity_violations[ 0 ] == std::pair< std::size_t, std::size_t >{ 0, 1 } );
}

TEST_CASE( "malformed orders are rejected" )
{
    CHECK_THROWS_AS( dynamic_poset::from_relation( { "a", "b" }, { { 0, 1 }, { 1, 0 } }, { 0, 1 } ),
                     malformed_order );
    CHECK_THROWS_AS( dynamic_poset::from_relation( { "a", "b", "c" }, { { 0, 1 }, { 1, 2 } }, { 0, 1, 2 } ),
                     malformed_order );
    CHECK_THROWS_AS( (void)parse_poset_model( "worlds:\nstep:\n" ), parse_error );
    CHECK_THROWS_AS( (void)parse_poset_model( "worlds: a b\norder: a<=b\nstep: a->a b->b\nval p: a\n" ),
                     invalid_structure );
    CHECK_THROWS_AS( (void)parse_poset_model( "worlds: a\nstep: a->b\n" ), parse_error );
    CHECK_THROWS_AS( (void)parse_poset_model( "worlds: a b\nstep: a->a\n" ), parse_error );
}

TEST_CASE( "interior in the up-set topology" )
{
    auto m = fs_model();
    const auto& f = m.frame;
    CHECK( f.interior( f.all() ) == f.all() );
    CHECK( f.interior( named( f, { "w", "v" } ) ) == named( f, { "w" } ) );
    CHECK( f.interior( world_set{} ).empty() );
}

TEST_CASE( "evaluation on the three-world model" )
{
    auto m = fs_model();
    m.val.assign( "q", world_set{} );
    const auto& f = m.frame;
    auto fs_dia = eval( m, P( "(<>p -> []q) -> [](p -> q)" ) );
    CHECK_FALSE( fs_dia.contains( *f.index_of( "w" ) ) );
    CHECK( eval( m, P( "[](p -> p)" ) ) == f.all() );
    CHECK( eval_box_by_orbit( m, formula::bottom() ).empty() );

    auto round = parse_poset_model( print_poset_model( m ) );
    CHECK( round.frame.names() == f.names() );
    CHECK( eval( round, P( "(<>p -> []q) -> [](p -> q)" ) ) == fs_dia );
}

TEST_CASE( "singleton model" )
{
    poset_model m{ dynamic_poset::from_relation( { "w" }, {}, { 0 } ), {} };
    m.val.assign( "p", world_set::all( 1 ) );
    CHECK( eval_box_by_orbit( m, P( "p" ) ) == world_set::all( 1 ) );
}

TEST_CASE( "evaluation needs continuity" )
{
    poset_model m{ dynamic_poset::from_relation( { "w", "u" }, { { 0, 1 } }, { 1, 0 } ), {} };
    CHECK_THROWS_AS( (void)eval( m, P( "p" ) ), continuity_required );
}

TEST_CASE( "both henceforths agree with the orbit oracle on finite posets" )
{
    std::mt19937_64 rng{ 49 };
    auto forms = battery();
    REQUIRE( forms.size() == 30 );
    for ( int trial = 0; trial < 1000; ++trial )
    {
        auto m = testing::random_model( rng, 8, { "p", "q" } );
        fixpoint_stats stats;
        for ( const auto& phi : forms )
        {
            auto strong = eval( m, formula::strong_box( phi ), &stats );
            auto weak = eval( m, formula::weak_box( phi ), &stats );
            auto orbit = eval_box_by_orbit( m, phi );
            REQUIRE( strong == orbit );
            REQUIRE( weak == orbit );
        }
        CHECK( stats.max_box_steps <= m.frame.size() );
        CHECK( stats.max_eventually_steps <= m.frame.size() );
    }
}

TEST_CASE( "validity of an implication is inclusion" )
{
    std::mt19937_64 rng{ 5 };
    for ( int trial = 0; trial < 300; ++trial )
    {
        auto m = testing::random_model( rng, 6, { "p", "q" } );
        auto a = testing::random_formula( rng, 3, { "p", "q" } );
        auto b = testing::random_formula( rng, 3, { "p", "q" } );
        bool valid = eval( m, formula::implies( a, b ) ) == m.frame.all();
        CHECK( valid == eval( m, a ).subset_of( eval( m, b ) ) );
        CHECK( eval( m, P( "[]p" ) ).subset_of( eval( m, P( "[*]p" ) ) ) );
    }
}

TEST_CASE( "morphism checks" )
{
    auto chain = dynamic_poset::from_relation( { "a", "b" }, { { 0, 1 } }, { 0, 1 } );
    std::vector< std::size_t > id{ 0, 1 };
    CHECK( check_morphism( chain, chain, chain.all(), id ).ok() );

    std::vector< std::size_t > to_bottom{ 0, 0 };
    auto d = check_morphism( chain, chain, chain.all(), to_bottom );
    CHECK( d.monotone );
    CHECK_FALSE( d.lifts );

    auto moving = dynamic_poset::from_relation( { "a", "b" }, {}, { 1, 1 } );
    world_set just_a;
    just_a.insert( 0 );
    CHECK_THROWS_AS( (void)check_morphism( moving, moving, just_a, id ), domain_not_invariant );
}

namespace
{

// Disjoint union of two frames; the second copy is shifted by a.size().
dynamic_poset disjoint_union( const dynamic_poset& a, const dynamic_poset& b )
{
    std::vector< std::string > names;
    std::vector< world_set > up;
    std::vector< std::size_t > step;
    for ( std::size_t w = 0; w < a.size(); ++w )
    {
        names.push_back( "a" + std::to_string( w ) );
        up.push_back( a.up( w ) );
        step.push_back( a.step( w ) );
    }
    for ( std::size_t w = 0; w < b.size(); ++w )
    {
        names.push_back( "b" + std::to_string( w ) );
        up.push_back( world_set{ b.up( w ).bits() << a.size() } );
        step.push_back( b.step( w ) + a.size() );
    }
    return dynamic_poset::from_up_sets( names, up, step );
}

} // namespace

TEST_CASE( "morphisms pull back valuations" )
{
    // Either the target sits next to an unrelated frame and the morphism is
    // the inclusion of the invariant open copy, or two copies of the target
    // fold onto it.
    std::mt19937_64 rng{ 67 };
    for ( int trial = 0; trial < 200; ++trial )
    {
        std::uniform_int_distribution< std::size_t > size( 1, 4 );
        auto dst = testing::random_poset( rng, size( rng ) );
        const bool fold = trial % 2 == 1;
        auto extra = fold ? dst : testing::random_poset( rng, size( rng ) );
        auto src = disjoint_union( extra, dst );

        world_set domain;
        std::vector< std::size_t > map( src.size(), 0 );
        for ( std::size_t w = 0; w < dst.size(); ++w )
        {
            domain.insert( extra.size() + w );
            map[ extra.size() + w ] = w;
            if ( fold )
            {
                domain.insert( w );
                map[ w ] = w;
            }
        }
        REQUIRE( check_morphism( src, dst, domain, map ).ok() );

        poset_model target{ dst, {} };
        poset_model source{ src, {} };
        for ( const char* a : { "p", "q" } )
        {
            world_set v = testing::random_up_set( rng, dst );
            target.val.assign( a, v );
            world_set pulled;
            domain.for_each( [ & ]( std::size_t w ) {
                if ( v.contains( map[ w ] ) )
                    pulled.insert( w );
            } );
            source.val.assign( a, fold ? pulled : pulled | testing::random_up_set( rng, extra ) );
        }
        for ( int k = 0; k < 50; ++k )
        {
            auto phi = testing::random_formula( rng, 4, { "p", "q" } );
            world_set in_src = eval( source, phi ) & domain;
            world_set in_dst = eval( target, phi );
            world_set pulled;
            domain.for_each( [ & ]( std::size_t w ) {
                if ( in_dst.contains( map[ w ] ) )
                    pulled.insert( w );
            } );
            REQUIRE( in_src == pulled );
        }
    }
}
