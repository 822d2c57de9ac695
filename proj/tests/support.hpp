#pragma once

// Random generators shared by the property tests.

#include "itl/formula.hpp"
#include "itl/poset_model.hpp"
#include "itl/realline.hpp"

#include <random>
#include <string>
#include <vector>

namespace itl::testing
{

inline formula random_formula( std::mt19937_64& rng, int depth, const std::vector< std::string >& atoms,
                               fragment frag = { tense::eventually, tense::strong_box, tense::weak_box } )
{
    std::uniform_int_distribution< int > pick( 0, 99 );
    if ( depth <= 0 || pick( rng ) < 20 )
    {
        if ( pick( rng ) < 10 )
            return formula::bottom();
        return formula::atom( atoms[ static_cast< std::size_t >( pick( rng ) ) % atoms.size() ] );
    }
    std::vector< op > ops = { op::conj, op::disj, op::implies, op::next };
    if ( frag.admits( tense::eventually ) )
        ops.push_back( op::eventually );
    if ( frag.admits( tense::strong_box ) )
        ops.push_back( op::strong_box );
    if ( frag.admits( tense::weak_box ) )
        ops.push_back( op::weak_box );
    op o = ops[ static_cast< std::size_t >( pick( rng ) ) % ops.size() ];
    if ( is_binary( o ) )
        return formula::binary( o, random_formula( rng, depth - 1, atoms, frag ),
                                random_formula( rng, depth - 1, atoms, frag ) );
    return formula::unary( o, random_formula( rng, depth - 1, atoms, frag ) );
}

// A random partial order on n worlds (a random DAG on 0..n-1 closed
// transitively) with an order-preserving map, or open too when asked.
inline dynamic_poset random_poset( std::mt19937_64& rng, std::size_t n, bool need_open = false )
{
    std::uniform_int_distribution< int > coin( 0, 99 );
    for ( ;; )
    {
        std::vector< world_set > up( n );
        for ( std::size_t a = 0; a < n; ++a )
        {
            up[ a ].insert( a );
            for ( std::size_t b = a + 1; b < n; ++b )
                if ( coin( rng ) < 35 )
                    up[ a ].insert( b );
        }
        for ( std::size_t a = n; a-- > 0; )
            for ( std::size_t b = a + 1; b < n; ++b )
                if ( up[ a ].contains( b ) )
                    up[ a ] = up[ a ] | up[ b ];

        // assign images from the top of the order down
        std::vector< std::size_t > step( n );
        bool ok = true;
        for ( std::size_t w = n; w-- > 0 && ok; )
        {
            std::vector< std::size_t > candidates;
            for ( std::size_t v = 0; v < n; ++v )
            {
                bool fits = true;
                up[ w ].for_each( [ & ]( std::size_t w2 ) {
                    if ( w2 != w && !up[ v ].contains( step[ w2 ] ) )
                        fits = false;
                } );
                if ( fits )
                    candidates.push_back( v );
            }
            if ( candidates.empty() )
                ok = false;
            else
                step[ w ] = candidates[ static_cast< std::size_t >( coin( rng ) ) % candidates.size() ];
        }
        if ( !ok )
            continue;
        std::vector< std::string > names;
        for ( std::size_t w = 0; w < n; ++w )
            names.push_back( "w" + std::to_string( w ) );
        auto p = dynamic_poset::from_up_sets( names, up, step );
        if ( p.continuous() && ( !need_open || p.open() ) )
            return p;
    }
}

inline world_set random_up_set( std::mt19937_64& rng, const dynamic_poset& p )
{
    std::uniform_int_distribution< int > coin( 0, 99 );
    world_set s;
    for ( std::size_t w = 0; w < p.size(); ++w )
        if ( coin( rng ) < 40 )
            s = s | p.up( w );
    return s;
}

inline poset_model random_model( std::mt19937_64& rng, std::size_t max_worlds,
                                 const std::vector< std::string >& atoms, bool need_open = false )
{
    std::uniform_int_distribution< std::size_t > size( 1, max_worlds );
    poset_model m{ random_poset( rng, size( rng ), need_open ), {} };
    for ( const auto& a : atoms )
        m.val.assign( a, random_up_set( rng, m.frame ) );
    return m;
}

inline rational random_rational( std::mt19937_64& rng, int range = 6, int den = 4 )
{
    std::uniform_int_distribution< int > num( -range * den, range * den );
    std::uniform_int_distribution< int > d( 1, den );
    rational q{ num( rng ), d( rng ) };
    q.canonicalize();
    return q;
}

// A random canonical interval set built from random components.
inline interval_set random_interval_set( std::mt19937_64& rng, bool open_only = false )
{
    std::uniform_int_distribution< int > count( 0, 3 );
    std::uniform_int_distribution< int > coin( 0, 99 );
    interval_set out;
    for ( int c = count( rng ); c > 0; --c )
    {
        rational a = random_rational( rng );
        rational b = random_rational( rng );
        if ( b < a )
            std::swap( a, b );
        interval_set::bound lo{ a, !open_only && coin( rng ) < 50 };
        interval_set::bound hi{ b, !open_only && coin( rng ) < 50 };
        if ( coin( rng ) < 15 )
            lo = {};
        if ( coin( rng ) < 15 )
            hi = {};
        if ( lo.value && hi.value && *lo.value == *hi.value )
        {
            if ( open_only )
                continue;
            lo.closed = hi.closed = true;
        }
        out = out | interval_set::interval( lo, hi );
    }
    return out;
}

} // namespace itl::testing
