#include "itl/poset_model.hpp"

#include "itl/errors.hpp"

#include <cassert>
#include <unordered_map>

namespace itl
{

dynamic_poset dynamic_poset::from_relation( std::vector< std::string > names,
                                            const std::vector< std::pair< std::size_t, std::size_t > >& order,
                                            std::vector< std::size_t > step )
{
    const std::size_t n = names.size();
    if ( n == 0 )
        throw invalid_structure( "at least one world required" );
    if ( n > max_worlds )
        throw invalid_structure( "at most " + std::to_string( max_worlds ) + " worlds supported" );

    std::vector< world_set > up( n );
    for ( std::size_t w = 0; w < n; ++w )
        up[ w ].insert( w );
    for ( auto [ a, b ] : order )
    {
        if ( a >= n || b >= n )
            throw invalid_structure( "order pair refers to an unknown world" );
        up[ a ].insert( b );
    }

    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = a + 1; b < n; ++b )
            if ( up[ a ].contains( b ) && up[ b ].contains( a ) )
                throw malformed_order( "order is not antisymmetric: " + names[ a ] + "<=" + names[ b ] + " and " +
                                       names[ b ] + "<=" + names[ a ] );

    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = 0; b < n; ++b )
        {
            if ( !up[ a ].contains( b ) )
                continue;
            for ( std::size_t c = 0; c < n; ++c )
                if ( up[ b ].contains( c ) && !up[ a ].contains( c ) )
                    throw malformed_order( "order is not transitive: " + names[ a ] + "<=" + names[ b ] + " and " +
                                           names[ b ] + "<=" + names[ c ] + " but not " + names[ a ] + "<=" +
                                           names[ c ] );
        }

    return from_up_sets( std::move( names ), std::move( up ), std::move( step ) );
}

dynamic_poset dynamic_poset::from_up_sets( std::vector< std::string > names, std::vector< world_set > up,
                                           std::vector< std::size_t > step )
{
    const std::size_t n = names.size();
    if ( up.size() != n || step.size() != n )
        throw invalid_structure( "order and step must cover every world" );
    for ( std::size_t w = 0; w < n; ++w )
        if ( step[ w ] >= n )
            throw invalid_structure( "step of " + names[ w ] + " is not a world" );

    dynamic_poset p;
    p._names = std::move( names );
    p._up = std::move( up );
    p._step = std::move( step );
    p._down.assign( n, world_set{} );
    for ( std::size_t a = 0; a < n; ++a )
        p._up[ a ].for_each( [ & ]( std::size_t b ) { p._down[ b ].insert( a ); } );

    auto diag = p.validate();
    p._continuous = diag.continuous;
    p._open = diag.open;
    return p;
}

std::optional< std::size_t > dynamic_poset::index_of( std::string_view name ) const
{
    for ( std::size_t w = 0; w < _names.size(); ++w )
        if ( _names[ w ] == name )
            return w;
    return std::nullopt;
}

poset_diagnostics dynamic_poset::validate() const
{
    poset_diagnostics d;
    const std::size_t n = size();
    for ( std::size_t w = 0; w < n; ++w )
        _up[ w ].for_each( [ & ]( std::size_t w2 ) {
            if ( !leq( _step[ w ], _step[ w2 ] ) )
                d.continuity_violations.emplace_back( w, w2 );
        } );

    for ( std::size_t w = 0; w < n; ++w )
    {
        world_set reachable = image( _up[ w ] );
        _up[ _step[ w ] ].for_each( [ & ]( std::size_t v ) {
            if ( !reachable.contains( v ) )
                d.openness_violations.emplace_back( w, v );
        } );
    }
    d.continuous = d.continuity_violations.empty();
    d.open = d.openness_violations.empty();
    return d;
}

bool dynamic_poset::is_up_set( world_set a ) const
{
    bool ok = true;
    a.for_each( [ & ]( std::size_t w ) { ok = ok && _up[ w ].subset_of( a ); } );
    return ok;
}

world_set dynamic_poset::interior( world_set a ) const
{
    world_set out;
    for ( std::size_t w = 0; w < size(); ++w )
        if ( _up[ w ].subset_of( a ) )
            out.insert( w );
    return out;
}

world_set dynamic_poset::preimage( world_set a ) const
{
    world_set out;
    for ( std::size_t w = 0; w < size(); ++w )
        if ( a.contains( _step[ w ] ) )
            out.insert( w );
    return out;
}

world_set dynamic_poset::image( world_set a ) const
{
    world_set out;
    a.for_each( [ & ]( std::size_t w ) { out.insert( _step[ w ] ); } );
    return out;
}

world_set valuation::operator()( const std::string& atom ) const
{
    auto it = _sets.find( atom );
    return it == _sets.end() ? world_set{} : it->second;
}

void poset_model::check_valuation() const
{
    for ( const auto& [ atom, set ] : val.entries() )
    {
        if ( !set.subset_of( frame.all() ) )
            throw invalid_structure( "valuation of " + atom + " mentions an unknown world" );
        if ( !frame.is_up_set( set ) )
            throw invalid_structure( "valuation of " + atom + " is not an up-set" );
    }
}

poset_evaluator::poset_evaluator( const formula& f ) : poset_evaluator{ f, {} } {}

poset_evaluator::poset_evaluator( const formula& f, std::vector< std::string > atom_order )
    : _atoms{ std::move( atom_order ) }
{
    for ( const auto& a : itl::atoms( f ) )
        if ( std::find( _atoms.begin(), _atoms.end(), a ) == _atoms.end() )
            _atoms.push_back( a );

    std::unordered_map< formula, std::size_t, formula_hash > index;
    for ( const auto& g : subformulas( f ) )
    {
        instr in{ g.kind() };
        if ( g.kind() == op::atom )
            in.atom_slot = static_cast< std::size_t >(
                    std::find( _atoms.begin(), _atoms.end(), g.name() ) - _atoms.begin() );
        else if ( is_binary( g.kind() ) )
        {
            in.lhs = index.at( g.lhs() );
            in.rhs = index.at( g.rhs() );
        }
        else if ( is_unary( g.kind() ) )
            in.lhs = index.at( g.operand() );
        index.emplace( g, _code.size() );
        _code.push_back( in );
    }
    _scratch.resize( _code.size() );
}

world_set poset_evaluator::eval( const dynamic_poset& frame, std::span< const world_set > atom_sets,
                                 fixpoint_stats* stats ) const
{
    assert( frame.continuous() );
    const std::size_t n = frame.size();
    auto& v = _scratch;

    for ( std::size_t i = 0; i < _code.size(); ++i )
    {
        const auto& in = _code[ i ];
        switch ( in.kind )
        {
        case op::bottom: v[ i ] = world_set{}; break;
        case op::atom: v[ i ] = in.atom_slot < atom_sets.size() ? atom_sets[ in.atom_slot ] : world_set{}; break;
        case op::conj: v[ i ] = v[ in.lhs ] & v[ in.rhs ]; break;
        case op::disj: v[ i ] = v[ in.lhs ] | v[ in.rhs ]; break;
        case op::implies: v[ i ] = frame.interior( v[ in.lhs ].complement( n ) | v[ in.rhs ] ); break;
        case op::next: v[ i ] = frame.preimage( v[ in.lhs ] ); break;
        case op::eventually:
        {
            world_set u = v[ in.lhs ];
            std::size_t steps = 0;
            for ( ;; )
            {
                world_set grown = u | frame.preimage( u );
                if ( grown == u )
                    break;
                u = grown;
                ++steps;
            }
            assert( steps <= n );
            if ( stats )
                stats->max_eventually_steps = std::max( stats->max_eventually_steps, steps );
            v[ i ] = u;
            break;
        }
        case op::strong_box:
        {
            // greatest S-invariant up-set inside the operand
            const world_set target = v[ in.lhs ];
            world_set u = frame.interior( target );
            std::size_t steps = 0;
            for ( ;; )
            {
                world_set shrunk = frame.interior( target & frame.preimage( u ) );
                if ( shrunk == u )
                    break;
                u = shrunk;
                ++steps;
            }
            assert( steps <= n );
            if ( stats )
                stats->max_box_steps = std::max( stats->max_box_steps, steps );
            v[ i ] = u;
            break;
        }
        case op::weak_box:
        {
            // interior of the intersection of all S^{-k}[operand]
            const world_set target = v[ in.lhs ];
            world_set u = target;
            std::size_t steps = 0;
            for ( ;; )
            {
                world_set shrunk = target & frame.preimage( u );
                if ( shrunk == u )
                    break;
                u = shrunk;
                ++steps;
            }
            assert( steps <= n );
            if ( stats )
                stats->max_box_steps = std::max( stats->max_box_steps, steps );
            v[ i ] = frame.interior( u );
            break;
        }
        }
        assert( frame.is_up_set( v[ i ] ) );
    }
    return v.back();
}

world_set eval( const poset_model& model, const formula& f, fixpoint_stats* stats )
{
    if ( !model.frame.continuous() )
        throw continuity_required( "evaluation requires an order-preserving transition map" );
    poset_evaluator ev{ f };
    std::vector< world_set > sets;
    sets.reserve( ev.atoms().size() );
    for ( const auto& a : ev.atoms() )
        sets.push_back( model.val( a ) );
    return ev.eval( model.frame, sets, stats );
}

world_set eval_box_by_orbit( const poset_model& model, const formula& f )
{
    const world_set ext = eval( model, f );
    const auto& frame = model.frame;
    world_set out;
    for ( std::size_t w = 0; w < frame.size(); ++w )
    {
        world_set visited;
        std::size_t x = w;
        bool ok = true;
        while ( !visited.contains( x ) )
        {
            if ( !ext.contains( x ) )
            {
                ok = false;
                break;
            }
            visited.insert( x );
            x = frame.step( x );
        }
        if ( ok )
            out.insert( w );
    }
    return out;
}

morphism_diagnostics check_morphism( const dynamic_poset& src, const dynamic_poset& dst, world_set domain,
                                     std::span< const std::size_t > map )
{
    if ( !domain.subset_of( src.all() ) || !src.is_up_set( domain ) )
        throw domain_not_invariant( "morphism domain is not an up-set of the source" );
    if ( !src.image( domain ).subset_of( domain ) )
        throw domain_not_invariant( "morphism domain is not invariant under the source transition map" );
    if ( map.size() < src.size() )
        throw invalid_structure( "morphism map must have one entry per source world" );
    domain.for_each( [ & ]( std::size_t w ) {
        if ( map[ w ] >= dst.size() )
            throw invalid_structure( "morphism maps " + src.name( w ) + " outside the target" );
    } );

    morphism_diagnostics d;
    domain.for_each( [ & ]( std::size_t w ) {
        ( src.up( w ) & domain ).for_each( [ & ]( std::size_t w2 ) {
            if ( !dst.leq( map[ w ], map[ w2 ] ) )
                d.monotonicity_violations.emplace_back( w, w2 );
        } );

        world_set reached;
        ( src.up( w ) & domain ).for_each( [ & ]( std::size_t w2 ) { reached.insert( map[ w2 ] ); } );
        dst.up( map[ w ] ).for_each( [ & ]( std::size_t v ) {
            if ( !reached.contains( v ) )
                d.lift_violations.emplace_back( w, v );
        } );

        if ( map[ src.step( w ) ] != dst.step( map[ w ] ) )
            d.commute_violations.push_back( w );
    } );
    d.monotone = d.monotonicity_violations.empty();
    d.lifts = d.lift_violations.empty();
    d.commutes = d.commute_violations.empty();
    return d;
}

std::string format_world_set( const dynamic_poset& frame, world_set s )
{
    std::string out = "{";
    bool first = true;
    s.for_each( [ & ]( std::size_t w ) {
        if ( !first )
            out += ", ";
        out += frame.name( w );
        first = false;
    } );
    return out + "}";
}

} // namespace itl
