#include "itl/realline.hpp"

#include "itl/errors.hpp"

#include <algorithm>
#include <cassert>
#include <unordered_map>

namespace itl
{

std::string to_string( const rational& q )
{
    return q.get_str();
}

// ---------------------------------------------------------------------------
// interval_set

interval_set::interval_set( std::vector< rational > pts, std::vector< bool > at, std::vector< bool > gap )
    : _pts{ std::move( pts ) }, _at{ std::move( at ) }, _gap{ std::move( gap ) }
{
    if ( _at.size() != _pts.size() || _gap.size() != _pts.size() + 1 )
        throw invalid_structure( "interval set: bit vectors do not match breakpoints" );
    for ( std::size_t i = 1; i < _pts.size(); ++i )
        if ( !( _pts[ i - 1 ] < _pts[ i ] ) )
            throw invalid_structure( "interval set: breakpoints must increase strictly" );
    normalize();
}

void interval_set::normalize()
{
    std::vector< rational > pts;
    std::vector< bool > at;
    std::vector< bool > gap{ _gap[ 0 ] };
    for ( std::size_t i = 0; i < _pts.size(); ++i )
    {
        if ( _at[ i ] == gap.back() && _at[ i ] == _gap[ i + 1 ] )
            continue;
        pts.push_back( std::move( _pts[ i ] ) );
        at.push_back( _at[ i ] );
        gap.push_back( _gap[ i + 1 ] );
    }
    _pts = std::move( pts );
    _at = std::move( at );
    _gap = std::move( gap );
}

interval_set interval_set::all()
{
    interval_set s;
    s._gap[ 0 ] = true;
    return s;
}

interval_set interval_set::point( const rational& x )
{
    return interval_set{ { x }, { true }, { false, false } };
}

interval_set interval_set::interval( const bound& lo, const bound& hi )
{
    if ( ( !lo.value && lo.closed ) || ( !hi.value && hi.closed ) )
        throw invalid_structure( "an infinite bound cannot be included" );
    if ( lo.value && hi.value )
    {
        if ( *hi.value < *lo.value )
            throw invalid_structure( "interval bounds are reversed" );
        if ( *hi.value == *lo.value )
        {
            if ( !lo.closed || !hi.closed )
                throw invalid_structure( "a degenerate interval must be closed on both sides" );
            return point( *lo.value );
        }
    }
    std::vector< rational > pts;
    std::vector< bool > at;
    std::vector< bool > gap{ !lo.value };
    if ( lo.value )
    {
        pts.push_back( *lo.value );
        at.push_back( lo.closed );
        gap.push_back( true );
    }
    if ( hi.value )
    {
        pts.push_back( *hi.value );
        at.push_back( hi.closed );
        gap.push_back( false );
    }
    else
        gap.back() = true;
    return interval_set{ std::move( pts ), std::move( at ), std::move( gap ) };
}

interval_set interval_set::open( const rational& lo, const rational& hi )
{
    return interval( { lo, false }, { hi, false } );
}

interval_set interval_set::below( const rational& x, bool closed )
{
    return interval( {}, { x, closed } );
}

interval_set interval_set::above( const rational& x, bool closed )
{
    return interval( { x, closed }, {} );
}

bool interval_set::contains( const rational& x ) const
{
    auto it = std::lower_bound( _pts.begin(), _pts.end(), x );
    auto i = static_cast< std::size_t >( it - _pts.begin() );
    if ( it != _pts.end() && *it == x )
        return _at[ i ];
    return _gap[ i ];
}

bool interval_set::is_open() const
{
    return interior() == *this;
}

bool interval_set::subset_of( const interval_set& o ) const
{
    return ( *this & o ) == *this;
}

interval_set interval_set::complement() const
{
    interval_set s = *this;
    s._at.flip();
    s._gap.flip();
    return s;
}

interval_set interval_set::interior() const
{
    interval_set s = *this;
    for ( std::size_t i = 0; i < _pts.size(); ++i )
        s._at[ i ] = _at[ i ] && _gap[ i ] && _gap[ i + 1 ];
    s.normalize();
    return s;
}

interval_set interval_set::closure() const
{
    interval_set s = *this;
    for ( std::size_t i = 0; i < _pts.size(); ++i )
        s._at[ i ] = _at[ i ] || _gap[ i ] || _gap[ i + 1 ];
    s.normalize();
    return s;
}

interval_set interval_set::affine_image( const rational& m, const rational& b ) const
{
    assert( m != 0 );
    interval_set s = *this;
    for ( auto& p : s._pts )
        p = m * p + b;
    if ( m < 0 )
    {
        std::reverse( s._pts.begin(), s._pts.end() );
        std::reverse( s._at.begin(), s._at.end() );
        std::reverse( s._gap.begin(), s._gap.end() );
    }
    return s;
}

namespace
{

// A representative point of the gap before merged[j] (after the last one
// when j == merged.size()).
rational gap_sample( const std::vector< rational >& merged, std::size_t j )
{
    if ( j == 0 )
        return merged.front() - 1;
    if ( j == merged.size() )
        return merged.back() + 1;
    return ( merged[ j - 1 ] + merged[ j ] ) / 2;
}

template < typename Op >
interval_set combine( const interval_set& a, const interval_set& b, Op op )
{
    std::vector< rational > merged;
    std::merge( a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(), b.breakpoints().end(),
                std::back_inserter( merged ) );
    merged.erase( std::unique( merged.begin(), merged.end() ), merged.end() );

    if ( merged.empty() )
        return op( a.gap_bits()[ 0 ], b.gap_bits()[ 0 ] ) ? interval_set::all() : interval_set::empty();

    std::vector< bool > at;
    std::vector< bool > gap;
    for ( std::size_t j = 0; j <= merged.size(); ++j )
    {
        rational s = gap_sample( merged, j );
        gap.push_back( op( a.contains( s ), b.contains( s ) ) );
        if ( j < merged.size() )
            at.push_back( op( a.contains( merged[ j ] ), b.contains( merged[ j ] ) ) );
    }
    return interval_set{ std::move( merged ), std::move( at ), std::move( gap ) };
}

} // namespace

interval_set operator|( const interval_set& a, const interval_set& b )
{
    return combine( a, b, []( bool x, bool y ) { return x || y; } );
}

interval_set operator&( const interval_set& a, const interval_set& b )
{
    return combine( a, b, []( bool x, bool y ) { return x && y; } );
}

bool operator==( const interval_set& a, const interval_set& b )
{
    return a._pts == b._pts && a._at == b._at && a._gap == b._gap;
}

std::vector< std::pair< interval_set::bound, interval_set::bound > > interval_set::components() const
{
    // Cells in left-to-right order: gap 0, point 0, gap 1, ..., gap k.
    std::vector< std::pair< bound, bound > > out;
    const std::size_t k = _pts.size();
    std::optional< bound > start;
    for ( std::size_t c = 0; c <= 2 * k; ++c )
    {
        const bool is_gap = c % 2 == 0;
        const std::size_t i = c / 2;
        const bool member = is_gap ? _gap[ i ] : _at[ i ];
        if ( member && !start )
        {
            if ( is_gap )
                start = i == 0 ? bound{} : bound{ _pts[ i - 1 ], false };
            else
                start = bound{ _pts[ i ], true };
        }
        if ( !member && start )
        {
            // the previous cell closed the component
            if ( is_gap )
                out.emplace_back( *start, bound{ _pts[ i - 1 ], true } );
            else
                out.emplace_back( *start, bound{ _pts[ i ], false } );
            start.reset();
        }
    }
    if ( start )
        out.emplace_back( *start, bound{} );
    return out;
}

std::string interval_set::to_string() const
{
    auto comps = components();
    if ( comps.empty() )
        return "empty";
    std::string out;
    for ( const auto& [ lo, hi ] : comps )
    {
        if ( !out.empty() )
            out += " u ";
        out += lo.closed ? "[" : "(";
        out += lo.value ? itl::to_string( *lo.value ) : "-inf";
        out += ", ";
        out += hi.value ? itl::to_string( *hi.value ) : "inf";
        out += hi.closed ? "]" : ")";
    }
    return out;
}

// ---------------------------------------------------------------------------
// piecewise_affine_map

piecewise_affine_map::piecewise_affine_map( affine f ) : _pieces{ std::move( f ) } {}

piecewise_affine_map::piecewise_affine_map( std::vector< rational > breaks, std::vector< affine > pieces )
{
    if ( pieces.size() != breaks.size() + 1 )
        throw invalid_structure( "a map with k breakpoints needs k + 1 pieces" );
    for ( std::size_t i = 1; i < breaks.size(); ++i )
        if ( !( breaks[ i - 1 ] < breaks[ i ] ) )
            throw invalid_structure( "map breakpoints must increase strictly" );
    for ( std::size_t i = 0; i < breaks.size(); ++i )
        if ( pieces[ i ]( breaks[ i ] ) != pieces[ i + 1 ]( breaks[ i ] ) )
            throw invalid_structure( "map is discontinuous at x = " + itl::to_string( breaks[ i ] ) );

    _pieces.push_back( pieces[ 0 ] );
    for ( std::size_t i = 0; i < breaks.size(); ++i )
    {
        if ( pieces[ i + 1 ] == _pieces.back() )
            continue;
        _breaks.push_back( breaks[ i ] );
        _pieces.push_back( pieces[ i + 1 ] );
    }
}

interval_set piecewise_affine_map::piece_domain( std::size_t i ) const
{
    interval_set::bound lo;
    interval_set::bound hi;
    if ( i > 0 )
        lo = { _breaks[ i - 1 ], true };
    if ( i < _breaks.size() )
        hi = { _breaks[ i ], true };
    return interval_set::interval( lo, hi );
}

rational piecewise_affine_map::operator()( const rational& x ) const
{
    auto i = static_cast< std::size_t >( std::lower_bound( _breaks.begin(), _breaks.end(), x ) - _breaks.begin() );
    return _pieces[ i ]( x );
}

bool piecewise_affine_map::open() const
{
    const int sign = sgn( _pieces[ 0 ].slope );
    return sign != 0 && std::all_of( _pieces.begin(), _pieces.end(),
                                      [ & ]( const affine& f ) { return sgn( f.slope ) == sign; } );
}

interval_set piecewise_affine_map::preimage( const interval_set& a ) const
{
    interval_set out;
    for ( std::size_t i = 0; i < _pieces.size(); ++i )
    {
        const auto& f = _pieces[ i ];
        if ( f.slope == 0 )
        {
            if ( a.contains( f.intercept ) )
                out = out | piece_domain( i );
            continue;
        }
        rational inv = 1 / f.slope;
        out = out | ( piece_domain( i ) & a.affine_image( inv, -f.intercept * inv ) );
    }
    return out;
}

interval_set piecewise_affine_map::image( const interval_set& a ) const
{
    interval_set out;
    for ( std::size_t i = 0; i < _pieces.size(); ++i )
    {
        interval_set part = a & piece_domain( i );
        if ( part.is_empty() )
            continue;
        const auto& f = _pieces[ i ];
        out = out | ( f.slope == 0 ? interval_set::point( f.intercept ) : part.affine_image( f.slope, f.intercept ) );
    }
    return out;
}

namespace
{

std::string affine_text( const affine& f )
{
    std::string out;
    if ( f.slope != 0 )
    {
        if ( f.slope == 1 )
            out = "x";
        else if ( f.slope == -1 )
            out = "-x";
        else
            out = to_string( f.slope ) + "*x";
    }
    if ( f.intercept == 0 )
        return out.empty() ? "0" : out;
    if ( out.empty() )
        return to_string( f.intercept );
    if ( f.intercept < 0 )
        return out + " - " + to_string( rational{ -f.intercept } );
    return out + " + " + to_string( f.intercept );
}

} // namespace

std::string piecewise_affine_map::to_string() const
{
    if ( _breaks.empty() )
        return affine_text( _pieces[ 0 ] );
    std::string out = "piecewise";
    for ( std::size_t i = 0; i < _pieces.size(); ++i )
    {
        out += i == 0 ? " " : " ; ";
        if ( i == 0 )
            out += "x<=" + itl::to_string( _breaks[ 0 ] );
        else if ( i == _breaks.size() )
            out += "x>=" + itl::to_string( _breaks[ i - 1 ] );
        else
            out += itl::to_string( _breaks[ i - 1 ] ) + "<=x<=" + itl::to_string( _breaks[ i ] );
        out += " : " + affine_text( _pieces[ i ] );
    }
    return out;
}

// ---------------------------------------------------------------------------
// real systems

void real_system::validate() const
{
    for ( const auto& [ atom, set ] : val )
        if ( !set.is_open() )
            throw invalid_structure( "valuation of " + atom + " is not open: " + set.to_string() );
}

interval_set real_system::operator()( const std::string& atom ) const
{
    auto it = val.find( atom );
    return it == val.end() ? interval_set{} : it->second;
}

std::string to_string( real_status s )
{
    switch ( s )
    {
    case real_status::exact: return "Exact";
    case real_status::extrapolated: return "Extrapolated";
    case real_status::undetermined: return "Undetermined";
    }
    return "?";
}

namespace
{

struct chain_result
{
    interval_set value;
    real_status status = real_status::exact;
    std::string reason;
};

chain_result undetermined( std::string reason )
{
    return { {}, real_status::undetermined, std::move( reason ) };
}

// Whether the forward orbit of x stays inside t forever (decided when the
// orbit leaves t or revisits a point).
std::optional< bool > orbit_stays( const piecewise_affine_map& s, rational x, const interval_set& t,
                                   std::size_t cap )
{
    std::vector< rational > seen;
    for ( std::size_t n = 0; n <= cap; ++n )
    {
        if ( !t.contains( x ) )
            return false;
        if ( std::find( seen.begin(), seen.end(), x ) != seen.end() )
            return true;
        seen.push_back( x );
        x = s( x );
    }
    return std::nullopt;
}

// Whether the forward orbit of x ever enters t.
std::optional< bool > orbit_hits( const piecewise_affine_map& s, rational x, const interval_set& t,
                                  std::size_t cap )
{
    std::vector< rational > seen;
    for ( std::size_t n = 0; n <= cap; ++n )
    {
        if ( t.contains( x ) )
            return true;
        if ( std::find( seen.begin(), seen.end(), x ) != seen.end() )
            return false;
        seen.push_back( x );
        x = s( x );
    }
    return std::nullopt;
}

struct limit
{
    int infinite = 0; // -1, +1, or 0 when `value` holds the limit
    rational value;
    bool stationary = false;
};

bool below( const limit& l, const rational& x )
{
    return l.infinite < 0 || ( l.infinite == 0 && l.value < x );
}

// Limit of a breakpoint sequence x_0, x_1, ... with x_t = f(x_{t+1}) for a
// fixed piece f, i.e. generated by the inverse branch of f.
std::optional< limit > branch_limit( const piecewise_affine_map& s, std::size_t piece, const rational& last )
{
    const auto& f = s.pieces()[ piece ];
    const rational& a = f.slope;
    const rational& c = f.intercept;
    const bool unbounded_left = piece == 0;
    const bool unbounded_right = piece + 1 == s.pieces().size();

    if ( abs( a ) > 1 )
    {
        // the inverse branch contracts towards the fixed point of f
        rational fixed = c / ( 1 - a );
        if ( !s.piece_domain( piece ).contains( fixed ) )
            return std::nullopt;
        return limit{ 0, fixed };
    }
    int dir = 0;
    if ( a == 1 )
        dir = c > 0 ? -1 : 1;
    else if ( a > 0 )
        dir = last > c / ( 1 - a ) ? 1 : -1;
    else
        return std::nullopt; // oscillates or diverges with alternating sign
    if ( ( dir > 0 && !unbounded_right ) || ( dir < 0 && !unbounded_left ) )
        return std::nullopt;
    return limit{ dir, 0 };
}

// Guesses the limit of a monotone chain of sets from its last few members,
// assuming every breakpoint keeps following the branch it followed across
// the window. `member` decides finite limit points.
template < typename Member >
std::optional< interval_set > extrapolate( const std::vector< interval_set >& window, const piecewise_affine_map& s,
                                           Member member, std::string& why )
{
    const auto& last = window.back();
    const std::size_t k = last.breakpoints().size();
    for ( const auto& v : window )
        if ( v.breakpoints().size() != k || v.point_bits() != last.point_bits() || v.gap_bits() != last.gap_bits() )
        {
            why = "breakpoint pattern not constant over the window";
            return std::nullopt;
        }

    std::vector< limit > limits;
    for ( std::size_t j = 0; j < k; ++j )
    {
        auto x = [ & ]( std::size_t t ) -> const rational& { return window[ t ].breakpoints()[ j ]; };
        bool still = true;
        for ( std::size_t t = 1; t < window.size(); ++t )
            still = still && x( t ) == x( 0 );
        if ( still )
        {
            limits.push_back( { 0, x( 0 ), true } );
            continue;
        }

        std::optional< limit > found;
        for ( std::size_t i = 0; i < s.pieces().size() && !found; ++i )
        {
            const auto& f = s.pieces()[ i ];
            if ( f.slope == 0 )
                continue;
            auto dom = s.piece_domain( i );
            bool follows = true;
            for ( std::size_t t = 0; t + 1 < window.size() && follows; ++t )
                follows = dom.contains( x( t + 1 ) ) && f( x( t + 1 ) ) == x( t );
            if ( follows )
                found = branch_limit( s, i, x( window.size() - 1 ) );
        }
        if ( !found )
        {
            why = "breakpoint " + std::to_string( j ) + " does not follow a single convergent branch";
            return std::nullopt;
        }
        limits.push_back( *found );
    }

    auto before = []( const limit& a, const limit& b ) {
        if ( a.infinite != b.infinite )
            return a.infinite < b.infinite && !( a.infinite == 0 && b.infinite == 0 );
        return a.infinite == 0 && a.value < b.value;
    };
    for ( std::size_t j = 1; j < limits.size(); ++j )
        if ( before( limits[ j ], limits[ j - 1 ] ) )
        {
            why = "breakpoint limits out of order";
            return std::nullopt;
        }

    std::vector< rational > pts;
    for ( const auto& l : limits )
        if ( l.infinite == 0 && ( pts.empty() || pts.back() != l.value ) )
            pts.push_back( l.value );

    std::vector< bool > gap;
    for ( std::size_t j = 0; j <= pts.size(); ++j )
    {
        // the gap of the window pattern that eventually covers this sample
        std::size_t idx = 0;
        if ( pts.empty() )
            idx = static_cast< std::size_t >(
                    std::count_if( limits.begin(), limits.end(), []( const limit& l ) { return l.infinite < 0; } ) );
        else
        {
            rational sample = gap_sample( pts, j );
            idx = static_cast< std::size_t >( std::count_if(
                    limits.begin(), limits.end(), [ & ]( const limit& l ) { return below( l, sample ); } ) );
        }
        gap.push_back( last.gap_bits()[ idx ] );
    }

    std::vector< bool > at;
    for ( const auto& p : pts )
    {
        auto decided = member( p );
        if ( !decided )
        {
            // fall back on a breakpoint that never moved
            auto it = std::find_if( limits.begin(), limits.end(),
                                    [ & ]( const limit& l ) { return l.infinite == 0 && l.value == p; } );
            const auto j = static_cast< std::size_t >( it - limits.begin() );
            const bool lone = std::count_if( limits.begin(), limits.end(), [ & ]( const limit& l ) {
                                  return l.infinite == 0 && l.value == p;
                              } ) == 1;
            if ( !it->stationary || !lone )
            {
                why = "orbit of limit point " + to_string( p ) + " undecided within the orbit cap";
                return std::nullopt;
            }
            decided = last.point_bits()[ j ];
        }
        at.push_back( *decided );
    }
    return interval_set{ std::move( pts ), std::move( at ), std::move( gap ) };
}

// The intersection of S^{-n}[t] over all n, as the limit of the chain
// V_0 = t, V_{k+1} = t & S^{-1}[V_k].
chain_result decreasing_limit( const piecewise_affine_map& s, const interval_set& t, const real_caps& caps )
{
    std::vector< interval_set > history{ t };
    std::string why = "no fixpoint within " + std::to_string( caps.iter ) + " steps";
    for ( std::size_t k = 0; k < caps.iter; ++k )
    {
        interval_set next = t & s.preimage( history.back() );
        if ( next == history.back() )
            return { next, real_status::exact, {} };
        history.push_back( std::move( next ) );
        if ( caps.window < 2 || history.size() < caps.window )
            continue;

        std::vector< interval_set > window( history.end() - static_cast< std::ptrdiff_t >( caps.window ),
                                            history.end() );
        auto guess = extrapolate(
                window, s, [ & ]( const rational& x ) { return orbit_stays( s, x, t, caps.orbit ); }, why );
        if ( !guess )
            continue;
        if ( ( t & s.preimage( *guess ) ) == *guess && guess->subset_of( history.back() ) )
            return { *guess, real_status::extrapolated, "limit extrapolated after " + std::to_string( k + 1 ) +
                                                                " steps" };
        why = "extrapolated limit is not a fixpoint";
    }
    return undetermined( why );
}

// The union of S^{-n}[t] over all n.
chain_result increasing_limit( const piecewise_affine_map& s, const interval_set& t, const real_caps& caps )
{
    std::vector< interval_set > history{ t };
    std::string why = "no fixpoint within " + std::to_string( caps.iter ) + " steps";
    for ( std::size_t k = 0; k < caps.iter; ++k )
    {
        interval_set next = history.back() | s.preimage( history.back() );
        if ( next == history.back() )
            return { next, real_status::exact, {} };
        history.push_back( std::move( next ) );
        if ( caps.window < 2 || history.size() < caps.window )
            continue;

        std::vector< interval_set > window( history.end() - static_cast< std::ptrdiff_t >( caps.window ),
                                            history.end() );
        auto guess = extrapolate(
                window, s, [ & ]( const rational& x ) { return orbit_hits( s, x, t, caps.orbit ); }, why );
        if ( !guess )
            continue;
        if ( s.preimage( *guess ).subset_of( *guess ) && history.back().subset_of( *guess ) && guess->is_open() )
            return { *guess, real_status::extrapolated, "limit extrapolated after " + std::to_string( k + 1 ) +
                                                                " steps" };
        why = "extrapolated limit is not a fixpoint";
    }
    return undetermined( why );
}

// Greatest S-invariant open subset of t.
chain_result strong_box( const piecewise_affine_map& s, const interval_set& t, const real_caps& caps )
{
    interval_set target = t;
    real_status status = real_status::exact;
    std::string reason;
    for ( std::size_t r = 0; r <= caps.restart; ++r )
    {
        auto res = decreasing_limit( s, target, caps );
        if ( res.status == real_status::undetermined )
            return res;
        if ( res.status == real_status::extrapolated )
        {
            status = real_status::extrapolated;
            reason = res.reason;
        }
        interval_set c = res.value.interior();
        if ( s.image( c ).subset_of( c ) )
        {
            if ( r > 0 )
                reason += ( reason.empty() ? "" : "; " ) + std::to_string( r ) + " restart(s)";
            return { c, status, reason };
        }
        target = std::move( c );
    }
    return undetermined( "no invariant open set within " + std::to_string( caps.restart ) + " restarts" );
}

} // namespace

eval_outcome eval_real( const real_system& sys, const formula& f )
{
    eval_outcome out;
    std::unordered_map< formula, std::size_t, formula_hash > index;
    const auto& s = sys.map;

    for ( const auto& g : subformulas( f ) )
    {
        real_node node;
        node.f = g;
        auto child = [ & ]( const formula& h ) -> const real_node& { return out.nodes[ index.at( h ) ]; };

        std::vector< const real_node* > kids;
        if ( is_binary( g.kind() ) )
            kids = { &child( g.lhs() ), &child( g.rhs() ) };
        else if ( is_unary( g.kind() ) )
            kids = { &child( g.operand() ) };
        for ( const auto* k : kids )
            node.status = std::max( node.status, k->status );

        if ( node.status == real_status::undetermined )
            node.reason = "operand undetermined";
        else
        {
            chain_result res;
            switch ( g.kind() )
            {
            case op::bottom: node.value = interval_set::empty(); break;
            case op::atom: node.value = sys( g.name() ); break;
            case op::conj: node.value = kids[ 0 ]->value & kids[ 1 ]->value; break;
            case op::disj: node.value = kids[ 0 ]->value | kids[ 1 ]->value; break;
            case op::implies:
                node.value = ( kids[ 0 ]->value.complement() | kids[ 1 ]->value ).interior();
                break;
            case op::next: node.value = s.preimage( kids[ 0 ]->value ); break;
            case op::eventually: res = increasing_limit( s, kids[ 0 ]->value, sys.caps ); break;
            case op::strong_box: res = strong_box( s, kids[ 0 ]->value, sys.caps ); break;
            case op::weak_box:
                res = decreasing_limit( s, kids[ 0 ]->value, sys.caps );
                res.value = res.value.interior();
                break;
            }
            if ( is_unary( g.kind() ) && g.kind() != op::next )
            {
                node.value = std::move( res.value );
                node.status = std::max( node.status, res.status );
                node.reason = std::move( res.reason );
            }
        }
        if ( node.status == real_status::undetermined )
            node.value = interval_set{};
        index.emplace( g, out.nodes.size() );
        out.nodes.push_back( std::move( node ) );
    }

    const auto& top = out.nodes.back();
    out.value = top.value;
    out.status = top.status;
    out.reason = top.reason;
    return out;
}

std::vector< bool > check_pointwise( const real_system& sys, const formula& f, const std::vector< rational >& points )
{
    auto res = eval_real( sys, f );
    if ( res.status == real_status::undetermined )
        throw undetermined_extension( "extension undetermined: " + res.reason );
    std::vector< bool > out;
    out.reserve( points.size() );
    for ( const auto& x : points )
        out.push_back( res.value.contains( x ) );
    return out;
}

} // namespace itl
