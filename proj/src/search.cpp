#include "itl/search.hpp"

#include "itl/errors.hpp"
#include "itl/parser.hpp"

#include <algorithm>
#include <atomic>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

namespace itl
{

std::string to_string( model_class c )
{
    return c == model_class::e ? "e" : "p";
}

std::optional< model_class > parse_model_class( std::string_view s )
{
    if ( s == "e" )
        return model_class::e;
    if ( s == "p" )
        return model_class::p;
    return std::nullopt;
}

std::string to_string( validity_outcome o )
{
    switch ( o )
    {
    case validity_outcome::valid_up_to: return "valid-up-to";
    case validity_outcome::countermodel: return "countermodel";
    case validity_outcome::undetermined: return "undetermined";
    }
    return "?";
}

std::string to_string( edge_status s )
{
    switch ( s )
    {
    case edge_status::verified: return "verified";
    case edge_status::failed: return "failed";
    case edge_status::no_witness: return "no-witness";
    }
    return "?";
}

namespace
{

using up_table = std::vector< world_set >;

// Every partial order on n labeled points, as up-set rows. Each unordered
// pair is unrelated, below or above; non-transitive choices are dropped.
std::vector< up_table > orders_of( std::size_t n )
{
    std::vector< std::pair< std::size_t, std::size_t > > pairs;
    for ( std::size_t a = 0; a < n; ++a )
        for ( std::size_t b = a + 1; b < n; ++b )
            pairs.emplace_back( a, b );

    std::vector< up_table > out;
    std::vector< int > choice( pairs.size(), 0 );
    for ( ;; )
    {
        up_table up( n );
        for ( std::size_t w = 0; w < n; ++w )
            up[ w ].insert( w );
        for ( std::size_t k = 0; k < pairs.size(); ++k )
        {
            auto [ a, b ] = pairs[ k ];
            if ( choice[ k ] == 1 )
                up[ a ].insert( b );
            else if ( choice[ k ] == 2 )
                up[ b ].insert( a );
        }
        bool transitive = true;
        for ( std::size_t a = 0; a < n && transitive; ++a )
            up[ a ].for_each( [ & ]( std::size_t b ) {
                if ( !up[ b ].subset_of( up[ a ] ) )
                    transitive = false;
            } );
        if ( transitive )
            out.push_back( std::move( up ) );

        std::size_t k = 0;
        while ( k < choice.size() && ++choice[ k ] == 3 )
            choice[ k++ ] = 0;
        if ( k == choice.size() )
            break;
    }
    return out;
}

const std::vector< up_table >& cached_orders( std::size_t n )
{
    static std::mutex lock;
    static std::vector< std::vector< up_table > > cache;
    std::lock_guard guard{ lock };
    if ( cache.size() <= n )
        cache.resize( n + 1 );
    if ( cache[ n ].empty() )
        cache[ n ] = orders_of( n );
    return cache[ n ];
}

bool monotone( const up_table& up, const std::vector< std::size_t >& step )
{
    for ( std::size_t a = 0; a < up.size(); ++a )
    {
        bool ok = true;
        up[ a ].for_each( [ & ]( std::size_t b ) {
            if ( !up[ step[ a ] ].contains( step[ b ] ) )
                ok = false;
        } );
        if ( !ok )
            return false;
    }
    return true;
}

// Given monotonicity, openness says S maps up(w) onto up(S(w)).
bool open_map( const up_table& up, const std::vector< std::size_t >& step )
{
    for ( std::size_t w = 0; w < up.size(); ++w )
    {
        world_set img;
        up[ w ].for_each( [ & ]( std::size_t v ) { img.insert( step[ v ] ); } );
        if ( !( img == up[ step[ w ] ] ) )
            return false;
    }
    return true;
}

std::vector< std::uint8_t > encode( const up_table& up, const std::vector< std::size_t >& step,
                                    const std::vector< std::size_t >& perm )
{
    const std::size_t n = up.size();
    std::vector< std::uint8_t > rows( n ), steps( n );
    for ( std::size_t a = 0; a < n; ++a )
    {
        std::uint8_t bits = 0;
        up[ a ].for_each( [ & ]( std::size_t b ) { bits |= static_cast< std::uint8_t >( 1U << perm[ b ] ); } );
        rows[ perm[ a ] ] = bits;
        steps[ perm[ a ] ] = static_cast< std::uint8_t >( perm[ step[ a ] ] );
    }
    std::vector< std::uint8_t > out{ static_cast< std::uint8_t >( n ) };
    out.insert( out.end(), rows.begin(), rows.end() );
    out.insert( out.end(), steps.begin(), steps.end() );
    return out;
}

std::vector< std::size_t > identity( std::size_t n )
{
    std::vector< std::size_t > p( n );
    std::iota( p.begin(), p.end(), std::size_t{ 0 } );
    return p;
}

std::vector< std::uint8_t > canonical_code( const up_table& up, const std::vector< std::size_t >& step )
{
    auto perm = identity( up.size() );
    auto best = encode( up, step, perm );
    while ( std::next_permutation( perm.begin(), perm.end() ) )
        best = std::min( best, encode( up, step, perm ) );
    return best;
}

bool is_canonical( const up_table& up, const std::vector< std::size_t >& step )
{
    auto perm = identity( up.size() );
    auto mine = encode( up, step, perm );
    while ( std::next_permutation( perm.begin(), perm.end() ) )
        if ( encode( up, step, perm ) < mine )
            return false;
    return true;
}

std::string show_code( const std::vector< std::uint8_t >& code )
{
    const std::size_t n = code[ 0 ];
    std::string out = std::to_string( n ) + "|";
    for ( std::size_t k = 0; k < n; ++k )
        out += ( k ? " " : "" ) + std::to_string( code[ 1 + k ] );
    out += "|";
    for ( std::size_t k = 0; k < n; ++k )
        out += ( k ? " " : "" ) + std::to_string( code[ 1 + n + k ] );
    return out;
}

up_table table_of( const dynamic_poset& f )
{
    up_table up( f.size() );
    for ( std::size_t w = 0; w < f.size(); ++w )
        up[ w ] = f.up( w );
    return up;
}

std::vector< std::string > world_names( std::size_t n )
{
    std::vector< std::string > names;
    for ( std::size_t w = 0; w < n; ++w )
        names.push_back( "w" + std::to_string( w ) );
    return names;
}

// Calls visit(step) for every admissible map of one order, in odometer order
// with the last world's image varying fastest.
template < typename F >
bool for_each_map( const up_table& up, model_class cls, bool dedup, F&& visit )
{
    const std::size_t n = up.size();
    std::vector< std::size_t > step( n, 0 );
    for ( ;; )
    {
        if ( monotone( up, step ) && ( cls == model_class::e || open_map( up, step ) ) &&
             ( !dedup || is_canonical( up, step ) ) )
            if ( !visit( step ) )
                return false;
        std::size_t k = n;
        while ( k > 0 && ++step[ k - 1 ] == n )
            step[ --k ] = 0;
        if ( k == 0 )
            return true;
    }
}

// Odometer over valuations; atom 0 varies slowest.
template < typename F >
bool for_each_valuation( const std::vector< world_set >& ups, std::size_t atoms, F&& visit )
{
    std::vector< std::size_t > idx( atoms, 0 );
    std::vector< world_set > sets( atoms, ups[ 0 ] );
    for ( ;; )
    {
        if ( !visit( std::span< const world_set >( sets ) ) )
            return false;
        std::size_t k = atoms;
        while ( k > 0 && ++idx[ k - 1 ] == ups.size() )
        {
            idx[ k - 1 ] = 0;
            sets[ k - 1 ] = ups[ 0 ];
            --k;
        }
        if ( k == 0 )
            return true;
        sets[ k - 1 ] = ups[ idx[ k - 1 ] ];
    }
}

void check_bound( const semantic_class& cls, const search_options& opts )
{
    if ( cls.bound > opts.max_bound )
        throw bound_too_large( "bound " + std::to_string( cls.bound ) + " exceeds the maximum " +
                               std::to_string( opts.max_bound ) );
    if ( cls.bound > 8 )
        throw bound_too_large( "bound " + std::to_string( cls.bound ) + " exceeds the enumerator limit 8" );
}

} // namespace

std::vector< world_set > up_sets( const dynamic_poset& frame )
{
    std::vector< world_set > out;
    const std::uint64_t limit = std::uint64_t{ 1 } << frame.size();
    for ( std::uint64_t b = 0; b < limit; ++b )
        if ( frame.is_up_set( world_set{ b } ) )
            out.push_back( world_set{ b } );
    return out;
}

std::string encode_frame( const dynamic_poset& frame )
{
    return show_code( encode( table_of( frame ), frame.steps(), identity( frame.size() ) ) );
}

std::string canonical_form( const dynamic_poset& frame )
{
    return show_code( canonical_code( table_of( frame ), frame.steps() ) );
}

void for_each_frame( const semantic_class& cls, const std::function< bool( const dynamic_poset& ) >& visit,
                     const search_options& opts )
{
    check_bound( cls, opts );
    for ( std::size_t n = 1; n <= cls.bound; ++n )
    {
        auto names = world_names( n );
        for ( const auto& up : cached_orders( n ) )
            if ( !for_each_map( up, cls.kind, opts.dedup, [ & ]( const std::vector< std::size_t >& step ) {
                     return visit( dynamic_poset::from_up_sets( names, up, step ) );
                 } ) )
                return;
    }
}

void enumerate_models( const semantic_class& cls, const std::vector< std::string >& atoms,
                       const std::function< bool( const poset_model& ) >& visit, const search_options& opts )
{
    for_each_frame(
        cls,
        [ & ]( const dynamic_poset& frame ) {
            auto ups = up_sets( frame );
            return for_each_valuation( ups, atoms.size(), [ & ]( std::span< const world_set > sets ) {
                poset_model m{ frame, {} };
                for ( std::size_t k = 0; k < atoms.size(); ++k )
                    m.val.assign( atoms[ k ], sets[ k ] );
                return visit( m );
            } );
        },
        opts );
}

// ---------------------------------------------------------------------------
// validity

validity_result validity( const formula& f, const semantic_class& cls, const search_options& opts )
{
    check_bound( cls, opts );
    validity_result res;
    res.f = f;
    res.cls = cls;

    auto atom_set = atoms( f );
    std::vector< std::string > atom_list( atom_set.begin(), atom_set.end() );

    // one work unit per (size, order)
    struct unit
    {
        std::size_t n;
        const up_table* up;
    };
    std::vector< unit > units;
    for ( std::size_t n = 1; n <= cls.bound; ++n )
        for ( const auto& up : cached_orders( n ) )
            units.push_back( { n, &up } );

    struct found
    {
        std::size_t unit = std::numeric_limits< std::size_t >::max();
        std::size_t index = 0; // models before it within the unit
        std::vector< std::size_t > step;
        std::vector< world_set > sets;
        world_set ext;
    };
    found best;
    std::mutex best_lock;
    std::atomic< std::size_t > best_unit{ std::numeric_limits< std::size_t >::max() };
    std::atomic< std::size_t > next{ 0 };
    std::vector< std::size_t > counts( units.size(), 0 );

    auto work = [ & ] {
        poset_evaluator ev{ f, atom_list };
        for ( ;; )
        {
            const std::size_t u = next.fetch_add( 1 );
            if ( u >= units.size() || u > best_unit.load() )
                return;
            const auto& up = *units[ u ].up;
            auto names = world_names( units[ u ].n );
            std::size_t count = 0;
            for_each_map( up, cls.kind, opts.dedup, [ & ]( const std::vector< std::size_t >& step ) {
                auto frame = dynamic_poset::from_up_sets( names, up, step );
                auto ups = up_sets( frame );
                return for_each_valuation( ups, atom_list.size(), [ & ]( std::span< const world_set > sets ) {
                    auto ext = ev.eval( frame, sets );
                    if ( ext == frame.all() )
                    {
                        ++count;
                        return true;
                    }
                    std::lock_guard guard{ best_lock };
                    if ( u < best.unit )
                    {
                        best = { u, count, step, std::vector< world_set >( sets.begin(), sets.end() ), ext };
                        best_unit.store( u );
                    }
                    return false;
                } );
            } );
            counts[ u ] = count;
        }
    };

    std::size_t threads = opts.threads ? opts.threads : std::max( 1U, std::thread::hardware_concurrency() );
    threads = std::min( threads, units.size() );
    if ( threads <= 1 )
        work();
    else
    {
        std::vector< std::thread > pool;
        for ( std::size_t t = 0; t < threads; ++t )
            pool.emplace_back( work );
        for ( auto& t : pool )
            t.join();
    }

    if ( best.unit == std::numeric_limits< std::size_t >::max() )
    {
        res.outcome = validity_outcome::valid_up_to;
        res.models_checked = std::accumulate( counts.begin(), counts.end(), std::size_t{ 0 } );
        return res;
    }

    // every unit before the winner ran to completion
    res.models_checked =
        std::accumulate( counts.begin(), counts.begin() + static_cast< std::ptrdiff_t >( best.unit ), std::size_t{ 0 } ) +
        best.index + 1;

    const std::size_t n = units[ best.unit ].n;
    countermodel cm{ { dynamic_poset::from_up_sets( world_names( n ), *units[ best.unit ].up, best.step ), {} }, 0, f };
    for ( std::size_t k = 0; k < atom_list.size(); ++k )
        cm.model.val.assign( atom_list[ k ], best.sets[ k ] );
    cm.world = static_cast< std::size_t >( std::countr_zero( best.ext.complement( n ).bits() ) );

    // independent re-check through the public evaluator
    bool ok = cm.model.frame.continuous() && ( cls.kind == model_class::e || cm.model.frame.open() );
    try
    {
        cm.model.check_valuation();
        ok = ok && !eval( cm.model, f ).contains( cm.world );
    }
    catch ( const error& )
    {
        ok = false;
    }
    if ( !ok )
    {
        res.outcome = validity_outcome::undetermined;
        res.note = "countermodel failed its re-check";
        return res;
    }
    res.outcome = validity_outcome::countermodel;
    res.note = "no countermodel with fewer than " + std::to_string( n ) + " worlds";
    res.witness = std::move( cm );
    return res;
}

std::string to_record( const validity_result& r )
{
    std::ostringstream out;
    out << "record validity\n";
    out << "formula: " << print_formula( r.f ) << "\n";
    out << "class: " << to_string( r.cls.kind ) << "\n";
    out << "bound: " << r.cls.bound << "\n";
    out << "verdict: " << to_string( r.outcome ) << "\n";
    out << "models: " << r.models_checked << "\n";
    if ( !r.note.empty() )
        out << "note: " << r.note << "\n";
    if ( r.witness )
    {
        out << "world: " << r.witness->model.frame.name( r.witness->world ) << "\n";
        out << "size: " << r.witness->model.frame.size() << "\n";
        out << "model:\n" << print_poset_model( r.witness->model );
    }
    out << "end\n";
    return out.str();
}

// ---------------------------------------------------------------------------
// soundness

bool sweep_report::all_valid() const
{
    return std::all_of( entries.begin(), entries.end(),
                        []( const sweep_entry& e ) { return e.result.outcome == validity_outcome::valid_up_to; } );
}

namespace
{

formula schema_instance( const schema& s )
{
    static const std::map< std::string, formula > fresh = {
        { "phi", formula::atom( "p" ) },
        { "psi", formula::atom( "q" ) },
        { "chi", formula::atom( "r" ) },
    };
    return instantiate( s, fresh );
}

// Schemas of the logic that lie in its language, in table order, with the
// box matching the logic's flavor.
std::vector< std::pair< std::string, formula > > logic_instances( const logic_spec& logic )
{
    std::vector< std::pair< std::string, formula > > out;
    for ( const auto& s : all_schemas() )
    {
        if ( !logic.has_axiom( s.name ) )
            continue;
        auto f = schema_instance( s );
        if ( !in_fragment( f, logic.frag ) )
            continue;
        out.emplace_back( s.name, logic.flavor == box_flavor::weak ? translate_weak( f ) : f );
    }
    return out;
}

} // namespace

sweep_report soundness_sweep( const logic_spec& logic, const semantic_class& cls, const search_options& opts )
{
    sweep_report rep;
    rep.logic = logic.name;
    rep.cls = cls;
    for ( auto& [ name, f ] : logic_instances( logic ) )
        rep.entries.push_back( { name, validity( f, cls, opts ) } );
    return rep;
}

// ---------------------------------------------------------------------------
// separation

bool separation_report::all_verified() const
{
    return std::all_of( edges.begin(), edges.end(),
                        []( const separation_certificate& c ) { return c.status == edge_status::verified; } );
}

namespace
{

// Is f true everywhere on the frame under every up-set valuation?
std::optional< std::string > refute_on_frame( const dynamic_poset& frame, const formula& f )
{
    auto atom_set = atoms( f );
    std::vector< std::string > atom_list( atom_set.begin(), atom_set.end() );
    poset_evaluator ev{ f, atom_list };
    auto ups = up_sets( frame );
    std::optional< std::string > bad;
    for_each_valuation( ups, atom_list.size(), [ & ]( std::span< const world_set > sets ) {
        auto ext = ev.eval( frame, sets );
        if ( ext == frame.all() )
            return true;
        std::string v;
        for ( std::size_t k = 0; k < atom_list.size(); ++k )
            v += " " + atom_list[ k ] + "=" + format_world_set( frame, sets[ k ] );
        bad = "fails with" + v;
        return false;
    } );
    return bad;
}

// Open interval sets with a few components, from a fixed seed.
interval_set random_open_set( std::mt19937_64& rng )
{
    std::uniform_int_distribution< int > num( -12, 12 ), den( 1, 3 ), count( 0, 2 ), coin( 0, 9 );
    interval_set out;
    for ( int c = count( rng ); c >= 0; --c )
    {
        rational a{ num( rng ), den( rng ) }, b{ num( rng ), den( rng ) };
        a.canonicalize();
        b.canonicalize();
        if ( a == b )
            continue;
        if ( b < a )
            std::swap( a, b );
        interval_set::bound lo{ a, false }, hi{ b, false };
        if ( coin( rng ) == 0 )
            lo = {};
        if ( coin( rng ) == 0 )
            hi = {};
        out = out | interval_set::interval( lo, hi );
    }
    return out;
}

void certify_real_soundness( const real_system& sys, const logic_spec& out_logic, separation_certificate& cert )
{
    std::mt19937_64 rng{ 2718 };
    std::vector< real_system > systems{ sys };
    for ( int k = 0; k < 3; ++k )
    {
        real_system s = sys;
        for ( const char* a : { "p", "q", "r" } )
            s.val[ a ] = random_open_set( rng );
        systems.push_back( std::move( s ) );
    }
    std::size_t checks = 0, undetermined = 0;
    for ( const auto& [ name, f ] : logic_instances( out_logic ) )
        for ( const auto& s : systems )
        {
            ++checks;
            auto r = eval_real( s, f );
            if ( r.status == real_status::undetermined )
            {
                ++undetermined;
                continue;
            }
            if ( !r.value.is_all() )
            {
                cert.out_sound = false;
                cert.soundness_detail = name + " fails on " + r.value.complement().to_string();
                return;
            }
        }
    cert.out_sound = true;
    cert.soundness_detail = "spot-checked " + std::to_string( checks ) + " instances, " +
                            std::to_string( undetermined ) + " undetermined";
}

} // namespace

separation_report build_separation_matrix( const corpus& c, std::string_view edges_id, const search_options& opts )
{
    (void)opts;
    separation_report rep;
    rep.logics = { "ITL", "ETL", "RTL", "CDTL", "ITL+", "ETL+", "CDTL+" };
    auto edges = c.load_edges( edges_id );

    // accepted derivations by conclusion, for inclusion checks
    std::vector< std::pair< std::string, derivation > > derivations;
    for ( const auto& e : c.entries() )
        if ( e.kind == entry_kind::derivation )
            derivations.emplace_back( e.id, c.load_derivation( e.id ) );

    for ( const auto& e : edges )
    {
        separation_certificate cert;
        cert.edge = e;
        cert.logic_in = e.to;
        cert.logic_out = e.from;
        cert.f = schema_instance( *find_schema( e.label ) );
        auto in_logic = logic_by_name( e.to + ".db" );
        auto out_logic = logic_by_name( e.from + ".db" );

        std::vector< std::string > problems;

        // (a) witness
        if ( e.witness_kind == "none" )
            cert.witness_detail = "no witness structure";
        else if ( e.witness_kind == "poset" )
        {
            auto m = c.load_poset( e.witness_id );
            auto w = m.frame.index_of( e.witness_point );
            if ( !w )
                throw corpus_error( e.witness_id + ": no world " + e.witness_point );
            auto ext = eval( m, cert.f );
            cert.falsified = !ext.contains( *w );
            cert.witness_detail = "falsified at: " + format_world_set( m.frame, ext.complement( m.frame.size() ) );
            cert.out_sound = true;
            for ( const auto& [ name, g ] : logic_instances( out_logic ) )
                if ( auto bad = refute_on_frame( m.frame, g ) )
                {
                    cert.out_sound = false;
                    cert.soundness_detail = name + " " + *bad;
                    break;
                }
            if ( cert.out_sound )
                cert.soundness_detail = "every schema of " + e.from + " holds under every valuation";
        }
        else
        {
            auto sys = c.load_real( e.witness_id );
            auto x = parse_rational( e.witness_point );
            auto r = eval_real( sys, cert.f );
            cert.falsified = r.status != real_status::undetermined && !r.value.contains( x );
            cert.witness_detail = "extension " + r.value.to_string() + " [" + to_string( r.status ) + "]";
            certify_real_soundness( sys, out_logic, cert );
        }

        // (b) derivation in the stronger logic
        if ( e.derivation != "-" )
        {
            auto d = c.load_derivation( e.derivation );
            auto v = check( d, in_logic );
            cert.derivation_accepted = v.accepted && d.lines.back().f == cert.f;
            if ( !v.accepted )
                problems.push_back( e.derivation + " rejected: " + v.reason );
            else if ( !*cert.derivation_accepted )
                problems.push_back( e.derivation + " concludes a different formula" );
        }

        // solid edges: every axiom of the smaller logic is derivable in the larger
        if ( e.solid )
        {
            cert.inclusion = true;
            for ( const auto& ax : out_logic.axioms )
            {
                if ( in_logic.has_axiom( ax ) )
                    continue;
                auto want = schema_instance( *find_schema( ax ) );
                // an instance of one of the larger logic's own schemas, or a bundled derivation
                bool covered = std::any_of( in_logic.axioms.begin(), in_logic.axioms.end(), [ & ]( const auto& s ) {
                    return match( *find_schema( s ), want ).has_value();
                } );
                covered = covered || std::any_of( derivations.begin(), derivations.end(), [ & ]( const auto& d ) {
                              return d.second.lines.back().f == want && check( d.second, in_logic ).accepted;
                          } );
                if ( !covered )
                {
                    cert.inclusion = false;
                    problems.push_back( "axiom " + ax + " of " + e.from + " has no derivation in " + e.to );
                }
            }
        }

        if ( e.witness_kind == "none" )
        {
            cert.status = edge_status::no_witness;
            problems.insert( problems.begin(), "no witness structure within reach" );
        }
        else
        {
            if ( !cert.falsified )
                problems.push_back( "witness does not falsify the formula" );
            if ( !cert.out_sound )
                problems.push_back( e.from + " fails on the witness: " + cert.soundness_detail );
            cert.status = problems.empty() ? edge_status::verified : edge_status::failed;
        }
        for ( const auto& p : problems )
            cert.reason += ( cert.reason.empty() ? "" : "; " ) + p;
        rep.edges.push_back( std::move( cert ) );
    }
    return rep;
}

std::string separation_report::render() const
{
    std::ostringstream out;
    out << std::left;
    for ( const auto& c : edges )
    {
        std::string arrow = c.edge.from + ( c.edge.solid ? " -> " : " ~> " ) + c.edge.to;
        std::string witness = c.edge.witness_kind == "none"
                                  ? "none"
                                  : c.edge.witness_kind + ":" + c.edge.witness_id + "@" + c.edge.witness_point;
        out << std::setw( 18 ) << arrow << std::setw( 10 ) << c.edge.label << std::setw( 22 ) << witness
            << std::setw( 11 ) << to_string( c.status );
        if ( !c.reason.empty() )
            out << c.reason;
        out << "\n";
    }

    // rows lack the label, columns have it
    out << "\n" << std::setw( 7 ) << "";
    for ( const auto& l : logics )
        out << std::setw( 11 ) << l;
    out << "\n";
    for ( const auto& row : logics )
    {
        out << std::setw( 7 ) << row;
        for ( const auto& col : logics )
        {
            std::string cell = row == col ? "=" : ".";
            for ( const auto& c : edges )
                if ( c.edge.from == row && c.edge.to == col )
                    cell = ( c.status == edge_status::verified ? "" : "?" ) + c.edge.label +
                           ( c.edge.solid ? "" : "~" );
            out << std::setw( 11 ) << cell;
        }
        out << "\n";
    }
    auto verified = std::count_if( edges.begin(), edges.end(),
                                   []( const separation_certificate& c ) { return c.status == edge_status::verified; } );
    out << "\n" << verified << " of " << edges.size() << " edges verified\n";
    return out.str();
}

std::string separation_report::records() const
{
    std::ostringstream out;
    for ( const auto& c : edges )
    {
        out << "record edge\n";
        out << "from: " << c.edge.from << "\nto: " << c.edge.to << "\n";
        out << "style: " << ( c.edge.solid ? "solid" : "dashed" ) << "\n";
        out << "label: " << c.edge.label << "\nformula: " << print_formula( c.f ) << "\n";
        out << "witness: " << c.edge.witness_kind;
        if ( c.edge.witness_kind != "none" )
            out << " " << c.edge.witness_id << " " << c.edge.witness_point;
        out << "\n";
        out << "falsified: " << ( c.falsified ? "yes" : "no" ) << " (" << c.witness_detail << ")\n";
        out << "sound-out: " << ( c.out_sound ? "yes" : "no" ) << " (" << c.soundness_detail << ")\n";
        if ( c.derivation_accepted )
            out << "derivation: " << c.edge.derivation << " " << ( *c.derivation_accepted ? "accepted" : "rejected" )
                << "\n";
        if ( c.inclusion )
            out << "inclusion: " << ( *c.inclusion ? "yes" : "no" ) << "\n";
        out << "status: " << to_string( c.status ) << "\n";
        if ( !c.reason.empty() )
            out << "reason: " << c.reason << "\n";
        out << "end\n";
    }
    return out.str();
}

} // namespace itl
