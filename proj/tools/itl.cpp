// Command-line front end. Exit status: 0 ok, 1 falsified or rejected,
// 2 undetermined, 3 bad input, 4 and up for the other error kinds (see
// README).

#include "itl/corpus.hpp"
#include "itl/errors.hpp"
#include "itl/parser.hpp"
#include "itl/search.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace itl;

namespace
{

enum exit_code
{
    ok = 0,
    negative = 1,
    undetermined = 2,
    bad_input = 3,
    bad_order = 4,
    bad_structure = 5,
    not_continuous = 6,
    not_invariant = 7,
    no_metavariable = 8,
    boxes_mixed = 9,
    no_logic = 10,
    too_large = 11,
    no_extension = 12,
    no_entry = 13,
    no_corpus = 14,
    internal = 15,
};

struct options
{
    std::string format = "plain";
    std::string corpus_dir;

    [[nodiscard]] bool records() const { return format == "records"; }
};

std::string read_file( const std::string& path )
{
    std::ifstream in{ path, std::ios::binary };
    if ( !in )
        throw std::ios_base::failure( "cannot read " + path );
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

corpus open_corpus( const options& o )
{
    if ( o.corpus_dir.empty() )
        return corpus::open();
    return corpus::open( std::filesystem::path{ o.corpus_dir } );
}

std::string show_set( const dynamic_poset& f, world_set s )
{
    std::string out;
    s.for_each( [ & ]( std::size_t w ) { out += ( out.empty() ? "" : " " ) + f.name( w ); } );
    return out;
}

// ---------------------------------------------------------------------------

int cmd_parse( const options& o, const std::string& text )
{
    auto f = parse_formula( text );
    struct lang
    {
        const char* name;
        fragment frag;
    };
    const lang langs[] = {
        { "L_next", {} },
        { "L_eventually", { tense::eventually } },
        { "L_box", { tense::strong_box } },
        { "L_weakbox", { tense::weak_box } },
        { "L_eventually_box", { tense::eventually, tense::strong_box } },
        { "L_eventually_weakbox", { tense::eventually, tense::weak_box } },
        { "L_all", { tense::eventually, tense::strong_box, tense::weak_box } },
    };
    if ( o.records() )
        std::cout << "record parse\nformula: " << print_formula( f ) << "\n";
    else
        std::cout << print_formula( f ) << "\n";
    std::string in, out;
    for ( const auto& l : langs )
    {
        auto& list = in_fragment( f, l.frag ) ? in : out;
        list += ( list.empty() ? "" : " " ) + std::string( l.name );
    }
    std::cout << "in: " << in << "\n";
    if ( o.records() )
        std::cout << "not-in: " << out << "\nend\n";
    return ok;
}

int cmd_check( const options& o, const std::string& model_file, const std::string& text, const std::string& expect )
{
    auto m = parse_poset_model( read_file( model_file ) );
    auto f = parse_formula( text );
    auto ext = eval( m, f );
    const auto& frame = m.frame;
    auto refuted = ext.complement( frame.size() );

    if ( o.records() )
    {
        std::cout << "record check\nformula: " << print_formula( f ) << "\n";
        std::cout << "extension: " << show_set( frame, ext ) << "\n";
        std::cout << "falsified: " << show_set( frame, refuted ) << "\n";
        std::cout << "continuous: " << ( frame.continuous() ? "yes" : "no" ) << "\n";
        std::cout << "open: " << ( frame.open() ? "yes" : "no" ) << "\nend\n";
    }
    else
    {
        std::cout << "frame: " << ( frame.continuous() ? "continuous" : "not continuous" ) << ", "
                  << ( frame.open() ? "open" : "not open" ) << "\n";
        std::cout << "extension: " << format_world_set( frame, ext ) << "\n";
        for ( std::size_t w = 0; w < frame.size(); ++w )
            std::cout << "  " << frame.name( w ) << ": " << ( ext.contains( w ) ? "true" : "false" ) << "\n";
        if ( refuted.empty() )
            std::cout << "valid on the model\n";
        else
            std::cout << "falsified at: " << show_set( frame, refuted ) << "\n";
    }
    if ( expect == "falsified" )
        return refuted.empty() ? negative : ok;
    return refuted.empty() ? ok : negative;
}

bool apply_caps( real_caps& caps, const std::vector< std::string >& items )
{
    for ( const auto& item : items )
    {
        auto eq = item.find( '=' );
        if ( eq == std::string::npos )
            return false;
        auto key = item.substr( 0, eq );
        auto value = static_cast< std::size_t >( std::stoul( item.substr( eq + 1 ) ) );
        if ( key == "iter" )
            caps.iter = value;
        else if ( key == "restart" )
            caps.restart = value;
        else if ( key == "orbit" )
            caps.orbit = value;
        else if ( key == "window" )
            caps.window = value;
        else
            return false;
    }
    return true;
}

int cmd_real_check( const options& o, const std::string& system_file, const std::string& text,
                    const std::vector< std::string >& caps, const std::vector< std::string >& points )
{
    auto sys = parse_real_system( read_file( system_file ) );
    if ( !apply_caps( sys.caps, caps ) )
        throw parse_error( "caps take key=value with key iter, restart, orbit or window", source_span{} );
    auto f = parse_formula( text );
    auto out = eval_real( sys, f );

    std::string verdict = out.status == real_status::undetermined ? "undetermined"
                          : out.value.is_all()                    ? "valid"
                                                                  : "not valid";
    if ( o.records() )
    {
        std::cout << "record real-check\nformula: " << print_formula( f ) << "\n";
        for ( const auto& n : out.nodes )
            std::cout << "node: " << print_formula( n.f ) << " = " << n.value.to_string() << " ["
                      << to_string( n.status ) << "]\n";
        std::cout << "extension: " << out.value.to_string() << "\nstatus: " << to_string( out.status )
                  << "\nverdict: " << verdict << "\n";
    }
    else
    {
        for ( const auto& n : out.nodes )
        {
            std::cout << "  " << print_formula( n.f ) << "  =  " << n.value.to_string() << "  ["
                      << to_string( n.status ) << "]";
            if ( !n.reason.empty() && n.status != real_status::exact )
                std::cout << "  " << n.reason;
            std::cout << "\n";
        }
        std::cout << "extension: " << out.value.to_string() << " [" << to_string( out.status ) << "]\n";
        std::cout << "verdict: " << verdict << "\n";
    }
    if ( !points.empty() )
    {
        std::vector< rational > xs;
        for ( const auto& p : points )
            xs.push_back( parse_rational( p ) );
        auto in = check_pointwise( sys, f, xs );
        for ( std::size_t k = 0; k < xs.size(); ++k )
            std::cout << ( o.records() ? "point: " : "  at " ) << to_string( xs[ k ] ) << ( o.records() ? " " : ": " )
                      << ( in[ k ] ? "true" : "false" ) << "\n";
    }
    if ( o.records() )
        std::cout << "end\n";
    if ( out.status == real_status::undetermined )
        return undetermined;
    return out.value.is_all() ? ok : negative;
}

int cmd_validate( const options& o, const std::string& cls_name, std::size_t bound, const std::string& text,
                  const std::string& out_file, bool dedup, std::size_t threads )
{
    auto cls = parse_model_class( cls_name );
    if ( !cls )
        throw parse_error( "class must be e or p", source_span{}, "e or p" );
    auto f = parse_formula( text );
    search_options opts;
    opts.dedup = dedup;
    opts.threads = threads;
    auto res = validity( f, { *cls, bound }, opts );

    if ( o.records() )
        std::cout << to_record( res );
    else
    {
        std::cout << "verdict: " << to_string( res.outcome );
        if ( res.outcome == validity_outcome::valid_up_to )
            std::cout << "(" << bound << ")";
        std::cout << "\nmodels checked: " << res.models_checked << "\n";
        if ( res.witness )
        {
            std::cout << "falsified at: " << res.witness->model.frame.name( res.witness->world ) << "\n";
            std::cout << "size: " << res.witness->model.frame.size() << " worlds (" << res.note << ")\n";
            std::cout << print_poset_model( res.witness->model );
        }
        else if ( !res.note.empty() )
            std::cout << res.note << "\n";
    }
    if ( res.witness && !out_file.empty() )
    {
        std::ofstream out{ out_file };
        out << print_poset_model( res.witness->model );
        if ( !out )
            throw std::ios_base::failure( "cannot write " + out_file );
    }
    switch ( res.outcome )
    {
    case validity_outcome::valid_up_to: return ok;
    case validity_outcome::countermodel: return negative;
    case validity_outcome::undetermined: return undetermined;
    }
    return internal;
}

int cmd_prove( const options& o, const std::string& logic_name, const std::string& file )
{
    auto logic = logic_by_name( logic_name );
    auto d = parse_derivation( read_file( file ) );
    auto v = check( d, logic );
    if ( o.records() )
    {
        std::cout << "record prove\nlogic: " << logic.name << "\nlines: " << v.lines << "\n";
        std::cout << "verdict: " << ( v.accepted ? "accepted" : "rejected" ) << "\n";
        if ( !v.accepted )
            std::cout << "line: " << v.failing_index + 1 << "\nsource-line: " << v.failing_line
                      << "\nreason: " << v.reason << "\n";
        else
            std::cout << "conclusion: " << print_formula( d.lines.back().f ) << "\n";
        std::cout << "end\n";
    }
    else if ( v.accepted )
        std::cout << "accepted (" << v.lines << " lines)\nconclusion: " << print_formula( d.lines.back().f ) << "\n";
    else
        std::cout << "rejected at line " << v.failing_index + 1 << " (file line " << v.failing_line
                  << "): " << v.reason << "\n";
    return v.accepted ? ok : negative;
}

int cmd_sweep( const options& o, const std::string& logic_name, const std::string& cls_name, std::size_t bound )
{
    auto cls = parse_model_class( cls_name );
    if ( !cls )
        throw parse_error( "class must be e or p", source_span{}, "e or p" );
    auto rep = soundness_sweep( logic_by_name( logic_name ), { *cls, bound } );
    for ( const auto& e : rep.entries )
    {
        if ( o.records() )
            std::cout << "schema: " << e.schema << "\n" << to_record( e.result );
        else
            std::cout << e.schema << ": " << to_string( e.result.outcome )
                      << ( e.result.witness ? " at " + e.result.witness->model.frame.name( e.result.witness->world ) +
                                                  " of a " + std::to_string( e.result.witness->model.frame.size() ) +
                                                  "-world model"
                                            : "" )
                      << "\n";
    }
    if ( !o.records() )
        std::cout << ( rep.all_valid() ? "all schemas valid" : "counterexamples found" ) << "\n";
    return rep.all_valid() ? ok : negative;
}

int cmd_paper_suite( const options& o, const std::string& filter )
{
    auto c = open_corpus( o );
    auto results = run_paper_suite( c, filter );
    std::size_t failed = 0;
    for ( const auto& r : results )
    {
        failed += r.passed ? 0 : 1;
        if ( o.records() )
        {
            std::cout << "record expectation\nid: " << r.exp.id << "\ncheck: " << r.exp.check << "\nargument: "
                      << r.exp.arg << "\ntext: " << r.exp.text << "\nresult: " << ( r.passed ? "pass" : "fail" )
                      << "\ndetail: " << r.detail << "\nend\n";
        }
        else
        {
            std::cout << ( r.passed ? "PASS " : "FAIL " ) << r.exp.id << " " << r.exp.check;
            if ( !r.exp.arg.empty() && r.exp.check != "loads" )
                std::cout << " " << r.exp.arg;
            if ( !r.exp.text.empty() && r.exp.check != "loads" )
                std::cout << " : " << r.exp.text;
            std::cout << "  -> " << r.detail << "\n";
        }
    }
    if ( !o.records() )
        std::cout << results.size() - failed << " of " << results.size() << " checks passed\n";
    return failed ? negative : ok;
}

int cmd_separate( const options& o )
{
    auto c = open_corpus( o );
    auto rep = build_separation_matrix( c );
    std::cout << ( o.records() ? rep.records() : rep.render() );
    bool any_failed = false, any_missing = false;
    for ( const auto& e : rep.edges )
    {
        any_failed |= e.status == edge_status::failed;
        any_missing |= e.status == edge_status::no_witness;
    }
    return any_failed ? negative : any_missing ? undetermined : ok;
}

template < typename F >
int guarded( F&& f )
{
    try
    {
        return f();
    }
    catch ( const parse_error& e )
    {
        std::cerr << "parse error: " << e.what();
        if ( e.span().end > e.span().begin || e.span().begin > 0 )
            std::cerr << " at bytes " << e.span().begin << ".." << e.span().end;
        if ( !e.expected().empty() )
            std::cerr << " (expected " << e.expected() << ")";
        std::cerr << "\n";
        return bad_input;
    }
    catch ( const malformed_order& e )
    {
        std::cerr << "malformed order: " << e.what() << "\n";
        return bad_order;
    }
    catch ( const invalid_structure& e )
    {
        std::cerr << "invalid structure: " << e.what() << "\n";
        return bad_structure;
    }
    catch ( const continuity_required& e )
    {
        std::cerr << "continuity required: " << e.what() << "\n";
        return not_continuous;
    }
    catch ( const domain_not_invariant& e )
    {
        std::cerr << e.what() << "\n";
        return not_invariant;
    }
    catch ( const missing_metavariable& e )
    {
        std::cerr << "missing metavariable: " << e.what() << "\n";
        return no_metavariable;
    }
    catch ( const mixed_boxes& e )
    {
        std::cerr << "mixed boxes: " << e.what() << "\n";
        return boxes_mixed;
    }
    catch ( const unknown_logic& e )
    {
        std::cerr << e.what() << "\n";
        return no_logic;
    }
    catch ( const bound_too_large& e )
    {
        std::cerr << e.what() << "\n";
        return too_large;
    }
    catch ( const undetermined_extension& e )
    {
        std::cerr << "undetermined: " << e.what() << "\n";
        return no_extension;
    }
    catch ( const unknown_entry& e )
    {
        std::cerr << e.what() << "\n";
        return no_entry;
    }
    catch ( const corpus_missing& e )
    {
        std::cerr << e.what() << "\n";
        return no_corpus;
    }
    catch ( const corpus_error& e )
    {
        std::cerr << "corpus: " << e.what() << "\n";
        return bad_input;
    }
    catch ( const std::ios_base::failure& e )
    {
        std::cerr << e.what() << "\n";
        return bad_input;
    }
    catch ( const std::exception& e )
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return internal;
    }
}

} // namespace

int main( int argc, char** argv )
{
    CLI::App app{ "Model checker and proof checker for intuitionistic temporal logics" };
    app.require_subcommand( 1 );
    options o;
    app.add_option( "--format", o.format, "plain or records" )->check( CLI::IsMember( { "plain", "records" } ) );
    app.add_option( "--corpus", o.corpus_dir, "corpus directory (default: $ITL_CORPUS, then the built-in path)" );

    std::string formula_text, file, logic, cls = "e", expect, out_file, filter;
    std::vector< std::string > caps, points;
    std::size_t bound = 4, threads = 0;
    bool dedup = false;
    int code = ok;

    auto* parse = app.add_subcommand( "parse", "normalize a formula and list the languages containing it" );
    parse->add_option( "formula", formula_text )->required();
    parse->callback( [ & ] { code = guarded( [ & ] { return cmd_parse( o, formula_text ); } ); } );

    auto* chk = app.add_subcommand( "check", "evaluate a formula on a finite dynamic poset model" );
    chk->add_option( "--model", file, "model file" )->required();
    chk->add_option( "--expect", expect, "valid (default) or falsified; sets which outcome exits 0" )
        ->check( CLI::IsMember( { "valid", "falsified" } ) );
    chk->add_option( "formula", formula_text )->required();
    chk->callback( [ & ] { code = guarded( [ & ] { return cmd_check( o, file, formula_text, expect ); } ); } );

    auto* real = app.add_subcommand( "real-check", "evaluate a formula on a real-line system" );
    real->add_option( "--system", file, "system file" )->required();
    real->add_option( "--caps", caps, "iteration caps, e.g. iter=64 window=8" );
    real->add_option( "--at", points, "also report membership of these rationals" );
    real->add_option( "formula", formula_text )->required();
    real->callback(
        [ & ] { code = guarded( [ & ] { return cmd_real_check( o, file, formula_text, caps, points ); } ); } );

    auto* val = app.add_subcommand( "validate", "bounded validity over finite posets" );
    val->add_option( "--class", cls, "e (expanding) or p (persistent)" );
    val->add_option( "--bound", bound, "largest number of worlds" );
    val->add_option( "--out", out_file, "write a countermodel here" );
    val->add_option( "--threads", threads, "worker threads (0: all cores)" );
    val->add_flag( "--dedup", dedup, "one carrier per isomorphism class" );
    val->add_option( "formula", formula_text )->required();
    val->callback( [ & ] {
        code = guarded( [ & ] { return cmd_validate( o, cls, bound, formula_text, out_file, dedup, threads ); } );
    } );

    auto* prove = app.add_subcommand( "prove", "check a Hilbert derivation" );
    prove->add_option( "--logic", logic, "logic name such as ITL.db" )->required();
    prove->add_option( "derivation", file )->required();
    prove->callback( [ & ] { code = guarded( [ & ] { return cmd_prove( o, logic, file ); } ); } );

    auto* sweep = app.add_subcommand( "sweep", "check every schema of a logic over a class" );
    sweep->add_option( "--logic", logic )->required();
    sweep->add_option( "--class", cls );
    sweep->add_option( "--bound", bound );
    sweep->callback( [ & ] { code = guarded( [ & ] { return cmd_sweep( o, logic, cls, bound ); } ); } );

    auto* suite = app.add_subcommand( "paper-suite", "run every anchored corpus check" );
    suite->add_option( "--filter", filter, "only this corpus id" );
    suite->callback( [ & ] { code = guarded( [ & ] { return cmd_paper_suite( o, filter ); } ); } );

    auto* sep = app.add_subcommand( "separate", "verify the separation graph certificates" );
    sep->callback( [ & ] { code = guarded( [ & ] { return cmd_separate( o ); } ); } );

    try
    {
        app.parse( argc, argv );
    }
    catch ( const CLI::ParseError& e )
    {
        int r = app.exit( e );
        return r == 0 ? ok : bad_input;
    }
    return code;
}
